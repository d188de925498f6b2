#include "logcap/intmat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace logcap {

ZMat zmat(size_t r, size_t c) { return ZMat(r, ZVec(c, mpz_class(0))); }

ZMat zidentity(size_t n) {
  ZMat m = zmat(n, n);
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

QMat qidentity(size_t n) {
  QMat m(n, QVec(n, mpq_class(0)));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

ZMat zmul(const ZMat& a, const ZMat& b) {
  size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
  ZMat m = zmat(r, c);
  for (size_t i = 0; i < r; ++i)
    for (size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (size_t j = 0; j < c; ++j) m[i][j] += a[i][t] * b[t][j];
    }
  return m;
}

ZVec zmul(const ZMat& a, const ZVec& x) {
  ZVec y(a.size(), mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

ZVec zvecmat(const ZVec& x, const ZMat& a) {
  size_t c = a.empty() ? 0 : a[0].size();
  ZVec y(c, mpz_class(0));
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < c; ++j) y[j] += x[i] * a[i][j];
  }
  return y;
}

QMat qmul(const QMat& a, const QMat& b) {
  size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
  QMat m(r, QVec(c, mpq_class(0)));
  for (size_t i = 0; i < r; ++i)
    for (size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (size_t j = 0; j < c; ++j) m[i][j] += a[i][t] * b[t][j];
    }
  return m;
}

QVec qvecmat(const QVec& x, const QMat& a) {
  size_t c = a.empty() ? 0 : a[0].size();
  QVec y(c, mpq_class(0));
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < c; ++j) y[j] += x[i] * a[i][j];
  }
  return y;
}

QMat to_q(const ZMat& a) {
  QMat m(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    for (auto& x : a[i]) m[i].push_back(mpq_class(x));
  return m;
}

ZMat transpose(const ZMat& a) {
  if (a.empty()) return {};
  ZMat t = zmat(a[0].size(), a.size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

mpz_class zdet(ZMat a) {
  size_t n = a.size();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        mpz_class t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

mpq_class qdet(QMat m) {
  size_t n = m.size();
  mpq_class d = 1;
  for (size_t k = 0; k < n; ++k) {
    size_t p = k;
    while (p < n && m[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(m[p], m[k]);
      d = -d;
    }
    d *= m[k][k];
    for (size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      mpq_class f = m[i][k] / m[k][k];
      for (size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return d;
}

QMat qinverse(const QMat& a) {
  size_t n = a.size();
  QMat m = a, inv = qidentity(n);
  for (size_t k = 0; k < n; ++k) {
    size_t p = k;
    while (p < n && m[p][k] == 0) ++p;
    if (p == n) throw std::domain_error("singular matrix");
    std::swap(m[p], m[k]);
    std::swap(inv[p], inv[k]);
    mpq_class f = 1 / m[k][k];
    for (size_t j = 0; j < n; ++j) {
      m[k][j] *= f;
      inv[k][j] *= f;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == k || m[i][k] == 0) continue;
      mpq_class g = m[i][k];
      for (size_t j = 0; j < n; ++j) {
        m[i][j] -= g * m[k][j];
        inv[i][j] -= g * inv[k][j];
      }
    }
  }
  return inv;
}

bool zvec_is_zero(const ZVec& v) {
  for (auto& x : v)
    if (x != 0) return false;
  return true;
}

mpz_class zvec_content(const ZVec& v) {
  mpz_class g = 0;
  for (auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

namespace {

mpz_class fdiv(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

void axpy(ZVec& y, const mpz_class& a, const ZVec& x) {
  if (a == 0) return;
  for (size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

// echelon form over Z; when D > 0 entries right of the current column are reduced mod D
ZMat echelon(ZMat m, size_t ncols, const mpz_class& D) {
  size_t r = 0;
  for (size_t j = 0; j < ncols && r < m.size(); ++j) {
    while (true) {
      size_t best = m.size();
      for (size_t i = r; i < m.size(); ++i)
        if (m[i][j] != 0 && (best == m.size() || abs(m[i][j]) < abs(m[best][j]))) best = i;
      if (best == m.size()) break;
      std::swap(m[r], m[best]);
      bool clean = true;
      for (size_t i = r + 1; i < m.size(); ++i) {
        if (m[i][j] == 0) continue;
        axpy(m[i], -fdiv(m[i][j], m[r][j]), m[r]);
        if (m[i][j] != 0) clean = false;
      }
      if (clean) break;
    }
    if (r < m.size() && m[r][j] != 0) {
      if (m[r][j] < 0)
        for (auto& x : m[r]) x = -x;
      if (D > 0) {
        // reduction mod D is only legitimate while D e_k stays available
        for (size_t i = r; i < m.size(); ++i)
          for (size_t k = j + 1; k < ncols; ++k) mpz_mod(m[i][k].get_mpz_t(), m[i][k].get_mpz_t(), D.get_mpz_t());
        ZMat keep(m.begin(), m.begin() + r + 1);
        for (size_t i = r + 1; i < m.size(); ++i)
          if (!zvec_is_zero(m[i])) keep.push_back(std::move(m[i]));
        for (size_t k = j + 1; k < ncols; ++k) {
          ZVec e(ncols, mpz_class(0));
          e[k] = D;
          keep.push_back(std::move(e));
        }
        m = std::move(keep);
      }
      ++r;
    }
  }
  m.resize(r);
  // reduce entries above pivots
  for (size_t i = 0; i < m.size(); ++i) {
    size_t pc = 0;
    while (m[i][pc] == 0) ++pc;
    for (size_t k = 0; k < i; ++k) axpy(m[k], -fdiv(m[k][pc], m[i][pc]), m[i]);
  }
  return m;
}

}  // namespace

ZMat hnf(const ZMat& rows, size_t ncols) {
  ZMat m;
  for (auto& r : rows)
    if (!zvec_is_zero(r)) m.push_back(r);
  return echelon(std::move(m), ncols, 0);
}

ZMat hnf_mod(const ZMat& rows, size_t ncols, const mpz_class& D) {
  ZMat m;
  for (auto& r : rows) {
    ZVec v = r;
    for (auto& x : v) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), D.get_mpz_t());
    if (!zvec_is_zero(v)) m.push_back(std::move(v));
  }
  for (size_t i = 0; i < ncols; ++i) {
    ZVec e(ncols, mpz_class(0));
    e[i] = D;
    m.push_back(std::move(e));
  }
  ZMat h = echelon(std::move(m), ncols, D);
  if (h.size() != ncols) throw std::logic_error("hnf_mod: lattice not of full rank");
  return h;
}

ZMat hnf_lower(const ZMat& rows, size_t ncols) {
  ZMat rev;
  for (auto& r : rows) rev.push_back(ZVec(r.rbegin(), r.rend()));
  ZMat h = hnf(rev, ncols);
  ZMat out;
  for (size_t i = h.size(); i-- > 0;) out.push_back(ZVec(h[i].rbegin(), h[i].rend()));
  return out;
}

QVec hnf_coords(const ZMat& H, const QVec& v0) {
  size_t n = H.size();
  QVec v = v0, c(n, mpq_class(0));
  for (size_t i = 0; i < n; ++i) {
    if (v[i] == 0) continue;
    c[i] = v[i] / H[i][i];
    for (size_t j = i; j < v.size(); ++j) v[j] -= c[i] * H[i][j];
  }
  for (auto& x : v)
    if (x != 0) throw std::domain_error("vector outside the lattice span");
  return c;
}

bool hnf_contains(const ZMat& H, const ZVec& v0) {
  ZVec v = v0;
  size_t n = v.size();
  for (size_t i = 0, r = 0; i < n; ++i) {
    if (r < H.size() && H[r][i] != 0) {
      if (v[i] != 0) {
        if (!mpz_divisible_p(v[i].get_mpz_t(), H[r][i].get_mpz_t())) return false;
        mpz_class q = v[i] / H[r][i];
        axpy(v, -q, H[r]);
      }
      ++r;
    } else if (v[i] != 0) {
      return false;
    }
  }
  return zvec_is_zero(v);
}

bool IncrementalHnf::insert(ZVec v) {
  bool changed = false;
  for (size_t j = 0; j < n_; ++j) {
    if (v[j] == 0) continue;
    if (!has_[j]) {
      if (v[j] < 0)
        for (auto& x : v) x = -x;
      for (size_t k = j + 1; k < n_; ++k)
        if (has_[k] && v[k] != 0) axpy(v, -fdiv(v[k], rows_[k][k]), rows_[k]);
      rows_[j] = std::move(v);
      has_[j] = true;
      return true;
    }
    mpz_class p = rows_[j][j], a = v[j];
    if (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t())) {
      axpy(v, -(a / p), rows_[j]);
      continue;
    }
    mpz_class g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t(), a.get_mpz_t());
    ZVec nr(n_, mpz_class(0)), nv(n_, mpz_class(0));
    for (size_t k = 0; k < n_; ++k) {
      nr[k] = s * rows_[j][k] + t * v[k];
      nv[k] = (a / g) * rows_[j][k] - (p / g) * v[k];
    }
    for (size_t k = j + 1; k < n_; ++k)
      if (has_[k] && nr[k] != 0) axpy(nr, -fdiv(nr[k], rows_[k][k]), rows_[k]);
    rows_[j] = std::move(nr);
    v = std::move(nv);
    changed = true;
  }
  return changed;
}

size_t IncrementalHnf::rank() const { return static_cast<size_t>(std::count(has_.begin(), has_.end(), true)); }

mpz_class IncrementalHnf::determinant() const {
  mpz_class d = 1;
  for (size_t j = 0; j < n_; ++j) {
    if (!has_[j]) return 0;
    d *= rows_[j][j];
  }
  return d;
}

ZMat IncrementalHnf::basis() const {
  ZMat m;
  for (size_t j = 0; j < n_; ++j)
    if (has_[j]) m.push_back(rows_[j]);
  return hnf(m, n_);
}

ZVec IntSnf::coordinates(const ZVec& v) const {
  ZVec c = zmul(U, v);
  for (size_t i = 0; i < c.size(); ++i) mpz_mod(c[i].get_mpz_t(), c[i].get_mpz_t(), divisors[i].get_mpz_t());
  return c;
}

std::vector<mpz_class> IntSnf::invariants() const {
  std::vector<mpz_class> r;
  for (auto& d : divisors)
    if (d > 1) r.push_back(d);
  return r;
}

IntSnf int_snf(const ZMat& H) {
  size_t n = H.size();
  IntSnf out;
  out.det = 1;
  for (size_t i = 0; i < n; ++i) out.det *= H[i][i];
  out.det = abs(out.det);
  if (out.det == 0) throw std::domain_error("int_snf: lattice not of full rank");
  const mpz_class h = out.det;
  auto md = [&](mpz_class& x) { mpz_mod(x.get_mpz_t(), x.get_mpz_t(), h.get_mpz_t()); };
  ZMat A = H;
  for (auto& r : A)
    for (auto& x : r) md(x);
  ZMat Q = zidentity(n);  // column transform
  auto col_op = [&](size_t j, size_t k, const mpz_class& q) {  // col_j -= q col_k
    for (size_t i = 0; i < n; ++i) {
      A[i][j] -= q * A[i][k];
      md(A[i][j]);
      Q[i][j] -= q * Q[i][k];
      md(Q[i][j]);
    }
  };
  auto col_swap = [&](size_t a, size_t b) {
    if (a == b) return;
    for (size_t i = 0; i < n; ++i) {
      std::swap(A[i][a], A[i][b]);
      std::swap(Q[i][a], Q[i][b]);
    }
  };
  for (size_t k = 0; k < n; ++k) {
    while (true) {
      size_t bi = n, bj = n;
      for (size_t i = k; i < n; ++i)
        for (size_t j = k; j < n; ++j)
          if (A[i][j] != 0 && (bi == n || A[i][j] < A[bi][bj])) {
            bi = i;
            bj = j;
          }
      if (bi == n) break;
      std::swap(A[k], A[bi]);
      col_swap(k, bj);
      bool done = true;
      for (size_t i = k + 1; i < n; ++i) {
        if (A[i][k] == 0) continue;
        mpz_class q = A[i][k] / A[k][k];
        for (size_t j = 0; j < n; ++j) {
          A[i][j] -= q * A[k][j];
          md(A[i][j]);
        }
        if (A[i][k] != 0) done = false;
      }
      for (size_t j = k + 1; j < n; ++j) {
        if (A[k][j] == 0) continue;
        mpz_class q = A[k][j] / A[k][k];
        col_op(j, k, q);
        if (A[k][j] != 0) done = false;
      }
      if (!done) continue;
      size_t fi = n;
      for (size_t i = k + 1; i < n && fi == n; ++i)
        for (size_t j = k + 1; j < n; ++j)
          if (!mpz_divisible_p(A[i][j].get_mpz_t(), A[k][k].get_mpz_t())) {
            fi = i;
            break;
          }
      if (fi == n) break;
      for (size_t j = 0; j < n; ++j) {
        A[k][j] += A[fi][j];
        md(A[k][j]);
      }
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), A[k][k].get_mpz_t(), h.get_mpz_t());
    out.divisors.push_back(g);
  }
  out.U = transpose(Q);
  return out;
}

ZMat lll_transform(const std::vector<std::vector<long double>>& b0, long double delta) {
  size_t m = b0.size();
  if (m == 0) return {};
  size_t dim = b0[0].size();
  std::vector<std::vector<long double>> b = b0;
  std::vector<std::vector<long long>> T(m, std::vector<long long>(m, 0));
  for (size_t i = 0; i < m; ++i) T[i][i] = 1;
  auto dot = [&](const std::vector<long double>& x, const std::vector<long double>& y) {
    long double s = 0;
    for (size_t i = 0; i < dim; ++i) s += x[i] * y[i];
    return s;
  };
  std::vector<std::vector<long double>> mu(m, std::vector<long double>(m, 0)), bs(m);
  std::vector<long double> B(m);
  auto gso = [&]() {
    for (size_t i = 0; i < m; ++i) {
      bs[i] = b[i];
      for (size_t j = 0; j < i; ++j) {
        mu[i][j] = B[j] > 0 ? dot(b[i], bs[j]) / B[j] : 0;
        for (size_t t = 0; t < dim; ++t) bs[i][t] -= mu[i][j] * bs[j][t];
      }
      B[i] = dot(bs[i], bs[i]);
    }
  };
  gso();
  size_t k = 1;
  int guard = 0;
  while (k < m && guard++ < 100000) {
    for (size_t j = k; j-- > 0;) {
      long double q = std::round(mu[k][j]);
      if (q != 0) {
        long long qi = static_cast<long long>(q);
        for (size_t t = 0; t < dim; ++t) b[k][t] -= q * b[j][t];
        for (size_t t = 0; t < m; ++t) T[k][t] -= qi * T[j][t];
        gso();
      }
    }
    if (B[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      std::swap(T[k], T[k - 1]);
      gso();
      k = std::max<size_t>(k - 1, 1);
    }
  }
  ZMat out = zmat(m, m);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) out[i][j] = static_cast<long>(T[i][j]);
  return out;
}

namespace {

// reduced row echelon form in place; returns pivot columns
std::vector<size_t> fp_rref(std::vector<std::vector<u64>>& A, size_t ncols, u64 p) {
  std::vector<size_t> piv;
  size_t r = 0;
  for (size_t c = 0; c < ncols && r < A.size(); ++c) {
    size_t s = r;
    while (s < A.size() && A[s][c] % p == 0) ++s;
    if (s == A.size()) continue;
    std::swap(A[s], A[r]);
    u64 inv = invmod(A[r][c] % p, p);
    for (auto& x : A[r]) x = mulmod(x % p, inv, p);
    for (size_t i = 0; i < A.size(); ++i) {
      if (i == r || A[i][c] % p == 0) continue;
      u64 f = A[i][c] % p;
      for (size_t j = 0; j < ncols; ++j) A[i][j] = (A[i][j] % p + p - mulmod(f, A[r][j], p)) % p;
    }
    piv.push_back(c);
    ++r;
  }
  A.resize(r);
  return piv;
}

}  // namespace

std::vector<std::vector<u64>> fp_kernel(std::vector<std::vector<u64>> A, size_t ncols, u64 p) {
  auto piv = fp_rref(A, ncols, p);
  std::vector<bool> is_piv(ncols, false);
  for (size_t c : piv) is_piv[c] = true;
  std::vector<std::vector<u64>> ker;
  for (size_t f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    std::vector<u64> x(ncols, 0);
    x[f] = 1;
    for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = (p - A[r][f] % p) % p;
    ker.push_back(std::move(x));
  }
  return ker;
}

std::vector<std::vector<u64>> fp_span(std::vector<std::vector<u64>> rows, size_t ncols, u64 p) {
  fp_rref(rows, ncols, p);
  return rows;
}

size_t fp_rank(std::vector<std::vector<u64>> rows, size_t ncols, u64 p) { return fp_rref(rows, ncols, p).size(); }

bool fp_solve(const std::vector<std::vector<u64>>& rows, const std::vector<u64>& target, u64 p,
              std::vector<u64>& coeffs) {
  // columns of the system are the given rows
  size_t m = rows.size(), n = target.size();
  std::vector<std::vector<u64>> A(n, std::vector<u64>(m + 1, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) A[i][j] = rows[j][i] % p;
    A[i][m] = target[i] % p;
  }
  auto piv = fp_rref(A, m + 1, p);
  coeffs.assign(m, 0);
  for (size_t r = 0; r < piv.size(); ++r) {
    if (piv[r] == m) return false;
    coeffs[piv[r]] = A[r][m];
  }
  return true;
}

}  // namespace logcap
