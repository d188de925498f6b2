#include "logcap/zlmod.hpp"

#include <algorithm>
#include <stdexcept>

namespace logcap {

namespace {

mpz_class mod_pos(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

// valuation of a residue mod ell^N; N for zero
int res_val(const mpz_class& a, unsigned long ell, int N) {
  if (a == 0) return N;
  return static_cast<int>(std::min<long>(ell_valuation(a, ell), N));
}

}  // namespace

ZlMatrix::ZlMatrix(unsigned long ell, int prec, size_t rows, size_t cols)
    : ell_(ell), prec_(prec), mod_(ell_pow(ell, prec)), rows_(rows), cols_(cols), a_(rows * cols) {
  if (prec < 1) throw std::invalid_argument("ZlMatrix precision must be positive");
}

ZlMatrix ZlMatrix::identity(unsigned long ell, int prec, size_t n) {
  ZlMatrix m(ell, prec, n, n);
  for (size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1;
  return m;
}

void ZlMatrix::set(size_t r, size_t c, const mpz_class& v) { a_[r * cols_ + c] = mod_pos(v, mod_); }

ZlMatrix ZlMatrix::operator*(const ZlMatrix& b) const {
  if (cols_ != b.rows_ || ell_ != b.ell_) throw std::invalid_argument("ZlMatrix product mismatch");
  int p = std::min(prec_, b.prec_);
  ZlMatrix r(ell_, p, rows_, b.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < b.cols_; ++j) {
      mpz_class s = 0;
      for (size_t k = 0; k < cols_; ++k) s += at(i, k) * b.at(k, j);
      r.set(i, j, s);
    }
  return r;
}

bool ZlMatrix::operator==(const ZlMatrix& b) const {
  return ell_ == b.ell_ && prec_ == b.prec_ && rows_ == b.rows_ && cols_ == b.cols_ && a_ == b.a_;
}

ZVec ZlMatrix::apply(const ZVec& x) const {
  if (x.size() != cols_) throw std::invalid_argument("ZlMatrix apply: size mismatch");
  ZVec y(rows_);
  for (size_t i = 0; i < rows_; ++i) {
    mpz_class s = 0;
    for (size_t k = 0; k < cols_; ++k) s += at(i, k) * x[k];
    y[i] = mod_pos(s, mod_);
  }
  return y;
}

ZlMatrix ZlMatrix::reduced(int prec) const {
  ZlMatrix r(ell_, prec, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = mod_pos(a_[i], r.mod_);
  return r;
}

ZlMatrix ZlMatrix::without_row(size_t r) const {
  ZlMatrix m(ell_, prec_, rows_ - 1, cols_);
  for (size_t i = 0, k = 0; i < rows_; ++i) {
    if (i == r) continue;
    for (size_t j = 0; j < cols_; ++j) m.a_[k * cols_ + j] = at(i, j);
    ++k;
  }
  return m;
}

ZlMatrix ZlMatrix::transpose() const {
  ZlMatrix m(ell_, prec_, cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) m.a_[j * rows_ + i] = at(i, j);
  return m;
}

void ZlMatrix::append_column(const ZVec& col) {
  if (col.size() != rows_) throw std::invalid_argument("append_column: size mismatch");
  std::vector<mpz_class> b(rows_ * (cols_ + 1));
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t j = 0; j < cols_; ++j) b[i * (cols_ + 1) + j] = at(i, j);
    b[i * (cols_ + 1) + cols_] = mod_pos(col[i], mod_);
  }
  a_ = std::move(b);
  ++cols_;
}

void ZlMatrix::swap_rows(size_t i, size_t j) {
  if (i == j) return;
  for (size_t c = 0; c < cols_; ++c) std::swap(a_[i * cols_ + c], a_[j * cols_ + c]);
}

void ZlMatrix::swap_cols(size_t i, size_t j) {
  if (i == j) return;
  for (size_t r = 0; r < rows_; ++r) std::swap(a_[r * cols_ + i], a_[r * cols_ + j]);
}

void ZlMatrix::add_row(size_t i, size_t j, const mpz_class& f) {
  if (f == 0) return;
  for (size_t c = 0; c < cols_; ++c) {
    mpz_class& x = a_[i * cols_ + c];
    x += f * a_[j * cols_ + c];
    x = mod_pos(x, mod_);
  }
}

void ZlMatrix::add_col(size_t i, size_t j, const mpz_class& f) {
  if (f == 0) return;
  for (size_t r = 0; r < rows_; ++r) {
    mpz_class& x = a_[r * cols_ + i];
    x += f * a_[r * cols_ + j];
    x = mod_pos(x, mod_);
  }
}

void ZlMatrix::scale_row(size_t i, const mpz_class& f) {
  for (size_t c = 0; c < cols_; ++c) a_[i * cols_ + c] = mod_pos(a_[i * cols_ + c] * f, mod_);
}

nlohmann::json ZlMatrix::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (size_t i = 0; i < rows_; ++i) {
    nlohmann::json r = nlohmann::json::array();
    for (size_t j = 0; j < cols_; ++j) r.push_back(at(i, j).get_str());
    rows.push_back(r);
  }
  return {{"ell", ell_}, {"precision", prec_}, {"rows", rows_}, {"cols", cols_}, {"entries", rows}};
}

ZlMatrix ZlMatrix::from_json(const nlohmann::json& j) {
  ZlMatrix m(j.at("ell").get<unsigned long>(), j.at("precision").get<int>(), j.at("rows").get<size_t>(),
             j.at("cols").get<size_t>());
  const auto& e = j.at("entries");
  for (size_t r = 0; r < m.rows_; ++r)
    for (size_t c = 0; c < m.cols_; ++c) m.set(r, c, mpz_class(e.at(r).at(c).get<std::string>()));
  return m;
}

int ModuleDecomposition::generator_exponent(size_t i) const {
  if (i < diagonal.size()) return diagonal[i];
  return precision;
}

ZVec ModuleDecomposition::class_coordinates(const ZVec& x) const {
  ZVec y = U.apply(x);
  for (size_t i = 0; i < y.size(); ++i) y[i] = mod_pos(y[i], ell_pow(ell, generator_exponent(i)));
  return y;
}

bool ModuleDecomposition::is_trivial_class(const ZVec& x) const {
  for (const auto& c : class_coordinates(x))
    if (c != 0) return false;
  return true;
}

std::vector<mpz_class> ModuleDecomposition::torsion_orders() const {
  std::vector<mpz_class> r;
  for (int a : torsion) r.push_back(ell_pow(ell, a));
  return r;
}

nlohmann::json ModuleDecomposition::to_json() const {
  nlohmann::json tor = nlohmann::json::array();
  for (int a : torsion) tor.push_back(ell_pow(ell, a).get_str());
  return {{"free_at_precision", free_rank}, {"torsion", tor}, {"torsion_exponents", torsion},
          {"generators", generators}};
}

ModuleDecomposition smith_normal_form(const ZlMatrix& A) {
  const unsigned long ell = A.ell();
  const int N = A.precision();
  const size_t g = A.rows(), c = A.cols();
  ZlMatrix D = A;
  ZlMatrix U = ZlMatrix::identity(ell, N, g), V = ZlMatrix::identity(ell, N, c);
  ModuleDecomposition out;
  out.ell = ell;
  out.precision = N;
  out.generators = g;
  const size_t m = std::min(g, c);
  for (size_t k = 0; k < m; ++k) {
    size_t pi = g, pj = c;
    int best = N;
    for (size_t i = k; i < g && best > 0; ++i)
      for (size_t j = k; j < c; ++j) {
        int v = res_val(D.at(i, j), ell, N);
        if (v < best) {
          best = v;
          pi = i;
          pj = j;
          if (v == 0) break;
        }
      }
    if (best == N) {
      for (size_t r = k; r < m; ++r) out.diagonal.push_back(N);
      break;
    }
    D.swap_rows(k, pi);
    U.swap_rows(k, pi);
    D.swap_cols(k, pj);
    V.swap_cols(k, pj);
    mpz_class pk = ell_pow(ell, best);
    mpz_class unit = D.at(k, k) / pk;
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), unit.get_mpz_t(), D.modulus().get_mpz_t());
    D.scale_row(k, inv);
    U.scale_row(k, inv);
    for (size_t i = k + 1; i < g; ++i) {
      if (D.at(i, k) == 0) continue;
      mpz_class f = -(D.at(i, k) / pk);
      D.add_row(i, k, f);
      U.add_row(i, k, f);
    }
    for (size_t j = k + 1; j < c; ++j) {
      if (D.at(k, j) == 0) continue;
      mpz_class f = -(D.at(k, j) / pk);
      D.add_col(j, k, f);
      V.add_col(j, k, f);
    }
    out.diagonal.push_back(best);
  }
  for (int a : out.diagonal) {
    if (a >= N)
      ++out.free_rank;
    else if (a > 0)
      out.torsion.push_back(a);
  }
  if (g > c) out.free_rank += static_cast<int>(g - c);
  out.U = std::move(U);
  out.V = std::move(V);
  return out;
}

ModuleDecomposition quotient_presentation(size_t generators, const ZlMatrix& relations) {
  if (relations.rows() != generators) throw std::invalid_argument("quotient_presentation: row count");
  return smith_normal_form(relations);
}

std::optional<ZVec> solve_linear(const ModuleDecomposition& snf, const ZlMatrix& A, const ZVec& b) {
  const unsigned long ell = A.ell();
  const int N = A.precision();
  if (b.size() != A.rows()) throw std::invalid_argument("solve_linear: size mismatch");
  ZVec cb = snf.U.apply(b);
  ZVec y(A.cols(), mpz_class(0));
  for (size_t i = 0; i < cb.size(); ++i) {
    int a = snf.generator_exponent(i);
    if (a >= N) {
      if (cb[i] != 0) return std::nullopt;
      continue;
    }
    if (cb[i] == 0) continue;
    if (ell_valuation(cb[i], ell) < a) return std::nullopt;
    y[i] = cb[i] / ell_pow(ell, a);
  }
  ZVec x = snf.V.apply(y);
  if (A.apply(x) != [&] {
        ZVec r(b.size());
        for (size_t i = 0; i < b.size(); ++i) r[i] = mod_pos(b[i], A.modulus());
        return r;
      }())
    throw std::logic_error("solve_linear: verification failed");
  return x;
}

std::optional<ZVec> solve_linear(const ZlMatrix& A, const ZVec& b) {
  return solve_linear(smith_normal_form(A), A, b);
}

PadicScalar determinant(const ZlMatrix& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const unsigned long ell = A.ell();
  const int N = A.precision();
  const size_t n = A.rows();
  ZlMatrix D = A;
  long val = 0;
  mpz_class unit = 1;
  int sign = 1;
  for (size_t k = 0; k < n; ++k) {
    size_t pi = n, pj = n;
    int best = N;
    for (size_t i = k; i < n && best > 0; ++i)
      for (size_t j = k; j < n; ++j) {
        int v = res_val(D.at(i, j), ell, N);
        if (v < best) {
          best = v;
          pi = i;
          pj = j;
          if (v == 0) break;
        }
      }
    if (best == N) return PadicScalar::zero(ell, N);
    if (pi != k) {
      D.swap_rows(k, pi);
      sign = -sign;
    }
    if (pj != k) {
      D.swap_cols(k, pj);
      sign = -sign;
    }
    mpz_class pk = ell_pow(ell, best);
    mpz_class u = D.at(k, k) / pk;
    val += best;
    unit *= u;
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), u.get_mpz_t(), D.modulus().get_mpz_t());
    for (size_t i = k + 1; i < n; ++i) {
      if (D.at(i, k) == 0) continue;
      // row_i -= (D_ik / ell^best) * u^{-1} * row_k : exact since v(D_ik) >= best
      mpz_class f = -(D.at(i, k) / pk) * inv;
      D.add_row(i, k, f);
    }
  }
  // elementary operations are exact mod ell^N, so the determinant is known mod ell^N
  if (val >= N) return PadicScalar::zero(ell, N);
  return PadicScalar::from_parts(ell, val, unit * sign, N).truncated(N);
}

std::vector<int> group_invariants_from_counts(unsigned long ell, const std::vector<mpz_class>& counts) {
  // counts[j] = |G[ell^j]|, counts[0] = 1, nondecreasing until stable
  std::vector<int> rk;
  for (size_t j = 1; j < counts.size(); ++j) {
    mpz_class q = counts[j] / counts[j - 1];
    int r = 0;
    while (q > 1) {
      q /= ell;
      ++r;
    }
    rk.push_back(r);
  }
  std::vector<int> inv;
  for (size_t j = 0; j < rk.size(); ++j) {
    int nxt = j + 1 < rk.size() ? rk[j + 1] : 0;
    for (int t = 0; t < rk[j] - nxt; ++t) inv.push_back(static_cast<int>(j + 1));
  }
  std::sort(inv.begin(), inv.end());
  return inv;
}

}  // namespace logcap
