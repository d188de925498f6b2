#include "logcap/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

namespace logcap {

int deg(const QPoly& f) { return static_cast<int>(f.size()) - 1; }

void trim(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

QPoly parse_polynomial(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    s += c;
  }
  if (s.empty()) throw PolyParseError("empty polynomial");
  QPoly f;
  size_t i = 0;
  bool first = true;
  auto put = [&](size_t k, const mpz_class& c) {
    if (k > 64) throw PolyParseError("degree too large");
    if (f.size() <= k) f.resize(k + 1, 0);
    f[k] += c;
  };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw PolyParseError("expected + or - in \"" + text + "\"");
    }
    first = false;
    mpz_class coef = 1;
    bool have_coef = false;
    size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) {
      coef = mpz_class(s.substr(i, j - i));
      have_coef = true;
      i = j;
    }
    size_t k = 0;
    if (i < s.size() && (s[i] == '*' || s[i] == 'x')) {
      if (s[i] == '*') {
        if (!have_coef) throw PolyParseError("dangling * in \"" + text + "\"");
        ++i;
      }
      if (i >= s.size() || s[i] != 'x') throw PolyParseError("expected x in \"" + text + "\"");
      ++i;
      k = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        size_t e = i;
        while (e < s.size() && std::isdigit(static_cast<unsigned char>(s[e]))) ++e;
        if (e == i) throw PolyParseError("bad exponent in \"" + text + "\"");
        k = std::stoul(s.substr(i, e - i));
        i = e;
      }
    } else if (!have_coef) {
      throw PolyParseError("unexpected character in \"" + text + "\"");
    }
    put(k, sign * coef);
  }
  trim(f);
  return f;
}

std::string poly_to_string(const QPoly& f) {
  if (f.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = deg(f); k >= 0; --k) {
    const mpq_class& c = f[k];
    if (c == 0) continue;
    mpq_class a = abs(c);
    if (c < 0)
      os << "-";
    else if (!first)
      os << "+";
    first = false;
    if (k == 0) {
      os << a;
      continue;
    }
    if (a != 1) os << a << "*";
    os << "x";
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

QPoly poly_add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

QPoly poly_sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

QPoly poly_scale(const QPoly& a, const mpq_class& c) {
  QPoly r = a;
  for (auto& x : r) x *= c;
  trim(r);
  return r;
}

std::pair<QPoly, QPoly> poly_divmod(const QPoly& a, const QPoly& b) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  QPoly r = a, q;
  int db = deg(b);
  if (deg(r) >= db) q.assign(deg(r) - db + 1, 0);
  while (!r.empty() && deg(r) >= db) {
    int k = deg(r) - db;
    mpq_class c = r.back() / b.back();
    q[k] = c;
    for (int i = 0; i <= db; ++i) r[i + k] -= c * b[i];
    trim(r);
  }
  trim(q);
  return {q, r};
}

QPoly poly_mod(const QPoly& a, const QPoly& b) { return poly_divmod(a, b).second; }

QPoly poly_gcd(const QPoly& a0, const QPoly& b0) {
  QPoly a = a0, b = b0;
  while (!b.empty()) {
    QPoly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  return poly_scale(a, 1 / mpq_class(a.back()));
}

QPoly poly_derivative(const QPoly& f) {
  QPoly r;
  for (size_t i = 1; i < f.size(); ++i) r.push_back(f[i] * static_cast<long>(i));
  trim(r);
  return r;
}

mpq_class poly_eval(const QPoly& f, const mpq_class& x) {
  mpq_class r = 0;
  for (size_t i = f.size(); i-- > 0;) r = r * x + f[i];
  return r;
}

Complex poly_eval(const QPoly& f, Complex x) {
  Complex r = 0;
  for (size_t i = f.size(); i-- > 0;) r = r * x + Complex(f[i].get_d(), 0);
  return r;
}

bool is_integral_monic(const QPoly& f) {
  if (f.empty() || f.back() != 1) return false;
  for (auto& c : f)
    if (c.get_den() != 1) return false;
  return true;
}

namespace {

mpq_class det_q(std::vector<std::vector<mpq_class>> m) {
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

}  // namespace

mpq_class poly_resultant(const QPoly& a, const QPoly& b) {
  int m = deg(a), n = deg(b);
  if (m < 0 || n < 0) return 0;
  if (m == 0 && n == 0) return 1;
  size_t N = static_cast<size_t>(m + n);
  std::vector<std::vector<mpq_class>> S(N, std::vector<mpq_class>(N, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) S[i][i + j] = a[m - j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) S[n + i][i + j] = b[n - j];
  return det_q(std::move(S));
}

mpz_class poly_discriminant(const QPoly& f) {
  int n = deg(f);
  if (n < 1) throw std::domain_error("discriminant of a constant");
  if (n == 1) return 1;
  mpq_class r = poly_resultant(f, poly_derivative(f)) / f.back();
  if ((n * (n - 1) / 2) % 2) r = -r;
  if (r.get_den() != 1) throw std::logic_error("non-integral discriminant");
  return r.get_num();
}

int real_root_count(const QPoly& f) {
  std::vector<QPoly> seq{f, poly_derivative(f)};
  while (!seq.back().empty() && deg(seq.back()) > 0) {
    QPoly r = poly_mod(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    seq.push_back(poly_scale(r, -1));
  }
  auto changes = [&](bool plus) {
    int c = 0, last = 0;
    for (auto& p : seq) {
      if (p.empty()) continue;
      int s = sgn(p.back());
      if (!plus && deg(p) % 2) s = -s;
      if (last && s && s != last) ++c;
      if (s) last = s;
    }
    return c;
  };
  return changes(false) - changes(true);
}

std::vector<Complex> complex_roots(const QPoly& f0) {
  int n = deg(f0);
  if (n < 1) return {};
  QPoly f = poly_scale(f0, 1 / mpq_class(f0.back()));
  std::vector<Complex> c(n + 1);
  for (int i = 0; i <= n; ++i) c[i] = Complex(f[i].get_d(), 0);
  long double R = 0;
  for (int i = 0; i < n; ++i) R = std::max(R, std::pow(std::abs(c[i].real()), 1.0L / (n - i)));
  R = 2 * R + 1;
  std::vector<Complex> z(n);
  for (int k = 0; k < n; ++k) {
    long double a = 2 * M_PIl * k / n + 0.4L;
    z[k] = Complex(R * 0.5L * std::cos(a), R * 0.5L * std::sin(a));
  }
  auto fd = [&](Complex x, Complex& d) {
    Complex p = c[n];
    d = 0;
    for (int i = n - 1; i >= 0; --i) {
      d = d * x + p;
      p = p * x + c[i];
    }
    return p;
  };
  // Aberth iteration
  for (int it = 0; it < 500; ++it) {
    long double mv = 0;
    for (int k = 0; k < n; ++k) {
      Complex d;
      Complex p = fd(z[k], d);
      if (p == Complex(0)) continue;
      Complex ratio = p / d;
      Complex s = 0;
      for (int j = 0; j < n; ++j)
        if (j != k) s += 1.0L / (z[k] - z[j]);
      Complex w = ratio / (1.0L - ratio * s);
      z[k] -= w;
      mv = std::max(mv, std::abs(w) / (1 + std::abs(z[k])));
    }
    if (mv < 1e-17L) break;
  }
  for (auto& x : z) {
    for (int it = 0; it < 3; ++it) {
      Complex d;
      Complex p = fd(x, d);
      if (d != Complex(0)) x -= p / d;
    }
  }
  std::sort(z.begin(), z.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return z;
}

namespace {

std::set<int> subset_sums(const std::vector<int>& ds) {
  std::set<int> s{0};
  for (int d : ds) {
    std::set<int> t = s;
    for (int x : s) t.insert(x + d);
    s = std::move(t);
  }
  return s;
}

}  // namespace

bool is_irreducible(const QPoly& f) {
  int n = deg(f);
  if (n < 1) return false;
  if (n == 1) return true;
  if (deg(poly_gcd(f, poly_derivative(f))) > 0) return false;
  std::set<int> possible;
  for (int k = 1; k < n; ++k) possible.insert(k);
  mpz_class disc = poly_discriminant(f);
  int used = 0;
  for (u64 p : primes_up_to(400)) {
    if (mpz_divisible_ui_p(disc.get_mpz_t(), p)) continue;
    auto fac = fp_factor(fp_from(f, p), p);
    std::vector<int> ds;
    for (auto& [g, e] : fac)
      for (int t = 0; t < e; ++t) ds.push_back(fp_deg(g));
    auto ss = subset_sums(ds);
    std::set<int> keep;
    for (int k : possible)
      if (ss.count(k)) keep.insert(k);
    possible = std::move(keep);
    if (possible.empty()) return true;
    if (++used >= 40) break;
  }
  // factor degrees survive every prime: look for a true factor among products of roots
  auto roots = complex_roots(f);
  for (int k : possible) {
    if (2 * k > n) continue;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<Complex> g{Complex(1)};
      for (int i : idx) {
        std::vector<Complex> h(g.size() + 1, Complex(0));
        for (size_t j = 0; j < g.size(); ++j) {
          h[j + 1] += g[j];
          h[j] -= g[j] * roots[i];
        }
        g = std::move(h);
      }
      bool ok = true;
      QPoly gq;
      for (auto& c : g) {
        long double re = std::round(c.real());
        if (std::abs(c.imag()) > 1e-6L || std::abs(c.real() - re) > 1e-6L * (1 + std::abs(re))) {
          ok = false;
          break;
        }
        gq.push_back(mpq_class(mpz_class(std::to_string(static_cast<long long>(re)))));
      }
      if (ok) {
        trim(gq);
        if (poly_mod(f, gq).empty()) return false;
      }
      int i = k - 1;
      while (i >= 0 && idx[i] == n - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return true;
}

// ---------------------------------------------------------------- F_p[x]

void fp_trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int fp_deg(const FpPoly& f) { return static_cast<int>(f.size()) - 1; }

FpPoly fp_from(const QPoly& f, u64 p) {
  FpPoly r(f.size());
  for (size_t i = 0; i < f.size(); ++i) {
    u64 num = mod_of(f[i].get_num(), p), den = mod_of(f[i].get_den(), p);
    r[i] = mulmod(num, invmod(den, p), p);
  }
  fp_trim(r);
  return r;
}

FpPoly fp_add(const FpPoly& a, const FpPoly& b, u64 p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
  fp_trim(r);
  return r;
}

FpPoly fp_sub(const FpPoly& a, const FpPoly& b, u64 p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
  fp_trim(r);
  return r;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  fp_trim(r);
  return r;
}

std::pair<FpPoly, FpPoly> fp_divmod(const FpPoly& a, const FpPoly& b, u64 p) {
  if (b.empty()) throw std::domain_error("F_p division by zero");
  FpPoly r = a, q;
  int db = fp_deg(b);
  u64 inv = invmod(b.back(), p);
  if (fp_deg(r) >= db) q.assign(fp_deg(r) - db + 1, 0);
  while (!r.empty() && fp_deg(r) >= db) {
    int k = fp_deg(r) - db;
    u64 c = mulmod(r.back(), inv, p);
    q[k] = c;
    for (int i = 0; i <= db; ++i) r[i + k] = (r[i + k] + p - mulmod(c, b[i], p)) % p;
    fp_trim(r);
  }
  fp_trim(q);
  return {q, r};
}

FpPoly fp_mod(const FpPoly& a, const FpPoly& b, u64 p) { return fp_divmod(a, b, p).second; }

FpPoly fp_monic(const FpPoly& a, u64 p) {
  if (a.empty()) return a;
  u64 inv = invmod(a.back(), p);
  FpPoly r = a;
  for (auto& x : r) x = mulmod(x, inv, p);
  return r;
}

FpPoly fp_gcd(const FpPoly& a0, const FpPoly& b0, u64 p) {
  FpPoly a = a0, b = b0;
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(a, p);
}

FpPoly fp_derivative(const FpPoly& a, u64 p) {
  FpPoly r;
  for (size_t i = 1; i < a.size(); ++i) r.push_back(mulmod(a[i], i % p, p));
  fp_trim(r);
  return r;
}

FpPoly fp_powmod(const FpPoly& base, const mpz_class& e, const FpPoly& m, u64 p) {
  FpPoly r{1};
  r = fp_mod(r, m, p);
  FpPoly b = fp_mod(base, m, p);
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = fp_mod(fp_mul(r, r, p), m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = fp_mod(fp_mul(r, b, p), m, p);
  }
  return r;
}

u64 fp_eval(const FpPoly& f, u64 x, u64 p) {
  u64 r = 0;
  for (size_t i = f.size(); i-- > 0;) r = (mulmod(r, x, p) + f[i]) % p;
  return r;
}

namespace {

void sqf(const FpPoly& f, u64 p, int mult, std::vector<std::pair<FpPoly, int>>& out) {
  if (fp_deg(f) < 1) return;
  FpPoly d = fp_derivative(f, p);
  FpPoly c = fp_gcd(f, d, p);
  FpPoly w = fp_divmod(f, c, p).first;
  int i = 1;
  while (fp_deg(w) > 0) {
    FpPoly y = fp_gcd(w, c, p);
    FpPoly fac = fp_divmod(w, y, p).first;
    if (fp_deg(fac) > 0) out.push_back({fp_monic(fac, p), i * mult});
    w = y;
    c = fp_divmod(c, y, p).first;
    ++i;
  }
  if (fp_deg(c) > 0) {
    FpPoly r;
    for (size_t k = 0; k < c.size(); k += p) r.push_back(c[k]);
    sqf(r, p, mult * static_cast<int>(p), out);
  }
}

void edf(const FpPoly& g, int d, u64 p, Rng& rng, std::vector<FpPoly>& out) {
  if (fp_deg(g) == d) {
    out.push_back(fp_monic(g, p));
    return;
  }
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), p, static_cast<unsigned long>(d));
  while (true) {
    FpPoly a(fp_deg(g));
    for (auto& x : a) x = rng.below(p);
    fp_trim(a);
    if (fp_deg(a) < 1) continue;
    FpPoly b;
    if (p == 2) {
      FpPoly t = a, s = a;
      for (int i = 1; i < d; ++i) {
        t = fp_mod(fp_mul(t, t, p), g, p);
        s = fp_add(s, t, p);
      }
      b = s;
    } else {
      b = fp_powmod(a, (q - 1) / 2, g, p);
      b = fp_sub(b, FpPoly{1}, p);
    }
    FpPoly h = fp_gcd(g, b, p);
    if (fp_deg(h) > 0 && fp_deg(h) < fp_deg(g)) {
      edf(h, d, p, rng, out);
      edf(fp_divmod(g, h, p).first, d, p, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<FpPoly, int>> fp_factor(const FpPoly& f0, u64 p) {
  FpPoly f = f0;
  fp_trim(f);
  if (f.empty()) throw std::domain_error("factor of zero polynomial");
  f = fp_monic(f, p);
  std::vector<std::pair<FpPoly, int>> sq, out;
  sqf(f, p, 1, sq);
  Rng rng(0x5eed ^ p);
  for (auto& [g0, e] : sq) {
    FpPoly g = g0;
    FpPoly h{0, 1};
    FpPoly x{0, 1};
    for (int d = 1; fp_deg(g) >= 2 * d; ++d) {
      h = fp_powmod(h, mpz_class(static_cast<unsigned long>(p)), g, p);
      FpPoly t = fp_gcd(g, fp_sub(h, x, p), p);
      if (fp_deg(t) > 0) {
        std::vector<FpPoly> parts;
        edf(t, d, p, rng, parts);
        for (auto& q : parts) out.push_back({q, e});
        g = fp_divmod(g, t, p).first;
        h = fp_mod(h, g, p);
      }
    }
    if (fp_deg(g) > 0) out.push_back({fp_monic(g, p), e});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  return out;
}

std::vector<u64> fp_roots(const FpPoly& f, u64 p) {
  std::vector<u64> r;
  for (auto& [g, e] : fp_factor(f, p))
    if (fp_deg(g) == 1) r.push_back((p - g[0]) % p);
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace logcap
