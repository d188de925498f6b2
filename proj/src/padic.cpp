#include "logcap/padic.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

namespace logcap {

mpz_class ell_pow(unsigned long ell, long k) {
  if (k < 0) throw PadicError("negative exponent in ell_pow");
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), ell, static_cast<unsigned long>(k));
  return r;
}

long ell_valuation(const mpz_class& n, unsigned long ell) {
  if (n == 0) throw PadicError("valuation of zero");
  mpz_class t = n;
  long v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), ell)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), ell);
    ++v;
  }
  return v;
}

namespace {

mpz_class mod_pos(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class inverse_mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
    throw PadicError("not invertible");
  return r;
}

// sum_{n>=1} (-1)^{n+1} t^n / n mod ell^N, for v(t) >= 1 (>= 2 when ell = 2)
mpz_class log_series(const mpz_class& t, unsigned long ell, int N) {
  if (N <= 0 || t == 0) return 0;
  long s = ell_valuation(t, ell);
  if (s >= N) return 0;
  // stop at the first n with n*s - floor(log_ell n) >= N + 2; v(t^n/n) bounds all later terms
  long nmax = 1;
  auto flog = [ell](long n) {
    long k = 0;
    for (long p = static_cast<long>(ell); p <= n; p *= static_cast<long>(ell)) ++k;
    return k;
  };
  while (nmax * s - flog(nmax) < N + 2) ++nmax;
  long extra = flog(nmax) + 1;
  mpz_class M = ell_pow(ell, N + extra);
  mpz_class sum = 0, pw = 1;
  for (long n = 1; n < nmax; ++n) {
    pw = mod_pos(pw * t, M);
    long a = 0;
    long m = n;
    while (m % static_cast<long>(ell) == 0) {
      m /= static_cast<long>(ell);
      ++a;
    }
    mpz_class term = pw;
    if (a) mpz_divexact(term.get_mpz_t(), term.get_mpz_t(), ell_pow(ell, a).get_mpz_t());
    term *= inverse_mod(mpz_class(m), M);
    if (n % 2 == 1)
      sum += term;
    else
      sum -= term;
  }
  return mod_pos(sum, ell_pow(ell, N));
}

}  // namespace

PadicScalar PadicScalar::zero(unsigned long ell, long abs_prec) {
  PadicScalar r;
  r.ell_ = ell;
  r.val_ = abs_prec;
  r.prec_ = 0;
  r.unit_ = 0;
  return r;
}

PadicScalar PadicScalar::from_parts(unsigned long ell, long val, const mpz_class& unit, int prec) {
  if (prec <= 0) return zero(ell, val);
  if (mpz_divisible_ui_p(unit.get_mpz_t(), ell)) throw PadicError("unit part divisible by ell");
  PadicScalar r;
  r.ell_ = ell;
  r.val_ = val;
  r.prec_ = prec;
  r.unit_ = mod_pos(unit, ell_pow(ell, prec));
  return r;
}

PadicScalar PadicScalar::from_integer(unsigned long ell, const mpz_class& n, int prec) {
  if (n == 0) return zero(ell, prec);
  long v = ell_valuation(n, ell);
  mpz_class u = n / ell_pow(ell, v);
  return from_parts(ell, v, u, prec);
}

PadicScalar PadicScalar::from_rational(unsigned long ell, const mpq_class& q, int prec) {
  if (q == 0) return zero(ell, prec);
  long va = ell_valuation(q.get_num(), ell), vb = ell_valuation(q.get_den(), ell);
  mpz_class M = ell_pow(ell, prec);
  mpz_class ua = q.get_num() / ell_pow(ell, va), ub = q.get_den() / ell_pow(ell, vb);
  return from_parts(ell, va - vb, mod_pos(ua * inverse_mod(ub, M), M), prec);
}

PadicScalar PadicScalar::from_residue(unsigned long ell, const mpz_class& r, long abs_prec) {
  mpz_class x = mod_pos(r, ell_pow(ell, abs_prec));
  if (x == 0) return zero(ell, abs_prec);
  long v = ell_valuation(x, ell);
  return from_parts(ell, v, x / ell_pow(ell, v), static_cast<int>(abs_prec - v));
}

void PadicScalar::check_same(const PadicScalar& b) const {
  if (ell_ != b.ell_) throw PadicError("mixed primes");
}

PadicScalar PadicScalar::operator-() const {
  if (is_zero()) return *this;
  return from_parts(ell_, val_, -unit_, prec_);
}

PadicScalar PadicScalar::truncated(long k) const {
  if (abs_prec() <= k) return *this;
  if (is_zero() || val_ >= k) return zero(ell_, k);
  return from_parts(ell_, val_, unit_, static_cast<int>(k - val_));
}

PadicScalar PadicScalar::operator+(const PadicScalar& b) const {
  check_same(b);
  long m = std::min(abs_prec(), b.abs_prec());
  if (is_zero()) return b.truncated(m);
  if (b.is_zero()) return truncated(m);
  long vmin = std::min(val_, b.val_);
  mpz_class S = unit_ * ell_pow(ell_, val_ - vmin) + b.unit_ * ell_pow(ell_, b.val_ - vmin);
  S = mod_pos(S, ell_pow(ell_, m - vmin));
  if (S == 0) return zero(ell_, m);
  long w = ell_valuation(S, ell_);
  return from_parts(ell_, vmin + w, S / ell_pow(ell_, w), static_cast<int>(m - vmin - w));
}

PadicScalar PadicScalar::operator-(const PadicScalar& b) const { return *this + (-b); }

PadicScalar PadicScalar::operator*(const PadicScalar& b) const {
  check_same(b);
  if (is_zero() && b.is_zero()) return zero(ell_, val_ + b.val_);
  if (is_zero()) return zero(ell_, val_ + b.val_);
  if (b.is_zero()) return zero(ell_, val_ + b.val_);
  int p = std::min(prec_, b.prec_);
  return from_parts(ell_, val_ + b.val_, unit_ * b.unit_, p);
}

PadicScalar PadicScalar::operator/(const PadicScalar& b) const {
  check_same(b);
  if (b.is_zero()) throw PadicError("division by zero at precision");
  if (is_zero()) return zero(ell_, val_ - b.val_);
  int p = std::min(prec_, b.prec_);
  mpz_class M = ell_pow(ell_, p);
  return from_parts(ell_, val_ - b.val_, unit_ * inverse_mod(b.unit_, M), p);
}

PadicScalar PadicScalar::scaled(const mpz_class& n) const {
  if (n == 0) return zero(ell_, abs_prec());
  return *this * from_integer(ell_, n, std::max(prec_, 1) + 64);
}

bool PadicScalar::equals(const PadicScalar& b, int slack) const {
  PadicScalar d = *this - b;
  return d.is_zero_within(slack);
}

bool PadicScalar::is_zero_within(int slack) const {
  if (is_zero()) return true;
  return val_ >= abs_prec() - slack;
}

mpz_class PadicScalar::residue(long k) const {
  if (k > abs_prec()) throw PadicError("residue requested beyond precision");
  if (k <= 0) return 0;
  if (is_zero()) return 0;
  if (val_ < 0) throw PadicError("residue of a non-integral value");
  if (val_ >= k) return 0;
  return mod_pos(unit_ * ell_pow(ell_, val_), ell_pow(ell_, k));
}

std::string PadicScalar::to_string() const {
  std::ostringstream os;
  if (is_zero()) {
    os << "O(" << ell_ << "^" << val_ << ")";
    return os.str();
  }
  os << ell_ << "^" << val_ << " * (";
  mpz_class u = unit_;
  for (int i = 0; i < prec_; ++i) {
    mpz_class d;
    mpz_fdiv_qr_ui(u.get_mpz_t(), d.get_mpz_t(), u.get_mpz_t(), ell_);
    if (i) os << " + ";
    os << d;
    if (i == 1) os << "*" << ell_;
    if (i > 1) os << "*" << ell_ << "^" << i;
  }
  os << ")";
  return os.str();
}

PadicScalar PadicScalar::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto fail = [&]() -> PadicScalar { throw PadicError("cannot parse p-adic value: " + text); };
  auto read_int = [&](size_t& i, long& out) {
    size_t j = i;
    bool neg = false;
    if (j < s.size() && s[j] == '-') {
      neg = true;
      ++j;
    }
    size_t k = j;
    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
    if (k == j) return false;
    out = std::stol(s.substr(j, k - j));
    if (neg) out = -out;
    i = k;
    return true;
  };
  size_t i = 0;
  long ell = 0, v = 0;
  if (s.rfind("O(", 0) == 0) {
    i = 2;
    if (!read_int(i, ell) || i >= s.size() || s[i] != '^') return fail();
    ++i;
    if (!read_int(i, v) || i + 1 != s.size() || s[i] != ')') return fail();
    if (ell < 2) return fail();
    return zero(static_cast<unsigned long>(ell), v);
  }
  if (!read_int(i, ell) || ell < 2 || i >= s.size() || s[i] != '^') return fail();
  ++i;
  if (!read_int(i, v) || s.compare(i, 2, "*(") != 0) return fail();
  i += 2;
  std::vector<long> digits;
  while (true) {
    long d = 0;
    if (!read_int(i, d) || d < 0 || d >= ell) return fail();
    long idx = 0;
    if (i < s.size() && s[i] == '*') {
      ++i;
      long b = 0;
      if (!read_int(i, b) || b != ell) return fail();
      idx = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        if (!read_int(i, idx)) return fail();
      }
    }
    if (idx != static_cast<long>(digits.size())) return fail();
    digits.push_back(d);
    if (i < s.size() && s[i] == '+') {
      ++i;
      continue;
    }
    break;
  }
  if (i + 1 != s.size() || s[i] != ')') return fail();
  if (digits.empty() || digits[0] == 0) return fail();
  mpz_class u = 0;
  for (size_t k = digits.size(); k-- > 0;) u = u * static_cast<unsigned long>(ell) + digits[k];
  return from_parts(static_cast<unsigned long>(ell), v, u, static_cast<int>(digits.size()));
}

PadicScalar teichmuller(const PadicScalar& x) {
  if (!x.is_unit()) throw PadicError("teichmuller of a non-unit");
  unsigned long ell = x.ell();
  int p = x.rel_prec();
  if (ell == 2) {
    // only +-1; decided mod 4 when the input knows two digits
    mpz_class u = x.unit();
    bool minus = p >= 2 && mpz_fdiv_ui(u.get_mpz_t(), 4) == 3;
    return PadicScalar::from_parts(2, 0, minus ? mpz_class(-1) : mpz_class(1), p);
  }
  mpz_class M = ell_pow(ell, p);
  mpz_class w = x.unit();
  for (int k = 0; k < p; ++k) mpz_powm_ui(w.get_mpz_t(), w.get_mpz_t(), ell, M.get_mpz_t());
  return PadicScalar::from_parts(ell, 0, w, p);
}

PadicScalar iwasawa_log(const PadicScalar& x) {
  if (x.is_zero()) throw PadicError("log of zero");
  unsigned long ell = x.ell();
  int p = x.rel_prec();
  mpz_class M = ell_pow(ell, p);
  mpz_class u = x.unit();
  mpz_class L;
  if (ell == 2) {
    if (p < 2) return PadicScalar::zero(2, p);
    if (mpz_fdiv_ui(u.get_mpz_t(), 4) == 3) u = mod_pos(-u, M);
    L = log_series(u - 1, 2, p);
  } else {
    mpz_class y;
    mpz_powm_ui(y.get_mpz_t(), u.get_mpz_t(), ell - 1, M.get_mpz_t());
    L = log_series(y - 1, ell, p);
    L = mod_pos(L * inverse_mod(mpz_class(ell - 1), M), M);
  }
  return PadicScalar::from_residue(ell, L, p);
}

}  // namespace logcap
