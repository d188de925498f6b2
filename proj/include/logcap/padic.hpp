#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace logcap {

constexpr int kDefaultPrecision = 64;
constexpr int kSlack = 4;

struct PadicError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

mpz_class ell_pow(unsigned long ell, long k);
// v_ell(n) for n != 0
long ell_valuation(const mpz_class& n, unsigned long ell);

// ell^v * u with u a unit known mod ell^prec. A value indistinguishable from
// zero has prec == 0 and keeps its absolute precision in v.
class PadicScalar {
 public:
  PadicScalar() = default;

  static PadicScalar zero(unsigned long ell, long abs_prec);
  static PadicScalar from_integer(unsigned long ell, const mpz_class& n, int prec);
  static PadicScalar from_rational(unsigned long ell, const mpq_class& q, int prec);
  // exact residue r mod ell^abs_prec
  static PadicScalar from_residue(unsigned long ell, const mpz_class& r, long abs_prec);
  static PadicScalar from_parts(unsigned long ell, long val, const mpz_class& unit, int prec);

  unsigned long ell() const { return ell_; }
  bool is_zero() const { return prec_ == 0; }
  // meaningless for zero values; use abs_prec() there
  long valuation() const { return val_; }
  int rel_prec() const { return prec_; }
  long abs_prec() const { return is_zero() ? val_ : val_ + prec_; }
  const mpz_class& unit() const { return unit_; }

  PadicScalar operator-() const;
  PadicScalar operator+(const PadicScalar& b) const;
  PadicScalar operator-(const PadicScalar& b) const;
  PadicScalar operator*(const PadicScalar& b) const;
  PadicScalar operator/(const PadicScalar& b) const;
  PadicScalar& operator+=(const PadicScalar& b) { return *this = *this + b; }
  PadicScalar& operator-=(const PadicScalar& b) { return *this = *this - b; }
  PadicScalar& operator*=(const PadicScalar& b) { return *this = *this * b; }

  PadicScalar scaled(const mpz_class& n) const;
  // drop digits so that abs_prec() <= k
  PadicScalar truncated(long k) const;

  // v(a - b) >= min(abs_prec(a), abs_prec(b)) - slack
  bool equals(const PadicScalar& b, int slack = 0) const;
  bool is_zero_within(int slack) const;
  bool is_unit() const { return !is_zero() && val_ == 0; }

  // integer representative of the value mod ell^k; requires v >= 0 and k <= abs_prec
  mpz_class residue(long k) const;
  mpz_class residue() const { return residue(abs_prec()); }

  std::string to_string() const;
  static PadicScalar parse(const std::string& s);

 private:
  void check_same(const PadicScalar& b) const;

  unsigned long ell_ = 0;
  long val_ = 0;
  int prec_ = 0;
  mpz_class unit_;
};

PadicScalar iwasawa_log(const PadicScalar& x);
PadicScalar teichmuller(const PadicScalar& x);

}  // namespace logcap
