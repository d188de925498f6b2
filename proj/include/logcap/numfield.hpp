#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "logcap/caps.hpp"
#include "logcap/intmat.hpp"
#include "logcap/padic.hpp"
#include "logcap/poly.hpp"

namespace logcap {

struct FieldData;
class AlgebraicNum;

// Absolute number field Q[x]/(f) with its maximal order. Cheap to copy (shared data).
class NumberField {
 public:
  NumberField() = default;
  static NumberField build(const QPoly& f, const Caps& caps = {});
  static NumberField build(const std::string& f, const Caps& caps = {});

  int degree() const;
  const QPoly& polynomial() const;
  std::string name() const;  // defining polynomial as text
  const mpz_class& discriminant() const;
  const mpz_class& index() const;  // [O_K : Z[x]]
  int r1() const;
  int r2() const;
  int unit_rank() const { return r1() + r2() - 1; }
  // rows: integral basis elements in power-basis coordinates; row 0 is 1
  const QMat& basis() const;
  // coordinates of omega_i * omega_j in the integral basis
  const ZVec& table(int i, int j) const;
  // change of coordinates power basis -> integral basis
  const QMat& basis_inverse() const;
  // embeddings: r1 real roots then one root per complex pair (positive imaginary part)
  const std::vector<Complex>& roots() const;
  // omega_i evaluated at roots()[k]
  const std::vector<std::vector<Complex>>& basis_values() const;
  // LLL-reduced integral basis for the T2 form (integral coordinates, rows)
  const ZMat& reduced_basis() const;
  long double minkowski_bound() const;

  bool same(const NumberField& other) const { return d_ == other.d_; }
  bool operator==(const NumberField& other) const;

  AlgebraicNum generator() const;  // the class of x
  AlgebraicNum one() const;

  const std::shared_ptr<const FieldData>& data() const { return d_; }

 private:
  std::shared_ptr<const FieldData> d_;
  friend class AlgebraicNum;
};

// element sum num_i omega_i / den with den > 0 and gcd(content(num), den) = 1
class AlgebraicNum {
 public:
  AlgebraicNum() = default;
  AlgebraicNum(const NumberField& K, ZVec num, mpz_class den = 1);
  static AlgebraicNum from_int(const NumberField& K, const mpz_class& n);
  static AlgebraicNum from_rational(const NumberField& K, const mpq_class& q);
  static AlgebraicNum from_power_basis(const NumberField& K, const QPoly& p);
  static AlgebraicNum from_coords(const NumberField& K, const QVec& c);

  NumberField field() const;
  const ZVec& num() const { return num_; }
  const mpz_class& den() const { return den_; }
  QVec coords() const;
  QPoly to_power_basis() const;

  bool is_zero() const;
  bool is_integral() const { return den_ == 1; }
  bool is_rational() const;
  bool operator==(const AlgebraicNum& b) const { return num_ == b.num_ && den_ == b.den_; }
  bool operator!=(const AlgebraicNum& b) const { return !(*this == b); }

  AlgebraicNum operator+(const AlgebraicNum& b) const;
  AlgebraicNum operator-(const AlgebraicNum& b) const;
  AlgebraicNum operator-() const;
  AlgebraicNum operator*(const AlgebraicNum& b) const;
  AlgebraicNum operator/(const AlgebraicNum& b) const;
  AlgebraicNum scaled(const mpq_class& q) const;
  AlgebraicNum inverse() const;
  AlgebraicNum pow(long e) const;

  // rows: coordinates of (num * omega_i); the element times den
  ZMat num_mult_matrix() const;
  mpq_class norm() const;
  mpq_class trace() const;
  // complex embedding values at roots()
  std::vector<Complex> embeddings() const;

  std::string to_string() const;

 private:
  void normalize();
  std::shared_ptr<const FieldData> f_;
  ZVec num_;
  mpz_class den_ = 1;
};

// Integral ideal of O_K in lower-triangular HNF over the integral basis; row 0 is (m, 0, ..)
// with m the least positive integer in the ideal.
class Ideal {
 public:
  Ideal() = default;
  Ideal(const NumberField& K, ZMat hnf_rows);  // rows assumed to be a canonical HNF
  static Ideal unit(const NumberField& K);
  static Ideal principal(const AlgebraicNum& x);  // x integral, nonzero
  // ideal generated by the given integral elements together with m (m in the ideal, m > 0)
  static Ideal from_generators(const NumberField& K, const std::vector<ZVec>& gens, const mpz_class& m);

  const NumberField& field() const { return K_; }
  const ZMat& hnf() const { return h_; }
  mpz_class norm() const;
  const mpz_class& min_integer() const { return h_[0][0]; }
  bool contains(const ZVec& x) const;
  bool contains(const AlgebraicNum& x) const;
  bool is_unit() const { return min_integer() == 1; }
  bool operator==(const Ideal& b) const { return h_ == b.h_; }
  bool operator<(const Ideal& b) const { return h_ < b.h_; }

  Ideal operator*(const Ideal& b) const;
  Ideal pow(int k) const;
  Ideal operator+(const Ideal& b) const;
  std::vector<AlgebraicNum> generators() const;  // the HNF rows
  std::string to_string() const;

 private:
  NumberField K_;
  ZMat h_;
};

struct PrimeIdeal {
  unsigned long p = 0;
  int e = 0, f = 0;
  Ideal ideal;
  // beta in O with beta*P in pO and beta not in pO; multiplication matrix of beta (rows)
  ZMat beta_mult;
  std::optional<AlgebraicNum> second_generator;  // P = (p, pi) when found
  // residue of omega_i in O/P = F_p (only for f == 1)
  std::vector<u64> residues;

  mpz_class norm() const;
  // ordinary valuation; x != 0
  long valuation(const AlgebraicNum& x) const;
  long valuation_integral(const ZVec& x) const;  // x integral, nonzero
  // reduction of x into F_p; f == 1 and v_P(x) >= 0
  u64 residue(const AlgebraicNum& x) const;
  std::string label() const;  // "p^f" with an index among primes above p added by callers
  bool operator==(const PrimeIdeal& b) const { return ideal == b.ideal; }
};

// primes above p sorted by (f, e, HNF); cached per field
const std::vector<PrimeIdeal>& decompose_prime(const NumberField& K, unsigned long p);

// sparse divisor: index into decompose_prime(K, p) for each p
struct PrimeRef {
  unsigned long p = 0;
  int index = 0;
  bool operator<(const PrimeRef& b) const { return p != b.p ? p < b.p : index < b.index; }
  bool operator==(const PrimeRef& b) const { return p == b.p && index == b.index; }
};
const PrimeIdeal& prime_of(const NumberField& K, const PrimeRef& r);
std::map<PrimeRef, long> element_divisor(const AlgebraicNum& x);
// divisor of x restricted to primes above p
std::vector<long> valuations_above(const AlgebraicNum& x, unsigned long p);

// product of P^{e_P}; for tests of ideal arithmetic
Ideal ideal_from_divisor(const NumberField& K, const std::map<PrimeRef, long>& d);

// Local data at a place above ell.
class LocalPlace {
 public:
  LocalPlace() = default;
  LocalPlace(const NumberField& K, unsigned long ell, int index);

  const NumberField& field() const { return K_; }
  unsigned long ell() const { return ell_; }
  int index() const { return index_; }
  const PrimeIdeal& prime() const;
  int local_degree() const;  // e * f
  // N_{K_P/Q_ell}(x) with at least `prec` digits of relative precision
  PadicScalar local_norm(const AlgebraicNum& x, int prec) const;

 private:
  ZVec idempotent(long k) const;  // e_P mod ell^k
  NumberField K_;
  unsigned long ell_ = 0;
  int index_ = 0;
  std::shared_ptr<std::pair<long, ZVec>> idem_;  // (k, e_P mod ell^k), grown on demand
};

std::vector<LocalPlace> places_above_ell(const NumberField& K, unsigned long ell);

// roots in K of a polynomial with rational coefficients (found through embeddings,
// verified exactly); integral monic g
std::vector<AlgebraicNum> roots_in_field(const NumberField& K, const QPoly& g);
// x^k = a for k >= 2; returns a root when one exists in K (tested through embeddings)
std::optional<AlgebraicNum> kth_root(const AlgebraicNum& a, int k);

// generator of the ell-primary roots of unity and its order ell^m (m = 0: trivial)
std::pair<AlgebraicNum, int> ell_power_roots_of_unity(const NumberField& K, unsigned long ell);

// all embeddings K -> L: images of K's generator in L
std::vector<AlgebraicNum> field_embeddings(const NumberField& K, const NumberField& L);
// image of x under the embedding that sends K's generator to img
AlgebraicNum apply_embedding(const AlgebraicNum& x, const NumberField& L, const AlgebraicNum& img);

}  // namespace logcap
