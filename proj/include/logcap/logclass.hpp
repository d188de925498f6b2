#pragma once

#include <map>
#include <memory>
#include <vector>

#include "logcap/caps.hpp"
#include "logcap/numfield.hpp"
#include "logcap/padic.hpp"
#include "logcap/units_classes.hpp"
#include "logcap/zlmod.hpp"

namespace logcap {

// formal product of nonzero elements with exponents in Z/ell^N
struct ElementWord {
  std::vector<std::pair<AlgebraicNum, mpz_class>> factors;

  static ElementWord of(const AlgebraicNum& x);
  ElementWord& times(const AlgebraicNum& x, const mpz_class& k);
};

struct LogPlace {
  PrimeRef ref;
  bool above_ell = false;
  int e = 1, f = 1;
  PadicScalar degree;  // Log N(p) away from ell, ell^c above ell
  int c = 0;           // v_ell(degree)
  // above ell: logarithmic ramification and inertia over Q (e f = e_tilde f_tilde);
  // the ell-part of f_tilde is ell^(c - c_Q) and its prime-to-ell part that of f
  mpz_class e_tilde = 1, f_tilde = 1;
  PadicScalar sampled_generator;  // the sampled Log N value of least valuation (above ell)
};

struct LogDivisor {
  std::map<PrimeRef, PadicScalar> coeff;

  bool is_zero() const;
  LogDivisor operator+(const LogDivisor& b) const;
  LogDivisor scaled(const mpz_class& k) const;
};

// logarithmic arithmetic of K at ell with N digits
class LogContext {
 public:
  LogContext(const NumberField& K, unsigned long ell, int prec = kDefaultPrecision);

  const NumberField& field() const { return K_; }
  unsigned long ell() const { return ell_; }
  int precision() const { return prec_; }
  const std::vector<LogPlace>& ell_places() const { return *ell_places_; }
  LogPlace place(const PrimeRef& r) const;

  // digits == 0 means the context precision
  PadicScalar log_valuation(const AlgebraicNum& x, const PrimeRef& p, int digits = 0) const;
  PadicScalar log_valuation(const ElementWord& w, const PrimeRef& p) const;
  LogDivisor log_divisor(const AlgebraicNum& x, int digits = 0) const;
  LogDivisor log_divisor(const ElementWord& w) const;
  PadicScalar degree(const LogDivisor& d) const;
  bool is_log_unit(const AlgebraicNum& x) const;
  bool is_log_unit(const ElementWord& w) const;

  // guard digits carried by the degrees of places away from ell
  static constexpr int kGuard = 16;

 private:
  NumberField K_;
  unsigned long ell_;
  int prec_;
  std::shared_ptr<std::vector<LogPlace>> ell_places_;
  std::shared_ptr<std::vector<LocalPlace>> locals_;
};

struct LogClassGroup {
  NumberField K;
  unsigned long ell = 2;
  int precision = kDefaultPrecision;
  std::vector<LogPlace> T;                  // generators
  std::vector<AlgebraicNum> witnesses;      // one relation column each
  size_t pending_columns = 0;               // trailing columns div(w)/ell from unextracted words
  ZlMatrix relations;                       // |T| x columns
  ModuleDecomposition full;                 // C_K
  size_t t0 = 0;                            // generator dropped for the degree-zero part
  ModuleDecomposition degree_zero;          // C~_K on T minus t0
  std::vector<int> torsion;                 // exponents of C~_K^tor
  int epsilon_tilde = 0;
  int gross_kuzmin_candidates = 0;          // free-at-precision summands of C~_K
  bool split_consistent = false;            // C_K = Z_ell + C~_K on the computed invariants
  bool class_group_certified = false;
  bool saturated = false;                   // false: probabilistic (pending columns or open kernel)
  mpz_class h = 0;
  std::vector<mpz_class> class_group;       // elementary divisors of Cl(O)

  std::optional<size_t> index_of(const PrimeRef& r) const;
  // coefficient vector over T of a divisor supported on T (mod ell^N)
  ZVec vector_of(const LogDivisor& d) const;
  // class in C~_K of a degree-zero vector over T
  ZVec class_of(const ZVec& v) const;
  bool is_trivial(const ZVec& v) const;
  // generators of C~_K^tor as degree-zero vectors over T, with exponents
  std::vector<std::pair<ZVec, int>> torsion_generators() const;
  std::vector<mpz_class> torsion_orders() const;
};

LogClassGroup log_class_group(const NumberField& K, unsigned long ell, int prec = kDefaultPrecision, const Caps& caps = {},
                              const std::vector<unsigned long>& extra_rational = {});

}  // namespace logcap
