#pragma once

#include <optional>
#include <vector>

#include "logcap/caps.hpp"
#include "logcap/numfield.hpp"

namespace logcap {

// ordered set of prime ideals used as generators
struct FactorBase {
  NumberField K;
  std::vector<PrimeRef> primes;
  std::vector<unsigned long> rational_primes;  // distinct, ascending

  size_t size() const { return primes.size(); }
  std::optional<size_t> find(const PrimeRef& r) const;
  // exponents of x over the factor base; nullopt when x has support outside it
  std::optional<ZVec> divisor(const AlgebraicNum& x) const;
};

// primes of norm up to the Minkowski bound, all primes above each extra rational prime,
// and the extra prime ideals given explicitly
FactorBase factor_base(const NumberField& K, const std::vector<unsigned long>& extra_rational = {},
                       const std::vector<PrimeRef>& extra = {});

struct Relation {
  AlgebraicNum witness;
  ZVec divisor;
};

struct ClassGroupData {
  FactorBase fb;
  std::vector<Relation> relations;  // each one enlarged the relation lattice
  ZMat lattice;                     // HNF of the relation lattice (empty if not of full rank)
  std::vector<mpz_class> elementary_divisors;  // > 1, divisibility order
  mpz_class h = 0;
  bool full_rank = false;
  bool certified = false;
  IntSnf snf;
  std::vector<AlgebraicNum> units;  // multiplicatively independent units met during the search
  int box = 0;
  long examined = 0;
  double analytic_ratio = 0;  // h R over its analytic prediction (1 when consistent)

  // class of a divisor over fb in the coordinates of elementary_divisors (1's dropped)
  ZVec class_of(const ZVec& divisor) const;
};

ClassGroupData class_group(const NumberField& K, const Caps& caps = {}, const std::vector<unsigned long>& extra_rational = {},
                           const std::vector<PrimeRef>& extra = {});

struct UnitGroup {
  AlgebraicNum torsion_generator;
  long torsion_order = 2;
  std::vector<AlgebraicNum> fundamental;
};
// rank <= 1 only (rank 1 outside real quadratic fields comes from the relation search)
UnitGroup unit_group(const NumberField& K, const Caps& caps = {});
// minimal unit > 1 of a real quadratic field by continued fractions
AlgebraicNum real_quadratic_unit(const NumberField& K);

struct SUnitBasis {
  FactorBase S;
  std::vector<AlgebraicNum> witnesses;  // S-units generating Z_ell (x) S-units modulo torsion
  ZMat exponents;                       // divisor of each witness over S (rows)
  size_t unit_count = 0;                // witnesses with empty divisor
  AlgebraicNum torsion;                 // generator of the ell-primary roots of unity
  int torsion_exponent = 0;             // its order is ell^torsion_exponent
  // words over the witnesses that pass every ell-th power character test but could not be
  // extracted; the caller may divide their image by ell (probabilistic)
  std::vector<ZVec> pending;
  bool class_group_certified = false;
  bool saturated = false;  // index prime to ell certified by characters and root extraction
  int character_primes = 0;
  mpz_class h = 0;
  std::vector<mpz_class> class_group;  // elementary divisors of Cl(O)
};

SUnitBasis s_unit_relations(const NumberField& K, const std::vector<PrimeRef>& S, unsigned long ell, const Caps& caps = {},
                            const std::vector<unsigned long>& extra_rational = {});

enum class Principality { principal, not_principal, inconclusive };
struct PrincipalityResult {
  Principality verdict = Principality::inconclusive;
  std::optional<AlgebraicNum> generator;
};
PrincipalityResult principality_test(const Ideal& a, const Caps& caps = {});
PrincipalityResult principality_test(const ClassGroupData& cg, const ZVec& divisor);

// integer solution c of c * R = v (R given by rows)
std::optional<ZVec> integer_solve(const ZMat& R, const ZVec& v);

}  // namespace logcap
