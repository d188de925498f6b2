#pragma once

#include <map>
#include <mutex>

#include "logcap/numfield.hpp"

namespace logcap {

struct FieldData {
  QPoly f;
  int n = 0;
  mpz_class disc, index, poly_disc;
  int r1 = 0, r2 = 0;
  QMat basis, basis_inv;
  std::vector<std::vector<ZVec>> table;
  std::vector<mpz_class> traces;  // Tr(omega_i)
  std::vector<Complex> roots;
  std::vector<std::vector<Complex>> bvals;
  ZMat reduced;
  long double minkowski = 0;

  mutable std::mutex mu;
  mutable std::map<unsigned long, std::vector<PrimeIdeal>> primes;
};

// x * y for integral coordinate vectors
ZVec mul_coords(const FieldData& d, const ZVec& x, const ZVec& y);
// same, reduced mod m into [0, m)
ZVec mul_coords_mod(const FieldData& d, const ZVec& x, const ZVec& y, const mpz_class& m);
std::vector<u64> mul_coords_fp(const FieldData& d, const std::vector<u64>& x, const std::vector<u64>& y, u64 p);

// lower-triangular HNF of the lattice spanned by rows and D * Z^n
ZMat lower_hnf_mod(const ZMat& rows, size_t n, const mpz_class& D);

}  // namespace logcap
