#pragma once

#include <gmpxx.h>

#include <vector>

#include "logcap/arith.hpp"

namespace logcap {

using ZVec = std::vector<mpz_class>;
using ZMat = std::vector<ZVec>;  // row-major, rows are vectors
using QVec = std::vector<mpq_class>;
using QMat = std::vector<QVec>;

ZMat zmat(size_t r, size_t c);
ZMat zidentity(size_t n);
QMat qidentity(size_t n);
ZMat zmul(const ZMat& a, const ZMat& b);
ZVec zmul(const ZMat& a, const ZVec& x);   // a * x
ZVec zvecmat(const ZVec& x, const ZMat& a);  // x * a
QMat qmul(const QMat& a, const QMat& b);
QVec qvecmat(const QVec& x, const QMat& a);
QMat to_q(const ZMat& a);
ZMat transpose(const ZMat& a);

mpz_class zdet(ZMat a);  // Bareiss
mpq_class qdet(QMat a);
QMat qinverse(const QMat& a);  // throws if singular
bool zvec_is_zero(const ZVec& v);
mpz_class zvec_content(const ZVec& v);

// Row HNF of the lattice spanned by the rows: upper triangular, positive pivots, entries
// above a pivot reduced into [0, pivot). Zero rows dropped; rank-deficient input allowed.
ZMat hnf(const ZMat& rows, size_t ncols);
// same for a full-rank lattice containing D * Z^n
ZMat hnf_mod(const ZMat& rows, size_t ncols, const mpz_class& D);
// lower-triangular variant (row i has its pivot in column i, zeros right of it)
ZMat hnf_lower(const ZMat& rows, size_t ncols);
// coordinates of v in an upper-triangular full-rank HNF basis (exact, may be rational)
QVec hnf_coords(const ZMat& H, const QVec& v);
bool hnf_contains(const ZMat& H, const ZVec& v);

// Incrementally maintained HNF of a lattice in Z^n (rows with pivots).
class IncrementalHnf {
 public:
  explicit IncrementalHnf(size_t n) : n_(n), rows_(n), has_(n, false) {}
  // returns true when the lattice grew
  bool insert(ZVec v);
  size_t rank() const;
  mpz_class determinant() const;  // product of pivots (0 if not full rank)
  ZMat basis() const;            // full HNF rows (upper triangular, reduced)
  size_t dim() const { return n_; }

 private:
  size_t n_;
  ZMat rows_;
  std::vector<bool> has_;
};

// Smith form of Z^n / L for a full-rank L (given by generators), with a transform
// mapping Z^n vectors to coordinates: class of v = (U v)_i mod d_i.
struct IntSnf {
  std::vector<mpz_class> divisors;  // all n, divisibility chain, 1's first
  ZMat U;                           // entries mod det
  mpz_class det;
  ZVec coordinates(const ZVec& v) const;
  std::vector<mpz_class> invariants() const;  // divisors > 1
};
IntSnf int_snf(const ZMat& hnf_basis);

// LLL on real vectors; returns unimodular integer transform T (rows) with rows of T*B reduced.
ZMat lll_transform(const std::vector<std::vector<long double>>& b, long double delta = 0.99L);

// kernel of a matrix over F_p: basis vectors x with A x = 0 (A given by rows)
std::vector<std::vector<u64>> fp_kernel(std::vector<std::vector<u64>> A, size_t ncols, u64 p);
// row echelon basis of the span of the given vectors over F_p
std::vector<std::vector<u64>> fp_span(std::vector<std::vector<u64>> rows, size_t ncols, u64 p);
size_t fp_rank(std::vector<std::vector<u64>> rows, size_t ncols, u64 p);
// solve sum c_i rows_i = target; empty optional if impossible
bool fp_solve(const std::vector<std::vector<u64>>& rows, const std::vector<u64>& target, u64 p,
              std::vector<u64>& coeffs);

}  // namespace logcap
