#pragma once

#include <gmpxx.h>

#include "json.hpp"
#include <optional>
#include <vector>

#include "logcap/padic.hpp"

namespace logcap {

using ZVec = std::vector<mpz_class>;

// Dense matrix over Z/ell^N, entries kept in [0, ell^N).
class ZlMatrix {
 public:
  ZlMatrix() = default;
  ZlMatrix(unsigned long ell, int prec, size_t rows, size_t cols);
  static ZlMatrix identity(unsigned long ell, int prec, size_t n);

  unsigned long ell() const { return ell_; }
  int precision() const { return prec_; }
  const mpz_class& modulus() const { return mod_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  const mpz_class& at(size_t r, size_t c) const { return a_[r * cols_ + c]; }
  void set(size_t r, size_t c, const mpz_class& v);

  ZlMatrix operator*(const ZlMatrix& b) const;
  bool operator==(const ZlMatrix& b) const;
  ZVec apply(const ZVec& x) const;

  ZlMatrix reduced(int prec) const;  // same entries mod ell^prec
  ZlMatrix without_row(size_t r) const;
  ZlMatrix transpose() const;
  void append_column(const ZVec& col);

  void swap_rows(size_t i, size_t j);
  void swap_cols(size_t i, size_t j);
  // row i += f * row j
  void add_row(size_t i, size_t j, const mpz_class& f);
  void add_col(size_t i, size_t j, const mpz_class& f);
  void scale_row(size_t i, const mpz_class& f);

  nlohmann::json to_json() const;
  static ZlMatrix from_json(const nlohmann::json& j);

 private:
  unsigned long ell_ = 2;
  int prec_ = 1;
  mpz_class mod_ = 2;
  size_t rows_ = 0, cols_ = 0;
  std::vector<mpz_class> a_;
};

// U A V = D with D diagonal, D_ii = ell^{a_i} (a_i == N means 0 at precision)
struct ModuleDecomposition {
  unsigned long ell = 2;
  int precision = 1;
  size_t generators = 0;           // rows of the presented matrix
  std::vector<int> diagonal;       // exponents a_i, i < min(rows, cols)
  int free_rank = 0;               // divisors 0 at precision, counting rows beyond cols
  std::vector<int> torsion;        // exponents 0 < a_i < N, nondecreasing
  ZlMatrix U, V;

  // exponent of generator i of the cokernel: 0 trivial, N free at precision
  int generator_exponent(size_t i) const;
  // coordinates of a vector of Z^g in the cokernel, reduced mod ell^{exponent}
  ZVec class_coordinates(const ZVec& x) const;
  bool is_trivial_class(const ZVec& x) const;
  int exponent() const { return torsion.empty() ? 0 : torsion.back(); }
  std::vector<mpz_class> torsion_orders() const;
  nlohmann::json to_json() const;
};

ModuleDecomposition smith_normal_form(const ZlMatrix& A);
ModuleDecomposition quotient_presentation(size_t generators, const ZlMatrix& relations);
std::optional<ZVec> solve_linear(const ZlMatrix& A, const ZVec& b);
std::optional<ZVec> solve_linear(const ModuleDecomposition& snf, const ZlMatrix& A, const ZVec& b);

// determinant of a square matrix as an ell-adic value known mod ell^N
PadicScalar determinant(const ZlMatrix& A);

// invariants of the subgroup of prod Z/ell^{e_k} (given generators, orders) sent to zero
// by a linear map into a finite group; used for capitulation kernels
std::vector<int> group_invariants_from_counts(unsigned long ell, const std::vector<mpz_class>& counts);

}  // namespace logcap
