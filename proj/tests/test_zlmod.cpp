#include <doctest.h>

#include "logcap/zlmod.hpp"
#include "support.hpp"

using namespace logcap;

namespace {

ZlMatrix from_rows(unsigned long ell, int N, const std::vector<std::vector<long>>& rows) {
  ZlMatrix A(ell, N, rows.size(), rows.empty() ? 0 : rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) A.set(i, j, rows[i][j]);
  return A;
}

ZMat random_integer_matrix(Rng& rng, unsigned long ell, size_t r, size_t c) {
  ZMat A(r, ZVec(c));
  for (auto& row : A)
    for (auto& x : row) x = rng.range(-5, 5) * ell_pow(ell, static_cast<long>(rng.below(3)));
  return A;
}

ZlMatrix reduce(const ZMat& A, unsigned long ell, int N) {
  ZlMatrix M(ell, N, A.size(), A.empty() ? 0 : A[0].size());
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[i].size(); ++j) M.set(i, j, A[i][j]);
  return M;
}

void check_snf_contract(const ZlMatrix& A, const ModuleDecomposition& M) {
  const int N = A.precision();
  ZlMatrix D = M.U * A * M.V;
  for (size_t i = 0; i < A.rows(); ++i)
    for (size_t j = 0; j < A.cols(); ++j) {
      mpz_class want = 0;
      if (i == j && M.diagonal[i] < N) want = ell_pow(A.ell(), M.diagonal[i]);
      CHECK(D.at(i, j) == want);
    }
  CHECK(determinant(M.U).is_unit());
  CHECK(determinant(M.V).is_unit());
  for (size_t i = 1; i < M.diagonal.size(); ++i) CHECK(M.diagonal[i - 1] <= M.diagonal[i]);
}

}  // namespace

TEST_CASE("Smith form examples") {
  auto M = smith_normal_form(from_rows(3, 10, {{3, 0}, {0, 1}}));
  CHECK(M.diagonal == std::vector<int>{0, 1});

  auto Z = smith_normal_form(ZlMatrix(3, 10, 2, 3));
  CHECK(Z.free_rank == 2);
  CHECK(Z.torsion.empty());

  // [[3,6],[9,12]]: d1 = gcd = 3, d1 d2 = |det| = 18 so the exponents are (1, 1)
  auto A = from_rows(3, 5, {{3, 6}, {9, 12}});
  auto S = smith_normal_form(A);
  CHECK(S.diagonal == std::vector<int>{1, 1});
  CHECK(S.diagonal == testing::minors_exponents({{3, 6}, {9, 12}}, 3, 5));
  check_snf_contract(A, S);
}

TEST_CASE("Smith form contract and gcd-of-minors oracle on random matrices") {
  Rng rng(99);
  for (int k = 0; k < 200; ++k) {
    const unsigned long ell = k % 2 ? 3 : 2;
    const int N = k % 4 < 2 ? 16 : 64;
    const size_t r = 1 + rng.below(5), c = 1 + rng.below(5);
    ZMat A = random_integer_matrix(rng, ell, r, c);
    auto Zl = reduce(A, ell, N);
    auto M = smith_normal_form(Zl);
    INFO("case " << k);
    check_snf_contract(Zl, M);
    CHECK(M.diagonal == testing::minors_exponents(A, ell, N));
    // idempotence
    ZlMatrix D = M.U * Zl * M.V;
    CHECK(smith_normal_form(D).diagonal == M.diagonal);
  }
}

TEST_CASE("linear solving") {
  auto I = ZlMatrix::identity(3, 8, 3);
  ZVec b{5, 7, 11};
  auto x = solve_linear(I, b);
  REQUIRE(x);
  CHECK(*x == b);

  CHECK_FALSE(solve_linear(from_rows(3, 3, {{3}}), ZVec{1}));

  Rng rng(1);
  for (int k = 0; k < 50; ++k) {
    auto A = reduce(random_integer_matrix(rng, 3, 3, 3), 3, 4);
    ZVec x0(3);
    for (auto& v : x0) v = rng.range(0, 80);
    ZVec rhs = A.apply(x0);
    auto sol = solve_linear(A, rhs);
    REQUIRE(sol);
    CHECK(A.apply(*sol) == rhs);
  }
}

TEST_CASE("solvability matches divisibility after the Smith transform") {
  Rng rng(17);
  for (int k = 0; k < 100; ++k) {
    const unsigned long ell = k % 2 ? 3 : 2;
    const int N = 12;
    auto A = reduce(random_integer_matrix(rng, ell, 1 + rng.below(4), 1 + rng.below(4)), ell, N);
    ZVec b(A.rows());
    for (auto& v : b) v = rng.range(0, 200);
    auto M = smith_normal_form(A);
    ZVec ub = M.U.apply(b);
    bool divisible = true;
    for (size_t i = 0; i < ub.size(); ++i) {
      int a = i < M.diagonal.size() ? M.diagonal[i] : N;
      divisible = divisible && mpz_divisible_p(ub[i].get_mpz_t(), ell_pow(ell, std::min(a, N)).get_mpz_t());
    }
    auto sol = solve_linear(A, b);
    CHECK(static_cast<bool>(sol) == divisible);
    if (sol) CHECK(A.apply(*sol) == b);
  }
}

TEST_CASE("quotient presentations") {
  auto P = quotient_presentation(1, ZlMatrix(3, 10, 1, 0));
  CHECK(P.free_rank == 1);
  CHECK(P.torsion.empty());

  auto Q = quotient_presentation(2, from_rows(3, 10, {{3}, {0}}));
  CHECK(Q.free_rank == 1);
  CHECK(Q.torsion == std::vector<int>{1});

  // Z/3 + Z/9 presented with redundant generators and mixed relations
  ZMat R0 = {{3, 0, 0, 0}, {0, 9, 0, 0}, {0, 0, 1, 0}};
  ZMat U = {{1, 2, 0}, {0, 1, 5}, {0, 0, 1}}, V = {{1, 1, 0, 2}, {0, 1, 0, 0}, {0, 3, 1, 0}, {0, 0, 0, 1}};
  auto R = quotient_presentation(3, reduce(zmul(zmul(U, R0), V), 3, 10));
  CHECK(R.free_rank == 0);
  CHECK(R.torsion == std::vector<int>{1, 2});
  CHECK(R.torsion_orders() == std::vector<mpz_class>{3, 9});
}

TEST_CASE("torsion divisors are stable under precision refinement") {
  Rng rng(5);
  for (int k = 0; k < 60; ++k) {
    const unsigned long ell = k % 2 ? 3 : 2;
    ZMat A = random_integer_matrix(rng, ell, 1 + rng.below(5), 1 + rng.below(5));
    auto lo = smith_normal_form(reduce(A, ell, 16)), hi = smith_normal_form(reduce(A, ell, 24));
    for (size_t i = 0; i < lo.diagonal.size(); ++i)
      if (lo.diagonal[i] <= 8) CHECK(hi.diagonal[i] == lo.diagonal[i]);
  }
}

TEST_CASE("matrix JSON round trip") {
  auto A = from_rows(5, 6, {{1, 2, 3}, {-1, 25, 0}});
  CHECK(ZlMatrix::from_json(A.to_json()) == A);
}
