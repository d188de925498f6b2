#include <doctest.h>

#include "logcap/units_classes.hpp"
#include "support.hpp"

using namespace logcap;

namespace {

std::string quadratic(long d) {
  return "x^2" + (d > 0 ? "-" + std::to_string(d) : "+" + std::to_string(-d));
}

// smallest y > 0 with d y^2 +- 1 (or +- 4 when d = 1 mod 4) a square, by brute force
std::optional<std::pair<mpz_class, mpz_class>> pell_brute(long d, long ymax) {
  const long k = d % 4 == 1 ? 4 : 1;
  for (long y = 1; y <= ymax; ++y)
    for (long s : {-k, k}) {
      mpz_class n = mpz_class(d) * y * y + s;
      if (n <= 0) continue;
      mpz_class x = isqrt(n);
      if (x * x == n) return std::make_pair(x, mpz_class(y));
    }
  return std::nullopt;
}

// a in Q(sqrt d) = Q[x]/(x^2 - d) from (u + v x) / w
AlgebraicNum quad(const NumberField& K, const mpz_class& u, const mpz_class& v, long w) {
  return AlgebraicNum::from_power_basis(K, {mpq_class(u, w), mpq_class(v, w)});
}

bool same_up_to_sign_and_inverse(const AlgebraicNum& a, const AlgebraicNum& b) {
  return a == b || a == -b || a == b.inverse() || a == -b.inverse();
}

}  // namespace

TEST_CASE("class group examples") {
  auto i = class_group(NumberField::build("x^2+1"));
  CHECK(i.h == 1);
  CHECK(i.certified);
  auto c23 = class_group(NumberField::build("x^2+23"));
  CHECK(c23.h == 3);
  CHECK(c23.elementary_divisors == std::vector<mpz_class>{3});
  CHECK(c23.certified);
  auto c5 = class_group(NumberField::build("x^2+5"));
  CHECK(c5.h == 2);
  auto Q = class_group(NumberField::build("x"));
  CHECK(Q.h == 1);
}

TEST_CASE("class numbers of imaginary quadratic fields match reduced forms") {
  // twenty sampled discriminants; the full range is an acceptance criterion
  for (long d : {-3, -5, -14, -17, -21, -23, -26, -29, -31, -41, -47, -55, -58, -65, -71, -79, -89, -95, -194, -311}) {
    INFO("d=" << d);
    auto cg = class_group(NumberField::build(quadratic(d)));
    CHECK(cg.certified);
    CHECK(cg.h == testing::reduced_form_count(testing::field_discriminant_quadratic(d)));
  }
}

TEST_CASE("class groups: witnesses reproduce their columns, h is the product of divisors") {
  for (const char* f : {"x^2+23", "x^2-79", "x^3-19", "x^2+161", "x^4+5*x^2+5"}) {
    INFO(std::string(f));
    auto K = NumberField::build(f);
    auto cg = class_group(K);
    REQUIRE(cg.certified);
    for (auto& r : cg.relations) {
      auto d = cg.fb.divisor(r.witness);
      REQUIRE(d);
      CHECK(*d == r.divisor);
    }
    mpz_class p = 1;
    for (auto& e : cg.elementary_divisors) p *= e;
    CHECK(p == cg.h);
    CHECK(cg.analytic_ratio > 0.5);
    CHECK(cg.analytic_ratio < 1.5);
  }
  CHECK(class_group(NumberField::build("x^2+161")).elementary_divisors == std::vector<mpz_class>{2, 8});
  CHECK(class_group(NumberField::build("x^3-19")).h == 3);
}

TEST_CASE("unit groups") {
  auto K = NumberField::build("x^2+23");
  auto U = unit_group(K);
  CHECK(U.torsion_order == 2);
  CHECK(U.fundamental.empty());
  CHECK(unit_group(NumberField::build("x^2+1")).torsion_order == 4);
  CHECK(unit_group(NumberField::build("x^2+3")).torsion_order == 6);

  auto R2 = NumberField::build("x^2-2");
  CHECK(same_up_to_sign_and_inverse(real_quadratic_unit(R2), quad(R2, 1, 1, 1)));
  auto R5 = NumberField::build("x^2-5");
  CHECK(same_up_to_sign_and_inverse(real_quadratic_unit(R5), quad(R5, 1, 1, 2)));

  CHECK_THROWS_AS(unit_group(NumberField::build("x^3-3*x+1")), Unsupported);
}

TEST_CASE("fundamental units of real quadratic fields are minimal") {
  for (long d = 2; d < 120; ++d) {
    if (!is_squarefree(mpz_class(d))) continue;
    auto want = pell_brute(d, 300000);
    if (!want) continue;
    INFO("d=" << d);
    auto K = NumberField::build(quadratic(d));
    auto u = real_quadratic_unit(K);
    CHECK(abs(u.norm()) == 1);
    CHECK(element_divisor(u).empty());
    const long w = d % 4 == 1 ? 2 : 1;
    CHECK(same_up_to_sign_and_inverse(u, quad(K, want->first, want->second, w)));
  }
}

TEST_CASE("S-unit relations") {
  auto Q = NumberField::build("x");
  auto sq = s_unit_relations(Q, {{3, 0}}, 3);
  bool found3 = false;
  for (auto& w : sq.witnesses) found3 = found3 || abs(w.norm()) == 3;
  CHECK(found3);

  for (const char* f : {"x^2+1", "x^2+23", "x^2+31", "x^2-10", "x^3-19"}) {
    for (unsigned long ell : {2ul, 3ul}) {
      INFO(std::string(f) << " ell=" << ell);
      auto K = NumberField::build(f);
      std::vector<PrimeRef> S;
      for (size_t i = 0; i < decompose_prime(K, ell).size(); ++i) S.push_back({ell, static_cast<int>(i)});
      auto su = s_unit_relations(K, S, ell);
      CHECK(su.saturated);
      for (auto& s : S) CHECK(su.S.find(s));
      // each witness is an S-unit with the stored divisor
      size_t units = 0;
      for (size_t i = 0; i < su.witnesses.size(); ++i) {
        auto d = su.S.divisor(su.witnesses[i]);
        REQUIRE(d);
        CHECK(*d == su.exponents[i]);
        units += zvec_is_zero(*d);
      }
      CHECK(units == su.unit_count);
      // the divisor lattice has index h up to a factor prime to ell
      ZMat H = hnf(su.exponents, su.S.size());
      REQUIRE(H.size() == su.S.size());
      mpz_class index = 1;
      for (size_t i = 0; i < H.size(); ++i) index *= H[i][i];
      CHECK(testing::vl(index, ell) == testing::vl(su.h, ell));
    }
  }
}

TEST_CASE("principality") {
  auto K = NumberField::build("x^2+1");
  auto five = Ideal::principal(AlgebraicNum::from_int(K, 5));
  auto r = principality_test(five);
  REQUIRE(r.verdict == Principality::principal);
  REQUIRE(r.generator);
  CHECK(Ideal::principal(*r.generator) == five);

  auto L = NumberField::build("x^2+23");
  auto& P = decompose_prime(L, 3)[0];
  CHECK(principality_test(P.ideal).verdict == Principality::not_principal);
  auto P3 = P.ideal.pow(3);
  auto r3 = principality_test(P3);
  REQUIRE(r3.verdict == Principality::principal);
  REQUIRE(r3.generator);
  CHECK(abs(r3.generator->norm()) == 27);
  CHECK(Ideal::principal(*r3.generator) == P3);
}
