#include <doctest.h>

#include <algorithm>

#include "logcap/numfield.hpp"
#include "logcap/poly.hpp"
#include "support.hpp"

using namespace logcap;

namespace {

// HNF of the Z-module spanned by basis rows given in power-basis coordinates, scaled by d
ZMat scaled_hnf(const QMat& rows, const mpz_class& d) {
  ZMat z;
  for (auto& r : rows) {
    ZVec v;
    for (auto& q : r) {
      mpq_class s = q * d;
      REQUIRE(s.get_den() == 1);
      v.push_back(s.get_num());
    }
    z.push_back(v);
  }
  return hnf(z, rows.size());
}

AlgebraicNum random_element(const NumberField& K, Rng& rng, long box) {
  while (true) {
    ZVec c(K.degree());
    for (auto& x : c) x = rng.range(-box, box);
    AlgebraicNum a(K, c);
    if (!a.is_zero()) return a;
  }
}

std::vector<std::pair<int, int>> ef_pairs(const NumberField& K, unsigned long p) {
  std::vector<std::pair<int, int>> v;
  for (auto& P : decompose_prime(K, p)) v.push_back({P.e, P.f});
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("field construction examples") {
  auto K = NumberField::build("x^2+1");
  CHECK(K.discriminant() == -4);
  CHECK(K.index() == 1);
  auto F = NumberField::build("x^2-5");
  CHECK(F.discriminant() == 5);
  CHECK(F.index() == 2);
  CHECK(F.basis()[1] == QVec{mpq_class(1, 2), mpq_class(1, 2)});
  auto G = NumberField::build("x^2+23");
  CHECK(G.discriminant() == -23);
  CHECK(G.r2() == 1);

  CHECK_THROWS_AS(NumberField::build("x^2-4"), InvalidInput);
  CHECK_THROWS_AS(NumberField::build("2*x^2+1"), InvalidInput);
  CHECK_THROWS_AS(NumberField::build("x^2+*"), InvalidInput);
  CHECK_THROWS_AS(NumberField::build("x^9+2"), CapsExceeded);
  Caps small;
  small.max_disc = 100;
  CHECK_THROWS_AS(NumberField::build("x^2+103", small), CapsExceeded);
}

TEST_CASE("fields fixture: discriminant, index, signature, order, decomposition") {
  for (auto& e : testing::fixture("fields.json")) {
    const std::string f = e.at("field");
    INFO(f);
    auto K = NumberField::build(f);
    CHECK(K.discriminant() == mpz_class(e.at("disc").get<std::string>()));
    CHECK(K.index() == mpz_class(e.at("index").get<std::string>()));
    CHECK(K.r1() == e.at("signature")[0].get<int>());
    CHECK(K.r2() == e.at("signature")[1].get<int>());

    // both integral bases span the same order
    QMat theirs;
    for (auto& row : e.at("basis")) {
      QVec v;
      for (auto& c : row) v.push_back(mpq_class(c.get<std::string>()));
      v.resize(K.degree(), 0);
      theirs.push_back(v);
    }
    const mpz_class d = K.index() * K.index();
    CHECK(scaled_hnf(theirs, d) == scaled_hnf(K.basis(), d));

    for (auto& [p, parts] : e.at("decomposition").items()) {
      std::vector<std::pair<int, int>> want;
      for (auto& ef : parts) want.push_back({ef[0].get<int>(), ef[1].get<int>()});
      std::sort(want.begin(), want.end());
      CHECK(ef_pairs(K, std::stoul(p)) == want);
    }
  }
}

TEST_CASE("prime decomposition in Q(i)") {
  auto K = NumberField::build("x^2+1");
  CHECK(ef_pairs(K, 5) == std::vector<std::pair<int, int>>{{1, 1}, {1, 1}});
  CHECK(ef_pairs(K, 2) == std::vector<std::pair<int, int>>{{2, 1}});
  CHECK(ef_pairs(K, 3) == std::vector<std::pair<int, int>>{{1, 2}});
  auto& above5 = decompose_prime(K, 5);
  CHECK(above5[0].ideal * above5[1].ideal == Ideal::principal(AlgebraicNum::from_int(K, 5)));
  CHECK(decompose_prime(K, 2)[0].norm() == 2);
  CHECK(above5[0].ideal * Ideal::unit(K) == above5[0].ideal);
}

TEST_CASE("decomposition invariants") {
  for (const char* f : {"x^2+1", "x^2-5", "x^3-2", "x^3-19", "x^4-10*x^2+1", "x^4+5*x^2+5", "x^6+x^3+1"}) {
    auto K = NumberField::build(f);
    for (u64 p : primes_up_to(60)) {
      INFO(f << " p=" << p);
      auto& ps = decompose_prime(K, p);
      int s = 0;
      for (auto& P : ps) {
        s += P.e * P.f;
        CHECK(P.norm() == ell_pow(p, P.f));
        CHECK(P.ideal.contains(AlgebraicNum::from_int(K, p)));
      }
      CHECK(s == K.degree());
      for (size_t i = 0; i < ps.size(); ++i)
        for (size_t j = i + 1; j < ps.size(); ++j) CHECK_FALSE(ps[i].ideal == ps[j].ideal);
      // product of P^e is (p)
      std::map<PrimeRef, long> d;
      for (size_t i = 0; i < ps.size(); ++i) d[{p, static_cast<int>(i)}] = ps[i].e;
      CHECK(ideal_from_divisor(K, d) == Ideal::principal(AlgebraicNum::from_int(K, p)));
    }
  }
}

TEST_CASE("element divisors") {
  auto K = NumberField::build("x^2+1");
  AlgebraicNum two_plus_i = AlgebraicNum::from_power_basis(K, {2, 1});
  auto d = element_divisor(two_plus_i);
  REQUIRE(d.size() == 1);
  CHECK(d.begin()->first.p == 5);
  CHECK(d.begin()->second == 1);
  CHECK(element_divisor(K.one()).empty());
  auto Q = NumberField::build("x");
  auto six = element_divisor(AlgebraicNum::from_int(Q, 6));
  CHECK(six == std::map<PrimeRef, long>{{{2, 0}, 1}, {{3, 0}, 1}});

  Rng rng(8);
  for (const char* f : {"x^2+23", "x^3-2", "x^4+1", "x^3+x^2-2*x+8"}) {
    auto L = NumberField::build(f);
    for (int k = 0; k < 20; ++k) {
      auto x = random_element(L, rng, 12), y = random_element(L, rng, 12);
      auto dx = element_divisor(x), dy = element_divisor(y), dxy = element_divisor(x * y);
      for (auto& [r, v] : dy) dx[r] += v;
      std::erase_if(dx, [](auto& kv) { return kv.second == 0; });
      CHECK(dx == dxy);
      // |N(x)| = prod N(P)^v
      mpq_class n = 1;
      for (auto& [r, v] : element_divisor(x)) {
        const long k = prime_of(L, r).f * v;
        n *= k > 0 ? mpq_class(ell_pow(r.p, k)) : mpq_class(mpz_class(1), ell_pow(r.p, -k));
      }
      CHECK(abs(x.norm()) == n);
    }
  }
}

TEST_CASE("HNF canonicity") {
  auto K = NumberField::build("x^3-19");
  auto& ps = decompose_prime(K, 7);
  for (auto& P : ps) {
    Ideal a = P.ideal * P.ideal, b = P.ideal.pow(2);
    CHECK(a == b);
    CHECK(a.hnf() == b.hnf());
    CHECK(a.norm() == P.norm() * P.norm());
  }
}

TEST_CASE("local norms multiply to the global norm") {
  Rng rng(21);
  struct Case {
    const char* f;
    unsigned long ell;
  };
  for (auto [f, ell] : {Case{"x", 3}, Case{"x^2-7", 3}, Case{"x^2+23", 3}, Case{"x^2+1", 2}, Case{"x^3-2", 5},
                        Case{"x^4-10*x^2+1", 3}, Case{"x^6-3*x^5+7*x^4-9*x^3+7*x^2-3*x+1", 3}}) {
    auto K = NumberField::build(f);
    auto places = places_above_ell(K, ell);
    int deg = 0;
    for (auto& P : places) deg += P.local_degree();
    CHECK(deg == K.degree());
    for (int k = 0; k < 10; ++k) {
      auto x = random_element(K, rng, 20);
      PadicScalar prod = PadicScalar::from_integer(ell, 1, 40);
      for (auto& P : places) prod *= P.local_norm(x, 40);
      INFO(f << " x=" << x.to_string());
      CHECK(prod.equals(PadicScalar::from_rational(ell, x.norm(), 40), kSlack));
    }
  }
  // split quadratic: the local norm is evaluation at a Hensel root of x^2 + 23
  auto K = NumberField::build("x^2+23");
  auto places = places_above_ell(K, 3);
  REQUIRE(places.size() == 2);
  for (auto& P : places) {
    auto r = P.local_norm(K.generator(), 30);
    CHECK((r * r + PadicScalar::from_integer(3, 23, 30)).is_zero_within(kSlack));
  }
}

TEST_CASE("polynomial parsing") {
  CHECK(poly_to_string(parse_polynomial("x^3 - 2*x + 1")) == "x^3-2*x+1");
  CHECK_THROWS_AS(parse_polynomial("x^^2"), PolyParseError);
  CHECK_THROWS_AS(parse_polynomial(""), PolyParseError);
}
