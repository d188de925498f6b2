#include <doctest.h>

#include "logcap/arith.hpp"
#include "logcap/padic.hpp"
#include "support.hpp"

using namespace logcap;

namespace {
PadicScalar Z(unsigned long ell, long n, int prec = kDefaultPrecision) {
  return PadicScalar::from_integer(ell, mpz_class(n), prec);
}
}  // namespace

TEST_CASE("ring operations") {
  auto s = Z(3, 1) + Z(3, 2);
  CHECK(s.valuation() == 1);
  CHECK(s.unit() == 1);

  auto x = Z(3, 2, 10);
  CHECK((x * (Z(3, 1, 10) / x)).equals(Z(3, 1, 10)));

  // 1/2 mod 3^N is (3^N + 1) / 2
  auto half = Z(3, 1, 12) / Z(3, 2, 12);
  mpz_class m = ell_pow(3, 12);
  CHECK(half.residue(12) == (m + 1) / 2);
  CHECK((half.residue(12) * 2) % m == 1);

  CHECK_THROWS_AS(Z(3, 1) / PadicScalar::zero(3, 10), PadicError);
  CHECK_THROWS(Z(3, 1) + Z(5, 1));
}

TEST_CASE("cancellation lowers the precision") {
  auto a = Z(3, 1 + 81, 20);  // 1 + 3^4
  auto d = a - Z(3, 1, 20);
  CHECK(d.valuation() == 4);
  CHECK(d.abs_prec() == 20);
  CHECK(d.rel_prec() == 16);
  auto z = a - a;
  CHECK(z.is_zero());
  CHECK(z.abs_prec() == 20);
}

TEST_CASE("string rendering round-trips") {
  Rng rng(11);
  for (unsigned long ell : {2ul, 3ul, 5ul, 7ul}) {
    for (int k = 0; k < 20; ++k) {
      auto x = PadicScalar::from_parts(ell, rng.range(-3, 5), mpz_class(static_cast<long>(rng.below(1000000) * ell + 1)), 16);
      auto y = PadicScalar::parse(x.to_string());
      CHECK(y.valuation() == x.valuation());
      CHECK(y.rel_prec() == x.rel_prec());
      CHECK(y.unit() == x.unit());
    }
    auto z = PadicScalar::zero(ell, 7);
    CHECK(PadicScalar::parse(z.to_string()).abs_prec() == 7);
  }
}

TEST_CASE("Iwasawa log conventions") {
  for (unsigned long ell : {2ul, 3ul, 5ul, 7ul}) {
    CHECK(iwasawa_log(Z(ell, ell)).is_zero());
    CHECK(iwasawa_log(Z(ell, -1)).is_zero());
    CHECK(iwasawa_log(Z(ell, ell * ell * ell)).is_zero());
  }
  CHECK(iwasawa_log(Z(3, 4)).valuation() == 1);
  CHECK(iwasawa_log(Z(5, 6)).valuation() == 1);
  CHECK(iwasawa_log(Z(2, 5)).valuation() == 2);
  CHECK_THROWS_AS(iwasawa_log(PadicScalar::zero(3, 10)), PadicError);
}

TEST_CASE("Iwasawa log against the series oracle") {
  // Log_3(4) at N = 8 summed directly, then Log(4) = 2 Log(2) with Log(2) = Log(2^2) / 2
  const int N = 8;
  mpz_class l4 = testing::residue_of(testing::series_log(4, 3, N), 3, N);
  CHECK(iwasawa_log(Z(3, 4, N)).residue(N) == l4);
  auto l2 = iwasawa_log(Z(3, 2, N));
  CHECK(l2.scaled(2).residue(N) == l4);
  CHECK(testing::oracle_log(2, 3, N) == l2.residue(N));

  Rng rng(2024);
  for (unsigned long ell : {2ul, 3ul, 5ul, 7ul, 11ul})
    for (int N : {16, 40, 64}) {
      for (int k = 0; k < 10; ++k) {
        long a = static_cast<long>(rng.below(100000)) + 1;
        auto l = iwasawa_log(Z(ell, a, N));
        INFO("ell=" << ell << " N=" << N << " a=" << a);
        CHECK(l.residue(N) == testing::oracle_log(a, ell, N));
      }
    }
}

TEST_CASE("log is a homomorphism and commutes with ell-powers") {
  Rng rng(7);
  for (unsigned long ell : {2ul, 3ul, 5ul}) {
    for (int k = 0; k < 30; ++k) {
      const int N = 40;
      long a = static_cast<long>(rng.below(50000)) + 1, b = static_cast<long>(rng.below(50000)) + 1;
      auto x = Z(ell, a, N), y = Z(ell, b, N);
      CHECK(iwasawa_log(x * y).equals(iwasawa_log(x) + iwasawa_log(y), 2));
      if (!x.is_unit()) continue;
      // x^(ell^2) computed exactly, then its log
      mpz_class p;
      mpz_pow_ui(p.get_mpz_t(), mpz_class(a).get_mpz_t(), ell * ell);
      auto lp = iwasawa_log(PadicScalar::from_integer(ell, p, N));
      CHECK(lp.equals(iwasawa_log(x).scaled(ell * ell).truncated(N)));
    }
  }
}

TEST_CASE("Teichmuller representatives") {
  CHECK(teichmuller(Z(3, 4)).equals(Z(3, 1)));
  CHECK(teichmuller(Z(3, 2)).equals(Z(3, -1)));
  auto w = teichmuller(Z(5, 2, 6));
  mpz_class m = ell_pow(5, 6);
  mpz_class w4;
  mpz_powm_ui(w4.get_mpz_t(), w.unit().get_mpz_t(), 4, m.get_mpz_t());
  CHECK(w4 == 1);
  CHECK(w.unit() % 5 == 2);
  CHECK_THROWS_AS(teichmuller(Z(5, 10)), PadicError);

  Rng rng(3);
  for (unsigned long ell : {2ul, 3ul, 5ul, 7ul})
    for (int k = 0; k < 20; ++k) {
      long a = static_cast<long>(rng.below(1000)) * static_cast<long>(ell) + 1 + static_cast<long>(rng.below(ell - 1));
      auto x = Z(ell, a, 30);
      auto t = teichmuller(x);
      auto q = x / t;
      CHECK((t * q).equals(x));
      CHECK((q - Z(ell, 1, 30)).valuation() >= (ell == 2 ? 2 : 1));
    }
}

TEST_CASE("precision honesty") {
  Rng rng(5);
  for (unsigned long ell : {2ul, 3ul, 5ul})
    for (int k = 0; k < 20; ++k) {
      long a = static_cast<long>(rng.below(1000000)) + 2;
      auto lo = iwasawa_log(Z(ell, a, 32)), hi = iwasawa_log(Z(ell, a, 40));
      CHECK(hi.truncated(lo.abs_prec()).equals(lo));
      CHECK(hi.truncated(lo.abs_prec()).residue(lo.abs_prec()) == lo.residue(lo.abs_prec()));
    }
}
