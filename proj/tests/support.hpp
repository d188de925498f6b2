#pragma once
// helpers and independent oracles shared by the test files

#include <json.hpp>

#include <fstream>
#include <numeric>
#include <string>

#include "logcap/arith.hpp"
#include "logcap/intmat.hpp"
#include "logcap/padic.hpp"

namespace testing {

inline nlohmann::json fixture(const std::string& name) {
  std::ifstream in(std::string(LOGCAP_FIXTURES) + "/" + name);
  return nlohmann::json::parse(in).at("entries");
}

inline mpz_class mod_pow_ell(unsigned long ell, int N) {
  mpz_class m;
  mpz_ui_pow_ui(m.get_mpz_t(), ell, N);
  return m;
}

inline long vl(mpz_class n, unsigned long ell) {
  long v = 0;
  while (n != 0 && mpz_divisible_ui_p(n.get_mpz_t(), ell)) n /= ell, ++v;
  return v;
}

// q mod ell^N for a rational with denominator prime to ell
inline mpz_class residue_of(const mpq_class& q, unsigned long ell, int N) {
  const mpz_class m = mod_pow_ell(ell, N);
  mpz_class inv;
  mpz_class den = q.get_den();
  if (!mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t())) throw std::domain_error("denominator divisible by ell");
  mpz_class r = q.get_num() * inv % m;
  if (r < 0) r += m;
  return r;
}

// log(1 + t) summed with exact rationals until v(t^n / n) >= N + 2; t = u - 1 with v(t) >= 1 (>= 2 for ell = 2)
inline mpq_class series_log(const mpz_class& u, unsigned long ell, int N) {
  const mpz_class t = u - 1;
  const long vt = vl(t, ell);
  mpq_class sum = 0;
  mpz_class tp = 1;
  for (long n = 1;; ++n) {
    tp *= t;
    if (t == 0) break;
    if (n * vt - vl(mpz_class(n), ell) >= N + 2 && n > 1) break;
    mpq_class term(tp, n);
    term.canonicalize();
    sum += (n % 2 ? term : -term);
  }
  return sum;
}

// Iwasawa log of a nonzero rational, residue mod ell^N, by the series only
inline mpz_class oracle_log(mpq_class a, unsigned long ell, int N) {
  if (a < 0) a = -a;
  mpz_class num = a.get_num(), den = a.get_den();
  while (mpz_divisible_ui_p(num.get_mpz_t(), ell)) num /= ell;
  while (mpz_divisible_ui_p(den.get_mpz_t(), ell)) den /= ell;
  // principal unit power: x^(ell-1) for odd ell, x^2 for ell = 2 (one extra digit to halve)
  const unsigned long k = ell == 2 ? 2 : ell - 1;
  const int M = N + 2;
  const mpz_class m = mod_pow_ell(ell, M + 4);
  auto principal_log = [&](const mpz_class& x) {
    mpz_class y;
    mpz_powm_ui(y.get_mpz_t(), x.get_mpz_t(), k, m.get_mpz_t());
    return series_log(y, ell, M + 2);
  };
  mpq_class l = (principal_log(num) - principal_log(den)) / mpq_class(k);
  return residue_of(l, ell, N);
}

// number of reduced primitive positive definite forms of discriminant D < 0
inline long reduced_form_count(long D) {
  long h = 0;
  for (long a = 1; 3 * a * a <= -D; ++a)
    for (long b = -a + 1; b <= a; ++b) {
      long n = b * b - D;
      if (n % (4 * a) != 0) continue;
      long c = n / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      ++h;
    }
  return h;
}

inline long field_discriminant_quadratic(long d) { return ((d % 4) + 4) % 4 == 1 ? d : 4 * d; }

// ell-adic exponents of the elementary divisors of an integer matrix from gcds of k x k minors;
// N stands for a zero divisor
inline std::vector<int> minors_exponents(const logcap::ZMat& A, unsigned long ell, int N) {
  const size_t r = A.size(), c = A.empty() ? 0 : A[0].size(), m = std::min(r, c);
  std::vector<int> out;
  long prev = 0;
  bool dead = false;
  for (size_t k = 1; k <= m; ++k) {
    mpz_class g = 0;
    // iterate over k-subsets of rows and columns
    std::vector<bool> rsel(r, false), csel(c, false);
    std::fill(rsel.begin(), rsel.begin() + k, true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + k, true);
      do {
        logcap::ZMat M;
        for (size_t i = 0; i < r; ++i) {
          if (!rsel[i]) continue;
          logcap::ZVec row;
          for (size_t j = 0; j < c; ++j)
            if (csel[j]) row.push_back(A[i][j]);
          M.push_back(row);
        }
        mpz_class d = logcap::zdet(M);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    if (dead || g == 0) {
      dead = true;
      out.push_back(N);
      continue;
    }
    long v = vl(g, ell);
    out.push_back(static_cast<int>(std::min<long>(v - prev, N)));
    prev = v;
  }
  return out;
}

}  // namespace testing
