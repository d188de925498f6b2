#include "logcap/arith.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace logcap {

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 m) {
  __int128 t = 0, nt = 1, r = m, nr = a % m;
  while (nr) {
    __int128 q = r / nr;
    __int128 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw std::domain_error("invmod: not invertible");
  if (t < 0) t += m;
  return static_cast<u64>(t);
}

u64 mod_of(const mpz_class& a, u64 m) {
  static_assert(sizeof(unsigned long) == sizeof(u64));
  return mpz_fdiv_ui(a.get_mpz_t(), m);
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while (!(d & 1)) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

bool is_prime(const mpz_class& n) { return n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

std::vector<u64> primes_up_to(u64 n) {
  std::vector<u64> out;
  if (n < 2) return out;
  std::vector<bool> sieve(n + 1, true);
  for (u64 i = 2; i <= n; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= n; j += i) sieve[j] = false;
  }
  return out;
}

namespace {

mpz_class rho(const mpz_class& n, unsigned long c) {
  mpz_class x = 2, y = 2, d = 1;
  auto f = [&](const mpz_class& v) {
    mpz_class r = v * v + c;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
    return r;
  };
  while (d == 1) {
    mpz_class q = 1;
    mpz_class xs = x, ys = y;
    for (int i = 0; i < 64; ++i) {
      x = f(x);
      y = f(f(y));
      mpz_class diff = x - y;
      q = q * abs(diff) % n;
    }
    mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
    if (d == n) {
      // back off one step at a time
      x = xs;
      y = ys;
      do {
        x = f(x);
        y = f(f(y));
        mpz_class diff = abs(x - y);
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (d == 1);
    }
  }
  return d;
}

void split(const mpz_class& n, std::vector<mpz_class>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  mpz_class r;
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    split(r, out);
    split(r, out);
    return;
  }
  for (unsigned long c = 1;; ++c) {
    mpz_class d = rho(n, c);
    if (d != n && d != 1) {
      split(d, out);
      split(n / d, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<mpz_class, int>> factor_integer(const mpz_class& n0) {
  if (n0 == 0) throw std::domain_error("factor_integer(0)");
  mpz_class n = abs(n0);
  std::vector<mpz_class> ps;
  for (unsigned long p = 2; p < 10000 && n > 1; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ps.push_back(p);
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    }
    if (n < mpz_class(p) * p) break;
  }
  split(n, ps);
  std::sort(ps.begin(), ps.end());
  std::vector<std::pair<mpz_class, int>> out;
  for (auto& p : ps) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.push_back({p, 1});
  }
  return out;
}

bool is_squarefree(const mpz_class& n) {
  if (n == 0) return false;
  for (auto& [p, e] : factor_integer(n))
    if (e > 1) return false;
  return true;
}

mpz_class isqrt(const mpz_class& n) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

u64 Rng::next() {
  u64 z = (s_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace logcap
