#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace logcap {

using u64 = std::uint64_t;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((unsigned __int128)a * b % m); }
u64 powmod(u64 a, u64 e, u64 m);
u64 invmod(u64 a, u64 m);  // m prime or gcd(a, m) = 1
u64 mod_of(const mpz_class& a, u64 m);

bool is_prime_u64(u64 n);
bool is_prime(const mpz_class& n);
std::vector<u64> primes_up_to(u64 n);
// factorisation of |n|, n != 0; primes ascending
std::vector<std::pair<mpz_class, int>> factor_integer(const mpz_class& n);
bool is_squarefree(const mpz_class& n);
mpz_class isqrt(const mpz_class& n);

// deterministic splitmix-style generator for reproducible sampling
class Rng {
 public:
  explicit Rng(u64 seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
  u64 next();
  u64 below(u64 n) { return n ? next() % n : 0; }
  long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<u64>(hi - lo + 1))); }

 private:
  u64 s_;
};

}  // namespace logcap
