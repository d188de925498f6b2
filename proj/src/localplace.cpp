#include "field_data.hpp"
#include "logcap/zlmod.hpp"

namespace logcap {

LocalPlace::LocalPlace(const NumberField& K, unsigned long ell, int index)
    : K_(K), ell_(ell), index_(index), idem_(std::make_shared<std::pair<long, ZVec>>()) {
  const auto& ps = decompose_prime(K, ell);
  if (index < 0 || index >= static_cast<int>(ps.size())) throw std::out_of_range("no such place above ell");
  size_t n = K.degree();
  ZVec one(n, mpz_class(0));
  one[0] = 1;
  if (ps.size() == 1) {
    *idem_ = {1L << 40, one};
    return;
  }
  // e = a with 1 = a + b, a in prod_{Q != P} Q^e_Q, b in P^e_P (mod ell)
  Ideal others = Ideal::unit(K);
  for (size_t i = 0; i < ps.size(); ++i)
    if (static_cast<int>(i) != index) others = others * ps[i].ideal.pow(ps[i].e);
  Ideal mine = ps[index].ideal.pow(ps[index].e);
  std::vector<std::vector<u64>> rows;
  for (auto* I : {&others, &mine})
    for (auto& r : I->hnf()) {
      std::vector<u64> v;
      for (auto& c : r) v.push_back(mod_of(c, ell));
      rows.push_back(v);
    }
  std::vector<u64> target(n, 0), coef;
  target[0] = 1;
  if (!fp_solve(rows, target, ell, coef)) throw std::logic_error("idempotent equation has no solution");
  ZVec a(n, mpz_class(0));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) a[k] += static_cast<unsigned long>(coef[i]) * others.hnf()[i][k];
  for (auto& c : a) mpz_fdiv_r_ui(c.get_mpz_t(), c.get_mpz_t(), ell);
  *idem_ = {1, a};
}

const PrimeIdeal& LocalPlace::prime() const { return decompose_prime(K_, ell_)[index_]; }

int LocalPlace::local_degree() const { return prime().e * prime().f; }

ZVec LocalPlace::idempotent(long k) const {
  auto& [have, e] = *idem_;
  const FieldData& d = *K_.data();
  while (have < k) {
    // e <- 3e^2 - 2e^3 doubles the precision
    long nk = 2 * have;
    mpz_class m = ell_pow(ell_, nk);
    ZVec e2 = mul_coords_mod(d, e, e, m);
    ZVec e3 = mul_coords_mod(d, e2, e, m);
    for (size_t i = 0; i < e.size(); ++i) {
      e[i] = 3 * e2[i] - 2 * e3[i];
      mpz_mod(e[i].get_mpz_t(), e[i].get_mpz_t(), m.get_mpz_t());
    }
    have = nk;
  }
  ZVec r = e;
  mpz_class m = ell_pow(ell_, k);
  for (auto& c : r) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  return r;
}

PadicScalar LocalPlace::local_norm(const AlgebraicNum& x, int prec) const {
  if (x.is_zero()) throw std::domain_error("local norm of zero");
  const PrimeIdeal& P = prime();
  const FieldData& d = *K_.data();
  size_t n = d.n;
  AlgebraicNum num(K_, x.num());
  long v = P.valuation(num) * P.f;  // ell-adic valuation of the local norm of num
  long M = v + prec + 2;
  mpz_class mod = ell_pow(ell_, M);
  ZVec e = idempotent(M);
  ZVec a = x.num();
  for (auto& c : a) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), mod.get_mpz_t());
  ZVec y = mul_coords_mod(d, a, e, mod);
  // y = a e + 1 - e
  for (size_t i = 0; i < n; ++i) {
    y[i] -= e[i];
    if (i == 0) y[i] += 1;
    mpz_mod(y[i].get_mpz_t(), y[i].get_mpz_t(), mod.get_mpz_t());
  }
  ZMat mm = AlgebraicNum(K_, y).num_mult_matrix();
  ZlMatrix Z(ell_, static_cast<int>(M), n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) Z.set(i, j, mm[i][j]);
  PadicScalar N = determinant(Z);
  if (N.is_zero()) throw std::logic_error("local norm vanished at precision");
  if (x.den() != 1) {
    mpz_class dp = 1;
    for (int i = 0; i < P.e * P.f; ++i) dp *= x.den();
    N = N / PadicScalar::from_integer(ell_, dp, static_cast<int>(M));
  }
  return N;
}

std::vector<LocalPlace> places_above_ell(const NumberField& K, unsigned long ell) {
  std::vector<LocalPlace> out;
  const auto& ps = decompose_prime(K, ell);
  for (size_t i = 0; i < ps.size(); ++i) out.emplace_back(K, ell, static_cast<int>(i));
  return out;
}

}  // namespace logcap
