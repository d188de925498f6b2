#include <algorithm>
#include <sstream>

#include "field_data.hpp"

namespace logcap {

Ideal::Ideal(const NumberField& K, ZMat hnf_rows) : K_(K), h_(std::move(hnf_rows)) {}

Ideal Ideal::unit(const NumberField& K) { return Ideal(K, zidentity(K.degree())); }

Ideal Ideal::principal(const AlgebraicNum& x) {
  if (!x.is_integral() || x.is_zero()) throw std::domain_error("principal ideal of a non-integral element");
  mpz_class m = abs(x.norm().get_num());
  return Ideal(x.field(), lower_hnf_mod(x.num_mult_matrix(), x.field().degree(), m));
}

Ideal Ideal::from_generators(const NumberField& K, const std::vector<ZVec>& gens, const mpz_class& m) {
  ZMat rows;
  for (auto& g : gens) {
    AlgebraicNum x(K, g);
    for (auto& r : x.num_mult_matrix()) rows.push_back(r);
  }
  return Ideal(K, lower_hnf_mod(rows, K.degree(), m));
}

mpz_class Ideal::norm() const {
  mpz_class r = 1;
  for (size_t i = 0; i < h_.size(); ++i) r *= h_[i][i];
  return r;
}

bool Ideal::contains(const ZVec& x0) const {
  ZVec x = x0;
  for (size_t i = h_.size(); i-- > 0;) {
    if (x[i] == 0) continue;
    if (!mpz_divisible_p(x[i].get_mpz_t(), h_[i][i].get_mpz_t())) return false;
    mpz_class q = x[i] / h_[i][i];
    for (size_t j = 0; j <= i; ++j) x[j] -= q * h_[i][j];
  }
  return true;
}

bool Ideal::contains(const AlgebraicNum& x) const { return x.is_integral() && contains(x.num()); }

Ideal Ideal::operator*(const Ideal& b) const {
  const FieldData& d = *K_.data();
  ZMat rows;
  for (auto& r : h_)
    for (auto& s : b.h_) rows.push_back(mul_coords(d, r, s));
  return Ideal(K_, lower_hnf_mod(rows, d.n, min_integer() * b.min_integer()));
}

Ideal Ideal::pow(int k) const {
  Ideal r = unit(K_), b = *this;
  while (k > 0) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

Ideal Ideal::operator+(const Ideal& b) const {
  ZMat rows = h_;
  rows.insert(rows.end(), b.h_.begin(), b.h_.end());
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), min_integer().get_mpz_t(), b.min_integer().get_mpz_t());
  return Ideal(K_, lower_hnf_mod(rows, K_.degree(), g));
}

std::vector<AlgebraicNum> Ideal::generators() const {
  std::vector<AlgebraicNum> g;
  for (auto& r : h_) g.emplace_back(K_, r);
  return g;
}

std::string Ideal::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < h_.size(); ++i) {
    os << (i ? "," : "") << "[";
    for (size_t j = 0; j < h_[i].size(); ++j) os << (j ? "," : "") << h_[i][j].get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------- primes

mpz_class PrimeIdeal::norm() const {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, f);
  return r;
}

long PrimeIdeal::valuation_integral(const ZVec& x0) const {
  ZVec x = x0;
  long v = 0;
  while (true) {
    ZVec y = zvecmat(x, beta_mult);
    for (auto& c : y)
      if (!mpz_divisible_ui_p(c.get_mpz_t(), p)) return v;
    for (auto& c : y) mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), p);
    x = std::move(y);
    ++v;
  }
}

long PrimeIdeal::valuation(const AlgebraicNum& x) const {
  if (x.is_zero()) throw std::domain_error("valuation of zero");
  long v = 0;
  // strip the rational content first
  mpz_class c = zvec_content(x.num());
  ZVec num = x.num();
  long vc = 0;
  while (mpz_divisible_ui_p(c.get_mpz_t(), p)) {
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), p);
    ++vc;
  }
  if (vc) {
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, vc);
    for (auto& a : num) mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), pk.get_mpz_t());
  }
  v += vc * e;
  v -= ell_valuation(x.den(), p) * e;
  return v + valuation_integral(num);
}

u64 PrimeIdeal::residue(const AlgebraicNum& x) const {
  if (f != 1) throw std::logic_error("residue map needs a degree-one prime");
  // x = num/den with v_P(x) >= 0; remove common powers of p first
  ZVec num = x.num();
  mpz_class den = x.den();
  long vd = ell_valuation(den, p);
  if (vd > 0) {
    // multiply by beta/p repeatedly to move num out of P^(e*vd)
    for (long i = 0; i < vd * e; ++i) {
      ZVec y = zvecmat(num, beta_mult);
      for (auto& c : y) mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), p);
      num = std::move(y);
    }
    // den/p^vd times (beta/p)^... : track the residue of the extra factor
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, vd);
    den /= pk;
    // num now represents x * den' * (beta/p)^(e vd) * p^vd; divide by residue of (beta/p)^(e vd) p^vd
    ZVec t(num.size(), mpz_class(0));
    t[0] = pk;
    for (long i = 0; i < vd * e; ++i) {
      ZVec y = zvecmat(t, beta_mult);
      for (auto& c : y) mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), p);
      t = std::move(y);
    }
    u64 rt = 0;
    for (size_t i = 0; i < t.size(); ++i) rt = (rt + mulmod(mod_of(t[i], p), residues[i], p)) % p;
    u64 rn = 0;
    for (size_t i = 0; i < num.size(); ++i) rn = (rn + mulmod(mod_of(num[i], p), residues[i], p)) % p;
    return mulmod(rn, invmod(mulmod(rt, mod_of(den, p), p), p), p);
  }
  u64 rn = 0;
  for (size_t i = 0; i < num.size(); ++i) rn = (rn + mulmod(mod_of(num[i], p), residues[i], p)) % p;
  return mulmod(rn, invmod(mod_of(den, p), p), p);
}

std::string PrimeIdeal::label() const { return std::to_string(p) + "^" + std::to_string(f); }

namespace {

using FpVec = std::vector<u64>;

// reduce v against an echelon basis (rows with leading entry 1 at pivots)
void fp_reduce(FpVec& v, const std::vector<FpVec>& ech, u64 p) {
  for (auto& r : ech) {
    size_t lead = 0;
    while (r[lead] == 0) ++lead;
    if (v[lead] == 0) continue;
    u64 c = v[lead];
    for (size_t j = 0; j < v.size(); ++j) v[j] = (v[j] + p - mulmod(c, r[j], p)) % p;
  }
}

FpVec fp_pow_elem(const FieldData& d, FpVec x, mpz_class e, u64 p) {
  FpVec r(d.n, 0);
  r[0] = 1;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mul_coords_fp(d, r, x, p);
    e >>= 1;
    if (e > 0) x = mul_coords_fp(d, x, x, p);
  }
  return r;
}

// maximal ideals of O/pO as F_p subspaces (echelon bases)
std::vector<std::vector<FpVec>> split_algebra(const FieldData& d, u64 p) {
  size_t n = d.n;
  mpz_class q = p;
  while (q < static_cast<long>(n)) q *= p;
  std::vector<FpVec> fr;
  for (size_t i = 0; i < n; ++i) {
    FpVec e(n, 0);
    e[i] = 1;
    fr.push_back(fp_pow_elem(d, e, q, p));
  }
  std::vector<FpVec> frT(n, FpVec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) frT[j][i] = fr[i][j];
  auto rad = fp_span(fp_kernel(frT, n, p), n, p);
  std::vector<std::vector<FpVec>> work{rad}, done;
  Rng rng(0x5eed0000ULL + p);
  int guard = 0;
  while (!work.empty()) {
    if (++guard > 10000) throw std::logic_error("prime splitting did not terminate");
    auto J = work.back();
    work.pop_back();
    size_t dim = n - J.size();
    if (dim == 1) {
      done.push_back(J);
      continue;
    }
    FpVec a(n);
    for (auto& c : a) c = rng.below(p);
    // minimal polynomial of a in O/J
    std::vector<FpVec> powers;  // reduced powers a^0..a^(k-1)
    FpVec cur(n, 0);
    cur[0] = 1;
    FpPoly minpoly;
    for (size_t k = 0; k <= dim; ++k) {
      FpVec red = cur;
      fp_reduce(red, J, p);
      std::vector<u64> coef;
      if (!powers.empty() && fp_solve(powers, red, p, coef)) {
        minpoly.assign(k + 1, 0);
        minpoly[k] = 1;
        for (size_t i = 0; i < k; ++i) minpoly[i] = (p - coef[i]) % p;
        break;
      }
      powers.push_back(red);
      cur = mul_coords_fp(d, cur, a, p);
    }
    auto fac = fp_factor(minpoly, p);
    if (fac.size() == 1) {
      if (static_cast<size_t>(fp_deg(fac[0].first)) == dim) done.push_back(J);
      else work.push_back(J);  // retry with another element
      continue;
    }
    for (auto& [g, mult] : fac) {
      // g(a) by Horner
      FpVec ga(n, 0);
      for (size_t i = g.size(); i-- > 0;) {
        ga = mul_coords_fp(d, ga, a, p);
        ga[0] = (ga[0] + g[i]) % p;
      }
      std::vector<FpVec> rows = J;
      for (size_t i = 0; i < n; ++i) {
        FpVec e(n, 0);
        e[i] = 1;
        rows.push_back(mul_coords_fp(d, ga, e, p));
      }
      work.push_back(fp_span(rows, n, p));
    }
  }
  return done;
}

void finish_prime(const NumberField& K, PrimeIdeal& P) {
  const FieldData& d = *K.data();
  size_t n = d.n;
  const ZMat& H = P.ideal.hnf();
  P.f = 0;
  for (size_t i = 0; i < n; ++i)
    if (H[i][i] != 1) ++P.f;
  // beta: kernel of y -> (y * gamma_k mod p)_k
  std::vector<FpVec> M(n);
  for (size_t i = 0; i < n; ++i) {
    ZVec e(n, mpz_class(0));
    e[i] = 1;
    for (size_t k = 0; k < n; ++k)
      for (auto& c : mul_coords(d, e, H[k])) M[i].push_back(mod_of(c, P.p));
  }
  std::vector<FpVec> MT(n * n, FpVec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n * n; ++j) MT[j][i] = M[i][j];
  auto ker = fp_kernel(MT, n, P.p);
  if (ker.empty()) throw std::logic_error("no beta for prime ideal");
  ZVec beta(n);
  for (size_t k = 0; k < n; ++k) beta[k] = static_cast<unsigned long>(ker[0][k]);
  P.beta_mult = AlgebraicNum(K, beta).num_mult_matrix();
  ZVec pv(n, mpz_class(0));
  pv[0] = static_cast<unsigned long>(P.p);
  P.e = static_cast<int>(P.valuation_integral(pv));
  if (P.f == 1) {
    P.residues.assign(n, 0);
    P.residues[0] = 1;
    for (size_t i = 1; i < n; ++i) {
      u64 s = 0;
      for (size_t j = 0; j < i; ++j) s = (s + mulmod(mod_of(H[i][j], P.p), P.residues[j], P.p)) % P.p;
      P.residues[i] = (P.p - s) % P.p;
    }
  }
}

std::vector<PrimeIdeal> compute_primes(const NumberField& K, u64 p) {
  const FieldData& d = *K.data();
  size_t n = d.n;
  std::vector<PrimeIdeal> out;
  if (!mpz_divisible_ui_p(d.index.get_mpz_t(), p)) {
    for (auto& [g, e] : fp_factor(fp_from(d.f, p), p)) {
      QPoly gq;
      for (u64 c : g) gq.push_back(mpq_class(mpz_class(std::to_string(c))));
      AlgebraicNum x = AlgebraicNum::from_power_basis(K, gq);
      PrimeIdeal P;
      P.p = p;
      P.ideal = Ideal::from_generators(K, {x.num()}, mpz_class(static_cast<unsigned long>(p)));
      finish_prime(K, P);
      if (P.e != e || P.f != fp_deg(g)) throw std::logic_error("Kummer-Dedekind data mismatch");
      P.second_generator = x;
      out.push_back(std::move(P));
    }
  } else {
    for (auto& J : split_algebra(d, p)) {
      ZMat rows;
      for (auto& r : J) {
        ZVec z(n);
        for (size_t k = 0; k < n; ++k) z[k] = static_cast<unsigned long>(r[k]);
        rows.push_back(z);
      }
      PrimeIdeal P;
      P.p = p;
      P.ideal = Ideal(K, lower_hnf_mod(rows, n, mpz_class(static_cast<unsigned long>(p))));
      finish_prime(K, P);
      out.push_back(std::move(P));
    }
    // opportunistic two-element generators
    for (size_t a = 0; a < out.size(); ++a) {
      auto gens = out[a].ideal.generators();
      std::vector<AlgebraicNum> cand(gens.begin() + 1, gens.end());
      for (size_t i = 1; i < gens.size(); ++i)
        for (size_t j = i + 1; j < gens.size(); ++j) cand.push_back(gens[i] + gens[j]);
      for (auto& c : cand) {
        if (c.is_zero()) continue;
        bool ok = out[a].valuation(c) == 1 || out[a].e == 1;
        for (size_t b = 0; ok && b < out.size(); ++b)
          if (b != a && out[b].valuation(c) != 0) ok = false;
        if (ok && out[a].valuation(c) >= 1) {
          out[a].second_generator = c;
          break;
        }
      }
    }
  }
  long sum = 0;
  for (auto& P : out) sum += static_cast<long>(P.e) * P.f;
  if (sum != static_cast<long>(n)) throw std::logic_error("prime decomposition is incomplete at p = " + std::to_string(p));
  std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
    if (a.f != b.f) return a.f < b.f;
    if (a.e != b.e) return a.e < b.e;
    return a.ideal.hnf() < b.ideal.hnf();
  });
  return out;
}

}  // namespace

const std::vector<PrimeIdeal>& decompose_prime(const NumberField& K, unsigned long p) {
  const FieldData& d = *K.data();
  {
    std::lock_guard<std::mutex> lock(d.mu);
    auto it = d.primes.find(p);
    if (it != d.primes.end()) return it->second;
  }
  if (!is_prime_u64(p)) throw InvalidInput(std::to_string(p) + " is not prime");
  auto primes = compute_primes(K, p);
  std::lock_guard<std::mutex> lock(d.mu);
  return d.primes.emplace(p, std::move(primes)).first->second;
}

const PrimeIdeal& prime_of(const NumberField& K, const PrimeRef& r) { return decompose_prime(K, r.p).at(r.index); }

std::vector<long> valuations_above(const AlgebraicNum& x, unsigned long p) {
  const auto& ps = decompose_prime(x.field(), p);
  std::vector<long> v;
  mpq_class N = x.norm();
  bool touches = mpz_divisible_ui_p(N.get_num().get_mpz_t(), p) || mpz_divisible_ui_p(N.get_den().get_mpz_t(), p) ||
                 mpz_divisible_ui_p(x.den().get_mpz_t(), p);
  for (auto& P : ps) v.push_back(touches ? P.valuation(x) : 0);
  return v;
}

std::map<PrimeRef, long> element_divisor(const AlgebraicNum& x) {
  if (x.is_zero()) throw std::domain_error("divisor of zero");
  std::map<PrimeRef, long> d;
  mpq_class N = x.norm();
  std::vector<mpz_class> ps;
  for (auto& [p, k] : factor_integer(N.get_num())) ps.push_back(p);
  for (auto& [p, k] : factor_integer(N.get_den())) ps.push_back(p);
  if (x.den() != 1)
    for (auto& [p, k] : factor_integer(x.den())) ps.push_back(p);
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  for (auto& p : ps) {
    if (!p.fits_ulong_p()) throw CapsExceeded("prime factor too large for ideal arithmetic");
    auto v = valuations_above(x, p.get_ui());
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) d[{p.get_ui(), static_cast<int>(i)}] = v[i];
  }
  return d;
}

Ideal ideal_from_divisor(const NumberField& K, const std::map<PrimeRef, long>& d) {
  Ideal r = Ideal::unit(K);
  for (auto& [ref, k] : d) {
    if (k < 0) throw std::domain_error("ideal_from_divisor expects an integral divisor");
    r = r * prime_of(K, ref).ideal.pow(static_cast<int>(k));
  }
  return r;
}

}  // namespace logcap
