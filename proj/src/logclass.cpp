#include "logcap/logclass.hpp"

#include <algorithm>

#include "logcap/arith.hpp"

namespace logcap {

ElementWord ElementWord::of(const AlgebraicNum& x) {
  ElementWord w;
  w.factors.push_back({x, mpz_class(1)});
  return w;
}

ElementWord& ElementWord::times(const AlgebraicNum& x, const mpz_class& k) {
  if (x.is_zero()) throw std::domain_error("zero factor in an element word");
  factors.push_back({x, k});
  return *this;
}

bool LogDivisor::is_zero() const {
  for (auto& [r, c] : coeff)
    if (!c.is_zero()) return false;
  return true;
}

LogDivisor LogDivisor::operator+(const LogDivisor& b) const {
  LogDivisor r = *this;
  for (auto& [p, c] : b.coeff) {
    auto it = r.coeff.find(p);
    if (it == r.coeff.end())
      r.coeff.emplace(p, c);
    else
      it->second += c;
  }
  return r;
}

LogDivisor LogDivisor::scaled(const mpz_class& k) const {
  LogDivisor r = *this;
  for (auto& [p, c] : r.coeff) c = c.scaled(k);
  return r;
}

namespace {

// Log N(x) at a place above ell, about `digits` digits of absolute precision
PadicScalar log_local_norm(const LocalPlace& P, const AlgebraicNum& x, int digits) {
  return iwasawa_log(P.local_norm(x, digits + kSlack)).truncated(digits);
}

int cyclotomic_c(unsigned long ell) { return ell == 2 ? 2 : 1; }

}  // namespace

LogContext::LogContext(const NumberField& K, unsigned long ell, int prec)
    : K_(K),
      ell_(ell),
      prec_(prec),
      ell_places_(std::make_shared<std::vector<LogPlace>>()),
      locals_(std::make_shared<std::vector<LocalPlace>>()) {
  if (!is_prime_u64(ell)) throw InvalidInput("ell must be prime");
  if (prec < 1) throw InvalidInput("precision must be positive");
  const int digits = prec + kGuard;
  *locals_ = places_above_ell(K, ell);
  const size_t n = K.degree();
  for (auto& loc : *locals_) {
    const PrimeIdeal& P = loc.prime();
    // samples: 1 + ell, small primes, the integral basis, pseudo-random elements of O and of P
    std::vector<AlgebraicNum> samples{AlgebraicNum::from_int(K, mpz_class(1 + ell))};
    for (u64 q : primes_up_to(40))
      if (q != ell) samples.push_back(AlgebraicNum::from_int(K, mpz_class(q)));
    for (size_t i = 1; i < n; ++i) {
      ZVec c(n, mpz_class(0));
      c[i] = 1;
      samples.emplace_back(K, c);
    }
    if (P.second_generator) samples.push_back(*P.second_generator);
    Rng rng(0x51ed + ell * 131 + loc.index());
    long span = static_cast<long>(ell * ell);
    for (int k = 0; k < 24; ++k) {
      ZVec c(n, mpz_class(0));
      for (auto& x : c) x = rng.range(-span, span);
      if (!zvec_is_zero(c)) samples.emplace_back(K, c);
    }
    for (int k = 0; k < 12; ++k) {
      ZVec c(n, mpz_class(0));
      for (auto& row : P.ideal.hnf()) {
        long r = rng.range(-span, span);
        for (size_t j = 0; j < n; ++j) c[j] += r * row[j];
      }
      if (!zvec_is_zero(c)) samples.emplace_back(K, c);
    }
    LogPlace lp;
    lp.ref = {ell, loc.index()};
    lp.above_ell = true;
    lp.e = P.e;
    lp.f = P.f;
    bool found = false;
    for (auto& s : samples) {
      if (s.is_zero()) continue;
      PadicScalar L = log_local_norm(loc, s, digits);
      if (L.is_zero()) continue;
      if (!found || L.valuation() < lp.sampled_generator.valuation()) lp.sampled_generator = L;
      found = true;
    }
    if (!found) throw PadicError("no sample with a nonzero logarithmic norm");
    lp.c = static_cast<int>(lp.sampled_generator.valuation());
    lp.degree = PadicScalar::from_integer(ell, ell_pow(ell, lp.c), digits);
    long f_prime = P.f;
    while (f_prime % static_cast<long>(ell) == 0) f_prime /= static_cast<long>(ell);
    lp.f_tilde = ell_pow(ell, lp.c - cyclotomic_c(ell)) * f_prime;
    mpz_class ef = P.e * P.f;
    if (!mpz_divisible_p(ef.get_mpz_t(), lp.f_tilde.get_mpz_t()))
      throw std::logic_error("logarithmic inertia degree does not divide the local degree");
    lp.e_tilde = ef / lp.f_tilde;
    ell_places_->push_back(lp);
  }
}

LogPlace LogContext::place(const PrimeRef& r) const {
  if (r.p == ell_) return (*ell_places_).at(r.index);
  const PrimeIdeal& P = prime_of(K_, r);
  LogPlace lp;
  lp.ref = r;
  lp.e = P.e;
  lp.f = P.f;
  lp.degree = iwasawa_log(PadicScalar::from_integer(ell_, P.norm(), prec_ + kGuard + 2));
  lp.c = lp.degree.is_zero() ? prec_ + kGuard : static_cast<int>(lp.degree.valuation());
  if (lp.degree.is_zero()) throw PadicError("degree of a place vanishes at precision");
  return lp;
}

PadicScalar LogContext::log_valuation(const AlgebraicNum& x, const PrimeRef& p, int digits) const {
  if (x.is_zero()) throw std::domain_error("logarithmic valuation of zero");
  if (!(x.field() == K_)) throw std::invalid_argument("element and place belong to different fields");
  if (digits <= 0) digits = prec_;
  if (p.p != ell_) return PadicScalar::from_residue(ell_, mpz_class(prime_of(K_, p).valuation(x)), digits);
  const LogPlace& lp = (*ell_places_).at(p.index);
  PadicScalar L = log_local_norm((*locals_)[p.index], x, digits + lp.c);
  return (-(L / lp.degree)).truncated(digits);
}

PadicScalar LogContext::log_valuation(const ElementWord& w, const PrimeRef& p) const {
  PadicScalar s = PadicScalar::zero(ell_, prec_);
  for (auto& [x, k] : w.factors) s += log_valuation(x, p).scaled(k);
  return s.truncated(prec_);
}

LogDivisor LogContext::log_divisor(const AlgebraicNum& x, int digits) const {
  if (x.is_zero()) throw std::domain_error("logarithmic divisor of zero");
  if (digits <= 0) digits = prec_;
  LogDivisor d;
  for (auto& [r, v] : element_divisor(x))
    if (r.p != ell_) d.coeff.emplace(r, PadicScalar::from_residue(ell_, mpz_class(v), digits));
  for (auto& lp : *ell_places_) {
    PadicScalar c = log_valuation(x, lp.ref, digits);
    if (!c.is_zero()) d.coeff.emplace(lp.ref, c);
  }
  return d;
}

LogDivisor LogContext::log_divisor(const ElementWord& w) const {
  LogDivisor d;
  for (auto& [x, k] : w.factors) d = d + log_divisor(x).scaled(k);
  for (auto it = d.coeff.begin(); it != d.coeff.end();) {
    it->second = it->second.truncated(prec_);
    it = it->second.is_zero() ? d.coeff.erase(it) : std::next(it);
  }
  return d;
}

PadicScalar LogContext::degree(const LogDivisor& d) const {
  PadicScalar s = PadicScalar::zero(ell_, prec_ + kGuard);
  for (auto& [r, c] : d.coeff) s += c * place(r).degree;
  return s;
}

bool LogContext::is_log_unit(const AlgebraicNum& x) const { return log_divisor(x).is_zero(); }
bool LogContext::is_log_unit(const ElementWord& w) const { return log_divisor(w).is_zero(); }

std::optional<size_t> LogClassGroup::index_of(const PrimeRef& r) const {
  for (size_t i = 0; i < T.size(); ++i)
    if (T[i].ref == r) return i;
  return std::nullopt;
}

ZVec LogClassGroup::vector_of(const LogDivisor& d) const {
  ZVec v(T.size(), mpz_class(0));
  for (auto& [r, c] : d.coeff) {
    if (c.is_zero()) continue;
    auto i = index_of(r);
    if (!i) throw std::invalid_argument("divisor support outside the generators");
    if (c.valuation() < 0) throw PadicError("non-integral divisor coefficient");
    v[*i] = c.residue(precision);
  }
  return v;
}

ZVec LogClassGroup::class_of(const ZVec& v) const {
  ZVec r;
  for (size_t i = 0; i < v.size(); ++i)
    if (i != t0) r.push_back(v[i]);
  return degree_zero.class_coordinates(r);
}

bool LogClassGroup::is_trivial(const ZVec& v) const { return zvec_is_zero(class_of(v)); }

std::vector<std::pair<ZVec, int>> LogClassGroup::torsion_generators() const {
  std::vector<std::pair<ZVec, int>> out;
  const size_t m = T.size() - 1;
  const mpz_class mod = ell_pow(ell, precision);
  for (size_t i = 0; i < m; ++i) {
    int a = degree_zero.generator_exponent(i);
    if (a <= 0 || a >= precision) continue;
    ZVec e(m, mpz_class(0));
    e[i] = 1;
    auto y = solve_linear(degree_zero.U, e);
    if (!y) throw std::logic_error("SNF transform is not invertible");
    // back to a degree-zero vector over T
    ZVec v(T.size(), mpz_class(0));
    PadicScalar s = PadicScalar::zero(ell, precision + LogContext::kGuard);
    for (size_t k = 0, j = 0; k < T.size(); ++k) {
      if (k == t0) continue;
      v[k] = (*y)[j++];
      s += T[k].degree.scaled(v[k]);
    }
    PadicScalar x0 = -(s / T[t0].degree);
    if (x0.abs_prec() < precision) throw PadicError("degree ratio lost precision");
    v[t0] = x0.is_zero() ? mpz_class(0) : x0.residue(precision);
    out.push_back({v, a});
  }
  return out;
}

std::vector<mpz_class> LogClassGroup::torsion_orders() const {
  std::vector<mpz_class> r;
  for (int a : torsion) r.push_back(ell_pow(ell, a));
  return r;
}

LogClassGroup log_class_group(const NumberField& K, unsigned long ell, int prec, const Caps& caps,
                              const std::vector<unsigned long>& extra_rational) {
  LogContext ctx(K, ell, prec);
  LogClassGroup G;
  G.K = K;
  G.ell = ell;
  G.precision = prec;
  std::vector<PrimeRef> S;
  for (auto& lp : ctx.ell_places()) S.push_back(lp.ref);
  SUnitBasis su = s_unit_relations(K, S, ell, caps, extra_rational);
  G.class_group_certified = su.class_group_certified;
  G.saturated = su.saturated && su.pending.empty();
  G.h = su.h;
  G.class_group = su.class_group;
  for (auto& r : su.S.primes) G.T.push_back(ctx.place(r));
  const size_t t = G.T.size();
  const mpz_class mod = ell_pow(ell, prec);

  auto column = [&](size_t w, int digits) {
    ZVec col(t);
    for (size_t i = 0; i < t; ++i) {
      if (!G.T[i].above_ell) {
        col[i] = su.exponents[w][i];
      } else {
        PadicScalar v = ctx.log_valuation(su.witnesses[w], G.T[i].ref, digits);
        col[i] = v.is_zero() ? mpz_class(0) : v.residue(digits);
      }
    }
    return col;
  };
  std::vector<ZVec> cols;
  for (size_t w = 0; w < su.witnesses.size(); ++w) {
    cols.push_back(column(w, prec));
    G.witnesses.push_back(su.witnesses[w]);
  }
  for (auto& a : su.pending) {
    // the word is an ell-th power in Z_ell (x) K^x with high probability: adjoin div(w) / ell
    ZVec col(t, mpz_class(0));
    const mpz_class mod1 = mod * ell;
    for (size_t w = 0; w < a.size(); ++w) {
      if (a[w] == 0) continue;
      ZVec c = column(w, prec + 1);
      for (size_t i = 0; i < t; ++i) col[i] += a[w] * c[i];
    }
    for (auto& x : col) {
      mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), mod1.get_mpz_t());
      if (!mpz_divisible_ui_p(x.get_mpz_t(), ell)) throw std::logic_error("pending word is not divisible by ell");
      x /= ell;
    }
    cols.push_back(col);
    ++G.pending_columns;
  }
  G.relations = ZlMatrix(ell, prec, t, cols.size());
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t i = 0; i < t; ++i) G.relations.set(i, j, cols[j][i]);
  G.full = quotient_presentation(t, G.relations);

  // degree-zero part: drop the generator whose degree has least valuation
  if (t == 0) throw std::logic_error("no generators");
  for (size_t i = 1; i < t; ++i)
    if (G.T[i].c < G.T[G.t0].c) G.t0 = i;
  ZlMatrix R0 = G.relations.without_row(G.t0);
  G.degree_zero = quotient_presentation(t - 1, R0);
  G.torsion = G.degree_zero.torsion;
  G.epsilon_tilde = G.full.exponent();
  G.gross_kuzmin_candidates = G.degree_zero.free_rank;
  G.split_consistent = G.full.torsion == G.degree_zero.torsion && G.full.free_rank == G.degree_zero.free_rank + 1;
  return G;
}

}  // namespace logcap
