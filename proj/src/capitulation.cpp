#include "logcap/capitulation.hpp"

#include <algorithm>
#include <set>

#include "logcap/arith.hpp"
#include "logcap/poly.hpp"

namespace logcap {

ExtensionData::ExtensionData(const NumberField& K, const NumberField& L, const AlgebraicNum& image, unsigned long ell,
                             int prec)
    : K_(K),
      L_(L),
      image_(image),
      degree_(0),
      ell_(ell),
      prec_(prec),
      ctx_k_(K, ell, prec),
      ctx_l_(L, ell, prec),
      matches_(std::make_shared<std::map<PrimeRef, PlaceMatch>>()) {
  if (L.degree() % K.degree() != 0) throw InvalidInput("degree of the extension is not a multiple of the base degree");
  if (!(image.field() == L)) throw InvalidInput("embedding image lives in another field");
  degree_ = L.degree() / K.degree();
  // the image must be a root of K's polynomial
  const QPoly& f = K.polynomial();
  AlgebraicNum r = AlgebraicNum::from_int(L, mpz_class(0));
  for (size_t i = f.size(); i-- > 0;) r = r * image + AlgebraicNum::from_rational(L, f[i]);
  if (!r.is_zero()) throw InvalidInput("embedding hint is not a root of the base polynomial");
}

AlgebraicNum ExtensionData::map(const AlgebraicNum& x) const {
  if (!(x.field() == K_)) throw std::invalid_argument("element is not in the base field");
  QPoly p = x.to_power_basis();
  AlgebraicNum r = AlgebraicNum::from_int(L_, mpz_class(0));
  for (size_t i = p.size(); i-- > 0;) r = r * image_ + AlgebraicNum::from_rational(L_, p[i]);
  return r;
}

namespace {

// witnesses in K for the logarithmic ramification at a place above ell: 1 + ell, small primes,
// the integral basis, then pseudo-random integers of K, in this order
std::vector<AlgebraicNum> witness_samples(const NumberField& K, unsigned long ell) {
  std::vector<AlgebraicNum> out{AlgebraicNum::from_int(K, mpz_class(1 + ell))};
  for (u64 q : primes_up_to(40))
    if (q != ell) out.push_back(AlgebraicNum::from_int(K, mpz_class(q)));
  const size_t n = K.degree();
  for (size_t i = 1; i < n; ++i) {
    ZVec c(n, mpz_class(0));
    c[i] = 1;
    out.emplace_back(K, c);
  }
  Rng rng(0xe7 + ell);
  for (int k = 0; k < 32; ++k) {
    ZVec c(n, mpz_class(0));
    for (auto& x : c) x = rng.range(-9, 9);
    if (!zvec_is_zero(c)) out.emplace_back(K, c);
  }
  return out;
}

}  // namespace

const PlaceMatch& ExtensionData::match(const PrimeRef& p) const {
  auto it = matches_->find(p);
  if (it != matches_->end()) return it->second;
  const PrimeIdeal& Pk = prime_of(K_, p);
  std::vector<AlgebraicNum> imgs;
  for (auto& g : Pk.ideal.generators())
    if (!g.is_zero()) imgs.push_back(map(g));
  PlaceMatch m;
  m.lower = p;
  const auto& above = decompose_prime(L_, p.p);
  int total = 0;
  for (size_t i = 0; i < above.size(); ++i) {
    bool over = true;
    for (auto& g : imgs) over = over && above[i].valuation(g) >= 1;
    if (!over) continue;
    if (above[i].e % Pk.e != 0 || above[i].f % Pk.f != 0) throw std::logic_error("inconsistent place matching");
    m.upper.push_back({p.p, static_cast<int>(i)});
    m.e.push_back(above[i].e / Pk.e);
    m.f.push_back(above[i].f / Pk.f);
    total += m.e.back() * m.f.back();
  }
  if (total != degree_) throw std::logic_error("place matching does not account for the relative degree");
  const int N = prec_;
  const PadicScalar deg_p = ctx_k_.place(p).degree;
  if (p.p != ell_) {
    for (size_t i = 0; i < m.upper.size(); ++i) {
      m.e_tilde.push_back(PadicScalar::from_residue(ell_, mpz_class(m.e[i]), N));
      m.f_tilde.push_back(PadicScalar::from_residue(ell_, mpz_class(m.f[i]), N));
      m.witness_checked.push_back(true);
    }
  } else {
    // e~(P/p) = nu~_P(x) / nu~_p(x) for witnesses x with nu~_p(x) a unit
    std::vector<std::pair<AlgebraicNum, PadicScalar>> wit;
    for (auto& x : witness_samples(K_, ell_)) {
      if (x.is_zero()) continue;
      PadicScalar v = ctx_k_.log_valuation(x, p);
      if (v.is_unit()) wit.push_back({x, v});
      if (wit.size() == 2) break;
    }
    if (wit.empty()) throw PadicError("no witness with a unit logarithmic valuation");
    for (size_t i = 0; i < m.upper.size(); ++i) {
      std::vector<PadicScalar> r;
      for (auto& [x, v] : wit) r.push_back((ctx_l_.log_valuation(map(x), m.upper[i]) / v).truncated(N));
      bool agree = r.size() == 2 && r[0].equals(r[1], kSlack);
      if (r.size() == 2 && !agree) throw PadicError("logarithmic ramification depends on the witness");
      m.e_tilde.push_back(r[0]);
      m.witness_checked.push_back(agree);
      m.f_tilde.push_back((ctx_l_.place(m.upper[i]).degree / deg_p).truncated(N));
    }
  }
  return matches_->emplace(p, std::move(m)).first->second;
}

ExtensionData build_extension(const NumberField& K, const NumberField& L, unsigned long ell, int prec,
                              const std::optional<QPoly>& hint) {
  if (L.degree() % K.degree() != 0) throw InvalidInput("degree of the extension is not a multiple of the base degree");
  if (hint) return ExtensionData(K, L, AlgebraicNum::from_power_basis(L, *hint), ell, prec);
  auto roots = roots_in_field(L, K.polynomial());
  if (roots.empty()) throw CapsExceeded("no embedding of the base field found");
  return ExtensionData(K, L, roots.front(), ell, prec);
}

PadicScalar log_ramification(const ExtensionData& E, const PrimeRef& P, const PrimeRef& p) {
  const PlaceMatch& m = E.match(p);
  for (size_t i = 0; i < m.upper.size(); ++i)
    if (m.upper[i] == P) return m.e_tilde[i];
  throw std::invalid_argument("prime of the extension does not lie above the given prime");
}

UnramifiedReport is_log_unramified(const ExtensionData& E, const std::vector<PrimeRef>& extra) {
  UnramifiedReport rep;
  std::set<u64> rational{E.ell()};
  for (auto& [p, k] : factor_integer(abs(E.ext().discriminant()))) rational.insert(p.get_ui());
  std::set<PrimeRef> scope;
  for (u64 p : rational)
    for (size_t i = 0; i < decompose_prime(E.base(), p).size(); ++i) scope.insert({p, static_cast<int>(i)});
  for (auto& r : extra) scope.insert(r);
  rep.unramified = true;
  for (auto& p : scope) {
    const PlaceMatch& m = E.match(p);
    for (size_t i = 0; i < m.upper.size(); ++i) {
      UnramifiedPlace u{p, m.upper[i], m.e_tilde[i], m.e_tilde[i].is_unit()};
      rep.unramified = rep.unramified && u.unramified;
      rep.places.push_back(u);
    }
  }
  rep.real_places_unchecked = E.ell() == 2;
  return rep;
}

LogDivisor extend_divisor(const LogDivisor& d, const ExtensionData& E) {
  LogDivisor out;
  for (auto& [p, c] : d.coeff) {
    if (c.is_zero()) continue;
    const PlaceMatch& m = E.match(p);
    for (size_t i = 0; i < m.upper.size(); ++i) {
      PadicScalar v = (c * m.e_tilde[i]).truncated(E.precision());
      auto it = out.coeff.find(m.upper[i]);
      if (it == out.coeff.end())
        out.coeff.emplace(m.upper[i], v);
      else
        it->second += v;
    }
  }
  return out;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::capitulates:
      return "capitulates";
    case Verdict::survives:
      return "survives";
    default:
      return "inconclusive";
  }
}

CapitulationReport capitulation_kernel(const NumberField& K, const NumberField& L, unsigned long ell, int prec,
                                       const Caps& caps, const std::optional<QPoly>& hint) {
  CapitulationReport rep;
  rep.extension = std::make_shared<ExtensionData>(build_extension(K, L, ell, prec, hint));
  const ExtensionData& E = *rep.extension;
  rep.base = log_class_group(K, ell, prec, caps);
  std::vector<unsigned long> below;
  std::vector<PrimeRef> tk;
  for (auto& lp : rep.base.T) {
    below.push_back(lp.ref.p);
    tk.push_back(lp.ref);
  }
  std::sort(below.begin(), below.end());
  below.erase(std::unique(below.begin(), below.end()), below.end());
  // every prime of L above T_K is a generator of the presentation over L
  rep.ext = log_class_group(L, ell, prec, caps, below);
  rep.inputs_certified = rep.base.class_group_certified && rep.base.saturated && rep.ext.class_group_certified &&
                         rep.ext.saturated;
  rep.unramified = is_log_unramified(E, tk);

  const LogClassGroup& GL = rep.ext;
  for (auto& [v, a] : rep.base.torsion_generators()) {
    LogDivisor d;
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) d.coeff.emplace(rep.base.T[i].ref, PadicScalar::from_residue(ell, v[i], prec));
    LogDivisor dj = extend_divisor(d, E);
    if (!E.ext_context().degree(dj).is_zero_within(kSlack)) throw std::logic_error("extended divisor has nonzero degree");
    ClassVerdict cv;
    cv.generator = v;
    cv.exponent = a;
    cv.image = GL.class_of(GL.vector_of(dj));
    bool torsion_hit = false, free_hit = false;
    for (size_t i = 0; i < cv.image.size(); ++i) {
      if (cv.image[i] == 0) continue;
      (GL.degree_zero.generator_exponent(i) >= prec ? free_hit : torsion_hit) = true;
    }
    cv.verdict = torsion_hit ? Verdict::survives : free_hit ? Verdict::inconclusive : Verdict::capitulates;
    rep.classes.push_back(cv);
  }

  // kernel of the map on C~_K^tor, by enumeration
  rep.kernel_exact = true;
  for (auto& cv : rep.classes) rep.kernel_exact = rep.kernel_exact && cv.verdict != Verdict::inconclusive;
  mpz_class order = 1;
  int amax = 0;
  for (auto& cv : rep.classes) {
    order *= ell_pow(ell, cv.exponent);
    amax = std::max(amax, cv.exponent);
  }
  if (order > 1000000) throw CapsExceeded("torsion group too large to enumerate the capitulation kernel");
  const size_t g = rep.classes.size();
  std::vector<mpz_class> counts(amax + 1, mpz_class(0));
  std::vector<long> x(g, 0);
  const size_t coords = g ? rep.classes[0].image.size() : 0;
  while (true) {
    bool in_kernel = true;
    for (size_t i = 0; i < coords && in_kernel; ++i) {
      int b = GL.degree_zero.generator_exponent(i);
      mpz_class s = 0;
      for (size_t k = 0; k < g; ++k) s += x[k] * rep.classes[k].image[i];
      mpz_class m = ell_pow(ell, b);
      in_kernel = mpz_divisible_p(s.get_mpz_t(), m.get_mpz_t());
    }
    if (in_kernel) {
      // smallest j with ell^j x = 0
      int j = 0;
      for (size_t k = 0; k < g; ++k) {
        if (x[k] == 0) continue;
        long v = 0, t = x[k];
        while (t % static_cast<long>(ell) == 0) t /= static_cast<long>(ell), ++v;
        j = std::max(j, rep.classes[k].exponent - static_cast<int>(v));
      }
      for (int t = j; t <= amax; ++t) ++counts[t];
    }
    size_t k = 0;
    while (k < g && ++x[k] == ell_pow(ell, rep.classes[k].exponent)) x[k++] = 0;
    if (k == g) break;
  }
  rep.kernel = group_invariants_from_counts(ell, counts);
  return rep;
}

}  // namespace logcap
