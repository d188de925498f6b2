#include "logcap/units_classes.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "logcap/poly.hpp"

#include "field_data.hpp"

namespace logcap {

std::optional<size_t> FactorBase::find(const PrimeRef& r) const {
  auto it = std::lower_bound(primes.begin(), primes.end(), r);
  if (it == primes.end() || !(*it == r)) return std::nullopt;
  return static_cast<size_t>(it - primes.begin());
}

std::optional<ZVec> FactorBase::divisor(const AlgebraicNum& x) const {
  ZVec v(primes.size(), mpz_class(0));
  for (auto& [ref, k] : element_divisor(x)) {
    auto i = find(ref);
    if (!i) return std::nullopt;
    v[*i] = k;
  }
  return v;
}

FactorBase factor_base(const NumberField& K, const std::vector<unsigned long>& extra_rational,
                       const std::vector<PrimeRef>& extra) {
  FactorBase fb;
  fb.K = K;
  long double M = K.minkowski_bound();
  auto bound = static_cast<u64>(std::floor(M + 1e-9L));
  std::vector<PrimeRef> refs;
  for (u64 p : primes_up_to(bound)) {
    const auto& ps = decompose_prime(K, p);
    for (size_t i = 0; i < ps.size(); ++i)
      if (static_cast<long double>(ps[i].norm().get_d()) <= M + 1e-9L) refs.push_back({p, static_cast<int>(i)});
  }
  for (auto p : extra_rational) {
    const auto& ps = decompose_prime(K, p);
    for (size_t i = 0; i < ps.size(); ++i) refs.push_back({p, static_cast<int>(i)});
  }
  for (auto& r : extra) {
    prime_of(K, r);  // validates
    refs.push_back(r);
  }
  std::sort(refs.begin(), refs.end());
  refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
  fb.primes = refs;
  for (auto& r : refs) fb.rational_primes.push_back(r.p);
  fb.rational_primes.erase(std::unique(fb.rational_primes.begin(), fb.rational_primes.end()), fb.rational_primes.end());
  return fb;
}

ZVec ClassGroupData::class_of(const ZVec& divisor) const {
  ZVec c = snf.coordinates(divisor);
  ZVec out;
  for (size_t i = 0; i < c.size(); ++i)
    if (snf.divisors[i] > 1) out.push_back(c[i]);
  return out;
}

std::optional<ZVec> integer_solve(const ZMat& R, const ZVec& v0) {
  size_t k = R.size(), m = v0.size();
  if (k == 0) return zvec_is_zero(v0) ? std::optional<ZVec>(ZVec()) : std::nullopt;
  ZMat aug;
  for (size_t i = 0; i < k; ++i) {
    ZVec row = R[i];
    row.resize(m + k, mpz_class(0));
    row[m + i] = 1;
    aug.push_back(row);
  }
  ZMat H = hnf(aug, m + k);
  ZVec v = v0, c(k, mpz_class(0));
  for (auto& row : H) {
    size_t piv = 0;
    while (piv < m + k && row[piv] == 0) ++piv;
    if (piv >= m) break;
    if (v[piv] == 0) continue;
    if (!mpz_divisible_p(v[piv].get_mpz_t(), row[piv].get_mpz_t())) return std::nullopt;
    mpz_class q = v[piv] / row[piv];
    for (size_t j = 0; j < m; ++j) v[j] -= q * row[j];
    for (size_t j = 0; j < k; ++j) c[j] += q * row[m + j];
  }
  if (!zvec_is_zero(v)) return std::nullopt;
  return c;
}

namespace {

// all a in [-b, b]^m with max |a_i| = b and first nonzero entry positive
template <class F>
bool for_shell(int m, int b, F&& visit) {
  std::vector<long> a(m, -b);
  while (true) {
    long mx = 0;
    int first = 0;
    for (int i = 0; i < m; ++i) {
      mx = std::max(mx, std::labs(a[i]));
      if (first == 0 && a[i] != 0) first = a[i] > 0 ? 1 : -1;
    }
    if (mx == b && first > 0)
      if (!visit(a)) return false;
    int i = 0;
    while (i < m && a[i] == b) a[i++] = -b;
    if (i == m) return true;
    ++a[i];
  }
}

std::vector<long double> log_vector(const AlgebraicNum& u) {
  NumberField K = u.field();
  auto e = u.embeddings();
  std::vector<long double> v;
  for (int k = 0; k < K.r1() + K.r2() - 1; ++k) v.push_back((k < K.r1() ? 1 : 2) * std::log(std::abs(e[k])));
  return v;
}

constexpr long double kPi = 3.14159265358979323846264338327950288L;
constexpr u64 kEulerBound = 30000;

long double det_ld(std::vector<std::vector<long double>> a) {
  size_t n = a.size();
  long double d = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    for (size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (a[p][c] == 0) return 0;
    if (p != c) std::swap(a[p], a[c]), d = -d;
    d *= a[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      long double f = a[r][c] / a[c][c];
      for (size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return d;
}

long torsion_count(const NumberField& K) {
  long w = 1;
  for (u64 ell : primes_up_to(static_cast<u64>(K.degree()) + 1)) {
    if (K.degree() % (ell - 1) != 0) continue;
    int m = ell_power_roots_of_unity(K, ell).second;
    for (int i = 0; i < m; ++i) w *= static_cast<long>(ell);
  }
  return w;
}

long double zeta_residue(const NumberField& K) {
  const QPoly& f = K.polynomial();
  long double res = 1;
  for (u64 p : primes_up_to(kEulerBound)) {
    long double local = 1 - 1.0L / p;
    auto inv = [&](long double norm) { local /= 1 - 1 / norm; };
    if (mpz_divisible_ui_p(K.index().get_mpz_t(), p)) {
      for (auto& P : decompose_prime(K, p)) inv(std::pow(static_cast<long double>(p), P.f));
    } else {
      for (auto& [g, e] : fp_factor(fp_from(f, p), p)) inv(std::pow(static_cast<long double>(p), fp_deg(g)));
    }
    res *= local;
  }
  return res;
}

class Search {
 public:
  Search(ClassGroupData& out, const Caps& caps)
      : out_(out), caps_(caps), K_(out.fb.K), lattice_(out.fb.size()) {
    // the analytic check needs the regulator, so units are collected in every case
    rank_needed_ = K_.unit_rank();
    if (K_.degree() == 2 && K_.r1() == 2) {
      add_unit(real_quadratic_unit(K_));
      exact_units_ = true;
    }
    for (auto p : out_.fb.rational_primes) smooth_.push_back(p);
  }

  void run() {
    const size_t t = out_.fb.size();
    mpz_class prev = -1;
    int stable = 0;
    // small elements of each factor-base prime
    const int box = caps_.box > 0 ? caps_.box : 1 << 20;
    for (int b = 1; b <= std::min(2, box); ++b)
      for (auto& r : out_.fb.primes) enumerate_ideal(prime_of(K_, r).ideal, b);
    bool done = false;
    for (int b = 1; b <= box && !done; ++b) {
      out_.box = b;
      if (!enumerate(K_.reduced_basis(), b)) break;
      if (lattice_.rank() < t) {
        // keep pushing on primes that are still missing
        for (auto& r : out_.fb.primes) enumerate_ideal(prime_of(K_, r).ideal, std::min(b + 2, box));
      }
      if (lattice_.rank() < t) continue;
      mpz_class d = t ? lattice_.determinant() : mpz_class(1);
      stable = d == prev ? stable + 1 : 0;
      prev = d;
      if ((stable >= 1 || (t > 0 && minkowski_trivial() && d == 1) || t == 0) && units_complete())
        done = analytic_ok(d);
      if (out_.examined >= caps_.max_elements) break;
    }
    out_.full_rank = lattice_.rank() == t;
    if (out_.full_rank) {
      out_.lattice = t ? lattice_.basis() : ZMat{};
      out_.snf = t ? int_snf(out_.lattice) : IntSnf{{}, {}, mpz_class(1)};
      out_.h = out_.snf.det;
      for (auto& d : out_.snf.divisors)
        if (d > 1) out_.elementary_divisors.push_back(d);
      out_.certified = done;
    }
  }

  bool units_complete() const { return static_cast<int>(out_.units.size()) >= rank_needed_; }

 private:
  bool minkowski_trivial() const { return K_.minkowski_bound() < 2; }

  // h R against the residue of the zeta function at 1 (truncated Euler product);
  // a missing relation or unit shows up as a ratio >= 2
  bool analytic_ok(const mpz_class& h) {
    if (!residue_) residue_ = zeta_residue(K_);
    int r = K_.unit_rank();
    long double R = 1;
    if (r > 0) {
      std::vector<std::vector<long double>> m;
      for (auto& u : out_.units) m.push_back(log_vector(u));
      R = std::abs(det_ld(m));
    }
    long double w = static_cast<long double>(torsion_count(K_));
    long double pred = w * std::sqrt(std::abs(K_.discriminant().get_d())) * *residue_ /
                       (std::pow(2.0L, K_.r1()) * std::pow(2 * kPi, K_.r2()));
    // the factor base contains the Minkowski primes, so h is the class number of O
    long double ratio = static_cast<long double>(h.get_d()) * R / pred;
    out_.analytic_ratio = static_cast<double>(ratio);
    return ratio > 0.5L && ratio < 1.5L;
  }

  bool enumerate(const ZMat& basis, int b) {
    const FieldData& d = *K_.data();
    int n = d.n;
    size_t emb = d.roots.size();
    std::vector<std::vector<Complex>> be(n, std::vector<Complex>(emb));
    for (int i = 0; i < n; ++i)
      for (size_t k = 0; k < emb; ++k) {
        Complex s = 0;
        for (int j = 0; j < n; ++j)
          if (basis[i][j] != 0) s += static_cast<long double>(basis[i][j].get_d()) * d.bvals[j][k];
        be[i][k] = s;
      }
    std::vector<Complex> e(emb);
    return for_shell(n, b, [&](const std::vector<long>& a) {
      if (++out_.examined > caps_.max_elements) return false;
      std::fill(e.begin(), e.end(), Complex(0));
      for (int i = 0; i < n; ++i)
        if (a[i])
          for (size_t k = 0; k < emb; ++k) e[k] += static_cast<long double>(a[i]) * be[i][k];
      long double N = 1;
      for (int k = 0; k < d.r1; ++k) N *= std::abs(e[k].real());
      for (size_t k = d.r1; k < emb; ++k) N *= std::norm(e[k]);
      if (N < 0.5L || N > 1e18L) return true;
      u64 Nr = static_cast<u64>(std::llround(N));
      u64 rem = Nr;
      for (u64 p : smooth_)
        while (rem % p == 0) rem /= p;
      if (rem != 1) return true;
      ZVec c(n, mpz_class(0));
      for (int i = 0; i < n; ++i)
        if (a[i])
          for (int j = 0; j < n; ++j) c[j] += a[i] * basis[i][j];
      consider(AlgebraicNum(K_, c));
      return true;
    });
  }

  void enumerate_ideal(const Ideal& I, int b) {
    const FieldData& d = *K_.data();
    int n = d.n;
    std::vector<std::vector<long double>> vecs(n);
    const ZMat& H = I.hnf();
    for (int i = 0; i < n; ++i) {
      std::vector<Complex> s(d.roots.size(), Complex(0));
      for (int j = 0; j < n; ++j)
        if (H[i][j] != 0)
          for (size_t k = 0; k < s.size(); ++k) s[k] += static_cast<long double>(H[i][j].get_d()) * d.bvals[j][k];
      for (int k = 0; k < d.r1; ++k) vecs[i].push_back(s[k].real());
      for (size_t k = d.r1; k < s.size(); ++k) {
        vecs[i].push_back(std::sqrt(2.0L) * s[k].real());
        vecs[i].push_back(std::sqrt(2.0L) * s[k].imag());
      }
    }
    ZMat T = lll_transform(vecs);
    enumerate(zmul(T, H), b);
  }

  void consider(const AlgebraicNum& x) {
    auto v = out_.fb.divisor(x);
    if (!v) return;
    if (zvec_is_zero(*v)) {
      add_unit(x);
      return;
    }
    if (rank_needed_ > 0 && !exact_units_) {
      auto lx = log_vector(x);
      auto it = seen_.find(*v);
      if (it == seen_.end()) {
        seen_.emplace(*v, std::make_pair(x, lx));
      } else if (it->second.first != x) {
        // x / y is a unit; divide only when its log says it is useful
        for (size_t i = 0; i < lx.size(); ++i) lx[i] -= it->second.second[i];
        const AlgebraicNum& y = it->second.first;
        add_unit(lx, [&] { return x / y; });
      }
    }
    if (lattice_.insert(*v)) out_.relations.push_back({x, *v});
  }

  void add_unit(const AlgebraicNum& u) {
    if (!u.is_integral()) return;
    add_unit(log_vector(u), [&] { return u; });
  }

  template <class Make>
  void add_unit(std::vector<long double> lv, Make&& make) {
    if (rank_needed_ == 0 || exact_units_) return;
    long double norm0 = 0;
    for (auto x : lv) norm0 += x * x;
    if (norm0 < 1e-12L) return;  // root of unity
    if (units_complete()) {
      refine_units(lv, make);
      return;
    }
    // Gram-Schmidt against accepted units
    for (auto& g : gs_) {
      long double dot = 0, gg = 0;
      for (size_t i = 0; i < lv.size(); ++i) {
        dot += lv[i] * g[i];
        gg += g[i] * g[i];
      }
      for (size_t i = 0; i < lv.size(); ++i) lv[i] -= dot / gg * g[i];
    }
    long double res = 0;
    for (auto x : lv) res += x * x;
    if (res < 1e-10L * (1 + norm0)) return;
    AlgebraicNum u = make();
    mpq_class N = u.norm();
    if (!u.is_integral() || (N != 1 && N != -1)) return;
    gs_.push_back(lv);
    out_.units.push_back(u);
    ulogs_.push_back(log_vector(u));
  }

  // u = prod units_i^(c_i) with c_i in (1/q)Z: replace the units by a basis of the larger lattice
  template <class Make>
  void refine_units(const std::vector<long double>& lv, Make&& make) {
    size_t r = out_.units.size();
    std::vector<std::vector<long double>> a(r, std::vector<long double>(r + 1));
    for (size_t i = 0; i < r; ++i) {
      const auto& li = ulogs_[i];
      for (size_t j = 0; j < r; ++j) a[j][i] = li[j];
      a[i][r] = lv[i];
    }
    // Gaussian elimination for c with sum_i c_i log(units_i) = log(u)
    for (size_t c = 0; c < r; ++c) {
      size_t p = c;
      for (size_t k = c + 1; k < r; ++k)
        if (std::abs(a[k][c]) > std::abs(a[p][c])) p = k;
      std::swap(a[p], a[c]);
      for (size_t k = 0; k < r; ++k)
        if (k != c) {
          long double f = a[k][c] / a[c][c];
          for (size_t j = c; j <= r; ++j) a[k][j] -= f * a[c][j];
        }
    }
    std::vector<long double> c(r);
    for (size_t i = 0; i < r; ++i) c[i] = a[i][r] / a[i][i];
    long q = 0;
    for (long t = 1; t <= 64 && !q; ++t) {
      bool ok = true;
      for (auto x : c) ok = ok && std::abs(t * x - std::round(t * x)) < 1e-6L * (1 + std::abs(t * x));
      if (ok) q = t;
    }
    if (q <= 1) return;
    ZMat aug(r + 1, ZVec(2 * r + 1, mpz_class(0)));
    for (size_t i = 0; i < r; ++i) {
      aug[i][i] = q;
      aug[i][r + i] = 1;
      aug[r][i] = static_cast<long>(std::llround(q * c[i]));
    }
    aug[r][2 * r] = 1;
    ZMat H = hnf(aug, 2 * r + 1);
    std::vector<AlgebraicNum> gens = out_.units;
    gens.push_back(make());
    std::vector<AlgebraicNum> fresh;
    for (size_t j = 0; j < r; ++j) {
      AlgebraicNum e = K_.one();
      for (size_t i = 0; i <= r; ++i)
        if (H[j][r + i] != 0) e = e * gens[i].pow(H[j][r + i].get_si());
      fresh.push_back(e);
    }
    out_.units.clear();
    ulogs_.clear();
    gs_.clear();
    for (auto& e : fresh) add_unit(e);
  }

  ClassGroupData& out_;
  const Caps& caps_;
  NumberField K_;
  IncrementalHnf lattice_;
  int rank_needed_ = 0;
  bool exact_units_ = false;  // fundamental units known in advance
  std::vector<u64> smooth_;
  std::map<ZVec, std::pair<AlgebraicNum, std::vector<long double>>> seen_;
  std::vector<std::vector<long double>> ulogs_;
  std::vector<std::vector<long double>> gs_;
  std::optional<long double> residue_;
};

}  // namespace

ClassGroupData class_group(const NumberField& K, const Caps& caps, const std::vector<unsigned long>& extra_rational,
                           const std::vector<PrimeRef>& extra) {
  ClassGroupData out;
  out.fb = factor_base(K, extra_rational, extra);
  Search s(out, caps);
  s.run();
  return out;
}

AlgebraicNum real_quadratic_unit(const NumberField& K) {
  if (K.degree() != 2 || K.r1() != 2) throw Unsupported("continued-fraction units need a real quadratic field");
  mpz_class D = K.discriminant();
  // O = Z[alpha]; beta = -conj(alpha) > 0 written (P + sqrt(N)) / Q
  mpz_class P, Q, N;
  QPoly alpha_poly;
  if (D % 4 == 1) {
    P = -1, Q = 2, N = D;
    alpha_poly = {mpq_class(1 - D, 4), mpq_class(-1), mpq_class(1)};
  } else {
    P = 0, Q = 1, N = D / 4;
    alpha_poly = {mpq_class(-N), mpq_class(0), mpq_class(1)};
  }
  auto roots = roots_in_field(K, alpha_poly);
  if (roots.empty()) throw std::logic_error("quadratic generator not found");
  // alpha: the root that is larger in the first embedding
  AlgebraicNum alpha = roots.front();
  if (roots.size() > 1 && roots[1].embeddings()[0].real() > alpha.embeddings()[0].real()) alpha = roots[1];
  mpz_class s = isqrt(N);
  mpz_class p1 = 1, p2 = 0, q1 = 0, q2 = 1;
  for (int it = 0; it < 100000; ++it) {
    mpz_class a;
    mpz_class t = P + s;
    mpz_fdiv_q(a.get_mpz_t(), t.get_mpz_t(), Q.get_mpz_t());
    mpz_class p = a * p1 + p2, q = a * q1 + q2;
    p2 = p1, p1 = p, q2 = q1, q1 = q;
    AlgebraicNum eps = AlgebraicNum::from_int(K, p) + alpha.scaled(q);
    mpq_class nrm = eps.norm();
    if (q > 0 && (nrm == 1 || nrm == -1)) return eps;
    P = a * Q - P;
    Q = (N - P * P) / Q;
  }
  throw CapsExceeded("continued fraction did not reach a unit");
}

UnitGroup unit_group(const NumberField& K, const Caps& caps) {
  if (K.unit_rank() >= 2) throw Unsupported("unit groups of rank >= 2 are not supported");
  UnitGroup g;
  // torsion: product of the ell-primary parts
  g.torsion_generator = K.one();
  g.torsion_order = 1;
  for (u64 ell : primes_up_to(static_cast<u64>(K.degree()) + 1)) {
    if (K.degree() % (ell - 1) != 0) continue;
    auto [z, m] = ell_power_roots_of_unity(K, ell);
    for (int i = 0; i < m; ++i) g.torsion_order *= static_cast<long>(ell);
    g.torsion_generator = g.torsion_generator * z;
  }
  if (K.unit_rank() == 1) {
    if (K.degree() == 2) {
      g.fundamental.push_back(real_quadratic_unit(K));
    } else {
      auto cg = class_group(K, caps);
      if (cg.units.empty()) throw CapsExceeded("no unit found within the enumeration caps");
      g.fundamental.push_back(cg.units.front());
    }
  }
  return g;
}

namespace {

struct Character {
  PrimeRef Q;
  u64 q;
  u64 exponent;               // (q - 1) / ell
  std::vector<u64> powers;    // zeta^i, i < ell
};

bool is_root_of_unity(const AlgebraicNum& y) {
  if (!y.is_integral()) return false;
  for (auto& z : y.embeddings())
    if (std::abs(std::abs(z) - 1.0L) > 1e-9L) return false;
  return true;
}

// least-squares free solve of sum_i m_i a_i = b for independent rows a_i (r x r)
std::optional<std::vector<long double>> solve_ld(std::vector<std::vector<long double>> a, std::vector<long double> b) {
  size_t r = a.size();
  // columns of the system are the rows a_i
  std::vector<std::vector<long double>> m(r, std::vector<long double>(r + 1));
  for (size_t i = 0; i < r; ++i) {
    for (size_t j = 0; j < r; ++j) m[j][i] = a[i][j];
  }
  for (size_t j = 0; j < r; ++j) m[j][r] = b[j];
  for (size_t c = 0; c < r; ++c) {
    size_t p = c;
    for (size_t k = c + 1; k < r; ++k)
      if (std::abs(m[k][c]) > std::abs(m[p][c])) p = k;
    if (std::abs(m[p][c]) < 1e-12L) return std::nullopt;
    std::swap(m[p], m[c]);
    for (size_t k = 0; k < r; ++k)
      if (k != c) {
        long double f = m[k][c] / m[c][c];
        for (size_t j = c; j <= r; ++j) m[k][j] -= f * m[c][j];
      }
  }
  std::vector<long double> x(r);
  for (size_t i = 0; i < r; ++i) x[i] = m[i][r] / m[i][i];
  return x;
}

// drop relation witnesses that are Z_ell-combinations of the others, the units and torsion,
// so that the generators handed to saturation are independent
std::vector<AlgebraicNum> independent_relations(const ClassGroupData& cg, unsigned long ell) {
  std::vector<Relation> rel = cg.relations;
  const size_t t = cg.fb.size();
  std::vector<std::vector<long double>> ulog;
  for (auto& u : cg.units) ulog.push_back(log_vector(u));
  while (rel.size() > t) {
    const size_t k = rel.size();
    ZMat aug;
    for (size_t i = 0; i < k; ++i) {
      ZVec row = rel[i].divisor;
      row.resize(t + k, mpz_class(0));
      row[t + i] = 1;
      aug.push_back(row);
    }
    ZMat H = hnf(aug, t + k);
    std::vector<std::vector<long double>> kern;
    ZMat kz;
    for (auto& row : H) {
      bool zero = true;
      for (size_t j = 0; j < t && zero; ++j) zero = row[j] == 0;
      if (!zero) continue;
      ZVec c(row.begin() + static_cast<long>(t), row.end());
      if (zvec_is_zero(c)) continue;
      kz.push_back(c);
      std::vector<long double> f;
      for (auto& x : c) f.push_back(static_cast<long double>(x.get_d()));
      kern.push_back(f);
    }
    if (kz.empty()) break;
    kz = zmul(lll_transform(kern), kz);
    bool removed = false;
    for (auto& c : kz) {
      size_t j = k;
      for (size_t i = k; i-- > 0;)
        if (mod_of(c[i], ell) != 0) {
          j = i;
          break;
        }
      if (j == k) continue;
      // u = prod g^c is a unit; it must lie in the span of the known units up to torsion
      AlgebraicNum u = cg.fb.K.one();
      for (size_t i = 0; i < k; ++i)
        if (c[i] != 0) u = u * rel[i].witness.pow(c[i].get_si());
      AlgebraicNum rest = u;
      if (!ulog.empty()) {
        auto m = solve_ld(ulog, log_vector(u));
        if (!m) continue;
        for (size_t i = 0; i < m->size(); ++i) {
          long mi = std::lround((*m)[i]);
          if (std::abs((*m)[i] - mi) > 1e-6L) goto next;
          if (mi) rest = rest * cg.units[i].pow(-mi);
        }
      }
      if (!is_root_of_unity(rest)) continue;
      rel.erase(rel.begin() + static_cast<long>(j));
      removed = true;
      break;
    next:;
    }
    if (!removed) break;
  }
  std::vector<AlgebraicNum> out;
  for (auto& r : rel) out.push_back(r.witness);
  return out;
}

std::optional<u64> char_value(const Character& c, const NumberField& K, const AlgebraicNum& x) {
  const PrimeIdeal& P = prime_of(K, c.Q);
  u64 r = P.residue(x);
  if (r == 0) return std::nullopt;
  u64 z = powmod(r, c.exponent, c.q);
  for (size_t i = 0; i < c.powers.size(); ++i)
    if (c.powers[i] == z) return i;
  throw std::logic_error("character value outside the ell-th roots of unity");
}

}  // namespace

SUnitBasis s_unit_relations(const NumberField& K, const std::vector<PrimeRef>& S, unsigned long ell, const Caps& caps,
                            const std::vector<unsigned long>& extra_rational) {
  SUnitBasis out;
  auto cg = class_group(K, caps, extra_rational, S);
  if (!cg.full_rank) throw CapsExceeded("relation search did not reach full rank within the caps");
  if (static_cast<int>(cg.units.size()) < K.unit_rank()) throw CapsExceeded("unit search incomplete within the caps");
  out.S = cg.fb;
  out.class_group_certified = cg.certified;
  out.h = cg.h;
  out.class_group = cg.elementary_divisors;
  auto [zeta, m] = ell_power_roots_of_unity(K, ell);
  out.torsion = zeta;
  out.torsion_exponent = m;
  std::vector<AlgebraicNum> G;
  size_t off = m > 0 ? 1 : 0;
  if (m > 0) G.push_back(zeta);
  for (auto& w : independent_relations(cg, ell)) G.push_back(w);
  for (auto& u : cg.units) G.push_back(u);
  std::vector<Character> chars;
  u64 q = 1;
  std::vector<unsigned long> avoid = out.S.rational_primes;
  auto add_characters = [&](size_t want) {
    while (chars.size() < want) {
      q += ell;
      if (!is_prime_u64(q) || std::binary_search(avoid.begin(), avoid.end(), q)) continue;
      const auto& ps = decompose_prime(K, q);
      for (size_t i = 0; i < ps.size(); ++i) {
        if (ps[i].f != 1) continue;
        Character c;
        c.Q = {q, static_cast<int>(i)};
        c.q = q;
        c.exponent = (q - 1) / ell;
        u64 z = 1;
        for (u64 h = 2; h < q; ++h) {
          z = powmod(h, c.exponent, q);
          if (z != 1) break;
        }
        for (u64 i2 = 0, w = 1; i2 < ell; ++i2, w = mulmod(w, z, q)) c.powers.push_back(w);
        chars.push_back(c);
      }
    }
  };
  const int rounds = 6;
  for (int round = 0; round <= rounds; ++round) {
    add_characters(G.size() + 12 + 12 * round);
    std::vector<std::vector<u64>> rows;
    for (auto& c : chars) {
      std::vector<u64> row;
      for (auto& g : G) {
        auto v = char_value(c, K, g);
        if (!v) throw std::logic_error("character prime divides a generator");
        row.push_back(*v);
      }
      rows.push_back(row);
    }
    std::vector<ZVec> divs;
    for (auto& g : G) divs.push_back(*out.S.divisor(g));
    for (size_t j = 0; j < out.S.size(); ++j) {
      std::vector<u64> row;
      for (auto& dv : divs) row.push_back(mod_of(dv[j], ell));
      rows.push_back(row);
    }
    auto ker = fp_kernel(rows, G.size(), ell);
    out.character_primes = static_cast<int>(chars.size());
    if (ker.empty()) {
      out.saturated = true;
      break;
    }
    bool progress = false;
    for (auto& a : ker) {
      AlgebraicNum w = K.one();
      for (size_t i = 0; i < G.size(); ++i)
        if (a[i]) w = w * G[i].pow(static_cast<long>(a[i]));
      auto y = kth_root(w, static_cast<int>(ell));
      if (!y) continue;
      size_t j = G.size();
      for (size_t i = G.size(); i-- > off;)
        if (a[i]) {
          j = i;
          break;
        }
      if (j == G.size()) continue;
      // a torsion root means g_j was redundant
      if (is_root_of_unity(*y))
        G.erase(G.begin() + static_cast<long>(j));
      else
        G[j] = *y;
      progress = true;
      break;
    }
    if (!progress && round == rounds) {
      for (auto& a : ker) {
        ZVec wv;
        for (size_t i = off; i < G.size(); ++i) wv.push_back(static_cast<unsigned long>(a[i]));
        out.pending.push_back(wv);
      }
    }
  }
  for (size_t i = off; i < G.size(); ++i) {
    out.witnesses.push_back(G[i]);
    out.exponents.push_back(*out.S.divisor(G[i]));
    if (zvec_is_zero(out.exponents.back())) ++out.unit_count;
  }
  return out;
}

PrincipalityResult principality_test(const ClassGroupData& cg, const ZVec& v) {
  PrincipalityResult r;
  if (!cg.full_rank) return r;
  ZVec c = cg.class_of(v);
  if (!zvec_is_zero(c)) {
    r.verdict = cg.certified ? Principality::not_principal : Principality::inconclusive;
    return r;
  }
  ZMat R;
  for (auto& rel : cg.relations) R.push_back(rel.divisor);
  auto sol = integer_solve(R, v);
  if (!sol) return r;
  AlgebraicNum g = cg.fb.K.one();
  for (size_t i = 0; i < sol->size(); ++i)
    if ((*sol)[i] != 0) g = g * cg.relations[i].witness.pow((*sol)[i].get_si());
  auto dv = cg.fb.divisor(g);
  if (!dv || *dv != v) return r;
  r.verdict = Principality::principal;
  r.generator = g;
  return r;
}

PrincipalityResult principality_test(const Ideal& a, const Caps& caps) {
  const NumberField& K = a.field();
  std::map<PrimeRef, long> div;
  // factor a: primes above the rational primes dividing its norm
  for (auto& [p, k] : factor_integer(a.norm())) {
    const auto& ps = decompose_prime(K, p.get_ui());
    Ideal rest = a;
    for (size_t i = 0; i < ps.size(); ++i) {
      long v = 0;
      // v_P(a) = min over HNF generators
      long best = -1;
      for (auto& g : a.generators()) {
        if (g.is_zero()) continue;
        long gv = ps[i].valuation(g);
        if (best < 0 || gv < best) best = gv;
      }
      v = best;
      if (v > 0) div[{p.get_ui(), static_cast<int>(i)}] = v;
    }
  }
  if (!(ideal_from_divisor(K, div) == a)) throw std::logic_error("ideal factorisation failed");
  std::vector<PrimeRef> extra;
  for (auto& [ref, k] : div) extra.push_back(ref);
  auto cg = class_group(K, caps, {}, extra);
  ZVec v(cg.fb.size(), mpz_class(0));
  for (auto& [ref, k] : div) v[*cg.fb.find(ref)] = k;
  return principality_test(cg, v);
}

}  // namespace logcap
