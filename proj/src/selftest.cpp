#include "logcap/selftest.hpp"

#include <set>

#include "logcap/arith.hpp"
#include "logcap/capitulation.hpp"

namespace logcap {

namespace {

constexpr size_t kMaxReported = 5;

void fail(SuiteResult& s, const std::string& msg) {
  if (s.failures.size() < kMaxReported) s.failures.push_back(msg);
}

// at low precision the logarithms lose proportionally more digits
int slack_for(int prec) { return prec >= 32 ? kSlack : 2 * kSlack; }

AlgebraicNum random_element(const NumberField& K, Rng& rng, long box) {
  while (true) {
    ZVec c(K.degree());
    for (auto& x : c) x = rng.range(-box, box);
    AlgebraicNum a(K, c);
    if (!a.is_zero()) return a;
  }
}

AlgebraicNum random_ratio(const NumberField& K, Rng& rng) {
  return random_element(K, rng, 30) / random_element(K, rng, 6);
}

bool same_divisor(const LogDivisor& a, const LogDivisor& b, int slack) {
  std::set<PrimeRef> keys;
  for (auto& [r, c] : a.coeff) keys.insert(r);
  for (auto& [r, c] : b.coeff) keys.insert(r);
  for (auto& r : keys) {
    auto ia = a.coeff.find(r), ib = b.coeff.find(r);
    if (ia == a.coeff.end()) {
      if (!ib->second.is_zero_within(slack)) return false;
    } else if (ib == b.coeff.end()) {
      if (!ia->second.is_zero_within(slack)) return false;
    } else if (!ia->second.equals(ib->second, slack)) {
      return false;
    }
  }
  return true;
}

const char* kQuadratics[] = {"x^2+1", "x^2-2", "x^2+23", "x^2-15", "x^2+31"};
const unsigned long kElls[] = {2, 3, 5};

SuiteResult product_formula(std::uint64_t seed, int prec) {
  SuiteResult s{"product_formula", 0, {}};
  Rng rng(seed);
  const int slack = slack_for(prec);
  for (const char* f : kQuadratics) {
    auto K = NumberField::build(f);
    for (unsigned long ell : kElls) {
      LogContext ctx(K, ell, prec);
      for (int k = 0; k < 8; ++k) {
        AlgebraicNum x = random_ratio(K, rng);
        ++s.checks;
        if (!ctx.degree(ctx.log_divisor(x)).is_zero_within(slack))
          fail(s, std::string(f) + " ell=" + std::to_string(ell) + ": deg div(" + x.to_string() + ") != 0");
      }
    }
  }
  return s;
}

SuiteResult functoriality(std::uint64_t seed, int prec) {
  SuiteResult s{"functoriality", 0, {}};
  Rng rng(seed ^ 0xf00d);
  const int slack = slack_for(prec);
  struct Pair {
    const char *base, *ext;
    QPoly hint;
  };
  // in Q(zeta_8) = Q[x]/(x^4 + 1): i = x^2 and sqrt 2 = x - x^3
  const std::vector<Pair> pairs = {{"x", "x^2+1", {}}, {"x^2+1", "x^4+1", {0, 0, 1}}, {"x^2-2", "x^4+1", {0, 1, 0, -1}}};
  for (auto& pr : pairs) {
    auto K = NumberField::build(pr.base), L = NumberField::build(pr.ext);
    for (unsigned long ell : {2ul, 3ul}) {
      auto E = build_extension(K, L, ell, prec, pr.hint.empty() ? std::nullopt : std::optional<QPoly>(pr.hint));
      for (int k = 0; k < 6; ++k) {
        AlgebraicNum x = random_ratio(K, rng);
        ++s.checks;
        LogDivisor up = extend_divisor(E.base_context().log_divisor(x), E);
        if (!same_divisor(up, E.ext_context().log_divisor(E.map(x)), slack))
          fail(s, std::string(pr.base) + " < " + pr.ext + " ell=" + std::to_string(ell) + ": j(div x) != div j(x) for x = " +
                      x.to_string());
      }
    }
  }
  return s;
}

SuiteResult snf(std::uint64_t seed, int prec) {
  SuiteResult s{"smith_normal_form", 0, {}};
  Rng rng(seed ^ 0x5eed);
  for (int k = 0; k < 120; ++k) {
    const unsigned long ell = k % 2 ? 3 : 2;
    const size_t r = 1 + rng.below(6), c = 1 + rng.below(6);
    ZlMatrix A(ell, prec, r, c);
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j) {
        // small entries times a random power of ell make nontrivial divisors likely
        mpz_class v = rng.range(-4, 4) * ell_pow(ell, rng.below(3));
        A.set(i, j, v);
      }
    ++s.checks;
    ModuleDecomposition M = smith_normal_form(A);
    ZlMatrix D = M.U * A * M.V;
    bool ok = determinant(M.U).is_unit() && determinant(M.V).is_unit();
    for (size_t i = 0; i < r && ok; ++i)
      for (size_t j = 0; j < c && ok; ++j) {
        mpz_class want = 0;
        if (i == j && M.diagonal[i] < prec) want = ell_pow(ell, M.diagonal[i]);
        ok = D.at(i, j) == want;
      }
    for (size_t i = 1; i < M.diagonal.size() && ok; ++i) ok = M.diagonal[i - 1] <= M.diagonal[i];
    if (!ok) fail(s, "matrix " + std::to_string(k) + ": U A V is not the Smith form");
  }
  return s;
}

SuiteResult precision_stability(std::uint64_t seed, int prec) {
  SuiteResult s{"precision_stability", 0, {}};
  Rng rng(seed ^ 0xabc);
  const int slack = slack_for(prec);
  for (const char* f : {"x^2+23", "x^2+31", "x^2-10"}) {
    auto K = NumberField::build(f);
    for (unsigned long ell : {2ul, 3ul}) {
      LogContext lo(K, ell, prec), hi(K, ell, prec + 8);
      for (int k = 0; k < 4; ++k) {
        AlgebraicNum x = random_ratio(K, rng);
        ++s.checks;
        LogDivisor a = lo.log_divisor(x), b = hi.log_divisor(x);
        for (auto& [r, c] : b.coeff) c = c.truncated(prec);
        if (!same_divisor(a, b, slack)) fail(s, std::string(f) + ": div(" + x.to_string() + ") moved with precision");
      }
      auto G = log_class_group(K, ell, prec), H = log_class_group(K, ell, prec + 8);
      ++s.checks;
      if (G.torsion != H.torsion || G.epsilon_tilde != H.epsilon_tilde || G.full.free_rank != H.full.free_rank)
        fail(s, std::string(f) + " ell=" + std::to_string(ell) + ": group invariants moved with precision");
    }
  }
  return s;
}

}  // namespace

std::vector<SuiteResult> run_selftest(std::uint64_t seed, int prec) {
  std::vector<SuiteResult> out;
  using Suite = SuiteResult (*)(std::uint64_t, int);
  const std::pair<const char*, Suite> suites[] = {{"product_formula", product_formula},
                                                  {"functoriality", functoriality},
                                                  {"smith_normal_form", snf},
                                                  {"precision_stability", precision_stability}};
  for (auto& [name, suite] : suites) {
    try {
      out.push_back(suite(seed, prec));
    } catch (const std::exception& e) {
      out.push_back({name, 0, {std::string("exception: ") + e.what()}});
    }
  }
  return out;
}

}  // namespace logcap
