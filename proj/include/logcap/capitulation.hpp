#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "logcap/logclass.hpp"

namespace logcap {

struct PlaceMatch {
  PrimeRef lower;                   // prime of K
  std::vector<PrimeRef> upper;      // primes of L above it
  std::vector<int> e, f;            // ordinary relative indices
  std::vector<PadicScalar> e_tilde; // logarithmic ramification e~(P/p)
  std::vector<PadicScalar> f_tilde; // deg_L(P) / deg_K(p)
  std::vector<bool> witness_checked;  // a second witness agreed
};

class ExtensionData {
 public:
  ExtensionData(const NumberField& K, const NumberField& L, const AlgebraicNum& image, unsigned long ell, int prec);

  const NumberField& base() const { return K_; }
  const NumberField& ext() const { return L_; }
  const AlgebraicNum& image() const { return image_; }  // image of K's generator
  int degree() const { return degree_; }
  unsigned long ell() const { return ell_; }
  int precision() const { return prec_; }
  const LogContext& base_context() const { return ctx_k_; }
  const LogContext& ext_context() const { return ctx_l_; }

  AlgebraicNum map(const AlgebraicNum& x) const;
  // place matching above p, computed on first use
  const PlaceMatch& match(const PrimeRef& p) const;

 private:
  NumberField K_, L_;
  AlgebraicNum image_;
  int degree_;
  unsigned long ell_;
  int prec_;
  LogContext ctx_k_, ctx_l_;
  std::shared_ptr<std::map<PrimeRef, PlaceMatch>> matches_;
};

// hint: coordinates of the image of K's generator in L's power basis (constant term first)
ExtensionData build_extension(const NumberField& K, const NumberField& L, unsigned long ell, int prec = kDefaultPrecision,
                              const std::optional<QPoly>& hint = std::nullopt);

// e~(P/p) for a prime P of L above the prime p of K
PadicScalar log_ramification(const ExtensionData& E, const PrimeRef& P, const PrimeRef& p);

struct UnramifiedPlace {
  PrimeRef lower, upper;
  PadicScalar e_tilde;
  bool unramified = false;  // e~ is 1 up to the unit left free by the normalisation of deg
};
struct UnramifiedReport {
  std::vector<UnramifiedPlace> places;
  bool unramified = false;
  bool real_places_unchecked = false;  // ell = 2
};
// scope: primes above ell and above the primes dividing disc(L), plus `extra` primes of K
UnramifiedReport is_log_unramified(const ExtensionData& E, const std::vector<PrimeRef>& extra = {});

LogDivisor extend_divisor(const LogDivisor& d, const ExtensionData& E);

enum class Verdict { capitulates, survives, inconclusive };
const char* verdict_name(Verdict v);

struct ClassVerdict {
  ZVec generator;  // degree-zero vector over T_K
  int exponent = 0;
  ZVec image;      // class of j(generator) in C~_L
  Verdict verdict = Verdict::inconclusive;
};

struct CapitulationReport {
  std::shared_ptr<ExtensionData> extension;
  LogClassGroup base, ext;
  UnramifiedReport unramified;
  std::vector<ClassVerdict> classes;
  std::vector<int> kernel;        // exponents of the invariants of the capitulation kernel
  bool kernel_exact = false;      // no inconclusive verdict entered the kernel
  bool inputs_certified = false;  // both class groups certified and saturated
};

CapitulationReport capitulation_kernel(const NumberField& K, const NumberField& L, unsigned long ell,
                                       int prec = kDefaultPrecision, const Caps& caps = {},
                                       const std::optional<QPoly>& hint = std::nullopt);

}  // namespace logcap
