#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "logcap/arith.hpp"

namespace logcap {

// coefficients low to high, no trailing zeros; the zero polynomial is empty
using QPoly = std::vector<mpq_class>;
using FpPoly = std::vector<u64>;
using Complex = std::complex<long double>;

struct PolyParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

QPoly parse_polynomial(const std::string& s);
std::string poly_to_string(const QPoly& f);

int deg(const QPoly& f);
void trim(QPoly& f);
QPoly poly_add(const QPoly& a, const QPoly& b);
QPoly poly_sub(const QPoly& a, const QPoly& b);
QPoly poly_mul(const QPoly& a, const QPoly& b);
QPoly poly_scale(const QPoly& a, const mpq_class& c);
std::pair<QPoly, QPoly> poly_divmod(const QPoly& a, const QPoly& b);
QPoly poly_mod(const QPoly& a, const QPoly& b);
QPoly poly_gcd(const QPoly& a, const QPoly& b);  // monic
QPoly poly_derivative(const QPoly& f);
mpq_class poly_eval(const QPoly& f, const mpq_class& x);
Complex poly_eval(const QPoly& f, Complex x);
bool is_integral_monic(const QPoly& f);

mpz_class poly_discriminant(const QPoly& f);  // integer monic f
mpq_class poly_resultant(const QPoly& a, const QPoly& b);
int real_root_count(const QPoly& f);  // Sturm, squarefree f
std::vector<Complex> complex_roots(const QPoly& f);
// monic f with integer coefficients, squarefree
bool is_irreducible(const QPoly& f);

// F_p[x]
void fp_trim(FpPoly& f);
int fp_deg(const FpPoly& f);
FpPoly fp_from(const QPoly& f, u64 p);  // integral coefficients (denominators prime to p)
FpPoly fp_add(const FpPoly& a, const FpPoly& b, u64 p);
FpPoly fp_sub(const FpPoly& a, const FpPoly& b, u64 p);
FpPoly fp_mul(const FpPoly& a, const FpPoly& b, u64 p);
std::pair<FpPoly, FpPoly> fp_divmod(const FpPoly& a, const FpPoly& b, u64 p);
FpPoly fp_mod(const FpPoly& a, const FpPoly& b, u64 p);
FpPoly fp_gcd(const FpPoly& a, const FpPoly& b, u64 p);
FpPoly fp_monic(const FpPoly& a, u64 p);
FpPoly fp_derivative(const FpPoly& a, u64 p);
FpPoly fp_powmod(const FpPoly& base, const mpz_class& e, const FpPoly& m, u64 p);
u64 fp_eval(const FpPoly& f, u64 x, u64 p);
// monic irreducible factors with multiplicity, sorted by (degree, coefficients)
std::vector<std::pair<FpPoly, int>> fp_factor(const FpPoly& f, u64 p);
std::vector<u64> fp_roots(const FpPoly& f, u64 p);

}  // namespace logcap
