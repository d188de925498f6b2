#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "field_data.hpp"

namespace logcap {

ZVec mul_coords(const FieldData& d, const ZVec& x, const ZVec& y) {
  ZVec c(d.n, mpz_class(0));
  mpz_class t;
  for (int i = 0; i < d.n; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < d.n; ++j) {
      if (y[j] == 0) continue;
      t = x[i] * y[j];
      const ZVec& m = d.table[i][j];
      for (int k = 0; k < d.n; ++k)
        if (m[k] != 0) c[k] += t * m[k];
    }
  }
  return c;
}

ZVec mul_coords_mod(const FieldData& d, const ZVec& x, const ZVec& y, const mpz_class& m) {
  ZVec c = mul_coords(d, x, y);
  for (auto& v : c) mpz_mod(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return c;
}

std::vector<u64> mul_coords_fp(const FieldData& d, const std::vector<u64>& x, const std::vector<u64>& y, u64 p) {
  std::vector<u64> c(d.n, 0);
  for (int i = 0; i < d.n; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < d.n; ++j) {
      if (y[j] == 0) continue;
      u64 t = mulmod(x[i], y[j], p);
      const ZVec& m = d.table[i][j];
      for (int k = 0; k < d.n; ++k) {
        if (m[k] == 0) continue;
        c[k] = (c[k] + mulmod(t, mod_of(m[k], p), p)) % p;
      }
    }
  }
  return c;
}

ZMat lower_hnf_mod(const ZMat& rows, size_t n, const mpz_class& D) {
  ZMat rev;
  rev.reserve(rows.size());
  for (auto& r : rows) rev.push_back(ZVec(r.rbegin(), r.rend()));
  ZMat h = hnf_mod(rev, n, D);
  ZMat out;
  for (size_t i = h.size(); i-- > 0;) out.push_back(ZVec(h[i].rbegin(), h[i].rend()));
  return out;
}

namespace {

// multiplication table of the order with basis rows B (power-basis coordinates)
std::vector<std::vector<ZVec>> order_table(const QPoly& f, const QMat& B, const QMat& Binv) {
  size_t n = B.size();
  std::vector<std::vector<ZVec>> T(n, std::vector<ZVec>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      QPoly a(B[i].begin(), B[i].end()), b(B[j].begin(), B[j].end());
      trim(a);
      trim(b);
      QPoly c = poly_mod(poly_mul(a, b), f);
      QVec cv(n, mpq_class(0));
      for (size_t k = 0; k < c.size(); ++k) cv[k] = c[k];
      QVec w = qvecmat(cv, Binv);
      ZVec z(n);
      for (size_t k = 0; k < n; ++k) {
        if (w[k].get_den() != 1) throw std::logic_error("basis does not span an order");
        z[k] = w[k].get_num();
      }
      T[i][j] = z;
      T[j][i] = z;
    }
  return T;
}

ZVec mul_table(const std::vector<std::vector<ZVec>>& T, const ZVec& x, const ZVec& y, u64 p) {
  size_t n = x.size();
  ZVec c(n, mpz_class(0));
  for (size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < n; ++j) {
      if (y[j] == 0) continue;
      mpz_class t = x[i] * y[j];
      for (size_t k = 0; k < n; ++k) c[k] += t * T[i][j][k];
    }
  }
  if (p)
    for (auto& v : c) mpz_fdiv_r_ui(v.get_mpz_t(), v.get_mpz_t(), p);
  return c;
}

// rational row HNF (lower, so row 0 is the least positive rational); full-rank lattice
QMat rational_hnf(const QMat& rows, size_t n) {
  mpz_class d = 1;
  for (auto& r : rows)
    for (auto& x : r) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den().get_mpz_t());
  ZMat z;
  for (auto& r : rows) {
    ZVec v(n);
    for (size_t k = 0; k < n; ++k) {
      mpq_class t = r[k] * d;
      v[k] = t.get_num();
    }
    z.push_back(v);
  }
  ZMat h = hnf_lower(z, n);
  QMat out;
  for (auto& r : h) {
    QVec v(n);
    for (size_t k = 0; k < n; ++k) {
      v[k] = mpq_class(r[k], d);
      v[k].canonicalize();
    }
    out.push_back(v);
  }
  return out;
}

bool dedekind_maximal(const QPoly& f, u64 p) {
  FpPoly fp = fp_from(f, p);
  auto fac = fp_factor(fp, p);
  FpPoly g{1};
  for (auto& [gi, e] : fac) g = fp_mul(g, gi, p);
  FpPoly h = fp_divmod(fp, g, p).first;
  auto lift = [](const FpPoly& a) {
    QPoly r;
    for (u64 c : a) r.push_back(mpq_class(mpz_class(std::to_string(c))));
    trim(r);
    return r;
  };
  QPoly F = poly_scale(poly_sub(poly_mul(lift(g), lift(h)), f), mpq_class(1, p));
  FpPoly Fb = fp_from(F, p);
  FpPoly d = fp_gcd(fp_gcd(Fb, g, p), h, p);
  return fp_deg(d) == 0;
}

// enlarge the order B until it is p-maximal
QMat round2(const QPoly& f, QMat B, u64 p, int max_iter) {
  size_t n = B.size();
  for (int iter = 0;; ++iter) {
    if (iter >= max_iter) throw CapsExceeded("order enlargement exceeded the iteration cap at p = " + std::to_string(p));
    QMat Binv = qinverse(B);
    auto T = order_table(f, B, Binv);
    mpz_class q = p;
    while (q < static_cast<long>(n)) q *= p;
    // radical of pO: kernel of x -> x^q on O/pO
    std::vector<std::vector<u64>> fr(n);
    for (size_t i = 0; i < n; ++i) {
      ZVec base(n, mpz_class(0)), acc(n, mpz_class(0));
      base[i] = 1;
      acc[0] = 1;  // basis row 0 is 1 in every order we build
      mpz_class e = q;
      while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = mul_table(T, acc, base, p);
        e >>= 1;
        if (e > 0) base = mul_table(T, base, base, p);
      }
      for (auto& x : acc) fr[i].push_back(mod_of(x, p));
    }
    std::vector<std::vector<u64>> frT(n, std::vector<u64>(n));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) frT[j][i] = fr[i][j];
    auto ker = fp_kernel(frT, n, p);
    ZMat gens;
    for (auto& v : ker) {
      ZVec z(n);
      for (size_t k = 0; k < n; ++k) z[k] = static_cast<unsigned long>(v[k]);
      gens.push_back(z);
    }
    ZMat Ip = hnf_mod(gens, n, mpz_class(p));
    // U = {y : y Ip in p Ip}
    std::vector<std::vector<u64>> M(n);
    for (size_t i = 0; i < n; ++i) {
      ZVec ei(n, mpz_class(0));
      ei[i] = 1;
      for (size_t k = 0; k < n; ++k) {
        ZVec v = mul_table(T, ei, Ip[k], 0);
        QVec c = hnf_coords(Ip, QVec(v.begin(), v.end()));
        for (auto& x : c) {
          if (x.get_den() != 1) throw std::logic_error("radical is not an ideal");
          M[i].push_back(mod_of(x.get_num(), p));
        }
      }
    }
    std::vector<std::vector<u64>> MT(n * n, std::vector<u64>(n));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n * n; ++j) MT[j][i] = M[i][j];
    auto kerU = fp_kernel(MT, n, p);
    if (kerU.empty()) return B;
    QMat rows = B;
    for (auto& u : kerU) {
      QVec r(n, mpq_class(0));
      for (size_t i = 0; i < n; ++i)
        if (u[i])
          for (size_t k = 0; k < n; ++k) r[k] += mpq_class(mpz_class(std::to_string(u[i]))) * B[i][k];
      for (auto& x : r) x /= p;
      rows.push_back(r);
    }
    B = rational_hnf(rows, n);
  }
}

std::vector<long double> solve_real(std::vector<std::vector<long double>> A, std::vector<long double> b) {
  size_t n = b.size();
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    for (size_t i = k + 1; i < n; ++i)
      if (std::abs(A[i][k]) > std::abs(A[piv][k])) piv = i;
    std::swap(A[k], A[piv]);
    std::swap(b[k], b[piv]);
    if (A[k][k] == 0) return {};
    for (size_t i = k + 1; i < n; ++i) {
      long double f = A[i][k] / A[k][k];
      for (size_t j = k; j < n; ++j) A[i][j] -= f * A[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<long double> x(n);
  for (size_t i = n; i-- > 0;) {
    long double s = b[i];
    for (size_t j = i + 1; j < n; ++j) s -= A[i][j] * x[j];
    x[i] = s / A[i][i];
  }
  return x;
}

}  // namespace

NumberField NumberField::build(const std::string& s, const Caps& caps) {
  QPoly f;
  try {
    f = parse_polynomial(s);
  } catch (const PolyParseError& e) {
    throw InvalidInput(std::string("malformed polynomial: ") + e.what());
  }
  return build(f, caps);
}

NumberField NumberField::build(const QPoly& f0, const Caps& caps) {
  QPoly f = f0;
  trim(f);
  if (deg(f) < 1) throw InvalidInput("polynomial must have degree at least 1");
  if (!is_integral_monic(f)) throw InvalidInput("polynomial must be monic with integer coefficients");
  int n = deg(f);
  if (n > caps.max_degree) throw CapsExceeded("degree " + std::to_string(n) + " exceeds the degree cap");
  auto d = std::make_shared<FieldData>();
  d->f = f;
  d->n = n;
  QMat B = qidentity(n);
  if (n == 1) {
    d->poly_disc = 1;
  } else {
    d->poly_disc = poly_discriminant(f);
    if (d->poly_disc == 0 || !is_irreducible(f)) throw InvalidInput("polynomial is reducible");
    for (auto& [p, k] : factor_integer(d->poly_disc)) {
      if (k < 2) continue;
      if (!p.fits_ulong_p()) throw CapsExceeded("discriminant has a huge square factor");
      u64 pu = p.get_ui();
      if (dedekind_maximal(f, pu)) continue;
      B = round2(f, B, pu, caps.round2_iterations);
    }
  }
  // canonical lower-triangular basis
  {
    mpz_class den = 1;
    for (auto& r : B)
      for (auto& x : r) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
    ZMat z;
    for (auto& r : B) {
      ZVec v;
      for (auto& x : r) v.push_back(mpq_class(x * den).get_num());
      z.push_back(v);
    }
    ZMat h = hnf_lower(z, n);
    d->basis.assign(n, QVec(n, mpq_class(0)));
    mpz_class idx_den = 1;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        d->basis[i][j] = mpq_class(h[i][j], den);
        d->basis[i][j].canonicalize();
      }
      idx_den *= h[i][i];
    }
    mpz_class num = 1;
    for (int i = 0; i < n; ++i) num *= den;
    d->index = num / idx_den;
  }
  d->basis_inv = qinverse(d->basis);
  d->table = order_table(f, d->basis, d->basis_inv);
  d->disc = d->poly_disc / (d->index * d->index);
  if (abs(d->disc) > caps.max_disc)
    throw CapsExceeded("field discriminant " + d->disc.get_str() + " exceeds the discriminant cap");
  for (int i = 0; i < n; ++i) {
    mpz_class t = 0;
    for (int j = 0; j < n; ++j) t += d->table[i][j][j];
    d->traces.push_back(t);
  }
  // sanity: discriminant of the trace form
  {
    QMat tr(n, QVec(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        mpz_class t = 0;
        for (int k = 0; k < n; ++k) t += d->table[i][j][k] * d->traces[k];
        tr[i][j] = t;
      }
    if (qdet(tr) != mpq_class(d->disc)) throw std::logic_error("integral basis discriminant mismatch");
  }
  d->r1 = n == 1 ? 1 : real_root_count(f);
  d->r2 = (n - d->r1) / 2;
  {
    std::vector<Complex> z;
    if (n == 1)
      z.push_back(Complex(-f[0].get_d(), 0));
    else
      z = complex_roots(f);
    std::sort(z.begin(), z.end(), [](const Complex& a, const Complex& b) { return std::abs(a.imag()) < std::abs(b.imag()); });
    std::vector<Complex> re(z.begin(), z.begin() + d->r1), cx;
    for (auto& x : re) x = Complex(x.real(), 0);
    for (size_t i = d->r1; i < z.size(); ++i)
      if (z[i].imag() > 0) cx.push_back(z[i]);
    if (static_cast<int>(cx.size()) != d->r2) throw std::logic_error("complex root pairing failed");
    auto lex = [](const Complex& a, const Complex& b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    };
    std::sort(re.begin(), re.end(), lex);
    std::sort(cx.begin(), cx.end(), lex);
    d->roots = re;
    d->roots.insert(d->roots.end(), cx.begin(), cx.end());
  }
  d->bvals.assign(n, std::vector<Complex>(d->roots.size()));
  for (int i = 0; i < n; ++i) {
    QPoly w(d->basis[i].begin(), d->basis[i].end());
    trim(w);
    for (size_t k = 0; k < d->roots.size(); ++k) d->bvals[i][k] = poly_eval(w, d->roots[k]);
  }
  {
    long double fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    d->minkowski = std::pow(4.0L / M_PIl, d->r2) * fact / std::pow(static_cast<long double>(n), n) *
                   std::sqrt(std::abs(d->disc.get_d()));
  }
  {
    std::vector<std::vector<long double>> vecs(n);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < d->r1; ++k) vecs[i].push_back(d->bvals[i][k].real());
      for (int k = d->r1; k < d->r1 + d->r2; ++k) {
        vecs[i].push_back(std::sqrt(2.0L) * d->bvals[i][k].real());
        vecs[i].push_back(std::sqrt(2.0L) * d->bvals[i][k].imag());
      }
    }
    d->reduced = lll_transform(vecs);
  }
  NumberField K;
  K.d_ = d;
  return K;
}

int NumberField::degree() const { return d_->n; }
const QPoly& NumberField::polynomial() const { return d_->f; }
std::string NumberField::name() const { return poly_to_string(d_->f); }
const mpz_class& NumberField::discriminant() const { return d_->disc; }
const mpz_class& NumberField::index() const { return d_->index; }
int NumberField::r1() const { return d_->r1; }
int NumberField::r2() const { return d_->r2; }
const QMat& NumberField::basis() const { return d_->basis; }
const ZVec& NumberField::table(int i, int j) const { return d_->table[i][j]; }
const QMat& NumberField::basis_inverse() const { return d_->basis_inv; }
const std::vector<Complex>& NumberField::roots() const { return d_->roots; }
const std::vector<std::vector<Complex>>& NumberField::basis_values() const { return d_->bvals; }
const ZMat& NumberField::reduced_basis() const { return d_->reduced; }
long double NumberField::minkowski_bound() const { return d_->minkowski; }
bool NumberField::operator==(const NumberField& o) const { return d_ == o.d_ || (d_ && o.d_ && d_->f == o.d_->f); }

AlgebraicNum NumberField::generator() const {
  QPoly x{mpq_class(0), mpq_class(1)};
  if (degree() == 1) x = QPoly{-d_->f[0]};
  return AlgebraicNum::from_power_basis(*this, x);
}

AlgebraicNum NumberField::one() const { return AlgebraicNum::from_int(*this, 1); }

// ---------------------------------------------------------------- elements

AlgebraicNum::AlgebraicNum(const NumberField& K, ZVec num, mpz_class den)
    : f_(K.data()), num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void AlgebraicNum::normalize() {
  if (den_ == 0) throw std::domain_error("zero denominator");
  if (den_ < 0) {
    den_ = -den_;
    for (auto& x : num_) x = -x;
  }
  mpz_class g = den_;
  for (auto& x : num_) {
    if (g == 1) break;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  }
  if (zvec_is_zero(num_)) g = den_;
  if (g != 1) {
    for (auto& x : num_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

AlgebraicNum AlgebraicNum::from_int(const NumberField& K, const mpz_class& n) {
  ZVec v(K.degree(), mpz_class(0));
  v[0] = n;
  return AlgebraicNum(K, v);
}

AlgebraicNum AlgebraicNum::from_rational(const NumberField& K, const mpq_class& q) {
  ZVec v(K.degree(), mpz_class(0));
  v[0] = q.get_num();
  return AlgebraicNum(K, v, q.get_den());
}

AlgebraicNum AlgebraicNum::from_coords(const NumberField& K, const QVec& c) {
  mpz_class den = 1;
  for (auto& x : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
  ZVec v;
  for (auto& x : c) v.push_back(mpq_class(x * den).get_num());
  return AlgebraicNum(K, v, den);
}

AlgebraicNum AlgebraicNum::from_power_basis(const NumberField& K, const QPoly& p) {
  int n = K.degree();
  QPoly r = n == 1 ? QPoly{poly_eval(p, -K.polynomial()[0])} : poly_mod(p, K.polynomial());
  QVec c(n, mpq_class(0));
  for (size_t i = 0; i < r.size() && static_cast<int>(i) < n; ++i) c[i] = r[i];
  return from_coords(K, qvecmat(c, K.basis_inverse()));
}

NumberField AlgebraicNum::field() const {
  NumberField K;
  K.d_ = f_;
  return K;
}

QVec AlgebraicNum::coords() const {
  QVec c;
  for (auto& x : num_) {
    mpq_class q(x, den_);
    q.canonicalize();
    c.push_back(q);
  }
  return c;
}

QPoly AlgebraicNum::to_power_basis() const {
  QPoly p = qvecmat(coords(), f_->basis);
  trim(p);
  return p;
}

bool AlgebraicNum::is_zero() const { return zvec_is_zero(num_); }

bool AlgebraicNum::is_rational() const {
  for (size_t i = 1; i < num_.size(); ++i)
    if (num_[i] != 0) return false;
  return true;
}

AlgebraicNum AlgebraicNum::operator+(const AlgebraicNum& b) const {
  ZVec v(num_.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = num_[i] * b.den_ + b.num_[i] * den_;
  return AlgebraicNum(field(), v, den_ * b.den_);
}

AlgebraicNum AlgebraicNum::operator-(const AlgebraicNum& b) const { return *this + (-b); }

AlgebraicNum AlgebraicNum::operator-() const {
  AlgebraicNum r = *this;
  for (auto& x : r.num_) x = -x;
  return r;
}

AlgebraicNum AlgebraicNum::operator*(const AlgebraicNum& b) const {
  return AlgebraicNum(field(), mul_coords(*f_, num_, b.num_), den_ * b.den_);
}

AlgebraicNum AlgebraicNum::operator/(const AlgebraicNum& b) const { return *this * b.inverse(); }

AlgebraicNum AlgebraicNum::scaled(const mpq_class& q) const {
  ZVec v = num_;
  for (auto& x : v) x *= q.get_num();
  return AlgebraicNum(field(), v, den_ * q.get_den());
}

ZMat AlgebraicNum::num_mult_matrix() const {
  int n = f_->n;
  ZMat m = zmat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (num_[j] == 0) continue;
      const ZVec& t = f_->table[j][i];
      for (int k = 0; k < n; ++k) m[i][k] += num_[j] * t[k];
    }
  return m;
}

AlgebraicNum AlgebraicNum::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  QMat inv = qinverse(to_q(num_mult_matrix()));
  QVec y = inv[0];
  for (auto& x : y) x *= den_;
  return from_coords(field(), y);
}

AlgebraicNum AlgebraicNum::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  AlgebraicNum r = field().one(), b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

mpq_class AlgebraicNum::norm() const {
  mpz_class dn = 1;
  for (int i = 0; i < f_->n; ++i) dn *= den_;
  mpq_class r(zdet(num_mult_matrix()), dn);
  r.canonicalize();
  return r;
}

mpq_class AlgebraicNum::trace() const {
  mpz_class t = 0;
  for (int i = 0; i < f_->n; ++i) t += num_[i] * f_->traces[i];
  mpq_class r(t, den_);
  r.canonicalize();
  return r;
}

std::vector<Complex> AlgebraicNum::embeddings() const {
  std::vector<Complex> e(f_->roots.size(), Complex(0));
  long double dd = den_.get_d();
  for (int i = 0; i < f_->n; ++i) {
    if (num_[i] == 0) continue;
    long double c = num_[i].get_d() / dd;
    for (size_t k = 0; k < e.size(); ++k) e[k] += c * f_->bvals[i][k];
  }
  return e;
}

std::string AlgebraicNum::to_string() const { return poly_to_string(to_power_basis()); }

// ---------------------------------------------------------------- roots

namespace {

// real linear system mapping integral coordinates to embedding data
std::vector<std::vector<long double>> embedding_system(const FieldData& d) {
  std::vector<std::vector<long double>> A;
  for (int k = 0; k < d.r1; ++k) {
    std::vector<long double> row;
    for (int i = 0; i < d.n; ++i) row.push_back(d.bvals[i][k].real());
    A.push_back(row);
  }
  for (int k = d.r1; k < d.r1 + d.r2; ++k) {
    std::vector<long double> re, im;
    for (int i = 0; i < d.n; ++i) {
      re.push_back(d.bvals[i][k].real());
      im.push_back(d.bvals[i][k].imag());
    }
    A.push_back(re);
    A.push_back(im);
  }
  return A;
}

// try every choice of candidate values per embedding; keep exact solutions
std::vector<AlgebraicNum> search_embeddings(const NumberField& K, const std::vector<std::vector<Complex>>& cand,
                                            const std::function<bool(const AlgebraicNum&)>& check) {
  const FieldData& d = *K.data();
  auto A = embedding_system(d);
  std::vector<AlgebraicNum> out;
  size_t m = cand.size();
  for (auto& c : cand)
    if (c.empty()) return out;
  std::vector<size_t> idx(m, 0);
  long budget = 200000;
  while (budget-- > 0) {
    std::vector<long double> rhs;
    for (int k = 0; k < d.r1; ++k) rhs.push_back(cand[k][idx[k]].real());
    for (int k = d.r1; k < d.r1 + d.r2; ++k) {
      rhs.push_back(cand[k][idx[k]].real());
      rhs.push_back(cand[k][idx[k]].imag());
    }
    auto x = solve_real(A, rhs);
    bool ok = !x.empty();
    ZVec v(d.n);
    for (int i = 0; ok && i < d.n; ++i) {
      long double r = std::round(x[i]);
      if (std::abs(r) > 1e17L || std::abs(x[i] - r) > 1e-3L) {
        ok = false;
        break;
      }
      v[i] = mpz_class(std::to_string(static_cast<long long>(r)));
    }
    if (ok) {
      AlgebraicNum y(K, v);
      if (check(y) && std::find(out.begin(), out.end(), y) == out.end()) out.push_back(y);
    }
    size_t k = 0;
    while (k < m && ++idx[k] == cand[k].size()) idx[k++] = 0;
    if (k == m) break;
  }
  return out;
}

AlgebraicNum horner(const NumberField& K, const QPoly& g, const AlgebraicNum& y) {
  AlgebraicNum r = AlgebraicNum::from_int(K, 0);
  for (size_t i = g.size(); i-- > 0;) r = r * y + AlgebraicNum::from_rational(K, g[i]);
  return r;
}

}  // namespace

std::vector<AlgebraicNum> roots_in_field(const NumberField& K, const QPoly& g) {
  const FieldData& d = *K.data();
  if (deg(g) < 1) return {};
  std::vector<Complex> z;
  if (deg(g) == 1)
    z.push_back(Complex(mpq_class(-g[0] / g[1]).get_d(), 0));
  else
    z = complex_roots(g);
  std::vector<std::vector<Complex>> cand;
  for (int k = 0; k < d.r1; ++k) {
    std::vector<Complex> c;
    for (auto& r : z)
      if (std::abs(r.imag()) < 1e-8L * (1 + std::abs(r))) c.push_back(Complex(r.real(), 0));
    cand.push_back(c);
  }
  for (int k = d.r1; k < d.r1 + d.r2; ++k) cand.push_back(z);
  auto out = search_embeddings(K, cand, [&](const AlgebraicNum& y) { return horner(K, g, y).is_zero(); });
  std::sort(out.begin(), out.end(), [](const AlgebraicNum& a, const AlgebraicNum& b) { return a.num() < b.num(); });
  return out;
}

std::optional<AlgebraicNum> kth_root(const AlgebraicNum& a, int k) {
  if (a.is_zero()) return a;
  NumberField K = a.field();
  const FieldData& d = *K.data();
  // b = a * den^k is integral and so is its k-th root
  mpz_class dk = 1;
  for (int i = 0; i < k; ++i) dk *= a.den();
  AlgebraicNum b = a.scaled(dk);
  auto e = b.embeddings();
  std::vector<std::vector<Complex>> cand;
  for (int j = 0; j < d.r1; ++j) {
    long double x = e[j].real();
    std::vector<Complex> c;
    if (k % 2 == 1) {
      c.push_back(Complex(std::copysign(std::pow(std::abs(x), 1.0L / k), x), 0));
    } else if (x > 0) {
      long double r = std::pow(x, 1.0L / k);
      c.push_back(Complex(r, 0));
      c.push_back(Complex(-r, 0));
    }
    cand.push_back(c);
  }
  for (int j = d.r1; j < d.r1 + d.r2; ++j) {
    std::vector<Complex> c;
    long double r = std::pow(std::abs(e[j]), 1.0L / k), t = std::arg(e[j]);
    for (int s = 0; s < k; ++s) c.push_back(std::polar(r, (t + 2 * M_PIl * s) / k));
    cand.push_back(c);
  }
  auto out = search_embeddings(K, cand, [&](const AlgebraicNum& y) { return y.pow(k) == b; });
  if (out.empty()) return std::nullopt;
  return out.front().scaled(mpq_class(1) / a.den());
}

std::pair<AlgebraicNum, int> ell_power_roots_of_unity(const NumberField& K, unsigned long ell) {
  AlgebraicNum z = K.one();
  int m = 0;
  unsigned long q = 1;  // ell^(m)
  while (true) {
    unsigned long phi = q * (ell - 1);  // phi(ell^(m+1))
    if (phi > static_cast<unsigned long>(K.degree()) || K.degree() % phi != 0) break;
    QPoly cyc(q * (ell - 1) + 1, mpq_class(0));
    for (unsigned long i = 0; i < ell; ++i) cyc[i * q] = 1;
    auto r = roots_in_field(K, cyc);
    if (r.empty()) break;
    z = r.front();
    ++m;
    q *= ell;
  }
  return {z, m};
}

std::vector<AlgebraicNum> field_embeddings(const NumberField& K, const NumberField& L) {
  if (L.degree() % K.degree() != 0) return {};
  return roots_in_field(L, K.polynomial());
}

AlgebraicNum apply_embedding(const AlgebraicNum& x, const NumberField& L, const AlgebraicNum& img) {
  return horner(L, x.to_power_basis(), img);
}

}  // namespace logcap
