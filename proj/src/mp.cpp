#include "ctlab/mp.hpp"

#include <climits>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ctlab {

namespace {
thread_local long g_bits = 256;
}

long working_bits() { return g_bits; }
void set_working_bits(long bits) {
  if (bits < 16) throw std::invalid_argument("precision below 16 bits");
  g_bits = bits;
}

PrecisionScope::PrecisionScope(long bits) : saved_(g_bits) { set_working_bits(bits); }
PrecisionScope::~PrecisionScope() { g_bits = saved_; }

Real::Real() {
  mpfr_init2(v_, g_bits);
  mpfr_set_zero(v_, 1);
}
Real::Real(long v) {
  mpfr_init2(v_, g_bits);
  mpfr_set_si(v_, v, MPFR_RNDN);
}
Real::Real(double v) {
  mpfr_init2(v_, g_bits);
  mpfr_set_d(v_, v, MPFR_RNDN);
}
Real::Real(const mpz_class& v) {
  mpfr_init2(v_, g_bits);
  mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}
Real::Real(const mpq_class& v) {
  mpfr_init2(v_, g_bits);
  mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}
Real::Real(const Real& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}
Real::Real(Real&& o) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}
Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}
Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}
Real::~Real() { mpfr_clear(v_); }

Real Real::parse(const std::string& s) {
  Real r;
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) throw std::invalid_argument("bad real: " + s);
  return r;
}

Real& Real::operator+=(const Real& o) {
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(long o) {
  mpfr_mul_si(v_, v_, o, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(long o) {
  mpfr_div_si(v_, v_, o, MPFR_RNDN);
  return *this;
}
Real Real::operator-() const {
  Real r;
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

mpz_class Real::round_to_integer() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
  return z;
}
mpz_class Real::floor_to_integer() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
  return z;
}

std::string Real::to_string(int digits) const {
  std::vector<char> buf(static_cast<size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return std::string(buf.data());
}

long Real::exponent2() const {
  if (mpfr_zero_p(v_)) return LONG_MIN / 2;
  return static_cast<long>(mpfr_get_exp(v_));
}

#define CTLAB_BINARY(op, fn)                          \
  Real operator op(const Real& a, const Real& b) {    \
    Real r;                                           \
    fn(r.ptr(), a.ptr(), b.ptr(), MPFR_RNDN);         \
    return r;                                         \
  }
CTLAB_BINARY(+, mpfr_add)
CTLAB_BINARY(-, mpfr_sub)
CTLAB_BINARY(*, mpfr_mul)
CTLAB_BINARY(/, mpfr_div)
#undef CTLAB_BINARY
#define CTLAB_BINARY_SI(op, fn)                        \
  Real operator op(const Real& a, long b) {           \
    Real r;                                           \
    fn(r.ptr(), a.ptr(), b, MPFR_RNDN);               \
    return r;                                         \
  }
CTLAB_BINARY_SI(*, mpfr_mul_si)
CTLAB_BINARY_SI(/, mpfr_div_si)
CTLAB_BINARY_SI(+, mpfr_add_si)
CTLAB_BINARY_SI(-, mpfr_sub_si)
#undef CTLAB_BINARY_SI
Real operator*(long a, const Real& b) { return b * a; }
Real lift(const Real& x) {
  Real r;
  mpfr_set(r.ptr(), x.ptr(), MPFR_RNDN);
  return r;
}
Complex lift(const Complex& z) { return Complex(lift(z.re), lift(z.im)); }
bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.ptr(), b.ptr()) != 0; }
bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.ptr(), b.ptr()) != 0; }
bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.ptr(), b.ptr()) != 0; }
bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.ptr(), b.ptr()) != 0; }
bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.ptr(), b.ptr()) != 0; }

#define CTLAB_UNARY(name, fn)          \
  Real name(const Real& x) {           \
    Real r;                            \
    fn(r.ptr(), x.ptr(), MPFR_RNDN);   \
    return r;                          \
  }
CTLAB_UNARY(abs, mpfr_abs)
CTLAB_UNARY(sqrt, mpfr_sqrt)
CTLAB_UNARY(cbrt, mpfr_cbrt)
CTLAB_UNARY(exp, mpfr_exp)
CTLAB_UNARY(log, mpfr_log)
CTLAB_UNARY(sin, mpfr_sin)
CTLAB_UNARY(cos, mpfr_cos)
CTLAB_UNARY(gamma, mpfr_gamma)
CTLAB_UNARY(digamma, mpfr_digamma)
#undef CTLAB_UNARY

Real floor(const Real& x) {
  Real r;
  mpfr_floor(r.ptr(), x.ptr());
  return r;
}
Real atan2(const Real& y, const Real& x) {
  Real r;
  mpfr_atan2(r.ptr(), y.ptr(), x.ptr(), MPFR_RNDN);
  return r;
}
Real pow(const Real& x, const Real& e) {
  Real r;
  mpfr_pow(r.ptr(), x.ptr(), e.ptr(), MPFR_RNDN);
  return r;
}
Real pi() {
  Real r;
  mpfr_const_pi(r.ptr(), MPFR_RNDN);
  return r;
}
Real ln2() {
  Real r;
  mpfr_const_log2(r.ptr(), MPFR_RNDN);
  return r;
}
Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real pow2(long e) {
  Real r(1L);
  mpfr_mul_2si(r.ptr(), r.ptr(), e, MPFR_RNDN);
  return r;
}

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}
Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}
Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  Real i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}
Complex& Complex::operator/=(const Complex& o) {
  Real n = o.re * o.re + o.im * o.im;
  Real r = (re * o.re + im * o.im) / n;
  Real i = (im * o.re - re * o.im) / n;
  re = std::move(r);
  im = std::move(i);
  return *this;
}
Complex& Complex::operator*=(const Real& o) {
  re *= o;
  im *= o;
  return *this;
}
Complex& Complex::operator/=(const Real& o) {
  re /= o;
  im /= o;
  return *this;
}

Complex operator+(const Complex& a, const Complex& b) { return Complex(a.re + b.re, a.im + b.im); }
Complex operator-(const Complex& a, const Complex& b) { return Complex(a.re - b.re, a.im - b.im); }
Complex operator*(const Complex& a, const Complex& b) {
  return Complex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}
Complex operator/(const Complex& a, const Complex& b) {
  Real n = b.re * b.re + b.im * b.im;
  return Complex((a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n);
}
Complex operator*(const Complex& a, const Real& b) { return Complex(a.re * b, a.im * b); }
Complex operator*(const Real& a, const Complex& b) { return b * a; }
Complex operator/(const Complex& a, const Real& b) { return Complex(a.re / b, a.im / b); }
Complex operator*(const Complex& a, long b) { return Complex(a.re * b, a.im * b); }
Complex operator*(long a, const Complex& b) { return b * a; }
Complex operator/(const Complex& a, long b) { return Complex(a.re / b, a.im / b); }
Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
Real abs(const Complex& z) {
  Real r;
  mpfr_hypot(r.ptr(), z.re.ptr(), z.im.ptr(), MPFR_RNDN);
  return r;
}
Real arg(const Complex& z) { return atan2(z.im, z.re); }
Complex conj(const Complex& z) { return Complex(z.re, -z.im); }

Complex cis(const Real& theta) {
  Real s, c;
  mpfr_sin_cos(s.ptr(), c.ptr(), theta.ptr(), MPFR_RNDN);
  return Complex(c, s);
}
Complex exp(const Complex& z) { return cis(z.im) * exp(z.re); }
Complex log(const Complex& z) { return Complex(log(abs(z)), arg(z)); }
Complex sqrt(const Complex& z) {
  if (z.re.is_zero() && z.im.is_zero()) return Complex();
  Real t = sqrt((abs(z) + abs(z.re)) / 2L);
  if (z.re.sign() >= 0) return Complex(t, z.im / (t * 2L));
  Real r = abs(z.im) / (t * 2L);
  return Complex(r, z.im.sign() < 0 ? -t : t);
}
Complex pow(const Complex& z, const Real& e) {
  if (z.re.is_zero() && z.im.is_zero()) return Complex();
  Real m = pow(abs(z), e);
  return cis(arg(z) * e) * m;
}

Complex exp2pi_i(const mpq_class& q) {
  mpq_class f = q;
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), f.get_num_mpz_t(), f.get_den_mpz_t());
  f -= fl;
  if (f == 0) return Complex(1L);
  if (f * 2 == 1) return Complex(-1L);
  if (f * 4 == 1) return Complex(Real(0L), Real(1L));
  if (f * 4 == 3) return Complex(Real(0L), Real(-1L));
  return cis(pi() * 2L * Real(f));
}

Complex omega_pow(long k) {
  long m = ((k % 3) + 3) % 3;
  if (m == 0) return Complex(1L);
  Real h = sqrt(Real(3L)) / 2L;
  if (m == 1) return Complex(Real(-1L) / 2L, h);
  return Complex(Real(-1L) / 2L, -h);
}

Complex i_unit() { return Complex(Real(0L), Real(1L)); }

std::string to_string(const Complex& z, int digits) {
  std::string s = z.re.to_string(digits);
  std::string t = z.im.to_string(digits);
  if (!t.empty() && t[0] == '-') return s + " - " + t.substr(1) + "i";
  return s + " + " + t + "i";
}

}  // namespace ctlab
