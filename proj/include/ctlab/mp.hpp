#pragma once

// MPFR-backed real and complex numbers. Every value carries its own
// precision; results of non-compound operations are rounded to the calling
// thread's working precision.

#include <mpfr.h>
#include <gmpxx.h>

#include <string>

namespace ctlab {

long working_bits();
void set_working_bits(long bits);

class PrecisionScope {
 public:
  explicit PrecisionScope(long bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  long saved_;
};

class Real {
 public:
  Real();
  Real(long v);
  Real(int v) : Real(static_cast<long>(v)) {}
  explicit Real(double v);
  explicit Real(const mpz_class& v);
  explicit Real(const mpq_class& v);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  static Real parse(const std::string& s);

  mpfr_ptr ptr() { return v_; }
  mpfr_srcptr ptr() const { return v_; }
  long prec() const { return static_cast<long>(mpfr_get_prec(v_)); }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator*=(long o);
  Real& operator/=(long o);
  Real operator-() const;

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  mpz_class round_to_integer() const;
  mpz_class floor_to_integer() const;
  // scientific notation with the given number of significant digits
  std::string to_string(int digits = 40) const;
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  long exponent2() const;

 private:
  mpfr_t v_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator*(const Real& a, long b);
Real operator*(long a, const Real& b);
Real operator/(const Real& a, long b);
Real operator+(const Real& a, long b);
Real operator-(const Real& a, long b);
bool operator<(const Real& a, const Real& b);
bool operator>(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);
bool operator>=(const Real& a, const Real& b);
bool operator==(const Real& a, const Real& b);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real cbrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& x, const Real& e);
Real gamma(const Real& x);
Real digamma(const Real& x);
Real floor(const Real& x);
Real pi();
Real ln2();
Real max(const Real& a, const Real& b);
// 2^e
Real pow2(long e);
// copy rounded to the current working precision
Real lift(const Real& x);

class Complex {
 public:
  Real re;
  Real im;

  Complex() = default;
  Complex(long v) : re(v), im(0L) {}
  Complex(int v) : re(static_cast<long>(v)), im(0L) {}
  Complex(const Real& r) : re(r), im(0L) {}
  Complex(const Real& r, const Real& i) : re(r), im(i) {}

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex& operator*=(const Real& o);
  Complex& operator/=(const Real& o);
  Complex operator-() const { return Complex(-re, -im); }
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Real& b);
Complex operator*(const Real& a, const Complex& b);
Complex operator/(const Complex& a, const Real& b);
Complex operator*(const Complex& a, long b);
Complex operator*(long a, const Complex& b);
Complex operator/(const Complex& a, long b);

Real abs(const Complex& z);
Real norm(const Complex& z);  // |z|^2
Real arg(const Complex& z);
Complex conj(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);
Complex sqrt(const Complex& z);
Complex pow(const Complex& z, const Real& e);
Complex cis(const Real& theta);
// e^{2 pi i q} computed after exact reduction of q modulo 1
Complex exp2pi_i(const mpq_class& q);
// omega^k with omega = (-1 + sqrt(-3))/2
Complex omega_pow(long k);
Complex i_unit();
Complex lift(const Complex& z);

std::string to_string(const Complex& z, int digits = 40);

}  // namespace ctlab
