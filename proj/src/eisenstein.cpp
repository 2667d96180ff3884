#include "ctlab/eisenstein.hpp"

#include <cmath>

#include "ctlab/errors.hpp"

namespace ctlab {

std::string EisInt::to_string() const {
  std::string s = a.get_str();
  if (b == 0) return s;
  if (a == 0) return (b == 1 ? std::string() : b == -1 ? std::string("-") : b.get_str()) + "w";
  mpz_class ab = abs(b);
  return s + (b < 0 ? "-" : "+") + (ab == 1 ? std::string() : ab.get_str()) + "w";
}

bool operator==(const EisInt& x, const EisInt& y) { return x.a == y.a && x.b == y.b; }
bool operator!=(const EisInt& x, const EisInt& y) { return !(x == y); }
EisInt operator+(const EisInt& x, const EisInt& y) { return EisInt(x.a + y.a, x.b + y.b); }
EisInt operator-(const EisInt& x, const EisInt& y) { return EisInt(x.a - y.a, x.b - y.b); }
EisInt operator-(const EisInt& x) { return EisInt(-x.a, -x.b); }
EisInt operator*(const EisInt& x, const EisInt& y) {
  mpz_class bd = x.b * y.b;
  return EisInt(x.a * y.a - bd, x.a * y.b + x.b * y.a - bd);
}

EisInt conj(const EisInt& x) { return EisInt(x.a - x.b, -x.b); }
mpz_class norm(const EisInt& x) { return x.a * x.a - x.a * x.b + x.b * x.b; }

bool divides(const EisInt& d, const EisInt& x) {
  mpz_class n = norm(d);
  if (n == 0) return x.is_zero();
  EisInt t = x * conj(d);
  return mpz_divisible_p(t.a.get_mpz_t(), n.get_mpz_t()) && mpz_divisible_p(t.b.get_mpz_t(), n.get_mpz_t());
}

EisInt div_exact(const EisInt& x, const EisInt& d) {
  if (!divides(d, x)) throw Error(ErrorKind::Validation, d.to_string() + " does not divide " + x.to_string());
  mpz_class n = norm(d);
  EisInt t = x * conj(d);
  return EisInt(t.a / n, t.b / n);
}

namespace {
mpz_class round_div(const mpz_class& a, const mpz_class& n) {
  mpz_class q;
  mpz_class t = 2 * a + n;
  mpz_class n2 = 2 * n;
  mpz_fdiv_q(q.get_mpz_t(), t.get_mpz_t(), n2.get_mpz_t());
  return q;
}
}  // namespace

EisInt mod(const EisInt& x, const EisInt& m) {
  mpz_class n = norm(m);
  EisInt t = x * conj(m);
  EisInt q(round_div(t.a, n), round_div(t.b, n));
  return x - q * m;
}

Complex to_complex(const EisInt& x) {
  Real b(x.b);
  return Complex(Real(x.a) - b / 2L, b * sqrt(Real(3L)) / 2L);
}

namespace {
long mod3(const mpz_class& z) { return static_cast<long>(mpz_fdiv_ui(z.get_mpz_t(), 3)); }
}  // namespace

bool is_primary(const EisInt& x) { return mod3(x.a) == 1 && mod3(x.b) == 0; }

const std::vector<EisInt>& units() {
  static const std::vector<EisInt> u = {EisInt(1, 0), EisInt(-1, 0), EisInt(0, 1),
                                        EisInt(0, -1), EisInt(-1, -1), EisInt(1, 1)};
  return u;
}

PrimaryAssociate primary_associate(const EisInt& x) {
  if (mpz_divisible_ui_p(norm(x).get_mpz_t(), 3))
    throw Error(ErrorKind::NonCoprimeToThree, "norm of " + x.to_string() + " divisible by 3");
  for (const EisInt& u : units()) {
    EisInt y = u * x;
    if (is_primary(y)) return {y, u};
  }
  throw Error(ErrorKind::AlgorithmStuck, "no primary associate for " + x.to_string());
}

bool is_prime(long n) {
  if (n < 2) return false;
  mpz_class z(n);
  return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

std::vector<std::pair<long, int>> factor_integer(long n) {
  if (n <= 0) throw Error(ErrorKind::Validation, "factor_integer needs n >= 1");
  std::vector<std::pair<long, int>> f;
  for (long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

long radical(long n) {
  long r = 1;
  for (auto& [p, e] : factor_integer(n)) r *= p;
  return r;
}

int valuation(long n, long p) {
  int v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

SplitResult split_prime(long p) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (p == 3) return {SplitKind::Ramified, EisInt(1)};
  if (p % 3 == 2) return {SplitKind::Inert, EisInt(1)};
  long bmax = static_cast<long>(std::ceil(2.0 * std::sqrt(p / 3.0)));
  for (long b = 1; b <= bmax; ++b) {
    long t = 4 * p - 3 * b * b;
    if (t < 0) break;
    long r = static_cast<long>(std::llround(std::sqrt(static_cast<double>(t))));
    while (r * r > t) --r;
    while ((r + 1) * (r + 1) <= t) ++r;
    if (r * r != t || ((b + r) & 1)) continue;
    return {SplitKind::Split, primary_associate(EisInt((b + r) / 2, b)).value};
  }
  throw Error(ErrorKind::AlgorithmStuck, "no norm form solution for " + std::to_string(p));
}

std::vector<EisInt> prime_factors(const EisInt& x0) {
  mpz_class n = norm(x0);
  if (n == 0) throw Error(ErrorKind::Validation, "prime_factors of zero");
  if (mpz_divisible_ui_p(n.get_mpz_t(), 3)) throw Error(ErrorKind::NonCoprimeToThree, "norm divisible by 3");
  if (!n.fits_slong_p()) throw Error(ErrorKind::Validation, "norm too large to factor");
  std::vector<EisInt> out;
  EisInt x = x0;
  for (auto& [p, e] : factor_integer(n.get_si())) {
    if (p % 3 == 2) {
      EisInt q(-p, 0);
      for (int i = 0; i < e / 2; ++i) {
        x = div_exact(x, q);
        out.push_back(q);
      }
      continue;
    }
    EisInt pi = split_prime(p).pi;
    EisInt pib = primary_associate(conj(pi)).value;
    int left = e;
    for (const EisInt& q : {pi, pib}) {
      while (left > 0 && divides(q, x)) {
        x = div_exact(x, q);
        out.push_back(q);
        --left;
      }
    }
    if (left) throw Error(ErrorKind::AlgorithmStuck, "factorization of " + x0.to_string());
  }
  return out;
}

namespace {
// Z[w]/(q) arithmetic for a rational prime q = 2 mod 3
EisInt mulmod_q(const EisInt& x, const EisInt& y, const mpz_class& q) {
  EisInt r = x * y;
  mpz_class a, b;
  mpz_fdiv_r(a.get_mpz_t(), r.a.get_mpz_t(), q.get_mpz_t());
  mpz_fdiv_r(b.get_mpz_t(), r.b.get_mpz_t(), q.get_mpz_t());
  return EisInt(a, b);
}
}  // namespace

CubeRoot cubic_symbol_prime(const EisInt& alpha, const EisInt& beta) {
  if (!is_primary(beta)) throw Error(ErrorKind::Validation, "second argument must be primary");
  if (divides(beta, alpha)) throw Error(ErrorKind::NotCoprime, beta.to_string() + " divides " + alpha.to_string());
  mpz_class p = norm(beta);
  if (beta.b == 0) {
    // inert rational prime q, residue field of size q^2
    mpz_class q = abs(beta.a);
    mpz_class e = (q * q - 1) / 3;
    EisInt base(alpha.a % q, alpha.b % q), acc(1);
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) acc = mulmod_q(acc, base, q);
      base = mulmod_q(base, base, q);
      e >>= 1;
    }
    for (int j = 0; j < 3; ++j) {
      EisInt w = j == 0 ? EisInt(1) : j == 1 ? EisInt(0, 1) : EisInt(-1, -1);
      EisInt d = acc - w;
      if (mpz_divisible_p(d.a.get_mpz_t(), q.get_mpz_t()) && mpz_divisible_p(d.b.get_mpz_t(), q.get_mpz_t()))
        return CubeRoot::of(j);
    }
    throw Error(ErrorKind::AlgorithmStuck, "symbol modulo inert prime");
  }
  // split prime: Z[w]/(beta) = F_p with w -> -a/b
  mpz_class binv, w0, x, t;
  if (mpz_invert(binv.get_mpz_t(), beta.b.get_mpz_t(), p.get_mpz_t()) == 0)
    throw Error(ErrorKind::AlgorithmStuck, "non-invertible coordinate");
  w0 = -beta.a * binv;
  mpz_fdiv_r(w0.get_mpz_t(), w0.get_mpz_t(), p.get_mpz_t());
  x = alpha.a + alpha.b * w0;
  mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
  mpz_class e = (p - 1) / 3;
  mpz_powm(t.get_mpz_t(), x.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  if (t == 1) return CubeRoot::of(0);
  if (t == w0) return CubeRoot::of(1);
  mpz_class w2 = w0 * w0;
  mpz_fdiv_r(w2.get_mpz_t(), w2.get_mpz_t(), p.get_mpz_t());
  if (t == w2) return CubeRoot::of(2);
  throw Error(ErrorKind::AlgorithmStuck, "Euler criterion did not land on a cube root of unity");
}

CubeRoot cubic_symbol(const EisInt& alpha, const std::vector<EisInt>& beta_factors) {
  if (mpz_divisible_ui_p(norm(alpha).get_mpz_t(), 3))
    throw Error(ErrorKind::NotCoprime, alpha.to_string() + " is divisible by 1-w");
  CubeRoot r;
  for (const EisInt& q : beta_factors) r = r * cubic_symbol_prime(alpha, q);
  return r;
}

CubeRoot cubic_symbol(const EisInt& alpha, const EisInt& beta) {
  if (!is_primary(beta)) throw Error(ErrorKind::Validation, "second argument must be primary");
  return cubic_symbol(alpha, prime_factors(beta));
}

CubeRoot chi_D(long D, const EisInt& k) {
  if (D % 3 == 0) throw Error(ErrorKind::NonCoprimeToThree, "D divisible by 3");
  if (norm(k) == 1) return CubeRoot{};
  return cubic_symbol(EisInt(D), k).conj();
}

CubeRoot chi_pi_rational(long r, const EisInt& pi1, const EisInt& pi2) {
  CubeRoot s1, s2;
  for (const EisInt& q : prime_factors(pi1)) s1 = s1 * cubic_symbol_prime(EisInt(r), q);
  for (const EisInt& q : prime_factors(pi2)) s2 = s2 * cubic_symbol_prime(EisInt(r), q);
  return (s1 * s2.conj()).conj();
}

Complex gauss_sum(const EisInt& pi, bool conjugate_character) {
  mpz_class pz = norm(pi);
  if (!pz.fits_slong_p() || !is_prime(pz.get_si()) || pz.get_si() % 3 != 1)
    throw Error(ErrorKind::Validation, "gauss_sum needs a split prime");
  long p = pz.get_si();
  Complex g;
  for (long x = 1; x < p; ++x) {
    CubeRoot c = chi_pi_rational(x, pi);
    if (conjugate_character) c = c.conj();
    g += c.value() * exp2pi_i(mpq_class(x, p));
  }
  return g;
}

}  // namespace ctlab
