#include "ctlab/curve.hpp"

#include <cmath>
#include <numeric>

#include "ctlab/eisenstein.hpp"
#include "ctlab/errors.hpp"

namespace ctlab {

namespace {

int val(const mpz_class& n, long p) {
  if (n == 0) return 1 << 20;
  mpz_class t = n;
  int v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
    ++v;
  }
  return v;
}

long modp(const mpz_class& x, long p) { return static_cast<long>(mpz_fdiv_ui(x.get_mpz_t(), p)); }

struct Invariants {
  mpz_class b2, b4, b6, b8, c4, c6, disc;
};

Invariants invariants(const WeierstrassModel& a) {
  const mpz_class &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
  Invariants I;
  I.b2 = a1 * a1 + 4 * a2;
  I.b4 = 2 * a4 + a1 * a3;
  I.b6 = a3 * a3 + 4 * a6;
  I.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  I.c4 = I.b2 * I.b2 - 24 * I.b4;
  I.c6 = -I.b2 * I.b2 * I.b2 + 36 * I.b2 * I.b4 - 216 * I.b6;
  I.disc = -I.b2 * I.b2 * I.b8 - 8 * I.b4 * I.b4 * I.b4 - 27 * I.b6 * I.b6 + 9 * I.b2 * I.b4 * I.b6;
  return I;
}

WeierstrassModel transform(const WeierstrassModel& a, const mpz_class& r, const mpz_class& s, const mpz_class& t,
                           long u = 1) {
  const mpz_class &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
  WeierstrassModel n;
  n[0] = a1 + 2 * s;
  n[1] = a2 - s * a1 + 3 * r - s * s;
  n[2] = a3 + r * a1 + 2 * t;
  n[3] = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
  n[4] = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
  if (u != 1) {
    const int w[5] = {1, 2, 3, 4, 6};
    for (int i = 0; i < 5; ++i) {
      mpz_class ui;
      mpz_ui_pow_ui(ui.get_mpz_t(), u, w[i]);
      if (!mpz_divisible_p(n[i].get_mpz_t(), ui.get_mpz_t()))
        throw Error(ErrorKind::AlgorithmStuck, "non-integral scaling in Tate's algorithm");
      n[i] /= ui;
    }
  }
  return n;
}

long eval_mod(const std::vector<long>& coeffs, long x, long p) {
  long s = 0;
  for (long c : coeffs) s = static_cast<long>((static_cast<__int128>(s) * x + c) % p);
  return s;
}

// roots in F_p of a polynomial given high-to-low with integer coefficients
std::vector<long> roots_mod(const std::vector<mpz_class>& coeffs, long p) {
  std::vector<long> c;
  for (auto& z : coeffs) c.push_back(modp(z, p));
  std::vector<long> out;
  for (long x = 0; x < p; ++x)
    if (eval_mod(c, x, p) == 0) out.push_back(x);
  return out;
}

// a root of the polynomial that is also a root of its derivative
long multiple_root(const std::vector<mpz_class>& coeffs, long p) {
  std::vector<mpz_class> d;
  long deg = static_cast<long>(coeffs.size()) - 1;
  for (long i = 0; i < deg; ++i) d.push_back(coeffs[i] * (deg - i));
  auto r = roots_mod(coeffs, p);
  for (long x : r)
    if (eval_mod([&] {
                   std::vector<long> v;
                   for (auto& z : d) v.push_back(modp(z, p));
                   return v;
                 }(),
                 x, p) == 0)
      return x;
  throw Error(ErrorKind::AlgorithmStuck, "expected a multiple root mod " + std::to_string(p));
}

}  // namespace

LocalData tate_local(const WeierstrassModel& model, long p) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p));
  WeierstrassModel a = model;
  LocalData out;
  out.p = p;
  for (int pass = 0; pass < 64; ++pass) {
    Invariants I = invariants(a);
    int n = val(I.disc, p);
    if (n == 0) {
      out.kodaira = "I0";
      out.conductor_exponent = 0;
      out.tamagawa = 1;
      return out;
    }
    // move the singular point to (0,0)
    mpz_class r, t;
    if (p == 2) {
      if (val(I.b2, 2) > 0) {
        r = a[3];
        t = r * (1 + a[1] + r) + a[4];
      } else {
        r = a[2];
        t = r + a[3];
      }
    } else if (p == 3) {
      r = val(I.b2, 3) > 0 ? mpz_class(-I.b6) : mpz_class(-I.b2 * I.b4);
      t = a[0] * r + a[2];
    } else {
      mpz_class P(p), inv;
      if (val(I.c4, p) > 0) {
        mpz_class twelve(12);
        mpz_invert(inv.get_mpz_t(), twelve.get_mpz_t(), P.get_mpz_t());
        r = -inv * I.b2;
      } else {
        mpz_class d = 12 * I.c4;
        mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), P.get_mpz_t());
        r = -inv * (I.c6 + I.b2 * I.c4);
      }
      mpz_class two(2);
      mpz_invert(inv.get_mpz_t(), two.get_mpz_t(), P.get_mpz_t());
      r = modp(r, p);
      t = -inv * (a[0] * r + a[2]);
    }
    r = modp(r, p);
    t = modp(t, p);
    a = transform(a, r, 0, t);
    I = invariants(a);
    if (!(modp(a[2], p) == 0 && modp(a[3], p) == 0 && modp(a[4], p) == 0))
      throw Error(ErrorKind::AlgorithmStuck, "singular point not moved to the origin");

    if (val(I.c4, p) == 0) {
      bool split = !roots_mod({1, a[0], -a[1]}, p).empty();
      out.kodaira = "I" + std::to_string(n);
      out.conductor_exponent = 1;
      out.tamagawa = split ? n : (n % 2 == 0 ? 2 : 1);
      return out;
    }
    if (val(a[4], p) < 2) {
      out.kodaira = "II";
      out.conductor_exponent = n;
      out.tamagawa = 1;
      return out;
    }
    if (val(I.b8, p) < 3) {
      out.kodaira = "III";
      out.conductor_exponent = n - 1;
      out.tamagawa = 2;
      return out;
    }
    if (val(I.b6, p) < 3) {
      mpz_class p2 = mpz_class(p) * p;
      out.kodaira = "IV";
      out.conductor_exponent = n - 2;
      out.tamagawa = roots_mod({1, a[2] / p, -(a[4] / p2)}, p).size() == 2 ? 3 : 1;
      return out;
    }
    // p | a1, a2; p^2 | a3, a4; p^3 | a6
    mpz_class s;
    if (p == 2) {
      s = modp(a[1], 2);
      t = 2 * modp(a[4] / 4, 2);
    } else {
      mpz_class half = (p + 1) / 2;
      s = -a[0] * half;
      t = -a[2] * half;
    }
    a = transform(a, 0, s, t);
    mpz_class P(p), P2 = P * P, P3 = P2 * P;
    if (modp(a[0], p) || modp(a[1], p) || a[2] % P2 != 0 || a[3] % P2 != 0 || a[4] % P3 != 0)
      throw Error(ErrorKind::AlgorithmStuck, "coordinate normalisation at p");
    mpz_class b = a[1] / P, c = a[3] / P2, d = a[4] / P3;
    mpz_class disc = b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d;
    std::vector<mpz_class> cubic = {1, b, c, d};
    if (modp(disc, p) != 0) {
      out.kodaira = "I0*";
      out.conductor_exponent = n - 4;
      out.tamagawa = 1 + static_cast<int>(roots_mod(cubic, p).size());
      return out;
    }
    bool triple = modp(b * b - 3 * c, p) == 0;
    if (!triple) {
      long x0 = multiple_root(cubic, p);
      a = transform(a, mpz_class(x0) * p, 0, 0);
      int m = 1;
      mpz_class mx = P2, my = P2;
      for (int guard = 0; guard < 200; ++guard) {
        mpz_class X3 = a[2] / my, X6 = a[4] / (mx * my);
        if (modp(X3 * X3 + 4 * X6, p) != 0) {
          out.kodaira = "I" + std::to_string(m) + "*";
          out.conductor_exponent = n - m - 4;
          out.tamagawa = roots_mod({1, X3, -X6}, p).size() == 2 ? 4 : 2;
          return out;
        }
        long y0 = multiple_root({1, X3, -X6}, p);
        a = transform(a, 0, 0, my * y0);
        ++m;
        my *= p;
        mpz_class X2 = a[1] / P, X4 = a[3] / (P * mx);
        X6 = a[4] / (mx * my);
        if (modp(X4 * X4 - 4 * X2 * X6, p) != 0) {
          out.kodaira = "I" + std::to_string(m) + "*";
          out.conductor_exponent = n - m - 4;
          out.tamagawa = roots_mod({X2, X4, X6}, p).size() == 2 ? 4 : 2;
          return out;
        }
        long xr = multiple_root({X2, X4, X6}, p);
        a = transform(a, mx * xr, 0, 0);
        ++m;
        mx *= p;
      }
      throw Error(ErrorKind::AlgorithmStuck, "I_m* loop did not terminate");
    }
    long x0 = multiple_root(cubic, p);
    a = transform(a, mpz_class(x0) * p, 0, 0);
    mpz_class P4 = P2 * P2;
    mpz_class X3 = a[2] / P2, X6 = a[4] / P4;
    if (modp(X3 * X3 + 4 * X6, p) != 0) {
      out.kodaira = "IV*";
      out.conductor_exponent = n - 6;
      out.tamagawa = roots_mod({1, X3, -X6}, p).size() == 2 ? 3 : 1;
      return out;
    }
    long y0 = multiple_root({1, X3, -X6}, p);
    a = transform(a, 0, 0, P2 * y0);
    if (val(a[3], p) < 4) {
      out.kodaira = "III*";
      out.conductor_exponent = n - 7;
      out.tamagawa = 2;
      return out;
    }
    if (val(a[4], p) < 6) {
      out.kodaira = "II*";
      out.conductor_exponent = n - 8;
      out.tamagawa = 1;
      return out;
    }
    a = transform(a, 0, 0, 0, p);
  }
  throw Error(ErrorKind::AlgorithmStuck, "Tate's algorithm did not terminate");
}

WeierstrassModel twist_model(long D) {
  mpz_class d(D);
  return {0, 0, 0, 0, -432 * d * d};
}

LocalData local_data(long D, long p) { return tate_local(twist_model(D), p); }

namespace {
void check_D(long D) {
  if (D < 1 || D % 2 == 0 || D % 3 == 0) throw Error(ErrorKind::Validation, "D must be positive and coprime to 6");
}
std::vector<long> bad_primes(long D) {
  std::vector<long> ps = {3};
  for (auto& [p, e] : factor_integer(D)) ps.push_back(p);
  return ps;
}
}  // namespace

std::map<long, int> tamagawa_numbers(long D) {
  check_D(D);
  std::map<long, int> out;
  for (long p : bad_primes(D)) out[p] = local_data(D, p).tamagawa;
  return out;
}

long conductor(long D) {
  check_D(D);
  long N = 1;
  for (long p : bad_primes(D)) {
    LocalData L = local_data(D, p);
    if (p != 3 && L.conductor_exponent != 2)
      throw Error(ErrorKind::AlgorithmStuck, "conductor exponent at " + std::to_string(p) + " is not 2");
    if (p == 3 && L.conductor_exponent != 2 && L.conductor_exponent != 3)
      throw Error(ErrorKind::AlgorithmStuck, "conductor exponent at 3 outside {2,3}");
    for (int i = 0; i < L.conductor_exponent; ++i) N *= p;
  }
  return N;
}

long tamagawa_product(long D) {
  long c = 1;
  for (auto& [p, cp] : tamagawa_numbers(D)) c *= cp;
  return c;
}

Real real_period(long D, const PrecisionContext& ctx) {
  PrecisionScope ps(ctx.bits + 16);
  Real g = gamma(Real(1L) / 3L);
  return sqrt(Real(3L)) * g * g * g / (pi() * 6L * cbrt(Real(D)));
}

CurveData curve_data(long D, const PrecisionContext& ctx) {
  CurveData c;
  c.D = D;
  c.conductor = conductor(D);
  c.period = real_period(D, ctx);
  c.tamagawa = tamagawa_numbers(D);
  c.c3D = 1;
  for (auto& [p, cp] : c.tamagawa) c.c3D *= cp;
  return c;
}

long hecke_ap(long p, long D) {
  if (p == 3 || D % p == 0 || p % 3 == 2) return 0;
  EisInt pi = split_prime(p).pi;
  CubeRoot chi = chi_D(D, pi);
  // a_p = chi(pi) pi + conj; w^j pi has real part a - b/2 after the rotation
  EisInt rot = chi.exponent == 0 ? pi : chi.exponent == 1 ? EisInt(0, 1) * pi : EisInt(-1, -1) * pi;
  mpz_class tr = 2 * rot.a - rot.b;
  return tr.get_si();
}

std::vector<long> an_table(long D, long Nmax) {
  std::vector<long> spf(Nmax + 1, 0);
  for (long i = 2; i <= Nmax; ++i)
    if (!spf[i])
      for (long j = i; j <= Nmax; j += i)
        if (!spf[j]) spf[j] = i;
  std::vector<long> a(Nmax + 1, 0);
  if (Nmax >= 1) a[1] = 1;
  std::vector<long> ap(Nmax + 1, 0);
  for (long n = 2; n <= Nmax; ++n) {
    long p = spf[n];
    if (p == n) {
      ap[p] = hecke_ap(p, D);
      a[n] = ap[p];
      continue;
    }
    long m = n, pk = 1;
    int k = 0;
    while (m % p == 0) {
      m /= p;
      pk *= p;
      ++k;
    }
    if (m > 1) {
      a[n] = a[pk] * a[m];
      continue;
    }
    // prime power: a_{p^k} = a_p a_{p^{k-1}} - p a_{p^{k-2}} for good p
    bool bad = (p == 3 || D % p == 0);
    a[n] = bad ? 0 : ap[p] * a[n / p] - (k >= 2 ? p * a[n / p / p] : 0);
  }
  return a;
}

long hecke_an(long n, long D) {
  if (n < 1) throw Error(ErrorKind::Validation, "n must be positive");
  long r = 1;
  for (auto& [p, e] : factor_integer(n)) {
    if (p == 3 || D % p == 0) return 0;
    long ap = hecke_ap(p, D), x0 = 1, x1 = ap;
    for (int i = 1; i < e; ++i) {
      long x2 = ap * x1 - p * x0;
      x0 = x1;
      x1 = x2;
    }
    r *= x1;
  }
  return r;
}

long ap_point_count(long D, long p) {
  if (p == 2) {
    // Y^2 model is singular mod 2; count x^3 + y^3 = D z^3 instead
    long n = 1;  // (1:1:0)
    for (long x = 0; x < 2; ++x)
      for (long y = 0; y < 2; ++y)
        if ((x + y) % 2 == D % 2) ++n;
    return 3 - n;
  }
  // p + 1 - #E(F_p) = -sum_x legendre(x^3 - 432 D^2, p)
  std::vector<int> sq(p, 0);
  for (long y = 0; y < p; ++y) sq[(y * y) % p] += 1;
  long c = static_cast<long>((432 % p) * ((D % p) * (D % p) % p) % p);
  long affine = 0;
  for (long x = 0; x < p; ++x) {
    long v = ((x * x % p) * x % p - c + p) % p;
    affine += sq[v];
  }
  return p - affine;
}

LValueEstimate l_value_oracle(long D, const PrecisionContext& ctx) {
  long N = conductor(D);
  double sN = std::sqrt(static_cast<double>(N));
  long nmax = static_cast<long>(std::ceil(50.0 * sN));
  std::vector<long> a = an_table(D, nmax);
  PrecisionScope ps(ctx.bits + 16);
  Real rootN = sqrt(Real(N));
  Real twopi = pi() * 2L;
  const char* xs[3] = {"0.7", "1.0", "1.4"};
  Real S1[3], S2[3];
  for (int i = 0; i < 3; ++i) {
    Real x = Real::parse(xs[i]);
    Real g1 = exp(-(twopi * x / rootN));
    Real g2 = exp(-(twopi / (x * rootN)));
    Real p1(1L), p2(1L), s1, s2;
    for (long n = 1; n <= nmax; ++n) {
      p1 *= g1;
      p2 *= g2;
      if (!a[n]) continue;
      Real c = Real(a[n]) / n;
      s1 += c * p1;
      s2 += c * p2;
    }
    S1[i] = s1;
    S2[i] = s2;
  }
  Real tol = pow2(-(ctx.bits / 2));
  LValueEstimate best;
  best.conductor = N;
  best.terms_used = nmax;
  int consistent = 0;
  Real spread[2];
  for (int wi = 0; wi < 2; ++wi) {
    int w = wi == 0 ? 1 : -1;
    Real L[3];
    for (int i = 0; i < 3; ++i) L[i] = S1[i] + S2[i] * w;
    Real sp = max(max(abs(L[0] - L[1]), abs(L[1] - L[2])), abs(L[0] - L[2]));
    spread[wi] = sp;
    if (sp < tol) {
      ++consistent;
      best.value = L[1];
      best.root_number = w;
      best.stability_residual = sp;
    }
  }
  if (consistent == 2) {
    // both signs consistent only when the w-part vanishes identically at all x
    if (abs(S2[1]) < tol) return best;
    throw Error(ErrorKind::RootNumberAmbiguous, "both signs consistent for D=" + std::to_string(D));
  }
  if (consistent == 0)
    throw Error(ErrorKind::RootNumberAmbiguous, "no consistent sign for D=" + std::to_string(D) + " (spreads " +
                                                    spread[0].to_string(6) + ", " + spread[1].to_string(6) + ")");
  return best;
}

namespace {
long long icbrt(__int128 n) {
  bool neg = n < 0;
  __int128 m = neg ? -n : n;
  long long r = static_cast<long long>(std::cbrt(static_cast<long double>(m)));
  while (static_cast<__int128>(r) * r * r > m) --r;
  while (static_cast<__int128>(r + 1) * (r + 1) * (r + 1) <= m) ++r;
  return neg ? -r : r;
}
}  // namespace

std::optional<RationalPoint> point_search(long D, long height_bound) {
  if (D < 1) throw Error(ErrorKind::Validation, "D must be positive");
  const long H = height_bound;
  for (long w = 1; w <= H; ++w) {
    __int128 Dw3 = static_cast<__int128>(D) * w * w * w;
    auto try_u = [&](long u) -> std::optional<RationalPoint> {
      __int128 rest = Dw3 - static_cast<__int128>(u) * u * u;
      long long v = icbrt(rest);
      if (static_cast<__int128>(v) * v * v != rest || std::llabs(v) > H) return std::nullopt;
      if (std::gcd(std::gcd(static_cast<long long>(std::labs(u)), std::llabs(v)), static_cast<long long>(w)) != 1)
        return std::nullopt;
      RationalPoint P{mpq_class(u, w), mpq_class(static_cast<long>(v), w)};
      P.x.canonicalize();
      P.y.canonicalize();
      return P;
    };
    for (long u = 1; u <= H; ++u)
      if (auto P = try_u(u)) return P;
    for (long u = 0; u >= -H; --u)
      if (auto P = try_u(u)) return P;
  }
  return std::nullopt;
}

bool on_curve(const RationalPoint& P, long D) { return P.x * P.x * P.x + P.y * P.y * P.y == D; }

}  // namespace ctlab
