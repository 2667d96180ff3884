#include "ctlab/modular.hpp"

#include <cmath>
#include <memory>
#include <mutex>

#include "ctlab/errors.hpp"

namespace ctlab {

const mpq_class& mu_sixth() {
  static const mpq_class v(1, 6);
  return v;
}
const mpq_class& mu_half() {
  static const mpq_class v(1, 2);
  return v;
}

namespace {

constexpr long kGuard = 24;

// -log(target error) in nats for the given context
double target_nats(const PrecisionContext& ctx) { return (ctx.bits + 12) * std::log(2.0) + 4.0; }

std::mutex g_rn_mutex;
std::shared_ptr<const std::vector<long>> g_rn;

std::shared_ptr<const std::vector<long>> rn_table(long n) {
  std::lock_guard<std::mutex> lk(g_rn_mutex);
  if (!g_rn || static_cast<long>(g_rn->size()) <= n) {
    long size = std::max<long>(n + 1, 4096);
    if (g_rn) size = std::max<long>(size, 2 * static_cast<long>(g_rn->size()));
    g_rn = std::make_shared<const std::vector<long>>(ideal_count_coefficients(size - 1));
  }
  return g_rn;
}

// sum_{N=0}^{c.size()-1} c[N] q^N by Horner
Complex horner(const std::vector<long>& c, long nmax, const Complex& q, long c0) {
  Complex s;
  for (long N = nmax; N >= 1; --N) {
    s = s * q;
    if (c[N]) s += Complex(Real(c[N]));
  }
  return s * q + Complex(Real(c0));
}

}  // namespace

std::vector<long> ideal_count_coefficients(long Nmax) {
  std::vector<long> r(Nmax + 1, 0);
  for (long m = 1; m <= Nmax; ++m) {
    long e = (m % 3 == 0) ? 0 : (m % 3 == 1 ? 1 : -1);
    if (!e) continue;
    for (long k = m; k <= Nmax; k += m) r[k] += e;
  }
  return r;
}

std::vector<long> lattice_count(long Nmax) {
  std::vector<long> c(Nmax + 1, 0);
  // m^2 - mn + n^2 >= (m^2 + n^2)/2
  long R = static_cast<long>(std::sqrt(2.0 * Nmax)) + 1;
  for (long m = -R; m <= R; ++m)
    for (long n = -R; n <= R; ++n) {
      long Q = m * m - m * n + n * n;
      if (Q <= Nmax) ++c[Q];
    }
  return c;
}

Complex theta_K_qseries(const Complex& z, const PrecisionContext& ctx) {
  double y = z.im.to_double();
  if (!(y > 0)) throw Error(ErrorKind::Validation, "theta_K needs Im z > 0");
  double T = target_nats(ctx);
  double decay = 2 * M_PI * y;
  long N = static_cast<long>(std::ceil(T / decay)) + 2;
  // tail <= sum_{n>N} 12 sqrt(n) e^{-decay n}
  for (int it = 0; it < 50; ++it) {
    double extra = std::log(12.0 * std::sqrt(static_cast<double>(N)) / (1.0 - std::exp(-decay)));
    long N2 = static_cast<long>(std::ceil((T + extra) / decay)) + 2;
    if (N2 <= N) break;
    N = N2;
  }
  if (N > ctx.max_terms) throw Error(ErrorKind::PrecisionBudgetExceeded, "theta_K q-series");
  auto rn = rn_table(N);
  PrecisionScope ps(ctx.bits + kGuard);
  Complex q = exp(Complex(Real(0L), pi() * 2L) * lift(z));
  std::vector<long> c(N + 1);
  for (long k = 1; k <= N; ++k) c[k] = 6 * (*rn)[k];
  return horner(c, N, q, 1);
}

Complex theta_K(const Complex& z0, const PrecisionContext& ctx) {
  if (!(z0.im.sign() > 0)) throw Error(ErrorKind::Validation, "theta_K needs Im z > 0");
  PrecisionScope ps(ctx.bits + kGuard + 16);
  Complex z = lift(z0);
  Complex factor(1L);
  Real third = Real(1L) / 3L - pow2(-(ctx.bits / 2));
  Real s3 = sqrt(Real(3L));
  for (long it = 0;; ++it) {
    if (it > 100000) throw Error(ErrorKind::PrecisionBudgetExceeded, "theta_K reduction");
    Real k = floor(z.re + Real(1L) / 2L);
    z.re = z.re - k;
    if (!(norm(z) < third)) break;
    // Theta(z) = Theta(-1/(3z)) / (-i sqrt3 z)
    factor = factor / (Complex(Real(0L), -s3) * z);
    z = Complex(Real(-1L)) / (z * 3L);
  }
  PrecisionContext c2 = ctx;
  c2.bits = ctx.bits + 16;
  return factor * theta_K_qseries(z, c2);
}

Complex theta_K_direct(const Complex& z, const PrecisionContext& ctx) {
  double y = z.im.to_double();
  if (!(y > 0)) throw Error(ErrorKind::Validation, "theta_K needs Im z > 0");
  double T = target_nats(ctx) + 8;
  long R = static_cast<long>(std::ceil(std::sqrt(T / (M_PI * y)))) + 2;
  if ((2 * R + 1) * (2 * R + 1) > ctx.max_terms) throw Error(ErrorKind::PrecisionBudgetExceeded, "theta_K direct");
  long Qmax = 3 * R * R;
  std::vector<long> cnt(Qmax + 1, 0);
  for (long m = -R; m <= R; ++m)
    for (long n = -R; n <= R; ++n) {
      if (m * m + n * n > R * R) continue;
      ++cnt[m * m - m * n + n * n];
    }
  PrecisionScope ps(ctx.bits + kGuard);
  Complex q = exp(Complex(Real(0L), pi() * 2L) * lift(z));
  return horner(cnt, Qmax, q, cnt[0]);
}

Complex theta_series(const mpq_class& lambda, const mpq_class& beta, const Complex& z, const PrecisionContext& ctx) {
  double y = z.im.to_double();
  if (!(y > 0)) throw Error(ErrorKind::Validation, "theta series needs Im z > 0");
  double T = target_nats(ctx) + 4;
  double X = std::sqrt(T / (M_PI * y)) + 1.5;
  long half = static_cast<long>(std::ceil(X)) + 1;
  if (2 * half + 1 > ctx.max_terms) throw Error(ErrorKind::PrecisionBudgetExceeded, "theta series");
  long guard = kGuard + static_cast<long>(std::log2(2.0 * half + 2));
  PrecisionScope ps(ctx.bits + guard);
  // centre n0 = -round(lambda)
  mpz_class fl;
  {
    mpq_class t = lambda + mpq_class(1, 2);
    mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  }
  long n0 = -fl.get_si();
  mpq_class x0 = lambda + n0;
  Complex zz = lift(z);
  Complex ipz = Complex(Real(0L), pi()) * zz;  // pi i z
  Complex t0 = exp(ipz * Real(mpq_class(x0 * x0))) * exp2pi_i(mpq_class(beta * n0));
  Complex u = exp(ipz * 2L);                    // e^{2 pi i z}
  Complex eb = exp2pi_i(beta), ebi = conj(eb);  // e^{+-2 pi i beta}
  Complex sum = t0;
  // upward: ratio e^{pi i (2x+1) z} e^{2 pi i beta}
  Complex r = exp(ipz * Real(mpq_class(2 * x0 + 1))) * eb;
  Complex t = t0;
  for (long k = 1; k <= half; ++k) {
    t = t * r;
    sum += t;
    r = r * u;
  }
  r = exp(ipz * Real(mpq_class(1 - 2 * x0))) * ebi;
  t = t0;
  for (long k = 1; k <= half; ++k) {
    t = t * r;
    sum += t;
    r = r * u;
  }
  return sum;
}

Complex theta_char(const mpq_class& mu, const mpq_class& nu, const Complex& z, const PrecisionContext& ctx) {
  Complex s = theta_series(mu, nu, z, ctx);
  PrecisionScope ps(ctx.bits + kGuard);
  return s * exp2pi_i(mpq_class(mu * nu));
}

Complex theta_half(long r, long D, const mpq_class& mu, const Complex& z, const PrecisionContext& ctx) {
  return theta_series(mpq_class(r, D) - mu, mu_half(), z, ctx);
}

Complex theta_shifted(long r, long D, const mpq_class& mu, const Complex& z, const PrecisionContext& ctx) {
  mpq_class lam = -mu * D;
  mpq_class beta = mpq_class(1, 2) + mpq_class(r, D);
  return theta_series(lam, beta, z, ctx);
}

Complex eta(const Complex& z, const PrecisionContext& ctx) {
  PrecisionScope ps(ctx.bits + kGuard);
  return theta_series(-mu_sixth(), mu_half(), lift(z) * 3L, ctx);
}

Complex eta_product(const Complex& z, const PrecisionContext& ctx) {
  double y = z.im.to_double();
  if (!(y > 0)) throw Error(ErrorKind::Validation, "eta needs Im z > 0");
  double decay = 2 * M_PI * y;
  double T = target_nats(ctx) + 4 + std::log(1.0 / (1.0 - std::exp(-decay)));
  long N = static_cast<long>(std::ceil(T / decay)) + 2;
  if (N > ctx.max_terms) throw Error(ErrorKind::PrecisionBudgetExceeded, "eta product");
  long guard = kGuard + static_cast<long>(std::log2(static_cast<double>(N) + 2));
  PrecisionScope ps(ctx.bits + guard);
  Complex zz = lift(z);
  Complex tpi = Complex(Real(0L), pi() * 2L);
  Complex q = exp(tpi * zz);
  Complex p = exp(tpi * zz / Real(24L));
  Complex qn(1L);
  for (long n = 1; n <= N; ++n) {
    qn = qn * q;
    p = p * (Complex(1L) - qn);
  }
  return p;
}

Complex theta_mu(const mpq_class& mu, const Complex& z, const PrecisionContext& ctx) {
  PrecisionScope ps(ctx.bits + kGuard);
  Complex zz = lift(z);
  Complex t3 = theta_K(zz / Real(3L), ctx);
  if (mu == mu_half()) return t3;
  if (mu == mu_sixth()) return (theta_K(zz, ctx) * 3L - t3) / Real(2L);
  throw Error(ErrorKind::Validation, "mu must be 1/6 or 1/2");
}

}  // namespace ctlab
