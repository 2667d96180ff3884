#include "ctlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "ctlab/eisenstein.hpp"
#include "ctlab/errors.hpp"
#include "ctlab/formulas.hpp"
#include "ctlab/ideals.hpp"
#include "ctlab/parallel.hpp"

namespace ctlab {

namespace {

constexpr long kGuard = 32;

using Params = std::map<std::string, std::string>;

std::string q2s(const mpq_class& q) { return q.get_str(); }
std::string z2s(const Complex& z) { return to_string(z, 20); }

Complex cpx(const mpq_class& x, const mpq_class& y) { return Complex(Real(x), Real(y)); }
Complex sqrt_m3() { return Complex(Real(0L), sqrt(Real(3L))); }

// (-b + sqrt(-3)) / (2 a)
Complex cm(long b, long a) { return Complex(Real(-b) / (2 * a), sqrt(Real(3L)) / (2 * a)); }

// deterministic draws: integers by modulo, rationals with denominator 1000
struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t s) : g(s) {}
  long below(long n) { return static_cast<long>(g() % static_cast<std::uint64_t>(n)); }
  mpq_class uniform(long lo_milli, long hi_milli) {
    mpq_class q(lo_milli + below(hi_milli - lo_milli + 1), 1000);
    q.canonicalize();
    return q;
  }
};

Complex rand_z(Rng& R, long xlo, long xhi, long ylo, long yhi) { return cpx(R.uniform(xlo, xhi), R.uniform(ylo, yhi)); }

long floordiv(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long imod(long a, long m) { return ((a % m) + m) % m; }

long inverse_mod(long x, long m) {
  mpz_class r, xx(x), mm(m);
  if (!mpz_invert(r.get_mpz_t(), xx.get_mpz_t(), mm.get_mpz_t()))
    throw Error(ErrorKind::NotCoprime, "no inverse");
  return r.get_si();
}

Complex theta_r(long r, long D, const mpq_class& mu, const Complex& z, const PrecisionContext& ctx) {
  return theta_half(r, D, mu, z, ctx);
}

// f_{r,mu}(z) = theta_{r,mu}(z) / theta_{0,1/6}(z)
Complex f_r(long r, long D, const mpq_class& mu, const Complex& z, const PrecisionContext& ctx) {
  return theta_half(r, D, mu, z, ctx) / theta_half(0, D, mu_sixth(), z, ctx);
}

// sum_{m,n} e^{2 pi i (m nu + n c mu)} e^{pi (i m n - |n - m z|^2/(2y)) s}, s = scale
Complex rvz_double_sum(const mpq_class& mu, const mpq_class& nu, const Complex& z, const mpq_class& scale, long cmu,
                       const PrecisionContext& ctx) {
  double y = z.im.to_double(), x = z.re.to_double(), s = scale.get_d();
  double T = (ctx.bits + 24) * std::log(2.0) + 8;
  long M = static_cast<long>(std::ceil(std::sqrt(2 * T / (M_PI * y * s)))) + 1;
  double W = std::sqrt(2 * y * T / (M_PI * s)) + 1;
  Real pis = pi() * Real(scale);
  Real two_y = z.im * 2L;
  std::map<mpq_class, Complex> phases;
  Complex sum;
  for (long m = -M; m <= M; ++m) {
    long n0 = static_cast<long>(std::floor(m * x - W)), n1 = static_cast<long>(std::ceil(m * x + W));
    Real my = z.im * m, mx = z.re * m;
    for (long n = n0; n <= n1; ++n) {
      Real dx = Real(n) - mx;
      Real e = -(pis * (dx * dx + my * my) / two_y);
      mpq_class q = nu * m + mu * (n * cmu) + scale * mpq_class(m * n, 2);
      mpz_class fl;
      mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
      q -= fl;
      auto it = phases.find(q);
      if (it == phases.end()) it = phases.emplace(q, exp2pi_i(q)).first;
      sum += it->second * exp(e);
    }
  }
  return sum;
}

Complex principal_sqrt_minus_iz(const Complex& z) { return sqrt(Complex(z.im, -z.re)); }

// reduce Theta(lf, bf) to Theta(lt, bt); returns false if the characteristics differ
bool match_characteristic(const mpq_class& lf, const mpq_class& bf, const mpq_class& lt, const mpq_class& bt,
                          mpq_class& extra) {
  auto is_int = [](const mpq_class& q) { return q.get_den() == 1; };
  mpq_class k = lf - lt, db = bf - bt;
  if (is_int(k) && is_int(db)) {
    extra = -k * bf;
    return true;
  }
  k = -lf - lt;
  db = -bf - bt;
  if (is_int(k) && is_int(db)) {
    extra = k * bf;
    return true;
  }
  return false;
}

mpq_class frac(const mpq_class& q) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  mpq_class r = q - fl;
  r.canonicalize();
  return r;
}

Complex mobius(long a, long b, long c, long d, const Complex& z) {
  return (z * a + Complex(Real(b))) / (z * c + Complex(Real(d)));
}

}  // namespace

std::string status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    default:
      return "skipped";
  }
}

Real identity_tol(const PrecisionContext& ctx) {
  long e = ctx.tol_exp > 0 ? ctx.tol_exp : ctx.bits / 2;
  return pow2(-e + 16);
}

IdentityResult make_result(const std::string& id, Params params, const Complex& lhs, const Complex& rhs,
                           const PrecisionContext& ctx) {
  IdentityResult r;
  r.identity_id = id;
  r.parameters = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.residual = abs(lhs - rhs) / max(Real(1L), abs(rhs));
  r.tol = identity_tol(ctx);
  r.pass = r.residual < r.tol;
  r.status = r.pass ? CheckStatus::Pass : CheckStatus::Fail;
  r.bits = ctx.bits;
  return r;
}

IdentityResult skipped_result(const std::string& id, Params params, const std::string& reason,
                              const PrecisionContext& ctx) {
  IdentityResult r;
  r.identity_id = id;
  r.parameters = std::move(params);
  r.residual = Real(0L);
  r.tol = identity_tol(ctx);
  r.pass = false;
  r.status = CheckStatus::Skipped;
  r.bits = ctx.bits;
  r.note = reason;
  return r;
}

std::vector<IdentityResult> check_siegel_weil(long nmax, const PrecisionContext& ctx) {
  if (nmax < 1) throw Error(ErrorKind::Validation, "nmax must be positive");
  std::vector<IdentityResult> out;
  std::vector<long> r = ideal_count_coefficients(nmax);
  std::vector<long> L = lattice_count(nmax);
  long bad = 0, first = -1;
  for (long N = 1; N <= nmax; ++N)
    if (6 * r[N] != L[N]) {
      ++bad;
      if (first < 0) first = N;
    }
  PrecisionScope ps(ctx.bits + kGuard);
  IdentityResult c = make_result("siegel_weil.coefficients", {{"nmax", std::to_string(nmax)}}, Complex(bad),
                                 Complex(0L), ctx);
  if (first > 0) c.note = "first mismatch at N=" + std::to_string(first);
  out.push_back(c);
  // L(1, eps) = sum eps(n)/n = (psi(2/3) - psi(1/3))/3
  Real third = Real(1L) / 3L;
  Real lhs = (digamma(third * 2L) - digamma(third)) / 3L;
  Real rhs = pi() * sqrt(Real(3L)) / 9L;
  out.push_back(make_result("siegel_weil.L1", {{"method", "digamma"}}, Complex(lhs), Complex(rhs), ctx));
  // constant term: E(0,z) = (2 pi sqrt3/9)(1 + 6 sum r(N) q^N) = 2 L(1,eps) Theta_K
  Complex z(Real(1L) / 7L, Real(9L) / 10L);
  Complex th = theta_K_qseries(z, ctx);
  Complex E = th * (pi() * sqrt(Real(3L)) * 2L / 9L);
  out.push_back(make_result("siegel_weil.eisenstein", {{"z", z2s(z)}}, E, th * (lhs * 2L), ctx));
  return out;
}

std::vector<IdentityResult> check_special_values(const PrecisionContext& ctx) {
  PrecisionScope ps(ctx.bits + kGuard);
  std::vector<IdentityResult> out;
  Real g = gamma(Real(1L) / 3L), g3 = g * g * g, P = pi();
  Complex w = omega_pow(1);
  out.push_back(make_result("special.theta_omega", {}, theta_K(w, ctx), Complex(g3 / (P * P * 2L)), ctx));
  out.push_back(make_result("special.theta_rvz", {{"z", "(-9+sqrt(-3))/18"}}, theta_K(cm(9, 9), ctx),
                            Complex(-(g3 * 6L) / (P * P * 4L)), ctx));
  out.push_back(make_result("special.theta_03_base", {{"z", "(-3+sqrt(-3))/6"}}, theta_K(cm(3, 3), ctx),
                            Complex(0L), ctx));
  out.push_back(make_result("special.theta_direct_vs_reduced", {{"z", "omega"}}, theta_K_direct(w, ctx),
                            theta_K(w, ctx), ctx));
  Complex i1(Real(0L), Real(1L));
  Real g4 = gamma(Real(1L) / 4L);
  out.push_back(make_result("special.eta_i", {}, eta(i1, ctx), Complex(g4 / (pow(P, Real(3L) / 4L) * 2L)), ctx));
  out.push_back(make_result("special.eta_series_vs_product", {{"z", "i"}}, eta(i1, ctx), eta_product(i1, ctx), ctx));
  return out;
}

std::vector<IdentityResult> check_factorization(int samples, const PrecisionContext& ctx, std::uint64_t seed,
                                                long D) {
  const std::vector<mpq_class> chars = {mpq_class(0), mpq_class(1, 6), mpq_class(-1, 6),
                                        mpq_class(1, 2), mpq_class(-1, 2), mpq_class(1, 3)};
  struct Sample {
    long a;
    mpq_class mu, nu, x, y;
  };
  Rng R(seed);
  std::vector<Sample> S;
  for (int i = 0; i < samples; ++i) {
    Sample s;
    s.a = 1 + R.below(5);
    s.mu = chars[R.below(chars.size())];
    s.nu = chars[R.below(chars.size())];
    s.x = R.uniform(-500, 500);
    s.y = R.uniform(200, 2000);
    S.push_back(s);
  }
  std::vector<IdentityResult> out(S.size());
  PrecisionScope ps(ctx.bits + kGuard);
  parallel_for(S.size(), [&](std::size_t i) {
    const Sample& s = S[i];
    Complex z = cpx(s.x, s.y);
    Real y = z.im;
    Complex lhs = rvz_double_sum(s.mu, s.nu, z, mpq_class(1, s.a), 1, ctx);
    Complex rhs = theta_char(s.mu * s.a, s.nu, z / Real(s.a), ctx) *
                  theta_char(s.mu, -s.nu * s.a, conj(z) * (-s.a), ctx) * sqrt(y * (2 * s.a));
    out[i] = make_result("factorization", {{"a", std::to_string(s.a)}, {"mu", q2s(s.mu)}, {"nu", q2s(s.nu)},
                                           {"z", z2s(z)}, {"seed", std::to_string(seed)}, {"sample", std::to_string(i)}},
                         lhs, rhs, ctx);
  });
  // sum over r mod D of the factorization with mu -> mu + r/D
  Rng R2(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int i = 0; i < 4; ++i) {
    long a = 1 + R2.below(3);
    mpq_class mu = chars[R2.below(chars.size())], nu = chars[R2.below(chars.size())];
    Complex z = cpx(R2.uniform(-500, 500), R2.uniform(500, 1500));
    Real y = z.im;
    Complex lhs;
    for (long r = 0; r < D; ++r) {
      mpq_class rd(r, D);
      lhs += theta_char(mu * a + rd * a, nu, z * Real(mpq_class(D, a)), ctx) *
             theta_char(mu + rd, -nu * a, conj(z) * (-a * D), ctx);
    }
    lhs = lhs * sqrt(y * (2 * a)) / sqrt(Real(D));
    Complex rhs = rvz_double_sum(mu, nu, z, mpq_class(D, a), D, ctx);
    out.push_back(make_result("factorization.sum_over_r",
                              {{"D", std::to_string(D)}, {"a", std::to_string(a)}, {"mu", q2s(mu)}, {"nu", q2s(nu)},
                               {"z", z2s(z)}},
                              lhs, rhs, ctx));
  }
  return out;
}

ThetaTransform theta_transform(const mpq_class& lambda, const mpq_class& beta, long a, long b, long c, long d,
                               const Complex& z_ref, const PrecisionContext& ctx) {
  if (a * d - b * c != 1) throw Error(ErrorKind::NoAdmissibleMatrix, "determinant is not 1");
  PrecisionScope ps(ctx.bits + kGuard);
  ThetaTransform t;
  mpq_class lam = lambda, bet = beta, ph = 0;
  Complex prod(1L);
  const mpq_class half(1, 2);
  auto shift = [&](long q) {
    ph += lam * lam * q / 2;
    bet += (lam + half) * q;
  };
  long A = a, B = b, C = c, Dd = d;
  for (int guard = 0; guard < 200; ++guard) {
    if (C == 0) {
      // A = Dd = +-1, gamma z = z + B Dd
      shift(B * Dd);
      break;
    }
    long a0 = C > 0 ? A : -A, c0 = C > 0 ? C : -C;
    long q = floordiv(2 * a0 + c0, 2 * c0);
    shift(q);
    long a1 = A - q * C, b1 = B - q * Dd;
    // gamma1 = S gamma2 with gamma2 = (C, Dd; -a1, -b1)
    Complex u = mobius(C, Dd, -a1, -b1, z_ref);
    prod = prod * principal_sqrt_minus_iz(u);
    ph -= lam * bet;
    mpq_class nl = bet, nb = -lam;
    lam = nl;
    bet = nb;
    A = C;
    B = Dd;
    C = -a1;
    Dd = -b1;
  }
  Complex zeta = prod / sqrt(z_ref * c + Complex(Real(d)));
  Real k8 = arg(zeta) * 4L / pi();
  mpz_class k = k8.round_to_integer();
  if (!(abs(k8 - Real(k)) < Real::parse("1e-10")))
    throw Error(ErrorKind::AlgorithmStuck, "branch factor is not an 8th root of unity");
  t.lambda = lam;
  t.beta = bet;
  t.phase = frac(ph);
  t.eighth = static_cast<int>(imod(k.get_si(), 8));
  return t;
}

std::vector<IdentityResult> check_appendix_transforms(long D, const PrecisionContext& ctx, std::uint64_t seed) {
  if (D < 1 || D % 2 == 0 || D % 3 == 0) throw Error(ErrorKind::Validation, "D must be coprime to 6");
  PrecisionScope ps(ctx.bits + kGuard);
  std::vector<IdentityResult> out;
  Rng R(seed + static_cast<std::uint64_t>(D));
  Params PD = {{"D", std::to_string(D)}};
  auto with = [&](Params extra) {
    Params p = PD;
    for (auto& [k, v] : extra) p[k] = v;
    return p;
  };
  Complex w = omega_pow(1), w2 = omega_pow(2);
  // functional equation
  for (int i = 0; i < 3; ++i) {
    Complex z = rand_z(R, -500, 500, 400, 1200);
    Complex lhs = theta_K_direct(Complex(Real(-1L)) / (z * 3L), ctx);
    Complex rhs = Complex(Real(0L), -sqrt(Real(3L))) * z * theta_K_direct(z, ctx);
    out.push_back(make_result("appendix.functional_eq", with({{"z", z2s(z)}}), lhs, rhs, ctx));
  }
  // Theta(z + k/3) = (1 - w^k) Theta(3z) + w^k Theta(z)
  for (long k = 1; k <= 2; ++k) {
    Complex z = rand_z(R, -500, 500, 300, 1000);
    Complex wk = omega_pow(k);
    Complex lhs = theta_K_direct(z + Complex(Real(k) / 3L), ctx);
    Complex rhs = (Complex(1L) - wk) * theta_K_direct(z * 3L, ctx) + wk * theta_K_direct(z, ctx);
    out.push_back(make_result("appendix.theta3z", with({{"k", std::to_string(k)}, {"z", z2s(z)}}), lhs, rhs, ctx));
  }
  // Theta_K((-b + sqrt(-3))/(6a)) = 0 with b^2 = -3 mod 12a
  {
    ClassGroupReps reps = enumerate_class_reps(D);
    int n = 0;
    for (auto& I : reps.reps) {
      if (I.a == 1) continue;
      if (++n > 4) break;
      long b = sqrt_minus3_mod(12 * I.a, false);
      Complex v = theta_K(cm(b, 3 * I.a), ctx);
      out.push_back(make_result("appendix.theta_03", with({{"a", std::to_string(I.a)}, {"b", std::to_string(b)}}),
                                v, Complex(0L), ctx));
    }
  }
  // transformation law for theta_{r,mu}
  {
    struct Mat {
      long a, b, c, d;
    };
    std::vector<Mat> mats;
    long m3 = 3 * D * D;
    if (D == 7) mats.push_back({13, 147, 3, 34});
    for (int tries = 0; mats.size() < 3 && tries < 1000; ++tries) {
      long a = 7 + 6 * R.below(10), c = 1 + R.below(5);
      if (std::gcd(a, m3 * c) != 1) continue;
      long d = inverse_mod(a % (m3 * c), m3 * c);
      long k = (a * d - 1) / (m3 * c);
      mats.push_back({a, m3 * k, c, d});
    }
    if (mats.empty()) throw Error(ErrorKind::NoAdmissibleMatrix, "no matrix for D=" + std::to_string(D));
    for (auto& M : mats) {
      for (const mpq_class& mu : {mu_sixth(), mu_half()}) {
        Complex cz = cpx(R.uniform(-400, 400), R.uniform(600, 1200));  // c z + d
        Complex z = (cz - Complex(Real(M.d))) / Real(M.c);
        Complex gz = Complex(Real(M.a) / M.c) - Complex(1L) / (cz * M.c);
        Params p = with({{"matrix", "(" + std::to_string(M.a) + "," + std::to_string(M.b) + ";" +
                                        std::to_string(M.c) + "," + std::to_string(M.d) + ")"},
                         {"mu", q2s(mu)},
                         {"z", z2s(z)}});
        Real worst(0L);
        Complex wl, wr;
        std::string eps_s;
        bool ok = true;
        std::string why;
        for (long r : {1L, 2L, 5L}) {
          mpq_class lam = mpq_class(r, D) - mu, lt = mpq_class(M.a * r, D) - mu;
          ThetaTransform t = theta_transform(lam, mpq_class(1, 2), M.a, M.b, M.c, M.d, z, ctx);
          mpq_class extra;
          if (!match_characteristic(t.lambda, t.beta, lt, mpq_class(1, 2), extra)) {
            ok = false;
            why = "final characteristic differs from theta_{ar,mu}";
            break;
          }
          mpq_class eps = frac(t.phase + extra + mpq_class(t.eighth, 8));
          mpq_class e24 = eps * 24;
          if (e24.get_den() != 1) {
            ok = false;
            why = "multiplier is not a 24th root of unity";
          }
          if (eps_s.empty()) eps_s = q2s(eps);
          else if (eps_s != q2s(eps)) {
            ok = false;
            why = "multiplier depends on r";
          }
          Complex lhs = theta_series(lam, mpq_class(1, 2), gz, ctx);
          Complex rhs = exp2pi_i(eps) * sqrt(cz) * theta_series(lt, mpq_class(1, 2), z, ctx);
          Real res = abs(lhs - rhs) / max(Real(1L), abs(rhs));
          if (r == 1 || res > worst) {
            worst = res;
            wl = lhs;
            wr = rhs;
          }
        }
        p["eps_turns"] = eps_s;
        IdentityResult ir = make_result("appendix.transformation_r", p, wl, wr, ctx);
        if (!ok) {
          ir.pass = false;
          ir.status = CheckStatus::Fail;
          ir.note = why;
        }
        out.push_back(ir);
      }
    }
  }
  // Fourier law: theta_{r,1/6}(3z) sqrt(-iz) in terms of the shifted thetas at -3/z
  for (long r : {1L, 7L, 13L}) {
    Complex z = rand_z(R, -400, 400, 600, 1300);
    Complex lhs = theta_r(r, D, mu_sixth(), z * 3L, ctx) * principal_sqrt_minus_iz(z);
    Complex u = Complex(Real(-3L)) / z;
    Complex comb = -(w * theta_shifted(-3 * r, D, mu_sixth(), u, ctx)) + theta_shifted(3 * r, D, mu_sixth(), u, ctx) +
                   w2 * theta_shifted(-3 * r, D, mu_half(), u, ctx);
    Complex pref = w * exp2pi_i(mpq_class(D - 1, 12)) / sqrt_m3();
    if (r % 2) pref = -pref;
    out.push_back(make_result("appendix.fourier", with({{"r", std::to_string(r)}, {"z", z2s(z)}}), lhs, pref * comb,
                              ctx));
  }
  // theta_{r,1/2} = -theta_{2D-r,1/2}
  {
    Complex z = rand_z(R, -500, 500, 300, 1000);
    long r = 1 + R.below(2 * D - 1);
    out.push_back(make_result("appendix.theta_half_symmetry", with({{"r", std::to_string(r)}, {"z", z2s(z)}}),
                              theta_r(r, D, mu_half(), z, ctx), -theta_r(2 * D - r, D, mu_half(), z, ctx), ctx));
  }
  // sum_{r = 1 (6)} theta_{r,1/6}(z) = -(-1)^{(D-1)/6} eta(z/(3D^2))
  {
    Complex z = rand_z(R, -500, 500, 300, 1000) * Real(D);
    Complex s;
    for (long r = 1; r < 6 * D; r += 6) s += theta_r(r, D, mu_sixth(), z, ctx);
    Complex e = eta(z / Real(3 * D * D), ctx);
    if (((D - 1) / 6) % 2 == 0) e = -e;
    out.push_back(make_result("appendix.theta_sum_eta", with({{"z", z2s(z)}}), s, e, ctx));
  }
  // theta_0(z) = eta(z/3) via the product
  {
    Complex z = rand_z(R, -500, 500, 500, 1500);
    out.push_back(make_result("appendix.theta0_eta", with({{"z", z2s(z)}}), theta_r(0, D, mu_sixth(), z, ctx),
                              eta_product(z / Real(3L), ctx), ctx));
  }
  // theta^{(r),mu}(3z/D^2) = -sum_{s = 1 (6)} theta_{s,mu}(3z) e^{2 pi i r s/D}
  for (const mpq_class& mu : {mu_sixth(), mu_half()}) {
    long r = 1 + R.below(D - 1);
    Complex z = rand_z(R, -500, 500, 300, 900);
    Complex lhs = theta_shifted(r, D, mu, z * Real(mpq_class(3, D * D)), ctx);
    Complex rhs;
    for (long s = 1; s < 6 * D; s += 6) rhs += theta_r(s, D, mu, z * 3L, ctx) * exp2pi_i(mpq_class(r * s, D));
    out.push_back(make_result("appendix.finite_fourier", with({{"r", std::to_string(r)}, {"mu", q2s(mu)}, {"z", z2s(z)}}),
                              lhs, -rhs, ctx));
  }
  return out;
}

IdentityResult check_eta_ratio(long D, const PrecisionContext& ctx) {
  Params p = {{"D", std::to_string(D)}};
  if (D == 1) {
    PrecisionScope ps(ctx.bits + kGuard);
    return make_result("appendix.eta_ratio", p, Complex(1L), Complex(1L), ctx);
  }
  if (!is_split_product(D) || split_square_part(D).second != 1)
    throw Error(ErrorKind::Validation, "eta ratio needs a squarefree product of primes = 1 mod 3");
  long b = sqrt_minus3_mod(12 * D * D, true);
  PiPair pp = pi_dividing_tau(D, b);
  PrecisionScope ps(ctx.bits + kGuard);
  Complex tau = cm(b, 1);
  Complex lhs = eta(tau / Real(D * D), ctx) / eta(tau, ctx);
  Complex rhs = conj(to_complex(pp.pi1));
  if (((D - 1) / 6) % 2) rhs = -rhs;
  p["b"] = std::to_string(b);
  p["pi"] = pp.pi1.to_string();
  return make_result("appendix.eta_ratio", p, lhs, rhs, ctx);
}

std::vector<IdentityResult> check_r_series(long D, const PrecisionContext& ctx, std::uint64_t seed) {
  if (!is_split_product(D) || split_square_part(D).second != 1)
    throw Error(ErrorKind::Validation, "R checks need a squarefree product of primes = 1 mod 3");
  std::vector<IdentityResult> out;
  long b = sqrt_minus3_mod(12 * D * D, true);
  PiPair pp = pi_dividing_tau(D, b);
  PrecisionScope ps(ctx.bits + kGuard);
  Params P = {{"D", std::to_string(D)}, {"b", std::to_string(b)}};
  Rng R(seed * 31 + static_cast<std::uint64_t>(D));
  // R_{D,1/2} vanishes identically
  Real worst(0L);
  Complex wz;
  for (int i = 0; i < 20; ++i) {
    Complex z = rand_z(R, -500, 500, 200, 1000);
    Complex v = R_series(D, mu_half(), z, pp.pi1, EisInt(1), ctx);
    if (i == 0 || abs(v) > worst) {
      worst = abs(v);
      wz = z;
    }
  }
  {
    Params p = P;
    p["samples"] = "20";
    p["worst_z"] = z2s(wz);
    out.push_back(make_result("r_series.half_vanishes", p, Complex(worst), Complex(0L), ctx));
  }
  Complex tau = cm(b, 1);
  Real skip_tol = identity_tol(ctx) * 10L;
  // R(tau) / R(tau/3) in {1, w, w^2}
  Complex Rt = R_series(D, mu_sixth(), tau, pp.pi1, EisInt(1), ctx);
  Complex R3 = R_series(D, mu_sixth(), tau / Real(3L), pp.pi1, EisInt(1), ctx);
  if (abs(R3) < skip_tol) {
    out.push_back(skipped_result("r_series.root_of_unity", P, "R(tau/3) vanishes", ctx));
  } else {
    int bk = 0;
    Real bd;
    for (int k = 0; k < 3; ++k) {
      Real dd = abs(Rt - R3 * omega_pow(k));
      if (k == 0 || dd < bd) {
        bd = dd;
        bk = k;
      }
    }
    Params p = P;
    p["k"] = std::to_string(bk);
    out.push_back(make_result("r_series.root_of_unity", p, Rt, R3 * omega_pow(bk), ctx));
  }
  // unwinding: sum_r theta^{(r)}(3z)/theta_0(3z) conj chi_pi(r) at z = tau/D^2
  if (!is_prime(D)) {
    out.push_back(skipped_result("r_series.unwinding", P, "D is not prime", ctx));
  } else if (abs(Rt) < skip_tol) {
    out.push_back(skipped_result("r_series.unwinding", P, "R(tau) vanishes", ctx));
  } else {
    Complex z3 = tau * Real(mpq_class(3, D * D));
    Complex th0 = theta_half(0, D, mu_sixth(), z3, ctx);
    Complex lhs;
    for (long r = 1; r < 6 * D; r += 6) {
      if (std::gcd(r, D) != 1) continue;
      lhs += theta_shifted(r, D, mu_sixth(), z3, ctx) * chi_pi_rational(r, pp.pi1).conj().value();
    }
    lhs = lhs / th0;
    Complex G = gauss_sum(pp.pi1, true);
    Complex rhs = G / conj(to_complex(pp.pi1)) * Rt;
    if (((D + 1) / 2) % 2) rhs = -rhs;
    out.push_back(make_result("r_series.unwinding", P, lhs, rhs, ctx));
  }
  // T = (-1)^sigma conj(T) for the selected omega^{k0}
  {
    TDReport T = compute_T_D(D, ctx);
    Complex rhs = conj(T.T_value);
    if (sigma(D) % 2) rhs = -rhs;
    Params p = P;
    p["k0"] = std::to_string(T.k0);
    out.push_back(make_result("r_series.T_conjugation", p, T.T_value, rhs, ctx));
  }
  return out;
}

std::vector<IdentityResult> check_gauss_sums(const std::vector<long>& primes, const PrecisionContext& ctx) {
  std::vector<IdentityResult> out;
  PrecisionScope ps(ctx.bits + kGuard);
  for (long p : primes) {
    EisInt pi = split_prime(p).pi;
    Complex G = gauss_sum(pi);
    Params P = {{"p", std::to_string(p)}, {"pi", pi.to_string()}};
    out.push_back(make_result("gauss.cube_law", P, G * G * G, conj(to_complex(pi)) * (-p), ctx));
    out.push_back(make_result("gauss.abs", P, Complex(norm(G)), Complex(p), ctx));
  }
  return out;
}

std::vector<IdentityResult> check_theta_mu_product(long D, const PrecisionContext& ctx) {
  std::vector<IdentityResult> out;
  ClassGroupReps reps = enumerate_class_reps(D);
  PrecisionScope ps(ctx.bits + kGuard);
  int n = 0;
  for (auto& I : reps.reps) {
    long a = I.a;
    if (a == 1 || a % 6 != 1) continue;
    if (++n > 2) break;
    long b = sqrt_minus3_mod(12 * D * D * a * a, true);
    Complex tA = cm(b, a), t2 = cm(b, a * a), t1 = cm(b, 1);
    for (const mpq_class& mu : {mu_sixth(), mu_half()}) {
      Complex s;
      for (long r = 0; r < D; ++r) s += theta_half(a * r, D, mu, t2, ctx) * conj(theta_half(r, D, mu, t1, ctx));
      Complex rhs = s * exp2pi_i(mpq_class(a - 1, 12)) * pow(Real(3L), Real(1L) / 4L) / Real(D);
      Complex lhs = theta_mu(mu, tA * Real(D), ctx);
      out.push_back(make_result("appendix.theta_mu_product", {{"D", std::to_string(D)}, {"a", std::to_string(a)},
                                             {"b", std::to_string(b)}, {"mu", q2s(mu)}},
                                lhs, rhs, ctx));
    }
  }
  return out;
}

std::vector<IdentityResult> check_galois_structure(long D, const PrecisionContext& ctx) {
  if (D < 1 || D % 3 == 0 || D % 2 == 0) throw Error(ErrorKind::Validation, "D must be coprime to 6");
  std::vector<IdentityResult> out;
  Params PD = {{"D", std::to_string(D)}};
  ClassGroupReps reps = enumerate_class_reps(D);
  PrecisionScope ps(ctx.bits + kGuard);
  Complex tw = theta_K(omega_pow(1), ctx);
  // (i) Theta_K(tau_A) = conj(k_A) Theta_K(w)
  for (auto& I : reps.reps) {
    Params p = PD;
    p["a"] = std::to_string(I.a);
    p["b"] = std::to_string(I.b);
    p["k"] = I.generator.to_string();
    out.push_back(make_result("galois.cm_value", p, theta_K(I.cm_point().tau(), ctx),
                              conj(to_complex(I.generator)) * tw, ctx));
  }
  // (ii) the trace is a real integer
  {
    TraceResult tr = theta_trace(D, ctx);
    Complex rhs = Complex(Real(tr.trace.re.round_to_integer()));
    out.push_back(make_result("galois.trace_rational", PD, tr.trace, rhs, ctx));
    // (iv) elementary symmetric functions of D f(tau_A)
    if (split_square_part(D).second == 1) {
      std::vector<Complex> P = {Complex(1L)};
      for (auto& t : tr.terms) {
        Complex v = t.ratio * Real(D);
        std::vector<Complex> Q(P.size() + 1);
        for (std::size_t i = 0; i < P.size(); ++i) {
          Q[i] += P[i];
          Q[i + 1] -= v * P[i];
        }
        P = Q;
      }
      for (std::size_t k = 1; k < P.size(); ++k) {
        Params p = PD;
        p["k"] = std::to_string(k);
        out.push_back(make_result("galois.symmetric_functions", p, P[k], Complex(Real(P[k].re.round_to_integer())),
                                  ctx));
      }
    }
  }
  // (iii) f_r(tau/a) = f_{n'r}(tau) and orbit closure
  if (D > 1 && split_square_part(D).second == 1) {
    std::vector<long> rs;
    for (long r = 1; r < 6 * D; r += 6)
      if (std::gcd(r, D) == 1) rs.push_back(r);
    int n = 0;
    for (auto& I : reps.reps) {
      long a = I.a;
      if (a == 1) continue;
      if (++n > 3) break;
      long b = sqrt_minus3_mod(12 * a * D * D, false);
      bool found = false;
      mpz_class nn;
      for (const EisInt& g0 : {I.generator, primary_associate(conj(I.generator)).value}) {
        for (const EisInt& u : units()) {
          EisInt g = g0 * u;
          try {
            auto [cn, cmm] = lattice_coordinates(g, a, b);
            if (mpz_fdiv_ui(cmm.get_mpz_t(), 3) == 0 && mpz_fdiv_ui(cn.get_mpz_t(), 3) == 1) {
              nn = cn;
              found = true;
              break;
            }
          } catch (const Error&) {
          }
        }
        if (found) break;
      }
      Params p = PD;
      p["a"] = std::to_string(a);
      p["b"] = std::to_string(b);
      if (!found) {
        out.push_back(skipped_result("galois.reciprocity_shift", p, "no generator with the congruences", ctx));
        continue;
      }
      long np = static_cast<long>(mpz_fdiv_ui(nn.get_mpz_t(), 3 * D));
      if (np % 2 == 0) np += 3 * D;
      p["n_prime"] = std::to_string(np);
      Complex tau = cm(b, 1), ta = tau / Real(a);
      for (const mpq_class& mu : {mu_sixth(), mu_half()}) {
        long r = rs.size() > 1 ? rs[1] : rs[0];
        Params q = p;
        q["mu"] = q2s(mu);
        q["r"] = std::to_string(r);
        out.push_back(make_result("galois.reciprocity_shift", q, f_r(r, D, mu, ta, ctx), f_r(np * r, D, mu, tau, ctx), ctx));
      }
      // the conjugate multiset {f_r(tau/a)} coincides with {f_r(tau)}
      std::vector<Complex> A, B;
      for (long r : rs) {
        A.push_back(f_r(r, D, mu_sixth(), ta, ctx));
        B.push_back(f_r(r, D, mu_sixth(), tau, ctx));
      }
      std::vector<bool> used(B.size(), false);
      Real worst(0L);
      for (auto& x : A) {
        long bi = -1;
        Real bd;
        for (std::size_t j = 0; j < B.size(); ++j) {
          if (used[j]) continue;
          Real dd = abs(x - B[j]) / max(Real(1L), abs(B[j]));
          if (bi < 0 || dd < bd) {
            bi = static_cast<long>(j);
            bd = dd;
          }
        }
        used[bi] = true;
        if (bd > worst) worst = bd;
      }
      out.push_back(make_result("galois.orbit_closure", p, Complex(worst), Complex(0L), ctx));
    }
  }
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> s = {"all", "appendix", "siegel-weil", "galois", "factorization"};
  return s;
}

namespace {

using Job = std::function<std::vector<IdentityResult>(const PrecisionContext&)>;

void add_appendix(std::vector<Job>& jobs, const std::vector<long>& Ds, std::uint64_t seed) {
  jobs.push_back([](const PrecisionContext& c) { return check_special_values(c); });
  for (long D : Ds) {
    jobs.push_back([D, seed](const PrecisionContext& c) { return check_appendix_transforms(D, c, seed); });
    if (is_split_product(D) && split_square_part(D).second == 1) {
      jobs.push_back([D](const PrecisionContext& c) { return std::vector<IdentityResult>{check_eta_ratio(D, c)}; });
      jobs.push_back([D, seed](const PrecisionContext& c) { return check_r_series(D, c, seed); });
      jobs.push_back([D](const PrecisionContext& c) { return check_theta_mu_product(D, c); });
    }
  }
  jobs.push_back([](const PrecisionContext& c) { return check_gauss_sums({7, 13, 19, 31, 37}, c); });
}

}  // namespace

std::vector<IdentityResult> run_suite(const std::string& suite, const VerifyOptions& opt) {
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    throw Error(ErrorKind::Validation, "unknown suite '" + suite + "'");
  PrecisionContext ctx;
  ctx.bits = opt.bits;
  ctx.tol_exp = opt.tol_exp;
  std::vector<Job> jobs;
  bool all = suite == "all";
  if (all || suite == "siegel-weil") {
    long nmax = opt.nmax;
    jobs.push_back([nmax](const PrecisionContext& c) { return check_siegel_weil(nmax, c); });
  }
  if (all || suite == "factorization") {
    int n = opt.factorization_samples;
    std::uint64_t s = opt.seed;
    long D = opt.Ds.empty() ? 7 : opt.Ds.front();
    jobs.push_back([n, s, D](const PrecisionContext& c) { return check_factorization(n, c, s, D); });
  }
  if (all || suite == "appendix") {
    std::vector<long> Ds = opt.Ds.empty() ? std::vector<long>{7, 13, 19, 73} : opt.Ds;
    add_appendix(jobs, Ds, opt.seed);
  }
  if (all || suite == "galois") {
    std::vector<long> Ds = opt.Ds.empty() ? std::vector<long>{7, 13} : opt.Ds;
    for (long D : Ds) jobs.push_back([D](const PrecisionContext& c) { return check_galois_structure(D, c); });
  }
  std::vector<std::vector<IdentityResult>> res(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    res[i] = jobs[i](ctx);
    bool failed = std::any_of(res[i].begin(), res[i].end(),
                              [](const IdentityResult& r) { return r.status == CheckStatus::Fail; });
    if (failed && opt.rerun_on_failure) {
      PrecisionContext c2 = ctx;
      c2.bits = ctx.bits * 2;
      if (c2.tol_exp > 0) c2.tol_exp *= 2;
      std::vector<IdentityResult> again = jobs[i](c2);
      for (std::size_t k = 0; k < res[i].size() && k < again.size(); ++k) {
        if (res[i][k].status != CheckStatus::Fail) continue;
        res[i][k].rerun_bits = c2.bits;
        res[i][k].rerun_pass = again[k].pass;
      }
    }
  });
  std::vector<IdentityResult> out;
  for (auto& v : res)
    for (auto& r : v) out.push_back(std::move(r));
  return out;
}

bool all_passed(const std::vector<IdentityResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const IdentityResult& r) { return r.status != CheckStatus::Fail; });
}

}  // namespace ctlab
