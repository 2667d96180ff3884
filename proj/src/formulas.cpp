#include "ctlab/formulas.hpp"

#include <numeric>

#include "ctlab/errors.hpp"
#include "ctlab/parallel.hpp"

namespace ctlab {

namespace {
constexpr long kGuard = 32;

PrecisionContext at_bits(const PrecisionContext& ctx, long bits) {
  PrecisionContext c = ctx;
  c.bits = bits;
  return c;
}

bool retryable(const Error& e) {
  return e.kind() == ErrorKind::RecognitionFailure || e.kind() == ErrorKind::NonRealResidual ||
         e.kind() == ErrorKind::NoValidCubeRoot;
}

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

void validate_D(long D) {
  if (D < 2) throw Error(ErrorKind::Validation, "D must be at least 2");
  if (D % 2 == 0) throw Error(ErrorKind::Validation, "D must be odd");
  if (D % 3 == 0) throw Error(ErrorKind::NonCoprimeToThree, "D must be coprime to 3");
  if (!is_cube_free(D)) throw Error(ErrorKind::Validation, "D must be cube-free");
}
}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::NoRationalSolutions:
      return "NoRationalSolutions";
    case Verdict::ExpectSolutions:
      return "ExpectSolutions(BSD)";
    default:
      return "Unknown";
  }
}

Verdict parse_verdict(const std::string& s) {
  if (s == "NoRationalSolutions") return Verdict::NoRationalSolutions;
  if (s == "ExpectSolutions(BSD)") return Verdict::ExpectSolutions;
  if (s == "Unknown") return Verdict::Unknown;
  throw Error(ErrorKind::Validation, "unknown verdict " + s);
}

int sigma(long D) { return static_cast<int>(factor_integer(D).size()); }

bool is_split_product(long D) {
  if (D < 1) return false;
  for (auto& [p, e] : factor_integer(D))
    if (p % 3 != 1 || e > 2) return false;
  return true;
}

bool is_cube_free(long D) {
  for (auto& [p, e] : factor_integer(D))
    if (e > 2) return false;
  return true;
}

TraceResult theta_trace(long D, const PrecisionContext& ctx, const EnumerationOptions& opt) {
  auto [D1, D2] = split_square_part(D);
  TraceResult out;
  out.D = D;
  out.D0 = D1 * D2;
  ClassGroupReps reps = enumerate_class_reps(out.D0, opt);
  out.terms.resize(reps.reps.size());
  PrecisionScope ps(ctx.bits + kGuard);
  parallel_for(reps.reps.size(), [&](std::size_t i) {
    const PrimitiveIdeal& I = reps.reps[i];
    Complex tau = I.cm_point().tau();
    TraceTerm t;
    t.ideal = I;
    t.chi = chi_D(D, I.generator);
    t.ratio = theta_K(tau * out.D0, ctx) / theta_K(tau, ctx);
    out.terms[i] = t;
  });
  Complex s;
  for (auto& t : out.terms) s += t.ratio * t.chi.value();
  out.trace = s * cbrt(Real(D));
  return out;
}

mpq_class recognize_rational(const Complex& x, long denominator_bound, const Real& tol) {
  if (denominator_bound < 1) throw Error(ErrorKind::Validation, "denominator bound must be positive");
  if (!(abs(x.im) < tol)) throw Error(ErrorKind::NonRealResidual, "imaginary part " + abs(x.im).to_string(6));
  if (!(tol * (2 * denominator_bound) < Real(1L)))
    throw Error(ErrorKind::RecognitionFailure, "tolerance too coarse for the denominator bound");
  Real y = x.re * denominator_bound;
  mpz_class n = y.round_to_integer();
  Real resid = abs(y - Real(n)) / denominator_bound;
  if (!(resid < tol))
    throw Error(ErrorKind::RecognitionFailure,
                "no rational with denominator dividing " + std::to_string(denominator_bound) + " within tolerance (" +
                    resid.to_string(6) + ")");
  mpq_class q(n, denominator_bound);
  q.canonicalize();
  return q;
}

Complex R_series(long D, const mpq_class& mu, const Complex& z, const EisInt& pi1, const EisInt& pi2,
                 const PrecisionContext& ctx) {
  PrecisionScope ps(ctx.bits + kGuard);
  Complex z3 = lift(z) * 3L;
  Complex th0 = theta_half(0, D, mu_sixth(), z3, ctx);
  std::vector<long> rs;
  for (long r = 1; r < 6 * D; r += 6)
    if (std::gcd(r, D) == 1) rs.push_back(r);
  std::vector<Complex> terms(rs.size());
  parallel_for(rs.size(), [&](std::size_t i) {
    CubeRoot c = chi_pi_rational(rs[i], pi1, pi2);
    terms[i] = theta_half(rs[i], D, mu, z3, ctx) * c.value();
  });
  Complex s;
  for (auto& t : terms) s += t;
  return s / th0;
}

namespace {

TDReport t_once(long D, const PrecisionContext& ctx, const TDOptions& opt) {
  TDReport rep;
  rep.D = D;
  auto [D1, D2] = split_square_part(D);
  rep.D1 = D1;
  rep.D2 = D2;
  long D0 = D1 * D2;
  int sg = sigma(D);
  long M = opt.radical_modulus ? 12 * D0 * D0 : 12 * D * D;
  rep.b = sqrt_minus3_mod(M, true);
  PiPair pp = pi_dividing_tau(D, rep.b);
  rep.pi1 = pp.pi1;
  rep.pi2 = pp.pi2;
  PrecisionScope ps(ctx.bits + kGuard);
  Complex tau(Real(-rep.b) / 2L, sqrt(Real(3L)) / 2L);
  rep.R = R_series(D0, mu_sixth(), tau / Real(3L), rep.pi1, rep.pi2, ctx);
  Complex v = rep.R * pow(conj(to_complex(rep.pi1)), Real(-2L) / 3L) * pow(conj(to_complex(rep.pi2)), Real(-1L) / 3L);
  Real tol = ctx.tol();
  rep.imaginary = sg % 2 == 1;
  if (abs(v) < tol) {
    rep.k0 = 0;
    rep.T_value = v;
    rep.T_exact = 0;
    rep.residual = abs(v);
    return rep;
  }
  // omega^k rotations are 120 degrees apart, so at most one lies on the target axis
  int best = -1;
  Real bestdev;
  for (int k = 0; k < 3; ++k) {
    Complex t = v * omega_pow(k);
    Real dev = rep.imaginary ? abs(t.re) : abs(t.im);
    if (best < 0 || dev < bestdev) {
      best = k;
      bestdev = dev;
    }
  }
  if (!(bestdev < tol * (Real(1L) + abs(v))))
    throw Error(ErrorKind::NoValidCubeRoot, "no omega^k makes T_" + std::to_string(D) + " real or imaginary (" +
                                                bestdev.to_string(6) + ")");
  rep.k0 = best;
  rep.T_value = v * omega_pow(best);
  Complex u = rep.imaginary ? rep.T_value / Complex(Real(0L), sqrt(Real(3L))) : rep.T_value;
  rep.T_exact = u.re.round_to_integer();
  rep.residual = abs(u - Complex(Real(rep.T_exact)));
  if (!(rep.residual < tol))
    throw Error(ErrorKind::RecognitionFailure, "T_" + std::to_string(D) + " is not an integer (" +
                                                   rep.residual.to_string(6) + ")");
  if (!rep.imaginary && !mpz_divisible_ui_p(rep.T_exact.get_mpz_t(), 3))
    throw Error(ErrorKind::ConsistencyFailure, "T_" + std::to_string(D) + "/3 is not an integer");
  return rep;
}

}  // namespace

TDReport compute_T_D(long D, const PrecisionContext& ctx, const TDOptions& opt) {
  validate_D(D);
  if (!is_split_product(D))
    throw Error(ErrorKind::Validation, "T_D needs D to be a product of primes = 1 mod 3");
  for (int i = 0;; ++i) {
    try {
      return t_once(D, at_bits(ctx, ctx.bits << i), opt);
    } catch (const Error& e) {
      if (!retryable(e) || i >= opt.escalations) throw;
    }
  }
}

TDReport compute_T_D(long D, const mpq_class& S_D, const PrecisionContext& ctx, const TDOptions& opt) {
  TDReport r = compute_T_D(D, ctx, opt);
  int sg = sigma(D);
  mpz_class T2 = r.T_exact * r.T_exact;
  if (r.imaginary) T2 *= -3;
  mpq_class lhs = S_D;
  mpz_class m3;
  mpz_ui_pow_ui(m3.get_mpz_t(), 3, 2 + sg);
  if (sg % 2 == 1) m3 = -m3;
  lhs *= m3;
  if (lhs != mpq_class(T2))
    throw Error(ErrorKind::ConsistencyFailure, "S_D (-3)^{2+sigma} = " + lhs.get_str() + " but T_D^2 = " +
                                                   T2.get_str() + " for D=" + std::to_string(D));
  return r;
}

bool is_square_up_to_even_power_of_3(const mpq_class& q) {
  if (q < 0) return false;
  if (q == 0) return true;
  mpz_class n = q.get_num(), d = q.get_den();
  long v = 0;
  while (mpz_divisible_ui_p(n.get_mpz_t(), 3)) {
    n /= 3;
    ++v;
  }
  while (mpz_divisible_ui_p(d.get_mpz_t(), 3)) {
    d /= 3;
    --v;
  }
  return v % 2 == 0 && mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t());
}

ShaPrediction predict_sha(const SDReport& r) {
  if (r.S_D == 0) throw Error(ErrorKind::NotApplicable, "S_D = 0: no Sha prediction");
  ShaPrediction s;
  s.value = r.S_D;
  if (is_split_product(r.D)) {
    s.square_checked = true;
    s.square_up_to_3 = is_square_up_to_even_power_of_3(r.S_D);
    if (!s.square_up_to_3)
      throw Error(ErrorKind::ConsistencyFailure, "S_" + std::to_string(r.D) + " = " + r.S_D.get_str() +
                                                     " is not a square up to an even power of 3");
  }
  return s;
}

SDReport compute_S_D(long D, const PrecisionContext& ctx, const SDOptions& opt) {
  validate_D(D);
  SDReport rep;
  rep.D = D;
  auto [D1, D2] = split_square_part(D);
  rep.D0 = D1 * D2;
  rep.sigmaD = sigma(D);
  rep.c3D = tamagawa_product(D);
  if (is_split_product(D) && D % 9 == 1 && rep.c3D != ipow(3, 1 + rep.sigmaD))
    throw Error(ErrorKind::ConsistencyFailure, "Tate c_3D = " + std::to_string(rep.c3D) + " but 3^{1+sigma} = " +
                                                   std::to_string(ipow(3, 1 + rep.sigmaD)));
  long denom = 3 * rep.c3D;
  for (int i = 0;; ++i) {
    PrecisionContext c = at_bits(ctx, ctx.bits << i);
    try {
      TraceResult tr = theta_trace(D, c, opt.enumeration);
      PrecisionScope ps(c.bits + kGuard);
      rep.trace = tr.trace;
      rep.S_numeric = tr.trace / Real(denom);
      rep.S_D = recognize_rational(rep.S_numeric, denom, c.tol());
      rep.recognition_residual = abs(tr.trace / Real(3L) - Real(mpq_class(rep.S_D * rep.c3D)));
      rep.bits_used = c.bits;
      break;
    } catch (const Error& e) {
      if (!retryable(e) || i >= opt.escalations) throw;
    }
  }
  PrecisionScope ps(rep.bits_used);
  PrecisionContext cu = at_bits(ctx, rep.bits_used);
  if (rep.S_D != 0) {
    rep.verdict = Verdict::NoRationalSolutions;
    ShaPrediction s = predict_sha(rep);
    if (s.value.get_den() == 1) rep.sha_prediction = s.value.get_num();
    else rep.note = "S_D is not an integer";
  } else {
    bool zero = abs(rep.S_numeric) < Real::parse("1e-20");
    bool ok = false;
    if (zero && opt.corroborate) {
      rep.point = point_search(D, std::min<long>(opt.height_bound, 64));
      ok = rep.point.has_value();
      if (!ok) {
        try {
          LValueEstimate L = l_value_oracle(D, cu);
          rep.oracle_L = L.value;
          ok = abs(L.value) < Real::parse("1e-20");
        } catch (const Error& e) {
          rep.note = e.what();
        }
      }
      if (!ok && opt.height_bound > 64) {
        rep.point = point_search(D, opt.height_bound);
        ok = rep.point.has_value();
      }
    }
    rep.verdict = ok ? Verdict::ExpectSolutions : Verdict::Unknown;
  }
  if (opt.with_T && is_split_product(D)) {
    TDOptions to;
    to.escalations = opt.escalations;
    rep.T = compute_T_D(D, rep.S_D, cu, to);
  }
  return rep;
}

}  // namespace ctlab
