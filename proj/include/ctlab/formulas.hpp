#pragma once

// S_D from the weight-1 theta trace and T_D from the weight-1/2 trace.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "ctlab/curve.hpp"
#include "ctlab/eisenstein.hpp"
#include "ctlab/ideals.hpp"
#include "ctlab/modular.hpp"
#include "ctlab/mp.hpp"

namespace ctlab {

enum class Verdict { NoRationalSolutions, ExpectSolutions, Unknown };
std::string verdict_name(Verdict v);
Verdict parse_verdict(const std::string& s);

// number of distinct prime factors
int sigma(long D);
// D = D1 D2^2 with every prime = 1 mod 3
bool is_split_product(long D);
bool is_cube_free(long D);

struct TraceTerm {
  PrimitiveIdeal ideal;
  CubeRoot chi;
  Complex ratio;  // Theta_K(D0 tau_A) / Theta_K(tau_A)
};

struct TraceResult {
  long D = 1;
  long D0 = 1;
  std::vector<TraceTerm> terms;
  Complex trace;  // D^{1/3} sum ratio * chi
};

// terms in class-label order; the sum is reduced in that order whatever the thread count
TraceResult theta_trace(long D, const PrecisionContext& ctx, const EnumerationOptions& opt = {});

struct TDReport {
  long D = 1, D1 = 1, D2 = 1;
  long b = 1;
  EisInt pi1 = EisInt(1), pi2 = EisInt(1);
  int k0 = 0;
  Complex R;        // R_{D0,1/6}(tau/3)
  Complex T_value;  // omega^{k0} R pi1bar^{-2/3} pi2bar^{-1/3}
  bool imaginary = false;  // T = T_exact * sqrt(-3) when set, else T = T_exact
  mpz_class T_exact;
  Real residual;
};

struct SDReport {
  long D = 1;
  long D0 = 1;
  mpq_class S_D;
  Complex S_numeric;
  Complex trace;
  long c3D = 1;
  int sigmaD = 0;
  long bits_used = 256;
  Real recognition_residual;
  std::optional<TDReport> T;
  std::optional<mpz_class> sha_prediction;
  Verdict verdict = Verdict::Unknown;
  std::optional<RationalPoint> point;
  std::optional<Real> oracle_L;
  std::string note;
};

struct SDOptions {
  EnumerationOptions enumeration;
  long height_bound = 10000;
  bool corroborate = true;  // point search / L-value oracle when S_D = 0
  bool with_T = true;       // compute T_D for split products
  int escalations = 2;      // 256 -> 512 -> 1024
};

// p/q with q | denominator_bound and |x - p/q| < tol
mpq_class recognize_rational(const Complex& x, long denominator_bound, const Real& tol);

SDReport compute_S_D(long D, const PrecisionContext& ctx, const SDOptions& opt = {});

// sum_{r mod D, (r,D)=1, r = 1 (6)} theta_{r,mu}(3z)/theta_{0,1/6}(3z) chi_pi(r)
Complex R_series(long D, const mpq_class& mu, const Complex& z, const EisInt& pi1, const EisInt& pi2,
                 const PrecisionContext& ctx);

struct TDOptions {
  // b^2 = -3 mod 12 D0^2 instead of 12 D^2
  bool radical_modulus = false;
  int escalations = 2;
};

TDReport compute_T_D(long D, const PrecisionContext& ctx, const TDOptions& opt = {});
// also checks S_D (-3)^{2+sigma} = T_D^2
TDReport compute_T_D(long D, const mpq_class& S_D, const PrecisionContext& ctx, const TDOptions& opt = {});

struct ShaPrediction {
  mpq_class value;
  bool conditional = true;  // BSD-conditional
  bool square_checked = false;
  bool square_up_to_3 = false;
};
ShaPrediction predict_sha(const SDReport& r);

// q = 3^{2k} m^2 for integers k, m
bool is_square_up_to_even_power_of_3(const mpq_class& q);

}  // namespace ctlab
