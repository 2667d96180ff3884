#pragma once

// Numerical identity checks. Each check returns IdentityResult records; a
// failing record is re-evaluated at twice the precision before it is reported.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ctlab/modular.hpp"
#include "ctlab/mp.hpp"

namespace ctlab {

enum class CheckStatus { Pass, Fail, Skipped };
std::string status_name(CheckStatus s);

struct IdentityResult {
  std::string identity_id;
  std::map<std::string, std::string> parameters;
  Complex lhs;
  Complex rhs;
  Real residual;  // |lhs - rhs| / max(1, |rhs|)
  Real tol;
  bool pass = false;
  CheckStatus status = CheckStatus::Fail;
  long bits = 256;
  std::string note;
  // set when a failure was re-evaluated at higher precision
  long rerun_bits = 0;
  bool rerun_pass = false;
};

// 2^{-(tol_exp or bits/2) + 16}
Real identity_tol(const PrecisionContext& ctx);

IdentityResult make_result(const std::string& id, std::map<std::string, std::string> params, const Complex& lhs,
                           const Complex& rhs, const PrecisionContext& ctx);
IdentityResult skipped_result(const std::string& id, std::map<std::string, std::string> params,
                              const std::string& reason, const PrecisionContext& ctx);

std::vector<IdentityResult> check_siegel_weil(long nmax, const PrecisionContext& ctx);
std::vector<IdentityResult> check_special_values(const PrecisionContext& ctx);
std::vector<IdentityResult> check_factorization(int samples, const PrecisionContext& ctx, std::uint64_t seed,
                                                long D = 7);
std::vector<IdentityResult> check_appendix_transforms(long D, const PrecisionContext& ctx, std::uint64_t seed);
IdentityResult check_eta_ratio(long D, const PrecisionContext& ctx);
std::vector<IdentityResult> check_r_series(long D, const PrecisionContext& ctx, std::uint64_t seed);
std::vector<IdentityResult> check_gauss_sums(const std::vector<long>& primes, const PrecisionContext& ctx);
std::vector<IdentityResult> check_theta_mu_product(long D, const PrecisionContext& ctx);
std::vector<IdentityResult> check_galois_structure(long D, const PrecisionContext& ctx);

// Theta(lambda, beta; gamma z) = eps sqrt(cz+d) Theta(lambda', beta'; z) for gamma in SL2(Z)
struct ThetaTransform {
  mpq_class lambda, beta;  // final characteristic
  mpq_class phase;         // exact part of eps, as a fraction of a turn
  int eighth = 0;          // branch part of eps, e^{2 pi i eighth/8}
};
ThetaTransform theta_transform(const mpq_class& lambda, const mpq_class& beta, long a, long b, long c, long d,
                               const Complex& z_ref, const PrecisionContext& ctx);

struct VerifyOptions {
  long bits = 256;
  long tol_exp = 0;
  std::uint64_t seed = 20240611;
  long nmax = 1000;
  std::vector<long> Ds;  // empty: suite defaults
  int factorization_samples = 100;
  bool rerun_on_failure = true;
};

const std::vector<std::string>& suite_names();
std::vector<IdentityResult> run_suite(const std::string& suite, const VerifyOptions& opt);
bool all_passed(const std::vector<IdentityResult>& results);

}  // namespace ctlab
