#pragma once

// Theta functions, Dedekind eta and the ideal-counting coefficients.

#include <gmpxx.h>

#include <vector>

#include "ctlab/mp.hpp"

namespace ctlab {

struct PrecisionContext {
  long bits = 256;
  long max_terms = 20000000;
  // recognition tolerance exponent; 0 means bits/2
  long tol_exp = 0;
  // absolute truncation budget per series
  Real tail_eps() const { return pow2(-bits - 8); }
  Real tol() const { return pow2(-(tol_exp > 0 ? tol_exp : bits / 2)); }
};

// sum_{a,b} e^{2 pi i z (a^2 - ab + b^2)}, reduced by z -> z+1 and the
// Fricke involution to Im z >= sqrt(3)/6 before the q-expansion
Complex theta_K(const Complex& z, const PrecisionContext& ctx);
// the defining double sum without any reduction
Complex theta_K_direct(const Complex& z, const PrecisionContext& ctx);
// 1 + 6 sum r(N) q^N without reduction
Complex theta_K_qseries(const Complex& z, const PrecisionContext& ctx);

// sum_n e^{pi i (n+lambda)^2 z + 2 pi i n beta}
Complex theta_series(const mpq_class& lambda, const mpq_class& beta, const Complex& z,
                     const PrecisionContext& ctx);
// theta[mu; nu](z) = sum_{n in Z+mu} e^{pi i n^2 z + 2 pi i nu n}
Complex theta_char(const mpq_class& mu, const mpq_class& nu, const Complex& z, const PrecisionContext& ctx);
// theta_{r,mu}(z) = sum_n (-1)^n e^{pi i (n + r/D - mu)^2 z}
Complex theta_half(long r, long D, const mpq_class& mu, const Complex& z, const PrecisionContext& ctx);
// theta^{(r),mu}(z) = sum_n (-1)^n e^{pi i (n - D mu)^2 z} e^{2 pi i n r/D}
Complex theta_shifted(long r, long D, const mpq_class& mu, const Complex& z, const PrecisionContext& ctx);

// pentagonal series sum (-1)^n q^{(6n-1)^2/24}
Complex eta(const Complex& z, const PrecisionContext& ctx);
// q^{1/24} prod (1 - q^n)
Complex eta_product(const Complex& z, const PrecisionContext& ctx);

// (3/2) Theta_K(z) - (1/2) Theta_K(z/3) for mu = 1/6, Theta_K(z/3) for mu = 1/2
Complex theta_mu(const mpq_class& mu, const Complex& z, const PrecisionContext& ctx);

// r(n) = sum_{m | n} (m|3) for 0 <= n <= Nmax (r(0) = 0)
std::vector<long> ideal_count_coefficients(long Nmax);
// #{(m,n) in Z^2 : m^2 - mn + n^2 = N} for 0 <= N <= Nmax
std::vector<long> lattice_count(long Nmax);

const mpq_class& mu_sixth();
const mpq_class& mu_half();

}  // namespace ctlab
