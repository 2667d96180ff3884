#include "doctest.h"

#include "ctlab/modular.hpp"

using namespace ctlab;

TEST_CASE("three evaluations of Theta_K agree") {
  PrecisionScope ps(200);
  PrecisionContext ctx;
  ctx.bits = 192;
  Complex z(Real::parse("0.137"), Real::parse("0.61"));
  Complex a = theta_K(z, ctx), b = theta_K_direct(z, ctx), c = theta_K_qseries(z, ctx);
  CHECK(abs(a - b) < pow2(-150));
  CHECK(abs(a - c) < pow2(-150));
}

TEST_CASE("Theta_K at i/sqrt(3) is fixed by the Fricke involution weight") {
  // Theta(-1/(3z)) = -i sqrt(3) z Theta(z)
  PrecisionScope ps(160);
  PrecisionContext ctx;
  ctx.bits = 150;
  Complex z(Real::parse("0.21"), Real::parse("0.4"));
  Complex w = Complex(-1L) / (Complex(3L) * z);
  Complex lhs = theta_K(w, ctx);
  Complex rhs = Complex(Real(0L), -sqrt(Real(3L))) * z * theta_K(z, ctx);
  CHECK(abs(lhs - rhs) < pow2(-120));
}

TEST_CASE("ideal counts times 6 equal lattice counts") {
  auto r = ideal_count_coefficients(2000);
  auto L = lattice_count(2000);
  for (long N = 1; N <= 2000; ++N) CHECK(6 * r[N] == L[N]);
  CHECK(L[0] == 1);
  CHECK(L[1] == 6);
  CHECK(L[7] == 12);
  CHECK(L[3] == 6);
}

TEST_CASE("eta at i") {
  // eta(i) = Gamma(1/4) / (2 pi^{3/4})
  PrecisionScope ps(160);
  PrecisionContext ctx;
  ctx.bits = 150;
  Complex v = eta(i_unit(), ctx);
  Real want = gamma(Real(mpq_class(1, 4))) / (Real(2L) * pow(pi(), Real(mpq_class(3, 4))));
  CHECK(abs(v - Complex(want)) < pow2(-130));
  CHECK(abs(eta_product(i_unit(), ctx) - v) < pow2(-130));
}

TEST_CASE("Jacobi theta at a characteristic") {
  // theta[0;0](i) = pi^{1/4} / Gamma(3/4)
  PrecisionScope ps(160);
  PrecisionContext ctx;
  ctx.bits = 150;
  Complex v = theta_char(mpq_class(0), mpq_class(0), i_unit(), ctx);
  Real want = pow(pi(), Real(mpq_class(1, 4))) / gamma(Real(mpq_class(3, 4)));
  CHECK(abs(v - Complex(want)) < pow2(-130));
  Complex s = theta_series(mpq_class(0), mpq_class(0), i_unit(), ctx);
  CHECK(abs(s - v) < pow2(-130));
}
