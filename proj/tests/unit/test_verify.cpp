#include "doctest.h"

#include "ctlab/errors.hpp"
#include "ctlab/verify.hpp"

using namespace ctlab;

namespace {

PrecisionContext ctx256() {
  PrecisionContext c;
  c.bits = 256;
  c.tol_exp = 128;
  return c;
}

void require_all_pass(const std::vector<IdentityResult>& rs) {
  REQUIRE_FALSE(rs.empty());
  for (const auto& r : rs) {
    INFO(r.identity_id << " residual " << r.residual.to_string(5) << " " << r.note);
    CHECK(r.status != CheckStatus::Fail);
  }
}

}  // namespace

TEST_CASE("tolerance") {
  PrecisionScope ps(256);
  CHECK(identity_tol(ctx256()) == pow2(-112));
}

TEST_CASE("results compare relative to the right-hand side") {
  PrecisionScope ps(256);
  auto r = make_result("x", {}, Complex(Real(1000L) + pow2(-120)), Complex(Real(1000L)), ctx256());
  CHECK(r.pass);
  auto f = make_result("x", {}, Complex(Real(1L)), Complex(Real(2L)), ctx256());
  CHECK_FALSE(f.pass);
  CHECK(f.status == CheckStatus::Fail);
}

TEST_CASE("Gauss sums") {
  PrecisionScope ps(256);
  require_all_pass(check_gauss_sums({7, 13}, ctx256()));
}

TEST_CASE("theta transformation under T and S") {
  PrecisionScope ps(256);
  PrecisionContext c = ctx256();
  Complex z(Real::parse("0.1"), Real::parse("0.9"));
  mpq_class l(1, 6), b(1, 2);
  // T: Theta(l, b; z+1) = e^{pi i l^2} Theta(l, b + l + 1/2; z)
  Complex lhs = theta_series(l, b, z + Complex(1L), c);
  Complex rhs = exp2pi_i(l * l / 2) * theta_series(l, b + l + mpq_class(1, 2), z, c);
  CHECK(abs(lhs - rhs) < pow2(-200));
  auto t = theta_transform(l, b, 1, 1, 0, 1, z, c);
  CHECK(t.eighth == 0);
}

TEST_CASE("small suites") {
  PrecisionScope ps(256);
  VerifyOptions o;
  o.nmax = 200;
  o.factorization_samples = 5;
  require_all_pass(run_suite("siegel-weil", o));
  require_all_pass(run_suite("factorization", o));
  CHECK(all_passed(run_suite("siegel-weil", o)));
}

TEST_CASE("unknown suite") {
  VerifyOptions o;
  try {
    run_suite("nope", o);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(exit_code_for(e.kind()) == 2);
  }
}
