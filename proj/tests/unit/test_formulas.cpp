#include "doctest.h"

#include "ctlab/errors.hpp"
#include "ctlab/formulas.hpp"

using namespace ctlab;

TEST_CASE("rational recognition") {
  PrecisionScope ps(128);
  Real tol = pow2(-60);
  CHECK(recognize_rational(Complex(Real(mpq_class(7, 9))), 9, tol) == mpq_class(7, 9));
  CHECK(recognize_rational(Complex(Real(-4L)), 1, tol) == -4);
  CHECK_THROWS_AS(recognize_rational(Complex(Real::parse("0.3333")), 9, tol), Error);
  CHECK_THROWS_AS(recognize_rational(Complex(Real(1L), Real(1L)), 9, tol), Error);
}

TEST_CASE("arithmetic helpers") {
  CHECK(sigma(7 * 13 * 13) == 2);
  CHECK(is_split_product(7 * 13 * 13));
  CHECK_FALSE(is_split_product(35));
  CHECK(is_cube_free(98));
  CHECK_FALSE(is_cube_free(8 * 5));
  CHECK(is_square_up_to_even_power_of_3(mpq_class(81 * 4)));
  CHECK_FALSE(is_square_up_to_even_power_of_3(mpq_class(3)));
  CHECK_FALSE(is_square_up_to_even_power_of_3(mpq_class(2)));
}

TEST_CASE("validation") {
  PrecisionContext ctx;
  for (long D : {1L, 9L, 10L, 16L, 5L * 5 * 5}) {
    try {
      compute_S_D(D, ctx);
      FAIL("accepted D=" << D);
    } catch (const Error& e) {
      CHECK(exit_code_for(e.kind()) == 2);
    }
  }
}

TEST_CASE("S_D for small D") {
  PrecisionContext ctx;
  SDOptions o;
  o.height_bound = 50;
  auto r7 = compute_S_D(7, ctx, o);
  CHECK(r7.S_D == 0);
  CHECK(r7.verdict == Verdict::ExpectSolutions);
  REQUIRE(r7.point.has_value());
  auto r5 = compute_S_D(5, ctx, o);
  CHECK(r5.S_D != 0);
  CHECK(r5.verdict == Verdict::NoRationalSolutions);
  CHECK(r5.recognition_residual < pow2(-100));
}

TEST_CASE("T_D squares to S_D up to the power of -3") {
  PrecisionContext ctx;
  for (long D : {7L, 13L, 19L, 31L, 37L, 43L, 61L, 67L}) {
    auto r = compute_S_D(D, ctx);
    REQUIRE(r.T.has_value());
    mpz_class T2 = r.T->T_exact * r.T->T_exact;
    if (r.T->imaginary) T2 *= -3;
    mpq_class lhs = r.S_D;
    for (int i = 0; i < 2 + r.sigmaD; ++i) lhs *= -3;
    CHECK(lhs == mpq_class(T2));
  }
}

TEST_CASE("the b modulus only flips the sign of T") {
  PrecisionContext ctx;
  TDOptions a, b;
  b.radical_modulus = true;
  for (long D : {7L * 7, 13L * 13 * 7}) {
    auto ta = compute_T_D(D, ctx, a), tb = compute_T_D(D, ctx, b);
    CHECK(abs(ta.T_exact) == abs(tb.T_exact));
    CHECK(ta.imaginary == tb.imaginary);
  }
}
