#include "doctest.h"

#include "ctlab/curve.hpp"
#include "ctlab/eisenstein.hpp"

using namespace ctlab;

namespace {

// #{(x,y) mod p : x^3 + y^3 = D} + points at infinity, on the projective cubic
long cubic_count(long D, long p) {
  long n = 0;
  for (long x = 0; x < p; ++x)
    for (long y = 0; y < p; ++y)
      if ((x * x % p * x + y * y % p * y - D % p + 2 * p) % p == 0) ++n;
  // x^3 + y^3 = 0 at infinity: x = -y up to cube roots of -1
  long inf = p % 3 == 1 ? 3 : 1;
  return n + inf;
}

}  // namespace

TEST_CASE("twisted model matches the projective cubic") {
  for (long D : {1L, 2L, 5L, 7L, 13L})
    for (long p : {5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L}) {
      if (D % p == 0) continue;
      CHECK(p + 1 - cubic_count(D, p) == ap_point_count(D, p));
    }
}

TEST_CASE("Hecke coefficients match point counts") {
  for (long D : {1L, 5L, 7L, 11L, 13L})
    for (long p = 5; p <= 200; ++p) {
      if (!is_prime(p) || D % p == 0) continue;
      CHECK(hecke_ap(p, D) == ap_point_count(D, p));
    }
}

TEST_CASE("an table is multiplicative") {
  auto a = an_table(7, 400);
  CHECK(a[1] == 1);
  CHECK(a[5 * 11] == a[5] * a[11]);
  CHECK(a[25] == a[5] * a[5] - 5);
  for (long n = 1; n <= 400; ++n) CHECK(a[n] == hecke_an(n, 7));
}

TEST_CASE("local data") {
  // x^3 + y^3 = 1 is 27a
  CHECK(conductor(1) == 27);
  for (long D : {5L, 7L, 13L, 65L, 91L}) {
    long N = conductor(D);
    long pp = 1;
    for (auto& [p, e] : factor_integer(D)) pp *= p * p;
    CHECK(N % pp == 0);
    long n3 = N / pp;
    CHECK((n3 == 9 || n3 == 27));
    CHECK((n3 == 9) == (D % 9 == 2 || D % 9 == 7));
  }
  for (long p : {5L, 7L, 11L}) {
    auto ld = local_data(p, p);
    CHECK(ld.conductor_exponent == 2);
    CHECK(ld.kodaira == "IV");
  }
}

TEST_CASE("point search") {
  auto P = point_search(13, 10);
  REQUIRE(P.has_value());
  CHECK(on_curve(*P, 13));
  CHECK_FALSE(point_search(5, 200).has_value());
  auto Q = point_search(7, 10);
  REQUIRE(Q.has_value());
  CHECK(on_curve(*Q, 7));
  CHECK(on_curve(RationalPoint{mpq_class(4), mpq_class(-3)}, 37));
  CHECK_FALSE(on_curve(RationalPoint{mpq_class(1), mpq_class(1)}, 3));
}

TEST_CASE("real period") {
  PrecisionScope ps(128);
  PrecisionContext ctx;
  ctx.bits = 128;
  Real w1 = real_period(1, ctx), w8 = real_period(8, ctx);
  CHECK(abs(w1 / w8 - Real(2L)) < pow2(-100));
}
