#include "doctest.h"

#include "ctlab/eisenstein.hpp"
#include "ctlab/mp.hpp"

using namespace ctlab;

namespace {

// x^e mod pi by repeated multiplication
EisInt pow_mod(EisInt x, long e, const EisInt& m) {
  EisInt r(1);
  x = mod(x, m);
  while (e > 0) {
    if (e & 1) r = mod(r * x, m);
    x = mod(x * x, m);
    e >>= 1;
  }
  return r;
}

const EisInt W(0, 1);

}  // namespace

TEST_CASE("ring arithmetic") {
  EisInt x(3, -5), y(-2, 7);
  CHECK(norm(x * y) == norm(x) * norm(y));
  CHECK(W * W * W == EisInt(1));
  CHECK(W * W + W + EisInt(1) == EisInt(0));
  CHECK(div_exact(x * y, y) == x);
  CHECK(norm(mod(x, y)) < norm(y));
  CHECK(units().size() == 6);
}

TEST_CASE("primary associates") {
  for (long a = -6; a <= 6; ++a)
    for (long b = -6; b <= 6; ++b) {
      EisInt x(a, b);
      if (x.is_zero() || norm(x) % 3 == 0) continue;
      auto pa = primary_associate(x);
      CHECK(is_primary(pa.value));
      CHECK(pa.unit * x == pa.value);
    }
}

TEST_CASE("split primes") {
  CHECK(split_prime(7).pi == EisInt(-2, -3));
  for (long p : {7L, 13L, 19L, 31L, 37L, 43L, 97L, 1009L}) {
    auto s = split_prime(p);
    CHECK(s.kind == SplitKind::Split);
    CHECK(norm(s.pi) == p);
    CHECK(is_primary(s.pi));
  }
  CHECK(split_prime(5).kind == SplitKind::Inert);
  CHECK(split_prime(3).kind == SplitKind::Ramified);
}

TEST_CASE("cubic symbol matches Euler's criterion") {
  for (long p : {7L, 13L, 19L, 31L, 37L, 61L}) {
    EisInt pi = split_prime(p).pi;
    for (long a = -4; a <= 4; ++a)
      for (long b = -4; b <= 4; ++b) {
        EisInt x(a, b);
        if (divides(pi, x)) continue;
        EisInt e = pow_mod(x, (p - 1) / 3, pi);
        int k = cubic_symbol_prime(x, pi).exponent;
        EisInt wk = k == 0 ? EisInt(1) : (k == 1 ? W : W * W);
        CHECK(divides(pi, e - wk));
      }
  }
}

TEST_CASE("cubic reciprocity for primary primes") {
  std::vector<EisInt> ps;
  for (long p : {7L, 13L, 19L, 31L, 37L, 43L}) {
    ps.push_back(split_prime(p).pi);
    ps.push_back(primary_associate(conj(split_prime(p).pi)).value);
  }
  ps.push_back(EisInt(-5));
  ps.push_back(EisInt(-11));
  for (auto& a : ps)
    for (auto& b : ps) {
      if (a == b || norm(a) == norm(b)) continue;
      CHECK(cubic_symbol_prime(a, b) == cubic_symbol_prime(b, a));
    }
}

TEST_CASE("Gauss sums have absolute value sqrt(p)") {
  PrecisionScope ps(128);
  for (long p : {7L, 13L, 19L}) {
    Complex g = gauss_sum(split_prime(p).pi);
    CHECK(abs(norm(g) - Real(p)) < pow2(-100));
  }
}

TEST_CASE("factorization helpers") {
  CHECK(is_prime(1009));
  CHECK_FALSE(is_prime(91));
  auto f = factor_integer(2 * 2 * 7 * 13 * 13);
  REQUIRE(f.size() == 3);
  CHECK(f[2] == std::pair<long, int>{13, 2});
  CHECK(radical(4 * 49) == 14);
  CHECK(valuation(162, 3) == 4);
}
