#pragma once

// Exact arithmetic in Z[w], w = (-1 + sqrt(-3))/2, and cubic residue symbols.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ctlab/mp.hpp"

namespace ctlab {

struct EisInt {
  mpz_class a;
  mpz_class b;

  EisInt() : a(0), b(0) {}
  EisInt(long x) : a(x), b(0) {}
  EisInt(const mpz_class& x, const mpz_class& y) : a(x), b(y) {}
  EisInt(long x, long y) : a(x), b(y) {}

  bool is_zero() const { return a == 0 && b == 0; }
  std::string to_string() const;
};

bool operator==(const EisInt& x, const EisInt& y);
bool operator!=(const EisInt& x, const EisInt& y);
EisInt operator+(const EisInt& x, const EisInt& y);
EisInt operator-(const EisInt& x, const EisInt& y);
EisInt operator-(const EisInt& x);
EisInt operator*(const EisInt& x, const EisInt& y);

EisInt conj(const EisInt& x);
mpz_class norm(const EisInt& x);
bool divides(const EisInt& d, const EisInt& x);
// exact quotient; throws Validation if d does not divide x
EisInt div_exact(const EisInt& x, const EisInt& d);
// x mod m with the remainder of smallest norm (nearest-quotient rounding)
EisInt mod(const EisInt& x, const EisInt& m);
Complex to_complex(const EisInt& x);

// a = 1 mod 3 and b = 0 mod 3
bool is_primary(const EisInt& x);

struct PrimaryAssociate {
  EisInt value;
  EisInt unit;  // value = unit * x
};
PrimaryAssociate primary_associate(const EisInt& x);
const std::vector<EisInt>& units();

struct CubeRoot {
  int exponent = 0;  // value w^exponent, exponent in {0,1,2}

  static CubeRoot of(long e) { return CubeRoot{static_cast<int>(((e % 3) + 3) % 3)}; }
  CubeRoot operator*(CubeRoot o) const { return of(exponent + o.exponent); }
  CubeRoot conj() const { return of(-exponent); }
  bool operator==(CubeRoot o) const { return exponent == o.exponent; }
  Complex value() const { return omega_pow(exponent); }
};

enum class SplitKind { Split, Inert, Ramified };
struct SplitResult {
  SplitKind kind;
  EisInt pi;  // primary prime of norm p when split
};
SplitResult split_prime(long p);

bool is_prime(long n);
std::vector<std::pair<long, int>> factor_integer(long n);
long radical(long n);
// exponent of the largest power of p dividing n (n != 0)
int valuation(long n, long p);

// primary prime factors of x with multiplicity; x coprime to 3
std::vector<EisInt> prime_factors(const EisInt& x);

// (alpha/beta)_3 for a primary prime beta
CubeRoot cubic_symbol_prime(const EisInt& alpha, const EisInt& beta);
// multiplicative extension over the given primary prime factors of beta
CubeRoot cubic_symbol(const EisInt& alpha, const std::vector<EisInt>& beta_factors);
CubeRoot cubic_symbol(const EisInt& alpha, const EisInt& beta);

// chi_D((k)) = conj((D/k)_3) for the primary generator k
CubeRoot chi_D(long D, const EisInt& k);
// chi_pi(r) = chi_{pi1}(r) * conj(chi_{pi2}(r)) for a rational r
CubeRoot chi_pi_rational(long r, const EisInt& pi1, const EisInt& pi2 = EisInt(1));

// G(chi_pi) = sum_{x mod p} chi_pi(x) e^{2 pi i x/p}; conjugate_character sums conj(chi_pi)
Complex gauss_sum(const EisInt& pi, bool conjugate_character = false);

}  // namespace ctlab
