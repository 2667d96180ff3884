#pragma once

// Primitive ideals [a, (-b+sqrt(-3))/2] of Z[w], CM points and ring class
// group representatives for the order of conductor 3D.

#include <cstdint>
#include <utility>
#include <vector>

#include "ctlab/eisenstein.hpp"
#include "ctlab/mp.hpp"

namespace ctlab {

struct CMPoint {
  long a = 1;
  long b = 1;
  // (-b + sqrt(-3)) / (2a)
  Complex tau() const;
};

struct PrimitiveIdeal {
  long a = 1;      // norm
  long b = 1;      // odd, 0 < b <= 2a, b^2 = -3 mod 4a
  EisInt generator = EisInt(1);  // primary

  CMPoint cm_point() const { return CMPoint{a, b}; }
};

// label of the class of (k) in Cl(O_M): k^2 / N(k) reduced mod M
using ClassLabel = std::pair<long, long>;
ClassLabel class_label(const EisInt& k, long M);
// k1 ~ k2 iff k1 conj(k2) N(k2)^{-1} is a rational residue mod M
bool classes_equivalent(const EisInt& k1, const EisInt& k2, long M);

struct ClassGroupReps {
  long D = 1;
  long modulus = 3;
  std::vector<PrimitiveIdeal> reps;
  std::vector<ClassLabel> labels;
};

enum class RepStrategy {
  Ascending,  // smallest primes first, prefer the split_prime generator
  Alternate,  // skip the first primes, prefer the conjugate generator
};

struct EnumerationOptions {
  RepStrategy strategy = RepStrategy::Ascending;
  long prime_bound = 100000000;
  // nonzero: split primes are skipped and conjugated at random
  std::uint64_t seed = 0;
};

// smallest positive b with b^2 = -3 mod M (and 3 | b when require_div3)
long sqrt_minus3_mod(long M, bool require_div3);
long class_group_order(long D);
// the lattice parameter b of the ideal generated by a primary k
long ideal_b(const EisInt& k);
PrimitiveIdeal ideal_from_generator(const EisInt& k);

ClassGroupReps enumerate_class_reps(long D, const EnumerationOptions& opt = {});

struct Theorem2Rep {
  long s = 1;  // residue class of the norm mod D0
  PrimitiveIdeal ideal;
  long b_lattice = 1;  // b' = b mod 12 D^2 with b'^2 = -3 mod 4a
  mpz_class n;         // generator = n a + m (-b'+sqrt(-3))/2
  mpz_class m;
};
struct Theorem2Reps {
  long D = 1;
  long D0 = 1;
  long b = 1;
  std::vector<Theorem2Rep> reps;
};
Theorem2Reps reps_for_theorem2(long D, long b, const EnumerationOptions& opt = {});

struct PiPair {
  EisInt pi1 = EisInt(1);
  EisInt pi2 = EisInt(1);
};
// D = D1 D2^2; D1, D2 squarefree coprime
std::pair<long, long> split_square_part(long D);
PiPair pi_dividing_tau(long D, long b);

// (n, m) with k = n a + m (-b+sqrt(-3))/2; throws if k is not in the lattice
std::pair<mpz_class, mpz_class> lattice_coordinates(const EisInt& k, long a, long b);

}  // namespace ctlab
