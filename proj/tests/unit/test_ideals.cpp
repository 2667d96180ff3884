#include "doctest.h"

#include <set>

#include "ctlab/ideals.hpp"

using namespace ctlab;

namespace {

// h(O_{3D}) = D prod_{p | D} (1 - (-3/p)/p)
long class_number_formula(long D) {
  mpq_class h = D;
  for (auto& [p, e] : factor_integer(D)) {
    int chi = p % 3 == 1 ? 1 : -1;
    h *= mpq_class(p - chi, p);
  }
  return h.get_num().get_si();
}

}  // namespace

TEST_CASE("sqrt of -3") {
  for (long M : {4L * 7, 12L * 49, 12L * 13 * 13, 12L * 91 * 91}) {
    long b = sqrt_minus3_mod(M, false);
    CHECK(((__int128)b * b + 3) % M == 0);
  }
  long b = sqrt_minus3_mod(12 * 49, true);
  CHECK(b % 3 == 0);
}

TEST_CASE("class group order") {
  CHECK(class_group_order(1) == 1);
  for (long D : {5L, 7L, 11L, 13L, 19L, 49L, 91L, 175L})
    CHECK(class_group_order(D) == class_number_formula(D));
}

TEST_CASE("enumerated representatives are pairwise inequivalent") {
  for (RepStrategy s : {RepStrategy::Ascending, RepStrategy::Alternate})
    for (long D : {5L, 7L, 13L, 35L, 91L}) {
      EnumerationOptions o;
      o.strategy = s;
      auto reps = enumerate_class_reps(D, o);
      REQUIRE(static_cast<long>(reps.reps.size()) == class_group_order(D));
      for (size_t i = 0; i < reps.reps.size(); ++i) {
        const auto& I = reps.reps[i];
        CHECK(norm(I.generator) == I.a);
        CHECK(((__int128)I.b * I.b + 3) % (4 * I.a) == 0);
        for (size_t j = 0; j < i; ++j)
          CHECK_FALSE(classes_equivalent(I.generator, reps.reps[j].generator, 3 * D));
      }
    }
}

TEST_CASE("seeded enumeration still covers every class") {
  for (std::uint64_t seed : {1ULL, 99ULL}) {
    EnumerationOptions o;
    o.seed = seed;
    auto reps = enumerate_class_reps(91, o);
    std::set<ClassLabel> labels(reps.labels.begin(), reps.labels.end());
    CHECK(static_cast<long>(labels.size()) == class_group_order(91));
  }
}

TEST_CASE("generator lies in its lattice") {
  auto reps = enumerate_class_reps(13);
  for (auto& I : reps.reps) {
    auto [n, m] = lattice_coordinates(I.generator, I.a, I.b);
    // n a + m (-b + sqrt(-3))/2 = (n a - m (b+1)/2) + m w
    CHECK(I.generator.b == m);
  }
}

TEST_CASE("square part") {
  CHECK(split_square_part(7 * 13 * 13) == std::pair<long, long>{7, 13});
  CHECK_THROWS(split_square_part(8));
}
