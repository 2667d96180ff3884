#pragma once

// The curve E_D : Y^2 = X^3 - 432 D^2 (isomorphic to x^3 + y^3 = D).

#include <gmpxx.h>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctlab/modular.hpp"
#include "ctlab/mp.hpp"

namespace ctlab {

using WeierstrassModel = std::array<mpz_class, 5>;  // a1 a2 a3 a4 a6

struct LocalData {
  long p = 0;
  std::string kodaira;
  int conductor_exponent = 0;
  int tamagawa = 1;
};

LocalData tate_local(const WeierstrassModel& model, long p);
WeierstrassModel twist_model(long D);
LocalData local_data(long D, long p);

struct CurveData {
  long D = 1;
  long conductor = 1;
  Real period;
  std::map<long, int> tamagawa;
  long c3D = 1;
};

std::map<long, int> tamagawa_numbers(long D);
long conductor(long D);
long tamagawa_product(long D);
Real real_period(long D, const PrecisionContext& ctx);
CurveData curve_data(long D, const PrecisionContext& ctx);

long hecke_ap(long p, long D);
long hecke_an(long n, long D);
std::vector<long> an_table(long D, long Nmax);
// p + 1 - #E(F_p) by counting solutions of Y^2 = X^3 - 432 D^2
long ap_point_count(long D, long p);

struct LValueEstimate {
  Real value;
  int root_number = 1;
  long terms_used = 0;
  Real stability_residual;
  long conductor = 1;
};
LValueEstimate l_value_oracle(long D, const PrecisionContext& ctx);

struct RationalPoint {
  mpq_class x;
  mpq_class y;
};
// first (u/w, v/w) with u^3 + v^3 = D w^3 and max(|u|, |v|, w) <= height_bound,
// by w ascending, then u = 1, 2, ..., then u = 0, -1, ...
std::optional<RationalPoint> point_search(long D, long height_bound);
bool on_curve(const RationalPoint& P, long D);

}  // namespace ctlab
