// One PASS/FAIL line per acceptance criterion. Usage: acceptance [--criterion N]...

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ctlab/curve.hpp"
#include "ctlab/errors.hpp"
#include "ctlab/formulas.hpp"
#include "ctlab/modular.hpp"
#include "ctlab/parallel.hpp"
#include "ctlab/verify.hpp"

using namespace ctlab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

PrecisionContext ctx256() {
  PrecisionContext c;
  c.bits = 256;
  c.tol_exp = 128;
  return c;
}

bool admissible(long D) { return D % 2 != 0 && D % 3 != 0 && is_cube_free(D); }

std::vector<long> sweep(long lo, long hi) {
  std::vector<long> out;
  for (long D = lo; D <= hi; ++D)
    if (admissible(D)) out.push_back(D);
  return out;
}

std::vector<long> split_products(long hi) {
  std::vector<long> out;
  for (long D = 2; D <= hi; ++D)
    if (admissible(D) && is_split_product(D)) out.push_back(D);
  return out;
}

std::vector<SDReport> compute_all(const std::vector<long>& Ds, const SDOptions& opt = {}) {
  std::vector<SDReport> out(Ds.size());
  PrecisionContext ctx = ctx256();
  parallel_for(Ds.size(), [&](std::size_t i) { out[i] = compute_S_D(Ds[i], ctx, opt); });
  return out;
}

std::string sci(const Real& x) { return x.to_string(3); }

Outcome c1() {
  PrecisionScope ps(256);
  PrecisionContext ctx = ctx256();
  Real P = pi(), g3 = pow(gamma(Real(1L) / Real(3L)), Real(3L));
  Real s3 = sqrt(Real(3L));
  Complex w(Real(-1L) / 2L, s3 / 2L);
  Complex z1(Real(-1L) / 2L, s3 / 18L);  // (-9 + sqrt(-3))/18
  Complex z2(Real(-1L) / 2L, s3 / 6L);   // (-3 + sqrt(-3))/6
  Real e1 = abs(theta_K(w, ctx) - Complex(g3 / (P * P * 2L)));
  Real e2 = abs(theta_K(z1, ctx) - Complex(-(g3 * 6L) / (P * P * 4L)));
  Real e3 = abs(theta_K(z2, ctx));
  Real tol = Real::parse("1e-30");
  Real worst = max(e1, max(e2, e3));
  return {worst < tol, "max |err| " + sci(worst)};
}

Outcome c2() {
  const long N = 10000;
  auto r = ideal_count_coefficients(N);
  auto L = lattice_count(N);
  long bad = 0;
  for (long n = 1; n <= N; ++n)
    if (6 * r[n] != L[n]) ++bad;
  return {bad == 0, std::to_string(bad) + " mismatches for N <= 10000"};
}

Outcome c3_c4(bool oracle) {
  std::vector<long> Ds = sweep(3, 200);
  std::vector<SDReport> reps(Ds.size());
  std::vector<Real> Lerr(Ds.size());
  PrecisionContext ctx = ctx256();
  SDOptions opt;
  opt.corroborate = false;
  opt.with_T = false;
  parallel_for(Ds.size(), [&](std::size_t i) {
    reps[i] = compute_S_D(Ds[i], ctx, opt);
    if (oracle) {
      PrecisionScope ps(256);
      LValueEstimate L = l_value_oracle(Ds[i], ctx);
      Real pred = Real(mpq_class(reps[i].S_D * reps[i].c3D)) * real_period(Ds[i], ctx);
      Lerr[i] = abs(L.value - pred);
    }
  });
  PrecisionScope ps(256);
  long bad = 0, worstD = 0;
  Real worst(0L);
  Real tol = Real::parse(oracle ? "1e-8" : "1e-20");
  for (std::size_t i = 0; i < Ds.size(); ++i) {
    const SDReport& r = reps[i];
    Real err;
    if (oracle) {
      err = Lerr[i];
    } else {
      Complex x = r.S_numeric * Real(3L * r.c3D);
      Real near = Real(x.re.round_to_integer());
      err = abs(x - Complex(near));
      mpq_class t = r.S_D * 3 * r.c3D;
      if (t.get_den() != 1) ++bad;
    }
    if (!(err < tol)) ++bad;
    if (err > worst) {
      worst = err;
      worstD = r.D;
    }
  }
  std::ostringstream os;
  os << Ds.size() << " values of D, " << bad << " failures, worst " << sci(worst) << " at D=" << worstD;
  return {bad == 0, os.str()};
}

Outcome c5() {
  struct W {
    long D;
    mpq_class x, y;
  };
  std::vector<W> ws = {{7, 2, -1}, {13, mpq_class(7, 3), mpq_class(2, 3)}, {19, 3, -2}, {37, 4, -3}, {91, 3, 4}};
  std::vector<long> Ds;
  for (auto& w : ws) Ds.push_back(w.D);
  SDOptions opt;
  opt.height_bound = 100;
  auto reps = compute_all(Ds, opt);
  PrecisionScope ps(256);
  bool ok = true;
  std::ostringstream os;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    const auto& r = reps[i];
    const auto& w = ws[i];
    bool zero = r.S_D == 0 && abs(r.S_numeric) < Real::parse("1e-20");
    bool listed = on_curve(RationalPoint{w.x, w.y}, w.D);
    bool found = r.point && on_curve(*r.point, w.D);
    // the search may return the point with x and y exchanged
    bool same = found && ((r.point->x == w.x && r.point->y == w.y) || (r.point->x == w.y && r.point->y == w.x));
    ok = ok && zero && listed && found && same;
    os << "D=" << w.D << (zero && listed && found && same ? " ok " : " BAD ");
  }
  return {ok, os.str()};
}

Outcome c6() {
  std::vector<long> Ds;
  for (long p = 5; p <= 100; ++p)
    if (is_prime(p) && (p % 9 == 2 || p % 9 == 5)) Ds.push_back(p);
  auto reps = compute_all(Ds);
  bool ok = true;
  std::ostringstream os;
  for (auto& r : reps) {
    bool good = r.S_D != 0 && r.verdict == Verdict::NoRationalSolutions;
    ok = ok && good;
    os << r.D << ":" << r.S_D.get_str() << (good ? " " : "(BAD) ");
  }
  return {ok, os.str()};
}

Outcome c7() {
  std::vector<long> Ds = split_products(500);
  SDOptions opt;
  opt.corroborate = false;
  auto reps = compute_all(Ds, opt);
  long bad = 0;
  std::string first;
  for (auto& r : reps) {
    bool good = r.T.has_value();
    if (good) {
      mpq_class lhs = r.S_D;
      for (int i = 0; i < 2 + r.sigmaD; ++i) lhs *= -3;
      mpz_class T2 = r.T->T_exact * r.T->T_exact;
      if (r.T->imaginary) T2 *= -3;
      good = lhs == mpq_class(T2);
      if (r.sigmaD % 2 == 0)
        good = good && (r.T->T_exact == 0 || (!r.T->imaginary && r.T->T_exact % 3 == 0));
      else
        good = good && (r.T->T_exact == 0 || r.T->imaginary);
      if (r.D % 9 != 1) good = good && r.S_D == 0;
    }
    if (!good) {
      ++bad;
      if (first.empty()) first = " first failure D=" + std::to_string(r.D);
    }
  }
  return {bad == 0, std::to_string(Ds.size()) + " split D <= 500, " + std::to_string(bad) + " failures" + first};
}

Outcome c8() {
  long n = 0, bad = 0;
  for (long D : split_products(500)) {
    if (D % 9 != 1) continue;
    ++n;
    long want = 3;
    for (int i = 0; i < sigma(D); ++i) want *= 3;
    if (tamagawa_product(D) != want) ++bad;
  }
  return {bad == 0 && n > 0, std::to_string(n) + " values of D = 1 mod 9, " + std::to_string(bad) + " failures"};
}

Outcome c9() {
  VerifyOptions o;
  o.bits = 256;
  o.tol_exp = 128;
  o.factorization_samples = 100;
  std::vector<IdentityResult> all;
  for (const char* s : {"siegel-weil", "factorization", "galois"}) {
    auto v = run_suite(s, o);
    all.insert(all.end(), v.begin(), v.end());
  }
  o.Ds = {7, 13, 19};
  auto app = run_suite("appendix", o);
  all.insert(all.end(), app.begin(), app.end());
  // a prime D where R does not vanish exercises the R-series relations
  o.Ds = {73};
  auto r73 = run_suite("appendix", o);
  all.insert(all.end(), r73.begin(), r73.end());

  PrecisionScope ps(256);
  Real cap = pow2(-112);
  std::map<std::string, int> passes;
  long fails = 0;
  std::string first;
  for (auto& r : all) {
    if (r.status == CheckStatus::Skipped) continue;
    bool good = r.status == CheckStatus::Pass && r.residual < cap;
    if (good)
      ++passes[r.identity_id];
    else if (++fails == 1)
      first = " first failure " + r.identity_id;
  }
  std::vector<std::string> need = {"factorization",         "appendix.transformation_r", "appendix.fourier",
                                   "appendix.theta3z",      "appendix.functional_eq",    "appendix.theta_03",
                                   "appendix.eta_ratio",    "r_series.half_vanishes",    "r_series.root_of_unity",
                                   "r_series.unwinding",    "gauss.cube_law"};
  std::string missing;
  for (auto& id : need)
    if (passes[id] == 0) missing += " " + id;
  std::set<std::string> gauss_p;
  for (auto& r : all)
    if (r.identity_id == "gauss.cube_law" && r.status == CheckStatus::Pass) gauss_p.insert(r.parameters.at("p"));
  for (const char* p : {"7", "13", "19", "31", "37"})
    if (!gauss_p.count(p)) missing += std::string(" gauss p=") + p;
  if (passes["factorization"] < 100) missing += " factorization<100";
  std::ostringstream os;
  os << all.size() << " results, " << fails << " failures" << first;
  if (!missing.empty()) os << ", missing:" << missing;
  return {fails == 0 && missing.empty(), os.str()};
}

Outcome c10() {
  std::vector<long> Ds = sweep(2, 100);
  std::vector<SDOptions> variants(4);
  variants[1].enumeration.strategy = RepStrategy::Alternate;
  variants[2].enumeration.seed = 1;
  variants[3].enumeration.seed = 0x9e3779b97f4a7c15ULL;
  for (auto& v : variants) v.corroborate = false;
  std::vector<std::vector<SDReport>> res;
  for (auto& v : variants) res.push_back(compute_all(Ds, v));
  // the enumerations must really differ somewhere
  long differing = 0;
  for (long D : Ds) {
    auto a = enumerate_class_reps(D);
    EnumerationOptions o;
    o.seed = 1;
    auto b = enumerate_class_reps(D, o);
    bool same = a.reps.size() == b.reps.size();
    for (std::size_t i = 0; same && i < a.reps.size(); ++i) same = a.reps[i].generator == b.reps[i].generator;
    if (!same) ++differing;
  }
  long bad = 0;
  for (std::size_t i = 0; i < Ds.size(); ++i)
    for (std::size_t v = 1; v < variants.size(); ++v) {
      const auto& x = res[0][i];
      const auto& y = res[v][i];
      bool same = x.S_D == y.S_D && x.T.has_value() == y.T.has_value();
      if (same && x.T) same = x.T->T_exact == y.T->T_exact && x.T->imaginary == y.T->imaginary;
      if (!same) ++bad;
    }
  std::ostringstream os;
  os << Ds.size() << " values of D x 4 enumerations, " << bad << " mismatches, " << differing
     << " D with distinct representative sets";
  return {bad == 0 && differing > 0, os.str()};
}

Outcome c11() {
  long n = 0, bad = 0;
  for (long D : {1L, 5L, 7L, 11L, 13L})
    for (long p = 2; p <= 200; ++p) {
      if (!is_prime(p) || (3 * D) % p == 0) continue;
      ++n;
      if (hecke_ap(p, D) != ap_point_count(D, p)) ++bad;
    }
  return {bad == 0, std::to_string(n) + " pairs (D, p), " + std::to_string(bad) + " mismatches"};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> cs = {
      {1, "Theta_K special values to 1e-30", 5, c1},
      {2, "6 r(N) equals the lattice count, N <= 1e4", 30, c2},
      {3, "3 c S_D integral, 2 < D <= 200", 900, [] { return c3_c4(false); }},
      {4, "L-value oracle equals S_D c Omega, 2 < D <= 200", 900, [] { return c3_c4(true); }},
      {5, "S_D = 0 with exact witnesses", 0, c5},
      {6, "primes = 2, 5 mod 9 have S_D != 0", 0, c6},
      {7, "S_D (-3)^{2+sigma} = T_D^2 for split D <= 500", 0, c7},
      {8, "Tate c_3D = 3^{1+sigma} for split D = 1 mod 9", 0, c8},
      {9, "identity suites below 2^-112", 600, c9},
      {10, "enumeration and seed invariance, D <= 100", 0, c10},
      {11, "a_p matches point counts, p <= 200", 0, c11},
  };
  std::set<int> want;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) want.insert(std::atoi(argv[++i]));
  }
  bool all_ok = true;
  for (auto& c : cs) {
    if (!want.empty() && !want.count(c.id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = c.budget_s <= 0 || secs < c.budget_s;
    bool ok = o.pass && in_time;
    all_ok = all_ok && ok;
    std::ostringstream t;
    t.setf(std::ios::fixed);
    t.precision(2);
    t << secs << " s";
    if (!in_time) t << " over budget " << c.budget_s << " s";
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " | " << o.detail << " | "
              << t.str() << std::endl;
  }
  return all_ok ? 0 : 1;
}
