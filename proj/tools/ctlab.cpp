// ctlab command-line tool: compute, table, verify, search.

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ctlab/curve.hpp"
#include "ctlab/errors.hpp"
#include "ctlab/formulas.hpp"
#include "ctlab/parallel.hpp"
#include "ctlab/report.hpp"
#include "ctlab/verify.hpp"

using namespace ctlab;
using nlohmann::json;

namespace {

std::atomic<bool> g_interrupted{false};

void on_sigint(int) { g_interrupted = true; }

struct Global {
  long prec = 256;
  bool json_out = false;
  std::string cache_path;
  bool no_cache = false;
  std::uint64_t seed = 0;
  long height = 10000;
  long tol_exp = 128;
};

std::string default_cache_path() {
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::string(x) + "/ctlab/cache.jsonl";
  if (const char* h = std::getenv("HOME"); h && *h) return std::string(h) + "/.cache/ctlab/cache.jsonl";
  return "ctlab-cache.jsonl";
}

std::unique_ptr<Cache> open_cache(const Global& g) {
  if (g.no_cache) return nullptr;
  return std::make_unique<Cache>(g.cache_path.empty() ? default_cache_path() : g.cache_path);
}

PrecisionContext context(const Global& g) {
  PrecisionContext c;
  c.bits = g.prec;
  c.tol_exp = g.tol_exp;
  // the recognition tolerance cannot be finer than the working precision allows
  if (c.tol_exp >= g.prec) c.tol_exp = g.prec / 2;
  return c;
}

void validate_admissible(long D) {
  if (D < 2) throw Error(ErrorKind::Validation, "D must be at least 2");
  if (D % 2 == 0 || D % 3 == 0) throw Error(ErrorKind::Validation, "D must be coprime to 6");
  if (!is_cube_free(D)) throw Error(ErrorKind::Validation, "D must be cube-free");
}

bool admissible(long D) { return D >= 2 && D % 2 != 0 && D % 3 != 0 && is_cube_free(D); }

SDOptions sd_options(const Global& g) {
  SDOptions o;
  o.height_bound = g.height;
  o.enumeration.seed = g.seed;
  return o;
}

std::string point_text(const std::optional<RationalPoint>& p) {
  if (!p) return "";
  return "(" + p->x.get_str() + "," + p->y.get_str() + ")";
}

json table_row_json(const CacheRecord& r) {
  json j = to_json(r);
  j.erase("timestamp");
  j.erase("tool_version");
  j["S_D"] = r.S_D.get_str();
  j["T_D_value"] = r.T_D ? json(format_T(r.T_D, r.T_imaginary)) : json(nullptr);
  return j;
}

int cmd_compute(const Global& g, long D) {
  validate_admissible(D);
  auto cache = open_cache(g);
  if (cache) {
    if (auto rec = cache->lookup(D, g.prec)) {
      if (g.json_out) {
        json j = to_json(*rec);
        j["S_D"] = rec->S_D.get_str();
        j["T_D_value"] = rec->T_D ? json(format_T(rec->T_D, rec->T_imaginary)) : json(nullptr);
        j["cached"] = true;
        std::cout << j.dump(2) << '\n';
      } else {
        std::cout << "D: " << rec->D << '\n'
                  << "S_D: " << rec->S_D.get_str() << '\n'
                  << "T_D: " << (rec->T_D ? format_T(rec->T_D, rec->T_imaginary) : "n/a") << '\n'
                  << "sigma(D): " << rec->sigmaD << '\n'
                  << "c_3D: " << rec->c3D << '\n'
                  << "sha_prediction: " << (rec->sha_prediction ? rec->sha_prediction->get_str() : "n/a") << '\n'
                  << "verdict: " << rec->verdict << '\n'
                  << "point: " << (rec->point ? point_text(rec->point) : "none") << '\n'
                  << "precision_bits: " << rec->precision_bits << " (cached)\n";
      }
      return 0;
    }
  }
  SDReport r = compute_S_D(D, context(g), sd_options(g));
  if (cache) cache->append(record_from_report(r));
  if (g.json_out) {
    std::cout << to_json(r).dump(2) << '\n';
    return 0;
  }
  std::cout << "D: " << r.D << '\n'
            << "S_D: " << r.S_D.get_str() << '\n'
            << "S_D numeric: " << to_string(r.S_numeric, 30) << '\n'
            << "T_D: " << (r.T ? format_T(r.T->T_exact, r.T->imaginary) : "n/a") << '\n'
            << "sigma(D): " << r.sigmaD << '\n'
            << "c_3D: " << r.c3D << '\n'
            << "sha_prediction: " << (r.sha_prediction ? r.sha_prediction->get_str() + " (conditional)" : "n/a")
            << '\n'
            << "verdict: " << verdict_name(r.verdict) << '\n'
            << "point: " << (r.point ? point_text(r.point) : "none") << '\n'
            << "recognition_residual: " << r.recognition_residual.to_string(6) << '\n'
            << "precision_bits: " << r.bits_used << '\n';
  if (r.oracle_L) std::cout << "L(E_D,1) oracle: " << r.oracle_L->to_string(20) << '\n';
  if (!r.note.empty()) std::cerr << "note: " << r.note << '\n';
  return 0;
}

int cmd_table(const Global& g, long lo, long hi) {
  if (lo > hi) throw Error(ErrorKind::Validation, "Dmin must not exceed Dmax");
  std::vector<long> Ds;
  for (long D = std::max(lo, 2L); D <= hi; ++D)
    if (admissible(D)) Ds.push_back(D);
  auto cache = open_cache(g);
  std::vector<std::optional<CacheRecord>> rows(Ds.size());
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < Ds.size(); ++i) {
    if (cache) rows[i] = cache->lookup(Ds[i], g.prec);
    if (!rows[i]) todo.push_back(i);
  }
  if (cache && todo.size() < Ds.size())
    std::cerr << (Ds.size() - todo.size()) << " of " << Ds.size() << " rows served from " << cache->path() << '\n';
  std::signal(SIGINT, on_sigint);
  PrecisionContext ctx = context(g);
  SDOptions opt = sd_options(g);
  std::size_t chunk = std::max<std::size_t>(1, worker_count(todo.size()));
  int status = 0;
  std::size_t done = 0;
  for (std::size_t start = 0; start < todo.size() && !g_interrupted; start += chunk) {
    std::size_t n = std::min(chunk, todo.size() - start);
    std::vector<std::optional<CacheRecord>> got(n);
    std::vector<std::string> errs(n);
    std::vector<int> codes(n, 0);
    parallel_for(n, [&](std::size_t k) {
      long D = Ds[todo[start + k]];
      try {
        got[k] = record_from_report(compute_S_D(D, ctx, opt));
      } catch (const Error& e) {
        errs[k] = "D=" + std::to_string(D) + ": " + e.what();
        codes[k] = exit_code_for(e.kind());
      }
    });
    // single writer, ascending D
    for (std::size_t k = 0; k < n; ++k) {
      if (got[k]) {
        if (cache) cache->append(*got[k]);
        rows[todo[start + k]] = got[k];
      } else {
        std::cerr << errs[k] << '\n';
        if (status == 0) status = codes[k];
      }
    }
    done += n;
  }
  if (g_interrupted) {
    std::cerr << "interrupted after " << done << " of " << todo.size() << " new rows\n";
    if (status == 0) status = 130;
  }
  if (g.json_out) {
    json a = json::array();
    for (auto& r : rows)
      if (r) a.push_back(table_row_json(*r));
    std::cout << a.dump(2) << '\n';
  } else {
    std::cout << "D,S_D,T_D,sigmaD,c3D,verdict,point\n";
    for (auto& r : rows) {
      if (!r) continue;
      std::cout << r->D << ',' << r->S_D.get_str() << ',' << format_T(r->T_D, r->T_imaginary) << ',' << r->sigmaD
                << ',' << r->c3D << ',' << r->verdict << ',' << point_text(r->point) << '\n';
    }
  }
  return status;
}

int cmd_verify(const Global& g, const std::string& suite, long nmax, const std::vector<long>& Ds, int samples) {
  VerifyOptions o;
  o.bits = g.prec;
  o.tol_exp = g.tol_exp;
  if (o.tol_exp >= g.prec) o.tol_exp = 0;
  if (g.seed != 0) o.seed = g.seed;
  o.nmax = nmax;
  o.Ds = Ds;
  o.factorization_samples = samples;
  auto results = run_suite(suite, o);
  if (g.json_out) {
    std::cout << to_json(results).dump(2) << '\n';
  } else {
    std::size_t np = 0, nf = 0, ns = 0;
    for (const auto& r : results) {
      std::string params;
      for (const auto& [k, v] : r.parameters) params += (params.empty() ? "" : " ") + k + "=" + v;
      std::cout << status_name(r.status) << '\t' << r.identity_id << '\t' << params << '\t'
                << r.residual.to_string(4);
      if (r.rerun_bits > 0) std::cout << "\trerun@" << r.rerun_bits << "=" << (r.rerun_pass ? "pass" : "fail");
      if (!r.note.empty()) std::cout << '\t' << r.note;
      std::cout << '\n';
      if (r.status == CheckStatus::Pass)
        ++np;
      else if (r.status == CheckStatus::Fail)
        ++nf;
      else
        ++ns;
    }
    std::cerr << np << " passed, " << nf << " failed, " << ns << " skipped\n";
  }
  return all_passed(results) ? 0 : 1;
}

int cmd_search(const Global& g, long D) {
  if (D < 1) throw Error(ErrorKind::Validation, "D must be positive");
  if (g.height < 1) throw Error(ErrorKind::Validation, "height must be positive");
  auto p = point_search(D, g.height);
  if (g.json_out) {
    std::cout << json{{"D", D}, {"height", g.height}, {"point", point_json(p)}}.dump(2) << '\n';
  } else if (p) {
    std::cout << p->x.get_str() << ' ' << p->y.get_str() << '\n';
  } else {
    std::cout << "none ≤ " << g.height << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cube sums x^3 + y^3 = D: theta-trace invariants S_D, T_D and identity checks"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--prec", g.prec, "working precision in bits")->capture_default_str()->check(CLI::Range(64L, 1L << 20));
  app.add_flag("--json", g.json_out, "JSON output on stdout");
  app.add_option("--cache", g.cache_path, "cache file (JSON lines)");
  app.add_flag("--no-cache", g.no_cache, "neither read nor write the cache");
  app.add_option("--seed", g.seed, "seed for randomized enumeration and samples");
  app.add_option("--height", g.height, "point search height bound")->capture_default_str();
  app.add_option("--tol-exp", g.tol_exp, "recognition tolerance 2^-k")->capture_default_str()->check(
      CLI::PositiveNumber);

  long compute_D = 0;
  auto* compute = app.add_subcommand("compute", "S_D, T_D, verdict and corroboration for one D");
  compute->add_option("D", compute_D)->required();
  compute->fallthrough();

  long lo = 0, hi = 0;
  auto* table = app.add_subcommand("table", "one row per admissible D in a range");
  table->add_option("Dmin", lo)->required();
  table->add_option("Dmax", hi)->required();
  table->fallthrough();

  std::string suite = "all";
  long nmax = 1000;
  std::vector<long> vDs;
  int samples = 100;
  auto* verify = app.add_subcommand("verify", "numerical identity suites");
  verify->add_option("--suite", suite, "all, appendix, siegel-weil, galois, factorization")->capture_default_str();
  verify->add_option("--nmax", nmax, "coefficient bound for siegel-weil")->capture_default_str();
  verify->add_option("--d", vDs, "D values for the per-D suites");
  verify->add_option("--samples", samples, "factorization samples")->capture_default_str();
  verify->fallthrough();

  long search_D = 0;
  auto* search = app.add_subcommand("search", "search for a rational point of bounded height");
  search->add_option("D", search_D)->required();
  search->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*compute) return cmd_compute(g, compute_D);
    if (*table) return cmd_table(g, lo, hi);
    if (*verify) return cmd_verify(g, suite, nmax, vDs, samples);
    if (*search) return cmd_search(g, search_D);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 2;
}
