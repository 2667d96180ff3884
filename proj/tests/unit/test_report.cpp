#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ctlab/errors.hpp"
#include "ctlab/report.hpp"

using namespace ctlab;
namespace fs = std::filesystem;

namespace {

CacheRecord sample(long D) {
  CacheRecord r;
  r.D = D;
  r.S_D = mpq_class(4, 9);
  r.T_D = mpz_class(-6);
  r.T_imaginary = true;
  r.sigmaD = 2;
  r.c3D = 27;
  r.verdict = "NoRationalSolutions";
  r.sha_prediction = mpz_class(4);
  r.precision_bits = 256;
  r.tool_version = kToolVersion;
  r.timestamp = "2026-01-01T00:00:00Z";
  return r;
}

fs::path temp_file(const char* name) {
  fs::path p = fs::temp_directory_path() / name;
  fs::remove(p);
  return p;
}

}  // namespace

TEST_CASE("cache record round trip") {
  CacheRecord r = sample(91);
  r.point = RationalPoint{mpq_class(3), mpq_class(4)};
  CacheRecord back = record_from_json(nlohmann::json::parse(to_json(r).dump()));
  CHECK(back == r);
  CacheRecord none = sample(5);
  none.T_D.reset();
  CHECK(record_from_json(to_json(none)) == none);
}

TEST_CASE("identity result round trip") {
  PrecisionScope ps(256);
  IdentityResult r;
  r.identity_id = "theta_omega";
  r.parameters = {{"D", "7"}};
  r.lhs = Complex(pi(), Real(1L) / Real(3L));
  r.rhs = Complex(pi(), Real(1L) / Real(3L) + pow2(-200));
  r.residual = pow2(-200);
  r.tol = pow2(-112);
  r.pass = true;
  r.status = CheckStatus::Pass;
  r.bits = 256;
  IdentityResult b = identity_from_json(nlohmann::json::parse(to_json(r).dump()));
  CHECK(b.identity_id == r.identity_id);
  CHECK(b.parameters == r.parameters);
  CHECK(b.lhs.re == r.lhs.re);
  CHECK(b.lhs.im == r.lhs.im);
  CHECK(b.rhs.im == r.rhs.im);
  CHECK(b.residual == r.residual);
  CHECK(b.status == r.status);
  CHECK(to_json(b) == to_json(r));
}

TEST_CASE("cache file") {
  fs::path p = temp_file("ctlab_cache_test.jsonl");
  {
    Cache c(p.string());
    CHECK(c.size() == 0);
    c.append(sample(7));
    c.append(sample(13));
  }
  {
    std::ifstream in(p);
    std::string first;
    std::getline(in, first);
    CHECK(nlohmann::json::parse(first) == nlohmann::json{{"format", "ctlab-cache"}, {"v", 1}});
  }
  Cache c(p.string());
  CHECK(c.size() == 2);
  REQUIRE(c.lookup(13, 256).has_value());
  CHECK(*c.lookup(13, 256) == sample(13));
  CHECK(c.lookup(13, 128).has_value());
  CHECK_FALSE(c.lookup(13, 512).has_value());
  CHECK_FALSE(c.lookup(19, 256).has_value());
  fs::remove(p);
}

TEST_CASE("torn last line is dropped, a bad header is rejected") {
  fs::path p = temp_file("ctlab_cache_torn.jsonl");
  {
    Cache c(p.string());
    c.append(sample(7));
  }
  {
    std::ofstream out(p, std::ios::app);
    out << "{\"D\": 13, \"S_D";
  }
  CHECK(Cache(p.string()).size() == 1);
  {
    std::ofstream out(p);
    out << "{\"format\":\"other\"}\n";
  }
  CHECK_THROWS_AS(Cache(p.string()), Error);
  fs::remove(p);
}

TEST_CASE("T formatting") {
  CHECK(format_T(mpz_class(-6), true) == "-6*sqrt(-3)");
  CHECK(format_T(mpz_class(9), false) == "9");
  CHECK(format_T(mpz_class(0), true) == "0");
  CHECK(format_T(std::nullopt, false).empty());
}
