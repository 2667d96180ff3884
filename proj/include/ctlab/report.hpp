#pragma once

// JSON rendering, cache records and the JSON-lines cache file.

#include <gmpxx.h>

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctlab/curve.hpp"
#include "ctlab/formulas.hpp"
#include "ctlab/verify.hpp"
#include "json.hpp"

namespace ctlab {

extern const char* const kToolVersion;

struct CacheRecord {
  long D = 0;
  mpq_class S_D;
  std::optional<mpz_class> T_D;  // coefficient; T = T_D * sqrt(-3) when T_imaginary
  bool T_imaginary = false;
  int sigmaD = 0;
  long c3D = 1;
  std::string verdict = "Unknown";
  std::optional<RationalPoint> point;
  std::optional<mpz_class> sha_prediction;
  long precision_bits = 256;
  std::string tool_version;
  std::string timestamp;
};

bool operator==(const CacheRecord& a, const CacheRecord& b);
// exact fields only (D, S_D, T_D, sigma, c3D, verdict)
bool same_values(const CacheRecord& a, const CacheRecord& b);

CacheRecord record_from_report(const SDReport& r);
nlohmann::json to_json(const CacheRecord& r);
CacheRecord record_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SDReport& r);
nlohmann::json to_json(const IdentityResult& r);
IdentityResult identity_from_json(const nlohmann::json& j);
nlohmann::json to_json(const std::vector<IdentityResult>& rs);
nlohmann::json point_json(const std::optional<RationalPoint>& p);
std::optional<RationalPoint> point_from_json(const nlohmann::json& j);

// enough decimal digits for a value of the given precision to parse back exactly
std::string real_string(const Real& x);

std::string format_T(const std::optional<mpz_class>& T, bool imaginary);
std::string utc_timestamp();

class Cache {
 public:
  // reads an existing file (the header line is checked) or starts an empty one
  explicit Cache(std::string path);
  // record for D computed at precision >= bits (the smallest such)
  std::optional<CacheRecord> lookup(long D, long bits) const;
  // appends one line and flushes
  void append(const CacheRecord& r);
  const std::string& path() const { return path_; }
  std::size_t size() const;

 private:
  std::string path_;
  std::map<std::pair<long, long>, CacheRecord> records_;
  mutable std::mutex mu_;
  bool header_written_ = false;
};

}  // namespace ctlab
