#include "ctlab/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "ctlab/errors.hpp"

namespace ctlab {

using nlohmann::json;

const char* const kToolVersion = "ctlab 0.1.0";

namespace {

const char* kFormat = "ctlab-cache";
constexpr int kFormatVersion = 1;

json complex_json(const Complex& z) { return json{{"re", real_string(z.re)}, {"im", real_string(z.im)}}; }

Complex complex_from(const json& j) { return Complex(Real::parse(j.at("re")), Real::parse(j.at("im"))); }

std::optional<mpz_class> opt_int(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return mpz_class(j.at(key).get<std::string>());
}

mpq_class rational_from(const std::string& num, const std::string& den) {
  mpq_class q{mpz_class(num), mpz_class(den)};
  q.canonicalize();
  return q;
}

}  // namespace

std::string real_string(const Real& x) {
  int digits = static_cast<int>(std::ceil(static_cast<double>(x.prec()) * 0.30103)) + 3;
  return x.to_string(digits);
}

bool operator==(const CacheRecord& a, const CacheRecord& b) {
  auto pt_eq = [](const std::optional<RationalPoint>& p, const std::optional<RationalPoint>& q) {
    if (p.has_value() != q.has_value()) return false;
    return !p || (p->x == q->x && p->y == q->y);
  };
  return same_values(a, b) && pt_eq(a.point, b.point) && a.sha_prediction == b.sha_prediction &&
         a.precision_bits == b.precision_bits && a.tool_version == b.tool_version && a.timestamp == b.timestamp;
}

bool same_values(const CacheRecord& a, const CacheRecord& b) {
  return a.D == b.D && a.S_D == b.S_D && a.T_D == b.T_D && a.T_imaginary == b.T_imaginary &&
         a.sigmaD == b.sigmaD && a.c3D == b.c3D && a.verdict == b.verdict;
}

std::string format_T(const std::optional<mpz_class>& T, bool imaginary) {
  if (!T) return "";
  if (!imaginary || *T == 0) return T->get_str();
  return T->get_str() + "*sqrt(-3)";
}

std::string utc_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json point_json(const std::optional<RationalPoint>& p) {
  if (!p) return nullptr;
  return json{{"x", p->x.get_str()}, {"y", p->y.get_str()}};
}

std::optional<RationalPoint> point_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  RationalPoint p{mpq_class(j.at("x").get<std::string>()), mpq_class(j.at("y").get<std::string>())};
  p.x.canonicalize();
  p.y.canonicalize();
  return p;
}

CacheRecord record_from_report(const SDReport& r) {
  CacheRecord c;
  c.D = r.D;
  c.S_D = r.S_D;
  if (r.T) {
    c.T_D = r.T->T_exact;
    c.T_imaginary = r.T->imaginary;
  }
  c.sigmaD = r.sigmaD;
  c.c3D = r.c3D;
  c.verdict = verdict_name(r.verdict);
  c.point = r.point;
  c.sha_prediction = r.sha_prediction;
  c.precision_bits = r.bits_used;
  c.tool_version = kToolVersion;
  c.timestamp = utc_timestamp();
  return c;
}

json to_json(const CacheRecord& r) {
  json j;
  j["D"] = r.D;
  j["S_D_num"] = r.S_D.get_num().get_str();
  j["S_D_den"] = r.S_D.get_den().get_str();
  j["T_D"] = r.T_D ? json(r.T_D->get_str()) : json(nullptr);
  j["T_D_imaginary"] = r.T_imaginary;
  j["sigmaD"] = r.sigmaD;
  j["c3D"] = r.c3D;
  j["verdict"] = r.verdict;
  j["point"] = point_json(r.point);
  j["sha_prediction"] = r.sha_prediction ? json(r.sha_prediction->get_str()) : json(nullptr);
  j["precision_bits"] = r.precision_bits;
  j["tool_version"] = r.tool_version;
  j["timestamp"] = r.timestamp;
  return j;
}

CacheRecord record_from_json(const json& j) {
  CacheRecord r;
  r.D = j.at("D").get<long>();
  r.S_D = rational_from(j.at("S_D_num").get<std::string>(), j.at("S_D_den").get<std::string>());
  r.T_D = opt_int(j, "T_D");
  r.T_imaginary = j.value("T_D_imaginary", false);
  r.sigmaD = j.at("sigmaD").get<int>();
  r.c3D = j.at("c3D").get<long>();
  r.verdict = j.at("verdict").get<std::string>();
  parse_verdict(r.verdict);
  r.point = point_from_json(j.value("point", json(nullptr)));
  r.sha_prediction = opt_int(j, "sha_prediction");
  r.precision_bits = j.at("precision_bits").get<long>();
  r.tool_version = j.value("tool_version", "");
  r.timestamp = j.value("timestamp", "");
  return r;
}

json to_json(const SDReport& r) {
  json j;
  j["D"] = r.D;
  j["D0"] = r.D0;
  j["S_D"] = r.S_D.get_str();
  j["S_D_numeric"] = complex_json(r.S_numeric);
  j["trace"] = complex_json(r.trace);
  j["c3D"] = r.c3D;
  j["sigmaD"] = r.sigmaD;
  j["bits_used"] = r.bits_used;
  j["recognition_residual"] = r.recognition_residual.to_string(6);
  if (r.T) {
    j["T_D"] = format_T(r.T->T_exact, r.T->imaginary);
    j["T_D_detail"] = json{{"coefficient", r.T->T_exact.get_str()},
                           {"imaginary", r.T->imaginary},
                           {"b", r.T->b},
                           {"k0", r.T->k0},
                           {"pi1", r.T->pi1.to_string()},
                           {"pi2", r.T->pi2.to_string()},
                           {"residual", r.T->residual.to_string(6)}};
  } else {
    j["T_D"] = nullptr;
  }
  j["sha_prediction"] = r.sha_prediction ? json(r.sha_prediction->get_str()) : json(nullptr);
  j["verdict"] = verdict_name(r.verdict);
  j["point"] = point_json(r.point);
  j["oracle_L"] = r.oracle_L ? json(r.oracle_L->to_string(20)) : json(nullptr);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json to_json(const IdentityResult& r) {
  json j;
  j["identity_id"] = r.identity_id;
  j["parameters"] = r.parameters;
  j["lhs"] = complex_json(r.lhs);
  j["rhs"] = complex_json(r.rhs);
  j["residual"] = real_string(r.residual);
  j["tol"] = real_string(r.tol);
  j["pass"] = r.pass;
  j["status"] = status_name(r.status);
  j["bits"] = r.bits;
  if (!r.note.empty()) j["note"] = r.note;
  if (r.rerun_bits > 0) {
    j["rerun_bits"] = r.rerun_bits;
    j["rerun_pass"] = r.rerun_pass;
  }
  return j;
}

IdentityResult identity_from_json(const json& j) {
  IdentityResult r;
  r.identity_id = j.at("identity_id").get<std::string>();
  r.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
  r.bits = j.at("bits").get<long>();
  PrecisionScope ps(r.bits);
  r.lhs = complex_from(j.at("lhs"));
  r.rhs = complex_from(j.at("rhs"));
  r.residual = Real::parse(j.at("residual"));
  r.tol = Real::parse(j.at("tol"));
  r.pass = j.at("pass").get<bool>();
  std::string st = j.at("status").get<std::string>();
  if (st == "pass")
    r.status = CheckStatus::Pass;
  else if (st == "fail")
    r.status = CheckStatus::Fail;
  else if (st == "skipped")
    r.status = CheckStatus::Skipped;
  else
    throw Error(ErrorKind::Validation, "unknown status " + st);
  r.note = j.value("note", "");
  r.rerun_bits = j.value("rerun_bits", 0L);
  r.rerun_pass = j.value("rerun_pass", false);
  return r;
}

json to_json(const std::vector<IdentityResult>& rs) {
  json a = json::array();
  for (const auto& r : rs) a.push_back(to_json(r));
  return a;
}

Cache::Cache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      // a torn last line from an interrupted writer is dropped
      if (in.peek() == EOF) break;
      throw Error(ErrorKind::Validation, path_ + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (lineno == 1) {
      if (j.value("format", "") != kFormat || j.value("v", 0) != kFormatVersion)
        throw Error(ErrorKind::Validation, path_ + ": not a ctlab cache file");
      header_written_ = true;
      continue;
    }
    CacheRecord r = record_from_json(j);
    records_[{r.D, r.precision_bits}] = std::move(r);
  }
}

std::optional<CacheRecord> Cache::lookup(long D, long bits) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = records_.lower_bound({D, bits});
  if (it == records_.end() || it->first.first != D) return std::nullopt;
  return it->second;
}

void Cache::append(const CacheRecord& r) {
  std::lock_guard<std::mutex> lock(mu_);
  std::filesystem::path p(path_);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path_, std::ios::app);
  if (!out) throw Error(ErrorKind::Validation, "cannot write cache " + path_);
  if (!header_written_) {
    out << json{{"format", kFormat}, {"v", kFormatVersion}}.dump() << '\n';
    header_written_ = true;
  }
  out << to_json(r).dump() << '\n';
  out.flush();
  records_[{r.D, r.precision_bits}] = r;
}

std::size_t Cache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return records_.size();
}

}  // namespace ctlab
