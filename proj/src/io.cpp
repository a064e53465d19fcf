#include "percolab/io.hpp"

#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "percolab/version.hpp"

namespace percolab {

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::runtime_error("double formatting failed");
  return std::string(buf, end);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path dir = path.parent_path();
  std::filesystem::path tmp =
      (dir.empty() ? std::filesystem::path(".") : dir) /
      (path.filename().string() + ".tmp-" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

MetaLines standard_meta(const std::string& artifact, const nlohmann::json& config) {
  return {
      {"artifact", artifact},
      {"tool", std::string(kToolName) + " " + kToolVersion},
      {"config", config.dump()},
  };
}

namespace {

std::string meta_block(const MetaLines& meta) {
  std::string out;
  for (const auto& [key, value] : meta) {
    out += "# " + key + ": " + value + "\n";
  }
  return out;
}

std::string opt_int(const std::optional<int>& v) { return v ? std::to_string(*v) : ""; }
std::string opt_big(const std::optional<bigint>& v) { return v ? v->str() : ""; }
std::string bool_str(bool b) { return b ? "true" : "false"; }
std::string opt_bool(const std::optional<bool>& v) { return v ? bool_str(*v) : ""; }

}  // namespace

CountCsvRow to_csv_row(const AuditRow& row) {
  CountCsvRow out;
  out.d = row.d;
  out.k = row.k;
  out.m = row.m;
  out.length = row.length;
  if (row.computed) {
    out.exact_count = row.exact_count;
    out.bound_holds = row.bound_holds;
  }
  out.paper_bound = row.paper_bound;
  out.computed = row.computed;
  return out;
}

std::string counts_csv(const std::vector<CountCsvRow>& rows, const MetaLines& meta) {
  std::string out = meta_block(meta);
  out += "d,k,m,length,exact_count,paper_bound,bound_holds,computed\n";
  for (const auto& r : rows) {
    out += std::to_string(r.d) + "," + opt_int(r.k) + "," + opt_int(r.m) + "," +
           std::to_string(r.length) + "," + opt_big(r.exact_count) + "," +
           opt_big(r.paper_bound) + "," + opt_bool(r.bound_holds) + "," + bool_str(r.computed) +
           "\n";
  }
  return out;
}

std::string theta_csv(const std::vector<ThetaEstimate>& estimates, const MetaLines& meta) {
  std::string out = meta_block(meta);
  out += "d,k,p,trials,seed,successes,theta,ci_low,ci_high,elapsed_s\n";
  for (const auto& e : estimates) {
    out += std::to_string(e.spec.d) + "," + std::to_string(e.spec.k) + "," +
           format_double(e.spec.p) + "," + std::to_string(e.spec.trials) + "," +
           std::to_string(e.spec.seed) + "," + std::to_string(e.successes) + "," +
           format_double(e.point) + "," + format_double(e.ci_low) + "," +
           format_double(e.ci_high) + "," + format_double(e.elapsed_seconds) + "\n";
  }
  return out;
}

std::string series_csv(const std::vector<SeriesValue>& values, const MetaLines& meta) {
  std::string out = meta_block(meta);
  out += "d,p,k,kind,truncation,value\n";
  for (const auto& v : values) {
    out += std::to_string(v.d) + "," + format_double(v.p) + "," + std::to_string(v.k) + "," +
           to_string(v.kind) + "," + opt_int(v.truncation) + "," + format_double(v.value) + "\n";
  }
  return out;
}

std::string threshold_flag(const ThresholdResult& r) {
  if (r.budget_exhausted && r.had_ambiguous_probe) return "budget_exhausted+ambiguous";
  if (r.budget_exhausted) return "budget_exhausted";
  if (r.had_ambiguous_probe) return "ambiguous";
  return "ok";
}

std::string thresholds_csv(const std::vector<ThresholdResult>& results, const MetaLines& meta) {
  std::string out = meta_block(meta);
  out += "d,k,target,p_star,ci_low,ci_high,trials_used,steps,seed,flag\n";
  for (const auto& r : results) {
    out += std::to_string(r.d) + "," + std::to_string(r.k) + "," + format_double(r.target_level) +
           "," + format_double(r.p_star) + "," + format_double(r.ci_low) + "," +
           format_double(r.ci_high) + "," + std::to_string(r.trials_used) + "," +
           std::to_string(r.bisection_steps) + "," + std::to_string(r.seed) + "," +
           threshold_flag(r) + "\n";
  }
  return out;
}

std::string comparison_csv(const ComparisonReport& report, const MetaLines& meta) {
  std::string out = meta_block(meta);
  out += "d,k,p_star,ci_low,ci_high,paper_prediction,consistent\n";
  for (const auto& r : report.rows) {
    out += std::to_string(report.d) + "," + std::to_string(r.k) + "," + format_double(r.p_star) +
           "," + format_double(r.ci_low) + "," + format_double(r.ci_high) + "," +
           format_double(r.paper_prediction) + "," + bool_str(r.consistent) + "\n";
  }
  return out;
}

nlohmann::json artifact_json(const std::string& artifact, const nlohmann::json& config,
                             nlohmann::json rows, const MetaLines& extra_meta) {
  nlohmann::json doc;
  doc["artifact"] = artifact;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["config"] = config;
  for (const auto& [key, value] : extra_meta) doc[key] = value;
  doc["rows"] = std::move(rows);
  return doc;
}

nlohmann::json counts_rows_json(const std::vector<CountCsvRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j;
    j["d"] = r.d;
    j["k"] = r.k ? nlohmann::json(*r.k) : nlohmann::json();
    j["m"] = r.m ? nlohmann::json(*r.m) : nlohmann::json();
    j["length"] = r.length;
    j["exact_count"] = r.exact_count ? nlohmann::json(r.exact_count->str()) : nlohmann::json();
    j["paper_bound"] = r.paper_bound ? nlohmann::json(r.paper_bound->str()) : nlohmann::json();
    j["bound_holds"] = r.bound_holds ? nlohmann::json(*r.bound_holds) : nlohmann::json();
    j["computed"] = r.computed;
    out.push_back(std::move(j));
  }
  return out;
}

nlohmann::json theta_rows_json(const std::vector<ThetaEstimate>& estimates) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : estimates) {
    out.push_back({{"d", e.spec.d},
                   {"k", e.spec.k},
                   {"p", e.spec.p},
                   {"trials", e.spec.trials},
                   {"seed", e.spec.seed},
                   {"successes", e.successes},
                   {"theta", e.point},
                   {"ci_low", e.ci_low},
                   {"ci_high", e.ci_high},
                   {"elapsed_s", e.elapsed_seconds}});
  }
  return out;
}

nlohmann::json series_rows_json(const std::vector<SeriesValue>& values) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& v : values) {
    out.push_back({{"d", v.d},
                   {"p", v.p},
                   {"k", v.k},
                   {"kind", to_string(v.kind)},
                   {"truncation", v.truncation ? nlohmann::json(*v.truncation) : nlohmann::json()},
                   {"value", v.value}});
  }
  return out;
}

nlohmann::json thresholds_rows_json(const std::vector<ThresholdResult>& results) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : results) {
    out.push_back({{"d", r.d},
                   {"k", r.k},
                   {"target", r.target_level},
                   {"p_star", r.p_star},
                   {"ci_low", r.ci_low},
                   {"ci_high", r.ci_high},
                   {"trials_used", r.trials_used},
                   {"steps", r.bisection_steps},
                   {"seed", r.seed},
                   {"flag", threshold_flag(r)}});
  }
  return out;
}

nlohmann::json comparison_rows_json(const ComparisonReport& report) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : report.rows) {
    out.push_back({{"d", report.d},
                   {"k", r.k},
                   {"p_star", r.p_star},
                   {"ci_low", r.ci_low},
                   {"ci_high", r.ci_high},
                   {"paper_prediction", r.paper_prediction},
                   {"consistent", r.consistent}});
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

std::string json_value_to_text(const nlohmann::json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

RowSet read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  RowSet rs;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string body = line.substr(1);
      auto colon = body.find(':');
      if (colon != std::string::npos) {
        std::string key = body.substr(0, colon);
        std::string value = body.substr(colon + 1);
        while (!key.empty() && key.front() == ' ') key.erase(key.begin());
        while (!key.empty() && key.back() == ' ') key.pop_back();
        while (!value.empty() && value.front() == ' ') value.erase(value.begin());
        rs.meta.emplace_back(key, value);
      }
      continue;
    }
    auto fields = split_csv_line(line);
    if (!header_seen) {
      rs.header = fields;
      header_seen = true;
      continue;
    }
    if (fields.size() != rs.header.size()) {
      throw std::runtime_error("malformed CSV row in " + path.string());
    }
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < fields.size(); ++i) row[rs.header[i]] = fields[i];
    rs.rows.push_back(std::move(row));
  }
  if (!header_seen) throw std::runtime_error("no CSV header in " + path.string());
  return rs;
}

RowSet read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  nlohmann::json doc = nlohmann::json::parse(in);  // throws on malformed input
  RowSet rs;
  for (auto& [key, value] : doc.items()) {
    if (key == "rows") continue;
    rs.meta.emplace_back(key, json_value_to_text(value));
  }
  if (doc.contains("artifact")) rs.artifact = doc["artifact"].get<std::string>();
  if (!doc.contains("rows") || !doc["rows"].is_array()) {
    throw std::runtime_error("no rows array in " + path.string());
  }
  for (const auto& row : doc["rows"]) {
    std::map<std::string, std::string> r;
    for (auto& [key, value] : row.items()) {
      r[key] = json_value_to_text(value);
      if (rs.header.end() == std::find(rs.header.begin(), rs.header.end(), key)) {
        rs.header.push_back(key);
      }
    }
    rs.rows.push_back(std::move(r));
  }
  return rs;
}

}  // namespace

RowSet read_artifact(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw std::runtime_error("no such file: " + path.string());
  RowSet rs = path.extension() == ".json" ? read_json(path) : read_csv(path);
  if (rs.artifact.empty()) {
    for (const auto& [key, value] : rs.meta) {
      if (key == "artifact") rs.artifact = value;
    }
  }
  return rs;
}

}  // namespace percolab
