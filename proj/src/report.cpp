#include "percolab/report.hpp"

#include <cstdio>
#include <map>
#include <stdexcept>

#include "percolab/io.hpp"
#include "percolab/version.hpp"

namespace percolab {

namespace {

int to_int(const std::string& s) { return std::stoi(s); }
double to_double(const std::string& s) { return std::stod(s); }
std::uint64_t to_u64(const std::string& s) { return std::stoull(s); }

std::string meta_value(const RowSet& rs, const std::string& key) {
  for (const auto& [k, v] : rs.meta) {
    if (k == key) return v;
  }
  return "";
}

void append_provenance(std::string& text, const RowSet& rs, const std::filesystem::path& path) {
  text += "  input: " + path.string();
  std::string config = meta_value(rs, "config");
  if (!config.empty()) text += "\n    config: " + config;
  text += "\n";
}

std::string audit_section(const std::vector<std::filesystem::path>& paths, nlohmann::json& out) {
  std::string text;
  text += "[counting] claims under audit: n_k(A_k) = d^k; n_{k+2m}(A_k) <= d^k for m = 1\n";
  text += "           and <= m*d^k for m >= 2 (exact enumeration vs claimed bound)\n";
  for (const auto& path : paths) {
    RowSet rs = read_artifact(path);
    append_provenance(text, rs, path);
    std::string arc = meta_value(rs, "arc");
    if (!arc.empty()) text += "    arc reading: " + arc + "\n";

    int computed = 0, holds = 0;
    nlohmann::json rows = nlohmann::json::array();
    std::string table;
    for (const auto& row : rs.rows) {
      nlohmann::json j(row);
      rows.push_back(j);
      bool row_computed = row.count("computed") && row.at("computed") == "true";
      if (!row_computed) {
        table += "      k=" + row.at("k") + " m=" + row.at("m") + ": not computed (budget)\n";
        continue;
      }
      ++computed;
      bool row_holds = row.count("bound_holds") && row.at("bound_holds") == "true";
      if (row_holds) ++holds;
      table += "      k=" + row.at("k") + " m=" + row.at("m") + " length=" + row.at("length") +
               ": exact=" + row.at("exact_count") + " claimed<=" + row.at("paper_bound") +
               " -> " + (row_holds ? "holds" : "VIOLATED") + "\n";
    }
    char summary[160];
    std::snprintf(summary, sizeof summary,
                  "    claimed bound holds in %d of %d computed rows\n", holds, computed);
    text += summary;
    text += table;
    out["audits"].push_back({{"file", path.string()},
                             {"arc", arc},
                             {"rows_computed", computed},
                             {"rows_bound_holds", holds},
                             {"rows", rows}});
  }
  return text;
}

std::string series_section(const std::vector<std::filesystem::path>& paths, nlohmann::json& out) {
  std::string text;
  text += "[series] psi_k = (p*d)^k; claimed ceiling (d*p)^k * (1 + sum_i i*p^(2i))\n";
  for (const auto& path : paths) {
    RowSet rs = read_artifact(path);
    append_provenance(text, rs, path);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : rs.rows) {
      rows.push_back(nlohmann::json(row));
      std::string trunc = row.count("truncation") ? row.at("truncation") : "";
      std::string kind = row.at("kind");
      std::string label = kind;
      if (kind == "upper_bound") label += trunc.empty() ? " (closed form)" : " (I=" + trunc + ")";
      if (kind == "empirical") label += " (m_max=" + trunc + ")";
      text += "    d=" + row.at("d") + " p=" + row.at("p") + " k=" + row.at("k") + " " + label +
              " = " + row.at("value") + "\n";
    }
    out["series"].push_back({{"file", path.string()}, {"rows", rows}});
  }
  return text;
}

std::string sweep_section(const std::vector<std::filesystem::path>& paths, nlohmann::json& out) {
  std::string text;
  text += "[theta] measured connection probabilities\n";
  for (const auto& path : paths) {
    RowSet rs = read_artifact(path);
    append_provenance(text, rs, path);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : rs.rows) {
      rows.push_back(nlohmann::json(row));
      text += "    d=" + row.at("d") + " k=" + row.at("k") + " p=" + row.at("p") +
              ": theta=" + row.at("theta") + " [" + row.at("ci_low") + ", " + row.at("ci_high") +
              "] (" + row.at("trials") + " trials)\n";
    }
    out["theta"].push_back({{"file", path.string()}, {"rows", rows}});
  }
  return text;
}

ThresholdResult row_to_threshold(const std::map<std::string, std::string>& row) {
  ThresholdResult r;
  r.d = to_int(row.at("d"));
  r.k = to_int(row.at("k"));
  r.target_level = to_double(row.at("target"));
  r.p_star = to_double(row.at("p_star"));
  r.ci_low = to_double(row.at("ci_low"));
  r.ci_high = to_double(row.at("ci_high"));
  r.trials_used = to_u64(row.at("trials_used"));
  r.bisection_steps = to_int(row.at("steps"));
  r.seed = to_u64(row.at("seed"));
  std::string flag = row.at("flag");
  r.budget_exhausted = flag.find("budget_exhausted") != std::string::npos;
  r.had_ambiguous_probe = flag.find("ambiguous") != std::string::npos;
  return r;
}

std::string threshold_section(const std::vector<std::filesystem::path>& paths,
                              nlohmann::json& out, std::string& comparison_out) {
  std::string text;
  text += "[threshold] claimed critical probability: p_H = 1/d\n";

  std::map<int, std::vector<ThresholdResult>> by_d;
  for (const auto& path : paths) {
    RowSet rs = read_artifact(path);
    append_provenance(text, rs, path);
    for (const auto& row : rs.rows) {
      ThresholdResult r = row_to_threshold(row);
      by_d[r.d].push_back(r);
    }
  }
  for (const auto& [d, results] : by_d) {
    ComparisonReport comparison = compare_to_paper(results);
    text += render_comparison_text(comparison);
    out["comparisons"].push_back(
        {{"d", d}, {"trend", to_string(comparison.trend)}, {"rows", comparison_rows_json(comparison)}});
    MetaLines meta = standard_meta("comparison", {{"d", d}});
    comparison_out += comparison_csv(comparison, meta);
  }
  return text;
}

}  // namespace

ReportDocument build_report(const ReportInputs& inputs) {
  if (inputs.empty()) throw std::invalid_argument("report needs at least one input artifact");

  ReportDocument doc;
  doc.json["tool"] = kToolName;
  doc.json["version"] = kToolVersion;

  doc.text += std::string(kToolName) + " " + kToolVersion + " report\n";
  doc.text += std::string(60, '=') + "\n";

  if (!inputs.audits.empty()) doc.text += audit_section(inputs.audits, doc.json) + "\n";
  if (!inputs.series.empty()) doc.text += series_section(inputs.series, doc.json) + "\n";
  if (!inputs.sweeps.empty()) doc.text += sweep_section(inputs.sweeps, doc.json) + "\n";
  if (!inputs.thresholds.empty()) {
    doc.text += threshold_section(inputs.thresholds, doc.json, doc.comparison_csv) + "\n";
  }
  return doc;
}

}  // namespace percolab
