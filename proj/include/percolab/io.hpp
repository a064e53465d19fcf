#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "percolab/enumeration.hpp"
#include "percolab/estimator.hpp"
#include "percolab/montecarlo.hpp"
#include "percolab/series.hpp"

namespace percolab {

// Shortest round-trip decimal form.
std::string format_double(double value);

// Writes via a temp file in the same directory plus rename, so readers
// never observe a partial artifact.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// `# key: value` provenance lines embedded above the CSV header. Every
// artifact carries its kind, tool/version and the resolved configuration.
using MetaLines = std::vector<std::pair<std::string, std::string>>;
MetaLines standard_meta(const std::string& artifact, const nlohmann::json& config);

// Generic row for the count/audit schema; empty optionals print as empty
// cells (a total-count row has no arc radius and no claimed bound).
struct CountCsvRow {
  int d = 0;
  std::optional<int> k;
  std::optional<int> m;
  int length = 0;
  std::optional<bigint> exact_count;
  std::optional<bigint> paper_bound;
  std::optional<bool> bound_holds;
  bool computed = false;
};

CountCsvRow to_csv_row(const AuditRow& row);

std::string counts_csv(const std::vector<CountCsvRow>& rows, const MetaLines& meta);
std::string theta_csv(const std::vector<ThetaEstimate>& estimates, const MetaLines& meta);
std::string series_csv(const std::vector<SeriesValue>& values, const MetaLines& meta);
std::string thresholds_csv(const std::vector<ThresholdResult>& results, const MetaLines& meta);
std::string comparison_csv(const ComparisonReport& report, const MetaLines& meta);

std::string threshold_flag(const ThresholdResult& r);

// JSON mirrors carry the same fields as the CSV columns, plus provenance.
nlohmann::json artifact_json(const std::string& artifact, const nlohmann::json& config,
                             nlohmann::json rows, const MetaLines& extra_meta = {});
nlohmann::json counts_rows_json(const std::vector<CountCsvRow>& rows);
nlohmann::json theta_rows_json(const std::vector<ThetaEstimate>& estimates);
nlohmann::json series_rows_json(const std::vector<SeriesValue>& values);
nlohmann::json thresholds_rows_json(const std::vector<ThresholdResult>& results);
nlohmann::json comparison_rows_json(const ComparisonReport& report);

// Parsed artifact, format-agnostic: CSV comment lines or JSON provenance
// become `meta`, each data row becomes column -> value text.
struct RowSet {
  std::string artifact;  // best-effort, from meta when present
  MetaLines meta;
  std::vector<std::string> header;
  std::vector<std::map<std::string, std::string>> rows;
};

RowSet read_artifact(const std::filesystem::path& path);

}  // namespace percolab
