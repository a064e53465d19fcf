#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace percolab {

// Previously written artifacts (CSV or JSON) to merge into one document.
struct ReportInputs {
  std::vector<std::filesystem::path> audits;
  std::vector<std::filesystem::path> series;
  std::vector<std::filesystem::path> thresholds;
  std::vector<std::filesystem::path> sweeps;

  bool empty() const {
    return audits.empty() && series.empty() && thresholds.empty() && sweeps.empty();
  }
};

struct ReportDocument {
  std::string text;
  nlohmann::json json;
  // ComparisonReport rows in CSV form; present when threshold inputs were given.
  std::string comparison_csv;
};

// Restates each audited claim next to the computed evidence. Only sections
// with inputs appear. Throws std::invalid_argument when no inputs are given
// and std::runtime_error when an input fails to parse.
ReportDocument build_report(const ReportInputs& inputs);

}  // namespace percolab
