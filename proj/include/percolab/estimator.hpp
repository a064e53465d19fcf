#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "percolab/montecarlo.hpp"

namespace percolab {

struct ThresholdOptions {
  double target_level = 0.5;
  double tolerance = 0.01;
  std::uint64_t seed = 0;
  std::uint64_t trial_budget = 10'000'000;  // total trials across the search
  // Per-probe schedule: start small, double while the CI straddles the
  // target, give up at the cap and classify by point estimate.
  std::uint64_t initial_trials = 2000;
  std::uint64_t max_trials_per_probe = 64000;
  bool condition_origin_open = true;
};

// Pseudo-critical point p*(k): the p where the measured theta_k crosses the
// target level, located by bisection with CI-driven probe sizes. The
// bracket (ci_low, ci_high) is the final bisection interval.
struct ThresholdResult {
  int d = 0;
  int k = 0;
  double target_level = 0.5;
  double p_star = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  std::uint64_t trials_used = 0;
  int bisection_steps = 0;
  std::uint64_t seed = 0;
  bool budget_exhausted = false;
  // Some probe ended with its CI still straddling the target and was
  // classified by point estimate alone.
  bool had_ambiguous_probe = false;
};

ThresholdResult find_threshold(int d, int k, const ThresholdOptions& options = {});

struct ComparisonRow {
  int k = 0;
  double p_star = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double paper_prediction = 0.0;  // 1/d
  bool consistent = false;        // paper_prediction inside (ci_low, ci_high)
};

enum class Trend { single_point, increasing, decreasing, flat, non_monotone };
const char* to_string(Trend trend);

// Convenience extrapolation p*(k) ~ p_c + a k^(-b); reported clearly as a
// fit, never as a measured quantity.
struct PowerLawFit {
  double p_c = 0.0;
  double a = 0.0;
  double b = 0.0;
};

struct ComparisonReport {
  int d = 0;
  std::vector<ComparisonRow> rows;  // sorted by k
  Trend trend = Trend::single_point;
  std::string trend_note;
  std::optional<PowerLawFit> fit;
};

// Tabulates measured p*(k) against the claimed threshold 1/d. Reports the
// trend of the sequence; asserts nothing about its limit.
ComparisonReport compare_to_paper(const std::vector<ThresholdResult>& results,
                                  bool with_power_law_fit = false);

std::string render_comparison_text(const ComparisonReport& report);

}  // namespace percolab
