#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include <cmath>

#include "percolab/estimator.hpp"

using namespace percolab;
using doctest::Approx;

namespace {

bool same_result(const ThresholdResult& a, const ThresholdResult& b) {
  return a.p_star == b.p_star && a.ci_low == b.ci_low && a.ci_high == b.ci_high &&
         a.trials_used == b.trials_used && a.bisection_steps == b.bisection_steps &&
         a.budget_exhausted == b.budget_exhausted &&
         a.had_ambiguous_probe == b.had_ambiguous_probe;
}

}  // namespace

TEST_CASE("line threshold matches the analytic root") {
  // theta(p) = 1 - (1 - p^k)^2 = 1/2  =>  p = (1 - 2^-1/2)^(1/k)
  ThresholdOptions options;
  options.tolerance = 0.005;
  options.seed = 11;
  ThresholdResult r = find_threshold(1, 8, options);
  double root = std::pow(1.0 - std::pow(2.0, -0.5), 1.0 / 8.0);
  CHECK(root == Approx(0.857706).epsilon(1e-4));
  CHECK(std::abs(r.p_star - root) <= std::max(options.tolerance, 0.01));
  CHECK(r.ci_low <= r.p_star);
  CHECK(r.p_star <= r.ci_high);
  CHECK(r.ci_high - r.ci_low <= options.tolerance);
  CHECK_FALSE(r.budget_exhausted);
}

TEST_CASE("bracket shrinks by half per accepted step") {
  ThresholdOptions options;
  options.tolerance = 0.01;
  options.seed = 4;
  ThresholdResult r = find_threshold(2, 4, options);
  // Width after s steps is 2^-s; reaching tolerance 0.01 takes exactly 7.
  CHECK(r.bisection_steps == 7);
  CHECK(r.ci_high - r.ci_low == Approx(std::pow(0.5, 7)).epsilon(1e-12));
}

TEST_CASE("deterministic across runs and worker counts") {
  ThresholdOptions options;
  options.tolerance = 0.02;
  options.seed = 99;
  options.initial_trials = 500;
  options.max_trials_per_probe = 4000;

  int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  ThresholdResult serial = find_threshold(2, 5, options);
  omp_set_num_threads(4);
  ThresholdResult parallel = find_threshold(2, 5, options);
  ThresholdResult again = find_threshold(2, 5, options);
  omp_set_num_threads(saved);

  CHECK(same_result(serial, parallel));
  CHECK(same_result(parallel, again));
}

TEST_CASE("degenerate target level is rejected") {
  ThresholdOptions options;
  options.target_level = 1.0;
  CHECK_THROWS_AS(find_threshold(2, 4, options), std::invalid_argument);
  options.target_level = 0.0;
  CHECK_THROWS_AS(find_threshold(2, 4, options), std::invalid_argument);
}

TEST_CASE("tiny trial budget is flagged, not fatal") {
  ThresholdOptions options;
  options.tolerance = 0.001;
  options.initial_trials = 2000;
  options.trial_budget = 4000;  // two probes at most
  ThresholdResult r = find_threshold(2, 4, options);
  CHECK(r.budget_exhausted);
  CHECK(r.trials_used <= options.trial_budget);
  CHECK(r.ci_high - r.ci_low > options.tolerance);  // best bracket, unfinished
  CHECK(r.ci_low <= r.p_star);
  CHECK(r.p_star <= r.ci_high);
}

TEST_CASE("comparison against the claimed 1/d") {
  ThresholdResult a;
  a.d = 2;
  a.k = 8;
  a.p_star = 0.55;
  a.ci_low = 0.45;
  a.ci_high = 0.65;
  ComparisonReport single = compare_to_paper({a});
  CHECK(single.rows.size() == 1);
  CHECK(single.rows[0].paper_prediction == 0.5);
  CHECK(single.rows[0].consistent);
  CHECK(single.trend == Trend::single_point);

  ThresholdResult b = a;
  b.k = 16;
  b.p_star = 0.58;
  b.ci_low = 0.56;
  b.ci_high = 0.60;
  ComparisonReport two = compare_to_paper({b, a});  // unsorted input
  CHECK(two.rows[0].k == 8);
  CHECK(two.rows[1].k == 16);
  CHECK(two.trend == Trend::increasing);
  CHECK_FALSE(two.rows[1].consistent);

  std::string text = render_comparison_text(two);
  CHECK(text.find("0.5") != std::string::npos);
  CHECK(text.find("trend") != std::string::npos);
}

TEST_CASE("comparison requires a shared dimension") {
  ThresholdResult a;
  a.d = 2;
  ThresholdResult b;
  b.d = 3;
  CHECK_THROWS_AS(compare_to_paper({a, b}), std::invalid_argument);
  CHECK_THROWS_AS(compare_to_paper({}), std::invalid_argument);
}

TEST_CASE("line thresholds drift toward 1 and track the analytic root") {
  // On the line the claimed threshold is 1/d = 1; finite-k pseudo-critical
  // points increase toward it, each near (1 - 2^-1/2)^(1/k).
  ThresholdOptions options;
  options.tolerance = 0.02;
  options.seed = 8;
  std::vector<ThresholdResult> results;
  for (int k : {4, 8, 16}) {
    ThresholdResult r = find_threshold(1, k, options);
    double root = std::pow(1.0 - std::pow(2.0, -0.5), 1.0 / k);
    CAPTURE(k);
    CHECK(std::abs(r.p_star - root) <= std::max(options.tolerance, 0.02));
    results.push_back(r);
  }
  ComparisonReport report = compare_to_paper(results, true);
  CHECK(report.trend == Trend::increasing);
  CHECK(report.rows[0].paper_prediction == 1.0);
  REQUIRE(report.fit.has_value());
  CHECK(report.fit->b > 0.0);
}

TEST_CASE("power-law fit recovers a planted curve") {
  std::vector<ThresholdResult> results;
  for (int k : {4, 8, 16, 32, 64}) {
    ThresholdResult r;
    r.d = 2;
    r.k = k;
    r.p_star = 0.5 + 0.8 * std::pow(k, -1.0);
    r.ci_low = r.p_star - 0.01;
    r.ci_high = r.p_star + 0.01;
    results.push_back(r);
  }
  ComparisonReport report = compare_to_paper(results, true);
  REQUIRE(report.fit.has_value());
  CHECK(report.fit->p_c == Approx(0.5).epsilon(0.02));
  CHECK(report.fit->b == Approx(1.0).epsilon(0.06));
  CHECK(report.trend == Trend::decreasing);
}
