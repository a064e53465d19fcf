#include "percolab/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "percolab/rng.hpp"

namespace percolab {

namespace {

void validate(const ThresholdOptions& o) {
  if (!(o.target_level > 0.0 && o.target_level < 1.0)) {
    throw std::invalid_argument("target level must lie strictly inside (0,1)");
  }
  if (!(o.tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  if (o.initial_trials < 1 || o.max_trials_per_probe < o.initial_trials) {
    throw std::invalid_argument("bad probe trial schedule");
  }
}

}  // namespace

ThresholdResult find_threshold(int d, int k, const ThresholdOptions& options) {
  detail::require_dimension(d);
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  validate(options);

  ThresholdResult result;
  result.d = d;
  result.k = k;
  result.target_level = options.target_level;
  result.seed = options.seed;

  BallGeometry geometry(d, k);

  // theta(0) = 0 and theta(1) = 1, so [0,1] always brackets the target.
  double lo = 0.0;
  double hi = 1.0;
  std::uint64_t step = 0;

  while (hi - lo > options.tolerance) {
    double mid = 0.5 * (lo + hi);

    TrialSpec spec;
    spec.d = d;
    spec.k = k;
    spec.p = mid;
    spec.condition_origin_open = options.condition_origin_open;
    spec.seed = derive_seed(options.seed, kPurposeBisection, step);

    std::uint64_t n = options.initial_trials;
    ThetaEstimate est;
    bool have_estimate = false;
    bool resolved = false;
    while (true) {
      if (result.trials_used + n > options.trial_budget) {
        result.budget_exhausted = true;
        break;
      }
      spec.trials = n;
      est = estimate_theta(spec, geometry);
      have_estimate = true;
      result.trials_used += n;
      if (est.ci_low > options.target_level || est.ci_high < options.target_level) {
        resolved = true;
        break;
      }
      if (n >= options.max_trials_per_probe) break;
      n = std::min(n * 2, options.max_trials_per_probe);
    }
    if (!have_estimate) break;  // budget gone before this probe could run

    if (resolved) {
      if (est.ci_low > options.target_level) {
        hi = mid;
      } else {
        lo = mid;
      }
    } else {
      // CI still straddles the target at the probe cap: classify by the
      // point estimate and remember the ambiguity.
      result.had_ambiguous_probe = true;
      if (est.point >= options.target_level) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    ++step;
    if (result.budget_exhausted) break;
  }

  result.bisection_steps = static_cast<int>(step);
  result.ci_low = lo;
  result.ci_high = hi;
  result.p_star = 0.5 * (lo + hi);
  return result;
}

const char* to_string(Trend trend) {
  switch (trend) {
    case Trend::single_point: return "single_point";
    case Trend::increasing: return "increasing";
    case Trend::decreasing: return "decreasing";
    case Trend::flat: return "flat";
    case Trend::non_monotone: return "non_monotone";
  }
  return "unknown";
}

namespace {

Trend classify_trend(const std::vector<ComparisonRow>& rows) {
  if (rows.size() < 2) return Trend::single_point;
  bool any_up = false;
  bool any_down = false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].p_star > rows[i - 1].p_star) any_up = true;
    if (rows[i].p_star < rows[i - 1].p_star) any_down = true;
  }
  if (any_up && any_down) return Trend::non_monotone;
  if (any_up) return Trend::increasing;
  if (any_down) return Trend::decreasing;
  return Trend::flat;
}

// Least squares of p* = p_c + a k^(-b) with b on a grid; with a handful of
// (k, p*) points anything fancier is pretense.
PowerLawFit fit_power_law(const std::vector<ComparisonRow>& rows) {
  PowerLawFit best;
  double best_sse = -1.0;
  for (double b = 0.05; b <= 3.0 + 1e-9; b += 0.05) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    auto n = static_cast<double>(rows.size());
    for (const auto& r : rows) {
      double x = std::pow(static_cast<double>(r.k), -b);
      sx += x;
      sy += r.p_star;
      sxx += x * x;
      sxy += x * r.p_star;
    }
    double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-15) continue;
    double a = (n * sxy - sx * sy) / denom;
    double c = (sy - a * sx) / n;
    double sse = 0;
    for (const auto& r : rows) {
      double e = r.p_star - (c + a * std::pow(static_cast<double>(r.k), -b));
      sse += e * e;
    }
    if (best_sse < 0 || sse < best_sse) {
      best_sse = sse;
      best = {c, a, b};
    }
  }
  return best;
}

}  // namespace

ComparisonReport compare_to_paper(const std::vector<ThresholdResult>& results,
                                  bool with_power_law_fit) {
  if (results.empty()) throw std::invalid_argument("no threshold results to compare");
  ComparisonReport report;
  report.d = results.front().d;
  for (const auto& r : results) {
    if (r.d != report.d) throw std::invalid_argument("all results must share d");
    ComparisonRow row;
    row.k = r.k;
    row.p_star = r.p_star;
    row.ci_low = r.ci_low;
    row.ci_high = r.ci_high;
    row.paper_prediction = 1.0 / report.d;
    row.consistent = row.ci_low <= row.paper_prediction && row.paper_prediction <= row.ci_high;
    report.rows.push_back(row);
  }
  std::sort(report.rows.begin(), report.rows.end(),
            [](const ComparisonRow& a, const ComparisonRow& b) { return a.k < b.k; });

  report.trend = classify_trend(report.rows);
  switch (report.trend) {
    case Trend::single_point:
      report.trend_note = "single k measured; no trend inferred";
      break;
    case Trend::non_monotone:
      report.trend_note = "p*(k) is not monotone over the measured k";
      break;
    case Trend::flat:
      report.trend_note = "p*(k) is constant over the measured k";
      break;
    default:
      report.trend_note = std::string("p*(k) is ") + to_string(report.trend) +
                          " over the measured k; no limit asserted";
  }
  if (with_power_law_fit && report.rows.size() >= 3) {
    report.fit = fit_power_law(report.rows);
  }
  return report;
}

std::string render_comparison_text(const ComparisonReport& report) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line,
                "threshold comparison for d=%d (paper prediction 1/d = %.6f)\n", report.d,
                1.0 / report.d);
  out += line;
  out += "    k      p*(k)        bracket           1/d in bracket\n";
  for (const auto& r : report.rows) {
    std::snprintf(line, sizeof line, "  %3d   %8.5f   [%8.5f, %8.5f]   %s\n", r.k, r.p_star,
                  r.ci_low, r.ci_high, r.consistent ? "yes" : "no");
    out += line;
  }
  out += "  trend: " + report.trend_note + "\n";
  if (report.fit) {
    std::snprintf(line, sizeof line,
                  "  convenience fit (not a measurement): p*(k) ~ %.5f + %.4f * k^-%.2f\n",
                  report.fit->p_c, report.fit->a, report.fit->b);
    out += line;
  }
  return out;
}

}  // namespace percolab
