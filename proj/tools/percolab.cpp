#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "percolab/enumeration.hpp"
#include "percolab/estimator.hpp"
#include "percolab/io.hpp"
#include "percolab/montecarlo.hpp"
#include "percolab/report.hpp"
#include "percolab/rng.hpp"
#include "percolab/series.hpp"
#include "percolab/threads.hpp"
#include "percolab/version.hpp"

namespace {

using nlohmann::json;
using namespace percolab;

// User-facing input problems: exit code 2.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInternal = 4;

struct OutputOpts {
  std::string out;
  std::string format;  // csv | json | "" (infer from extension, default csv)
  int threads = 0;     // 0: resolve from env/hardware
};

void add_output_opts(CLI::App* cmd, OutputOpts& opts) {
  cmd->add_option("--out", opts.out, "output file; stdout when omitted");
  cmd->add_option("--format", opts.format, "csv or json (default: by extension, else csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", opts.threads,
                  "worker count (PERCOLAB_THREADS overrides; default: all cores)");
}

void apply_threads(const OutputOpts& opts) {
  std::optional<int> requested;
  if (opts.threads > 0) requested = opts.threads;
  apply_worker_count(resolve_worker_count(requested));
}

bool use_json(const OutputOpts& opts) {
  if (opts.format == "json") return true;
  if (opts.format == "csv") return false;
  return std::filesystem::path(opts.out).extension() == ".json";
}

// Emits one artifact and the one-line summary. Data goes to --out when
// given (atomically), otherwise to stdout.
void emit(const OutputOpts& opts, const std::string& artifact, const json& config,
          const std::string& csv, json rows, const MetaLines& extra_meta,
          const std::string& summary) {
  std::string content;
  if (use_json(opts)) {
    content = artifact_json(artifact, config, std::move(rows), extra_meta).dump(2);
    content += "\n";
  } else {
    content = csv;
  }
  if (!opts.out.empty()) {
    write_file_atomic(opts.out, content);
    std::cout << summary << " -> " << opts.out << "\n";
  } else {
    std::cout << content;
    std::cerr << summary << "\n";
  }
}

std::vector<double> parse_p_grid(const std::string& text) {
  std::vector<double> grid;
  auto parse_one = [](const std::string& s) {
    try {
      std::size_t pos = 0;
      double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw config_error("bad probability value '" + s + "' in grid");
    }
  };
  if (text.find(':') != std::string::npos) {
    // start:stop:step, inclusive of stop up to rounding
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw config_error("grid range must be start:stop:step");
    double start = parse_one(parts[0]), stop = parse_one(parts[1]), step = parse_one(parts[2]);
    if (step <= 0) throw config_error("grid step must be > 0");
    for (double v = start; v <= stop + step * 1e-9; v += step) grid.push_back(v);
  } else {
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, ',')) {
      if (!part.empty()) grid.push_back(parse_one(part));
    }
  }
  if (grid.empty()) throw config_error("empty probability grid");
  for (double p : grid) {
    if (!(p >= 0.0 && p <= 1.0)) throw config_error("grid probabilities must lie in [0,1]");
  }
  return grid;
}

ArcSet parse_arc_or_throw(const std::string& name) {
  auto arc = parse_arc_set(name);
  if (!arc) throw config_error("unknown arc reading '" + name + "' (face|sphere)");
  return *arc;
}

// ---------------------------------------------------------------- enumerate

struct EnumerateOpts {
  OutputOpts out;
  int d = 2;
  std::string mode = "arc";  // arc | monotone | total
  int k = 0;
  int m = 0;
  int length = -1;
  std::string arc = "face";
  int ball_radius = -1;
  std::uint64_t budget = EnumerationBudget{}.max_expansions;
};

int run_enumerate(const EnumerateOpts& o) {
  apply_threads(o.out);
  EnumerationBudget budget{o.budget};
  std::optional<int> confinement;
  if (o.ball_radius >= 0) confinement = o.ball_radius;

  json config{{"subcommand", "enumerate"}, {"d", o.d},      {"mode", o.mode},
              {"k", o.k},                  {"m", o.m},      {"arc", o.arc},
              {"budget", o.budget},        {"threads", o.out.threads}};
  if (o.length >= 0) config["length"] = o.length;
  if (confinement) config["ball_radius"] = *confinement;

  CountCsvRow row;
  row.d = o.d;
  row.computed = true;
  std::string label;
  if (o.mode == "monotone") {
    row.k = o.k;
    row.m = 0;
    row.length = o.k;
    row.exact_count = count_monotone_paths(o.d, o.k, budget);
    row.paper_bound = integer_power(static_cast<std::uint64_t>(o.d), static_cast<std::uint64_t>(o.k));
    row.bound_holds = *row.exact_count <= *row.paper_bound;
    label = "monotone paths";
  } else if (o.mode == "total") {
    if (o.length < 0) throw config_error("--length is required with --mode total");
    row.length = o.length;
    row.exact_count = total_saw_count(o.d, o.length, budget, confinement);
    label = "self-avoiding walks";
  } else if (o.mode == "arc") {
    SawQuery q{o.d, o.k, o.m, confinement, parse_arc_or_throw(o.arc)};
    row.k = o.k;
    row.m = o.m;
    row.length = q.length();
    row.exact_count = count_saws_to_arc(q, budget);
    row.paper_bound = paper_bound(o.d, o.k, o.m);
    row.bound_holds = *row.exact_count <= *row.paper_bound;
    label = "walks to the arc";
  } else {
    throw config_error("unknown mode '" + o.mode + "' (arc|monotone|total)");
  }

  MetaLines meta = standard_meta("counts", config);
  if (o.mode != "total") meta.emplace_back("arc", o.mode == "monotone" ? "positive_face" : o.arc);
  std::vector<CountCsvRow> rows{row};
  std::string summary = "enumerate: d=" + std::to_string(o.d) + " length=" +
                        std::to_string(row.length) + " " + label + " = " + row.exact_count->str();
  emit(o.out, "counts", config, counts_csv(rows, meta), counts_rows_json(rows),
       MetaLines(meta.begin() + 3, meta.end()), summary);
  return kExitOk;
}

// -------------------------------------------------------------------- audit

struct AuditOpts {
  OutputOpts out;
  int d = 2;
  int k_max = 4;
  int m_max = 2;
  std::string arc = "face";
  int ball_radius = -1;
  std::uint64_t budget = EnumerationBudget{}.max_expansions;
};

int run_audit(const AuditOpts& o) {
  apply_threads(o.out);
  AuditOptions options;
  options.arc = parse_arc_or_throw(o.arc);
  options.budget = EnumerationBudget{o.budget};
  if (o.ball_radius >= 0) options.ball_radius = o.ball_radius;

  json config{{"subcommand", "audit"}, {"d", o.d},           {"k_max", o.k_max},
              {"m_max", o.m_max},      {"arc", o.arc},       {"budget", o.budget},
              {"threads", o.out.threads}};
  if (options.ball_radius) config["ball_radius"] = *options.ball_radius;

  AuditReport report = audit_paper_bounds(o.d, o.k_max, o.m_max, options);

  std::vector<CountCsvRow> rows;
  int holds = 0, computed = 0;
  for (const auto& row : report.rows) {
    rows.push_back(to_csv_row(row));
    if (row.computed) {
      ++computed;
      if (row.bound_holds) ++holds;
    }
  }

  MetaLines meta = standard_meta("audit", config);
  meta.emplace_back("timestamp", report.timestamp);
  meta.emplace_back("arc", to_string(report.arc));
  meta.emplace_back("convention", report.convention);

  char buf[160];
  std::snprintf(buf, sizeof buf, "audit: d=%d %zu rows, %d computed, claimed bound holds in %d",
                o.d, report.rows.size(), computed, holds);
  emit(o.out, "audit", config, counts_csv(rows, meta), counts_rows_json(rows),
       MetaLines(meta.begin() + 3, meta.end()), buf);
  return kExitOk;
}

// ------------------------------------------------------------------- series

struct SeriesOpts {
  OutputOpts out;
  int d = 2;
  std::vector<int> k{1};
  std::string p_grid = "0.5";
  int truncation = 200;
  int m_max = -1;  // >= 0 enables empirical rows
  std::string counts_file;
  std::string arc = "face";
  std::uint64_t budget = EnumerationBudget{}.max_expansions;
};

CountTable load_counts(const std::string& path) {
  CountTable table;
  RowSet rs = read_artifact(path);
  for (const auto& row : rs.rows) {
    if (!row.count("d") || !row.count("k") || !row.count("length")) continue;
    if (row.at("k").empty() || row.count("computed") == 0 || row.at("computed") != "true") continue;
    table.set({std::stoi(row.at("d")), std::stoi(row.at("k")), std::stoi(row.at("length"))},
              bigint(row.at("exact_count")));
  }
  return table;
}

int run_series(const SeriesOpts& o) {
  apply_threads(o.out);
  std::vector<double> grid = parse_p_grid(o.p_grid);

  json config{{"subcommand", "series"}, {"d", o.d},           {"k", o.k},
              {"p_grid", o.p_grid},     {"truncation", o.truncation},
              {"m_max", o.m_max},       {"arc", o.arc},       {"budget", o.budget},
              {"threads", o.out.threads}};
  if (!o.counts_file.empty()) config["counts"] = o.counts_file;

  CountTable table;
  bool have_counts = false;
  if (o.m_max >= 0) {
    if (!o.counts_file.empty()) {
      table = load_counts(o.counts_file);
    } else {
      ArcSet arc = parse_arc_or_throw(o.arc);
      for (int k : o.k) {
        for (int i = 0; i <= o.m_max; ++i) {
          SawQuery q{o.d, k, i, std::nullopt, arc};
          table.set({o.d, k, q.length()}, count_saws_to_arc(q, EnumerationBudget{o.budget}));
        }
      }
    }
    have_counts = true;
  }

  std::vector<SeriesValue> values;
  for (int k : o.k) {
    for (double p : grid) {
      values.push_back(psi_lower(o.d, p, k));
      // Diverges at p = 1; the domain error surfaces as a config error.
      UpperBoundValue ub = upper_bound_series(o.d, p, k, o.truncation);
      values.push_back(ub.truncated);
      values.push_back(ub.closed_form);
      if (have_counts) values.push_back(empirical_psi(table, o.d, p, k, o.m_max));
    }
  }

  MetaLines meta = standard_meta("series", config);
  std::string summary = "series: d=" + std::to_string(o.d) + " " + std::to_string(values.size()) +
                        " rows over " + std::to_string(grid.size()) + " probabilities";
  emit(o.out, "series", config, series_csv(values, meta), series_rows_json(values), {}, summary);
  return kExitOk;
}

// ----------------------------------------------------------------- simulate

struct SimulateOpts {
  OutputOpts out;
  int d = 2;
  int k = 8;
  double p = 0.5;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  bool unconditioned = false;
};

json simulate_config(const SimulateOpts& o, const char* name) {
  return json{{"subcommand", name}, {"d", o.d},
              {"k", o.k},           {"p", o.p},
              {"trials", o.trials}, {"seed", o.seed},
              {"condition_origin_open", !o.unconditioned},
              {"threads", o.out.threads}};
}

int run_simulate(const SimulateOpts& o) {
  apply_threads(o.out);
  TrialSpec spec{o.d, o.k, o.p, o.trials, o.seed, !o.unconditioned};
  ThetaEstimate est = estimate_theta(spec);

  json config = simulate_config(o, "simulate");
  MetaLines meta = standard_meta("theta", config);
  meta.emplace_back("rng", kRngAlgorithm);

  char buf[200];
  std::snprintf(buf, sizeof buf, "simulate: d=%d k=%d p=%s theta=%s ci=[%s,%s] (%.2fs)", o.d, o.k,
                format_double(o.p).c_str(), format_double(est.point).c_str(),
                format_double(est.ci_low).c_str(), format_double(est.ci_high).c_str(),
                est.elapsed_seconds);
  emit(o.out, "theta", config, theta_csv({est}, meta), theta_rows_json({est}),
       {{"rng", kRngAlgorithm}}, buf);
  return kExitOk;
}

// -------------------------------------------------------------------- sweep

struct SweepOpts {
  SimulateOpts base;
  std::string p_grid = "0:1:0.1";
  bool coupled = false;
};

int run_sweep(const SweepOpts& o) {
  apply_threads(o.base.out);
  std::vector<double> grid = parse_p_grid(o.p_grid);
  TrialSpec spec{o.base.d, o.base.k, grid.front(), o.base.trials, o.base.seed,
                 !o.base.unconditioned};

  json config = simulate_config(o.base, "sweep");
  config.erase("p");
  config["p_grid"] = o.p_grid;
  config["coupled"] = o.coupled;

  std::vector<ThetaEstimate> estimates;
  std::string coupling_note;
  if (o.coupled) {
    CoupledSweep sweep = sweep_theta_coupled(spec, grid);
    estimates = std::move(sweep.estimates);
    // With shared variates the success indicator must be monotone in p.
    std::uint64_t violations = 0;
    for (std::size_t g = 1; g < sweep.success.size(); ++g) {
      for (std::size_t t = 0; t < sweep.success[g].size(); ++t) {
        if (sweep.success[g - 1][t] > sweep.success[g][t]) ++violations;
      }
    }
    coupling_note = " coupled, monotonicity violations=" + std::to_string(violations);
  } else {
    estimates = sweep_theta(spec, grid);
  }

  MetaLines meta = standard_meta("theta", config);
  meta.emplace_back("rng", kRngAlgorithm);

  std::string summary = "sweep: d=" + std::to_string(o.base.d) + " k=" + std::to_string(o.base.k) +
                        " " + std::to_string(grid.size()) + " points x " +
                        std::to_string(o.base.trials) + " trials" + coupling_note;
  emit(o.base.out, "theta", config, theta_csv(estimates, meta), theta_rows_json(estimates),
       {{"rng", kRngAlgorithm}}, summary);
  return kExitOk;
}

// ----------------------------------------------------------------- estimate

struct EstimateOpts {
  OutputOpts out;
  int d = 2;
  std::vector<int> k{8};
  double target = 0.5;
  double tolerance = 0.01;
  std::uint64_t seed = 0;
  std::uint64_t trial_budget = ThresholdOptions{}.trial_budget;
  std::uint64_t initial_trials = ThresholdOptions{}.initial_trials;
  std::uint64_t max_probe_trials = ThresholdOptions{}.max_trials_per_probe;
  bool unconditioned = false;
  bool compare = false;
};

int run_estimate(const EstimateOpts& o) {
  apply_threads(o.out);
  ThresholdOptions options;
  options.target_level = o.target;
  options.tolerance = o.tolerance;
  options.trial_budget = o.trial_budget;
  options.initial_trials = o.initial_trials;
  options.max_trials_per_probe = o.max_probe_trials;
  options.condition_origin_open = !o.unconditioned;

  json config{{"subcommand", "estimate"},
              {"d", o.d},
              {"k", o.k},
              {"target", o.target},
              {"tolerance", o.tolerance},
              {"seed", o.seed},
              {"trial_budget", o.trial_budget},
              {"initial_trials", o.initial_trials},
              {"max_probe_trials", o.max_probe_trials},
              {"condition_origin_open", !o.unconditioned},
              {"threads", o.out.threads}};

  std::vector<ThresholdResult> results;
  std::string detail;
  bool exhausted = false;
  for (int k : o.k) {
    ThresholdOptions per_k = options;
    per_k.seed = derive_seed(o.seed, kPurposeSweep, static_cast<std::uint64_t>(k));
    results.push_back(find_threshold(o.d, k, per_k));
    const auto& r = results.back();
    exhausted = exhausted || r.budget_exhausted;
    detail += " p*(" + std::to_string(k) + ")=" + format_double(r.p_star);
  }

  MetaLines meta = standard_meta("thresholds", config);
  meta.emplace_back("rng", kRngAlgorithm);

  std::string summary = "estimate: d=" + std::to_string(o.d) + detail;
  emit(o.out, "thresholds", config, thresholds_csv(results, meta), thresholds_rows_json(results),
       {{"rng", kRngAlgorithm}}, summary);

  if (o.compare) {
    ComparisonReport comparison = compare_to_paper(results, results.size() >= 3);
    std::cerr << render_comparison_text(comparison);
  }
  return exhausted ? kExitBudget : kExitOk;
}

// ------------------------------------------------------------------- report

struct ReportOpts {
  std::string out = "report";
  int threads = 0;
  std::vector<std::string> audits;
  std::vector<std::string> series;
  std::vector<std::string> thresholds;
  std::vector<std::string> sweeps;
};

int run_report(const ReportOpts& o) {
  ReportInputs inputs;
  for (const auto& p : o.audits) inputs.audits.emplace_back(p);
  for (const auto& p : o.series) inputs.series.emplace_back(p);
  for (const auto& p : o.thresholds) inputs.thresholds.emplace_back(p);
  for (const auto& p : o.sweeps) inputs.sweeps.emplace_back(p);
  if (inputs.empty()) throw config_error("report needs at least one input artifact");

  ReportDocument doc;
  try {
    doc = build_report(inputs);
  } catch (const std::exception& e) {
    throw config_error(std::string("cannot build report: ") + e.what());
  }

  std::filesystem::path text_path = o.out + ".txt";
  std::filesystem::path json_path = o.out + ".json";
  write_file_atomic(text_path, doc.text);
  write_file_atomic(json_path, doc.json.dump(2) + "\n");
  std::string written = text_path.string() + ", " + json_path.string();
  if (!doc.comparison_csv.empty()) {
    std::filesystem::path cmp_path = o.out + "_comparison.csv";
    write_file_atomic(cmp_path, doc.comparison_csv);
    written += ", " + cmp_path.string();
  }
  std::cout << "report: wrote " << written << "\n";
  return kExitOk;
}

// ------------------------------------------------------------ config files

// Flat JSON config applied as injected flags. Keys the user already passed
// explicitly are dropped, so flags beat the file for scalars and lists alike.
std::vector<std::string> config_tokens(const std::string& path,
                                       const std::vector<std::string>& user_args) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot read config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw config_error("malformed config file " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw config_error("config file must hold a JSON object");

  auto user_has = [&](const std::string& flag) {
    for (const std::string& a : user_args) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
  };

  std::vector<std::string> tokens;
  for (auto& [key, value] : doc.items()) {
    std::string flag = "--" + key;
    if (user_has(flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) tokens.push_back(flag);
      continue;
    }
    tokens.push_back(flag);
    if (value.is_array()) {
      for (const auto& v : value) {
        tokens.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      }
    } else if (value.is_string()) {
      tokens.push_back(value.get<std::string>());
    } else {
      tokens.push_back(value.dump());
    }
  }
  return tokens;
}

std::vector<std::string> preprocess_args(int argc, char** argv) {
  std::vector<std::string> raw(argv + 1, argv + argc);
  std::string config_path;
  std::vector<std::string> args;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == "--config") {
      if (i + 1 >= raw.size()) throw config_error("--config needs a file argument");
      config_path = raw[++i];
    } else if (raw[i].rfind("--config=", 0) == 0) {
      config_path = raw[i].substr(9);
    } else {
      args.push_back(raw[i]);
    }
  }
  if (config_path.empty()) return args;

  std::vector<std::string> injected = config_tokens(config_path, args);
  // Insert after the subcommand name so the options bind to it.
  auto sub = std::find_if(args.begin(), args.end(),
                          [](const std::string& a) { return !a.empty() && a[0] != '-'; });
  if (sub == args.end()) throw config_error("--config given but no subcommand named");
  args.insert(sub + 1, injected.begin(), injected.end());
  return args;
}

void take_last_everywhere(CLI::App* cmd) {
  for (CLI::Option* opt : cmd->get_options()) {
    if (opt->get_expected_min() > 0) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"site-percolation laboratory: exact path counts, series bounds, "
               "Monte Carlo thresholds"};
  app.option_defaults()->always_capture_default();
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(0, 1);

  EnumerateOpts enumerate_opts;
  CLI::App* enumerate_cmd =
      app.add_subcommand("enumerate", "exact path and walk counts from the origin");
  enumerate_cmd->add_option("--d", enumerate_opts.d, "lattice dimension")->required();
  enumerate_cmd->add_option("--mode", enumerate_opts.mode, "arc | monotone | total (default arc)");
  enumerate_cmd->add_option("--k", enumerate_opts.k, "arc radius");
  enumerate_cmd->add_option("--m", enumerate_opts.m, "down steps (walk length k+2m)");
  enumerate_cmd->add_option("--length", enumerate_opts.length, "walk length for --mode total");
  enumerate_cmd->add_option("--arc", enumerate_opts.arc, "arc reading: face | sphere");
  enumerate_cmd->add_option("--ball-radius", enumerate_opts.ball_radius,
                            "confine walks to ||v|| <= radius");
  enumerate_cmd->add_option("--budget", enumerate_opts.budget, "node-expansion cap");
  add_output_opts(enumerate_cmd, enumerate_opts.out);

  AuditOpts audit_opts;
  CLI::App* audit_cmd = app.add_subcommand("audit", "exact counts vs the claimed m*d^k bounds");
  audit_cmd->add_option("--d", audit_opts.d, "lattice dimension")->required();
  audit_cmd->add_option("--k-max", audit_opts.k_max, "audit k = 1..k_max")->required();
  audit_cmd->add_option("--m-max", audit_opts.m_max, "audit m = 0..m_max")->required();
  audit_cmd->add_option("--arc", audit_opts.arc, "arc reading: face | sphere");
  audit_cmd->add_option("--ball-radius", audit_opts.ball_radius,
                        "confine walks to ||v|| <= radius");
  audit_cmd->add_option("--budget", audit_opts.budget, "node-expansion cap per row");
  add_output_opts(audit_cmd, audit_opts.out);

  SeriesOpts series_opts;
  CLI::App* series_cmd = app.add_subcommand("series", "psi series and bound evaluations");
  series_cmd->add_option("--d", series_opts.d, "lattice dimension")->required();
  series_cmd->add_option("--k", series_opts.k, "arc radii (repeatable)");
  series_cmd->add_option("--p", series_opts.p_grid, "probability or grid (list or start:stop:step)");
  series_cmd->add_option("--truncation", series_opts.truncation, "partial-sum cutoff I");
  series_cmd->add_option("--m-max", series_opts.m_max,
                         "emit empirical psi from exact counts up to m_max");
  series_cmd->add_option("--counts", series_opts.counts_file,
                         "counts artifact to reuse for empirical psi");
  series_cmd->add_option("--arc", series_opts.arc, "arc reading when computing counts");
  series_cmd->add_option("--budget", series_opts.budget, "node-expansion cap");
  add_output_opts(series_cmd, series_opts.out);

  SimulateOpts simulate_opts;
  CLI::App* simulate_cmd = app.add_subcommand("simulate", "estimate theta_k(p) by Monte Carlo");
  simulate_cmd->add_option("--d", simulate_opts.d, "lattice dimension")->required();
  simulate_cmd->add_option("--k", simulate_opts.k, "arc radius")->required();
  simulate_cmd->add_option("--p", simulate_opts.p, "site-open probability")->required();
  simulate_cmd->add_option("--trials", simulate_opts.trials, "number of trials");
  simulate_cmd->add_option("--seed", simulate_opts.seed, "RNG seed");
  simulate_cmd->add_flag("--unconditioned", simulate_opts.unconditioned,
                         "sample the origin instead of conditioning on it open");
  add_output_opts(simulate_cmd, simulate_opts.out);

  SweepOpts sweep_opts;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "theta estimates over a probability grid");
  sweep_cmd->add_option("--d", sweep_opts.base.d, "lattice dimension")->required();
  sweep_cmd->add_option("--k", sweep_opts.base.k, "arc radius")->required();
  sweep_cmd->add_option("--p-grid", sweep_opts.p_grid, "grid (list or start:stop:step)")
      ->required();
  sweep_cmd->add_option("--trials", sweep_opts.base.trials, "trials per grid point");
  sweep_cmd->add_option("--seed", sweep_opts.base.seed, "RNG seed");
  sweep_cmd->add_flag("--coupled", sweep_opts.coupled,
                      "share per-site variates across the grid (monotone coupling)");
  sweep_cmd->add_flag("--unconditioned", sweep_opts.base.unconditioned,
                      "sample the origin instead of conditioning on it open");
  add_output_opts(sweep_cmd, sweep_opts.base.out);

  EstimateOpts estimate_opts;
  CLI::App* estimate_cmd =
      app.add_subcommand("estimate", "locate p*(k) where theta crosses the target level");
  estimate_cmd->add_option("--d", estimate_opts.d, "lattice dimension")->required();
  estimate_cmd->add_option("--k", estimate_opts.k, "arc radii (repeatable)")->required();
  estimate_cmd->add_option("--target", estimate_opts.target, "target level (default 0.5)");
  estimate_cmd->add_option("--tolerance", estimate_opts.tolerance, "bracket width to reach");
  estimate_cmd->add_option("--seed", estimate_opts.seed, "RNG seed");
  estimate_cmd->add_option("--trial-budget", estimate_opts.trial_budget,
                           "total trial budget for the search");
  estimate_cmd->add_option("--initial-trials", estimate_opts.initial_trials,
                           "trials for the first probe at each step");
  estimate_cmd->add_option("--max-probe-trials", estimate_opts.max_probe_trials,
                           "per-probe trial cap");
  estimate_cmd->add_flag("--unconditioned", estimate_opts.unconditioned,
                         "sample the origin instead of conditioning on it open");
  estimate_cmd->add_flag("--compare", estimate_opts.compare,
                         "print the comparison against 1/d to stderr");
  add_output_opts(estimate_cmd, estimate_opts.out);

  ReportOpts report_opts;
  CLI::App* report_cmd =
      app.add_subcommand("report", "merge artifacts into one comparison document");
  report_cmd->add_option("--audit", report_opts.audits, "audit artifacts (repeatable)");
  report_cmd->add_option("--series", report_opts.series, "series artifacts (repeatable)");
  report_cmd->add_option("--thresholds", report_opts.thresholds,
                         "threshold artifacts (repeatable)");
  report_cmd->add_option("--sweep", report_opts.sweeps, "theta artifacts (repeatable)");
  report_cmd->add_option("--out", report_opts.out, "output basename (default: report)");
  report_cmd->add_option("--threads", report_opts.threads, "unused; accepted for symmetry");

  for (CLI::App* cmd : {enumerate_cmd, audit_cmd, series_cmd, simulate_cmd, sweep_cmd,
                        estimate_cmd, report_cmd}) {
    take_last_everywhere(cmd);
  }

  try {
    std::vector<std::string> args = preprocess_args(argc, argv);
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    try {
      app.parse(args);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitConfig;
    }
    if (app.get_subcommands().empty()) {
      std::cout << app.help();
      return kExitOk;
    }

    if (*enumerate_cmd) return run_enumerate(enumerate_opts);
    if (*audit_cmd) return run_audit(audit_opts);
    if (*series_cmd) return run_series(series_opts);
    if (*simulate_cmd) return run_simulate(simulate_opts);
    if (*sweep_cmd) return run_sweep(sweep_opts);
    if (*estimate_cmd) return run_estimate(estimate_opts);
    if (*report_cmd) return run_report(report_opts);
    return kExitOk;
  } catch (const budget_exceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const missing_count& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
