#include "percolab/enumeration.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <limits>
#include <stdexcept>

#include "percolab/lattice.hpp"
#include "percolab/version.hpp"

namespace percolab {

const char* to_string(ArcSet arc) {
  return arc == ArcSet::positive_face ? "positive_face" : "sphere";
}

std::optional<ArcSet> parse_arc_set(const std::string& name) {
  if (name == "positive_face" || name == "face") return ArcSet::positive_face;
  if (name == "sphere") return ArcSet::sphere;
  return std::nullopt;
}

bigint integer_power(std::uint64_t base, std::uint64_t exp) {
  if (exp > std::numeric_limits<unsigned>::max()) throw std::invalid_argument("exponent too large");
  return boost::multiprecision::pow(bigint(base), static_cast<unsigned>(exp));
}

namespace {

constexpr std::uint64_t kFlushInterval = 8192;

struct EngineSpec {
  int d = 1;
  int length = 0;
  int target_norm = -1;      // -1: any endpoint
  bool require_face = false; // endpoint must have all coordinates >= 0
  int ball_radius = -1;      // -1: unconfined
};

struct BudgetState {
  std::uint64_t cap;
  std::atomic<std::uint64_t> used{0};
  std::atomic<bool> exhausted{false};

  // Returns false once the running total has crossed the cap. The total of
  // all flushes is schedule-independent, so whether a query exceeds its
  // budget does not depend on the worker count.
  bool flush(std::uint64_t pending) {
    if (pending > 0) {
      std::uint64_t total = used.fetch_add(pending, std::memory_order_relaxed) + pending;
      if (total > cap) exhausted.store(true, std::memory_order_relaxed);
    }
    return !exhausted.load(std::memory_order_relaxed);
  }
};

// One encoded step: axis * 2 + (1 if negative direction).
using StepCode = int;
using Prefix = std::vector<StepCode>;

// Depth-first walk counter over packed coordinate keys. The same machinery
// runs in three modes: collecting the depth-`split` frontier as work items,
// replaying a work item's prefix, and counting completions of a subtree.
template <typename Key>
class Dfs {
 public:
  Dfs(const EngineSpec& spec, BudgetState& budget, int coord_bound, int bits_per_coord)
      : spec_(spec),
        budget_(budget),
        bound_(coord_bound),
        bits_(bits_per_coord),
        coords_(static_cast<std::size_t>(spec.d), 0),
        path_(static_cast<std::size_t>(spec.length) + 1) {
    path_[0] = pack();
  }

  // Replays an already-validated prefix without counting expansions (they
  // were counted when the prefix was collected).
  void apply_prefix(const Prefix& prefix) {
    for (StepCode code : prefix) {
      if (!push(code / 2, (code & 1) ? -1 : +1)) {
        throw std::logic_error("invalid enumeration prefix");
      }
    }
  }

  void run() {
    recurse();
    if (!budget_.flush(pending_)) aborted_ = true;
    pending_ = 0;
  }

  // Collects every node at `depth == split` into `out` instead of
  // descending past it.
  void collect(int split, std::vector<Prefix>& out) {
    collect_split_ = split;
    collect_out_ = &out;
    run();
    collect_out_ = nullptr;
    collect_split_ = -1;
  }

  std::uint64_t count() const { return count_; }
  bool aborted() const { return aborted_; }

 private:
  Key pack() const {
    Key key = 0;
    for (int i = 0; i < spec_.d; ++i) {
      key = static_cast<Key>(key << bits_) |
            static_cast<Key>(static_cast<unsigned>(coords_[static_cast<std::size_t>(i)] + bound_));
    }
    return key;
  }

  bool visited(Key key) const {
    for (int i = 0; i <= depth_; ++i) {
      if (path_[static_cast<std::size_t>(i)] == key) return true;
    }
    return false;
  }

  bool push(int axis, int sign) {
    int c = coords_[static_cast<std::size_t>(axis)];
    int nc = c + sign;
    int nnorm = norm_ - std::abs(c) + std::abs(nc);
    if (spec_.ball_radius >= 0 && nnorm > spec_.ball_radius) return false;
    if (spec_.target_norm >= 0) {
      // The norm moves by exactly 1 per step, so endpoints outside
      // distance-and-parity reach of the target are unreachable.
      int remaining = spec_.length - (depth_ + 1);
      int diff = std::abs(nnorm - spec_.target_norm);
      if (diff > remaining || ((remaining - diff) & 1)) return false;
    }
    coords_[static_cast<std::size_t>(axis)] = nc;
    Key key = pack();
    if (visited(key)) {
      coords_[static_cast<std::size_t>(axis)] = c;
      return false;
    }
    ++depth_;
    path_[static_cast<std::size_t>(depth_)] = key;
    norm_ = nnorm;
    if (c == 0 && nc < 0) ++negatives_;
    if (c == -1 && nc == 0) --negatives_;
    if (collect_out_) steps_.push_back(axis * 2 + (sign < 0));
    return true;
  }

  void pop(int axis, int sign) {
    int c = coords_[static_cast<std::size_t>(axis)];
    int pc = c - sign;
    if (pc == 0 && c < 0) --negatives_;
    if (pc == -1 && c == 0) ++negatives_;
    norm_ += std::abs(pc) - std::abs(c);
    coords_[static_cast<std::size_t>(axis)] = pc;
    --depth_;
    if (collect_out_) steps_.pop_back();
  }

  void recurse() {
    if (collect_out_ && depth_ == collect_split_) {
      // Frontier node; its expansion is charged to the task that owns it.
      collect_out_->push_back(steps_);
      return;
    }
    if (++pending_ >= kFlushInterval) {
      if (!budget_.flush(pending_)) {
        aborted_ = true;
        pending_ = 0;
        return;
      }
      pending_ = 0;
    }
    if (depth_ == spec_.length) {
      if (endpoint_matches()) ++count_;
      return;
    }
    for (int axis = 0; axis < spec_.d; ++axis) {
      for (int sign : {+1, -1}) {
        if (push(axis, sign)) {
          recurse();
          pop(axis, sign);
          if (aborted_) return;
        }
      }
    }
  }

  bool endpoint_matches() const {
    if (spec_.target_norm >= 0 && norm_ != spec_.target_norm) return false;
    if (spec_.require_face && negatives_ != 0) return false;
    return true;
  }

  const EngineSpec spec_;
  BudgetState& budget_;
  int bound_;
  int bits_;
  std::vector<int> coords_;
  std::vector<Key> path_;
  std::vector<StepCode> steps_;  // maintained only while collecting
  int depth_ = 0;
  int norm_ = 0;
  int negatives_ = 0;
  std::uint64_t pending_ = 0;
  std::uint64_t count_ = 0;
  bool aborted_ = false;
  int collect_split_ = -1;
  std::vector<Prefix>* collect_out_ = nullptr;
};

struct Packing {
  int bound;
  int bits;
  bool fits64;
  bool fits128;
};

Packing plan_packing(const EngineSpec& spec) {
  Packing p{};
  p.bound = spec.ball_radius >= 0 ? std::min(spec.ball_radius, spec.length) : spec.length;
  unsigned values = static_cast<unsigned>(2 * p.bound);
  p.bits = std::max(1, static_cast<int>(std::bit_width(values)));
  int total = p.bits * spec.d;
  p.fits64 = total <= 64;
  p.fits128 = total <= 128;
  return p;
}

template <typename Key>
bigint run_engine_with_key(const EngineSpec& spec, const Packing& packing,
                           const EnumerationBudget& budget) {
  BudgetState state{budget.max_expansions};

  int split = std::min(2, spec.length);
  std::vector<Prefix> tasks;
  Dfs<Key> collector(spec, state, packing.bound, packing.bits);
  if (split > 0) {
    collector.collect(split, tasks);
  } else {
    collector.run();
  }
  if (collector.aborted()) throw budget_exceeded("enumeration exceeded node-expansion budget");
  if (split == 0) return collector.count();

  bigint total = collector.count();  // nothing was counted past the frontier
  std::vector<std::uint64_t> counts(tasks.size(), 0);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (state.exhausted.load(std::memory_order_relaxed)) continue;
    Dfs<Key> worker(spec, state, packing.bound, packing.bits);
    worker.apply_prefix(tasks[i]);
    worker.run();
    counts[i] = worker.count();
  }
  if (state.exhausted.load(std::memory_order_relaxed)) {
    throw budget_exceeded("enumeration exceeded node-expansion budget");
  }
  for (std::uint64_t c : counts) total += c;
  return total;
}

bigint run_engine(const EngineSpec& spec, const EnumerationBudget& budget) {
  Packing packing = plan_packing(spec);
  if (packing.fits64) return run_engine_with_key<std::uint64_t>(spec, packing, budget);
  if (packing.fits128) return run_engine_with_key<unsigned __int128>(spec, packing, budget);
  throw std::invalid_argument("query too large for the packed-path engine");
}

void validate_common(int d, int length, std::optional<int> ball_radius) {
  detail::require_dimension(d);
  if (length < 0) throw std::invalid_argument("walk length must be >= 0");
  if (ball_radius && *ball_radius < 0) throw std::invalid_argument("ball radius must be >= 0");
}

}  // namespace

bigint count_monotone_paths(int d, int k, const EnumerationBudget& budget) {
  detail::require_dimension(d);
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  if (d == 1) return 1;  // a single fixed-sign sequence

  // d-ary tree of step choices; every node visit is one expansion.
  std::uint64_t used = 0;
  bigint count = 0;
  // Depth never exceeds log_d(budget), so plain recursion is safe.
  auto walk = [&](auto&& self, int depth) -> void {
    if (++used > budget.max_expansions) {
      throw budget_exceeded("monotone path enumeration exceeded budget");
    }
    if (depth == k) {
      ++count;
      return;
    }
    for (int axis = 0; axis < d; ++axis) self(self, depth + 1);
  };
  walk(walk, 0);
  return count;
}

bigint count_saws_with_length(int d, int length, int k, ArcSet arc,
                              std::optional<int> ball_radius, const EnumerationBudget& budget) {
  validate_common(d, length, ball_radius);
  if (k < 0) throw std::invalid_argument("arc radius must be >= 0");
  if (ball_radius && *ball_radius < k) {
    throw std::invalid_argument("confinement radius smaller than the target arc");
  }
  // Each step changes the norm by exactly one.
  if (length < k || ((length - k) & 1)) return 0;

  EngineSpec spec;
  spec.d = d;
  spec.length = length;
  spec.target_norm = k;
  spec.require_face = arc == ArcSet::positive_face;
  spec.ball_radius = ball_radius ? *ball_radius : -1;
  return run_engine(spec, budget);
}

bigint count_saws_to_arc(const SawQuery& q, const EnumerationBudget& budget) {
  if (q.m < 0) throw std::invalid_argument("m must be >= 0");
  return count_saws_with_length(q.d, q.length(), q.k, q.arc, q.ball_radius, budget);
}

bigint total_saw_count(int d, int length, const EnumerationBudget& budget,
                       std::optional<int> ball_radius) {
  validate_common(d, length, ball_radius);
  EngineSpec spec;
  spec.d = d;
  spec.length = length;
  spec.ball_radius = ball_radius ? *ball_radius : -1;
  return run_engine(spec, budget);
}

void CountTable::set(const CountKey& key, bigint value) {
  if (value < 0) throw std::invalid_argument("counts are non-negative");
  bool reachable = key.length >= key.k && (key.length - key.k) % 2 == 0;
  if (!reachable && value != 0) {
    throw std::invalid_argument("no walk of this length can end on the arc");
  }
  entries_[key] = std::move(value);
}

bool CountTable::contains(const CountKey& key) const { return entries_.count(key) > 0; }

const bigint& CountTable::at(const CountKey& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw missing_count("no count for d=" + std::to_string(key.d) + " k=" + std::to_string(key.k) +
                        " length=" + std::to_string(key.length));
  }
  return it->second;
}

bigint paper_bound(int d, int k, int m) {
  return bigint(std::max(1, m)) * integer_power(static_cast<std::uint64_t>(d),
                                                static_cast<std::uint64_t>(k));
}

namespace {

std::string now_utc_iso8601() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

AuditReport audit_paper_bounds(int d, int k_max, int m_max, const AuditOptions& options) {
  detail::require_dimension(d);
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  if (m_max < 0) throw std::invalid_argument("m_max must be >= 0");

  AuditReport report;
  report.timestamp = now_utc_iso8601();
  report.tool_version = kToolVersion;
  report.arc = options.arc;
  report.ball_radius = options.ball_radius;
  report.convention =
      "n_{k+2m}(A_k) counts self-avoiding walks of length k+2m from the origin "
      "whose endpoint lies on A_k";

  for (int k = 1; k <= k_max; ++k) {
    for (int m = 0; m <= m_max; ++m) {
      AuditRow row;
      row.d = d;
      row.k = k;
      row.m = m;
      row.length = k + 2 * m;
      row.paper_bound = paper_bound(d, k, m);
      SawQuery q{d, k, m, options.ball_radius, options.arc};
      try {
        row.exact_count = count_saws_to_arc(q, options.budget);
        row.computed = true;
        row.bound_holds = row.exact_count <= row.paper_bound;
        report.counts.set({d, k, row.length}, row.exact_count);
      } catch (const budget_exceeded&) {
        row.computed = false;
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace percolab
