#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "percolab/bigint.hpp"
#include "percolab/errors.hpp"

namespace percolab {

// Which endpoint set plays the role of the arc A_k. The construction that
// builds A_k by closing the basis under up steps yields the positive-orthant
// face {a_i >= 0, sum a_i = k}; the percolation event targets the full
// sphere {||v|| = k}. Counts differ between the two readings, so both are
// first-class and every table records which one produced it.
enum class ArcSet {
  positive_face,
  sphere,
};

const char* to_string(ArcSet arc);
std::optional<ArcSet> parse_arc_set(const std::string& name);

struct SawQuery {
  int d = 1;
  int k = 0;  // arc radius
  int m = 0;  // number of down steps; the walk length is k + 2m
  std::optional<int> ball_radius;  // confine the walk to ||v|| <= radius
  ArcSet arc = ArcSet::positive_face;

  int length() const { return k + 2 * m; }
};

struct EnumerationBudget {
  // Cap on vertex expansions per query; a query that would exceed it
  // throws budget_exceeded instead of running without bound.
  std::uint64_t max_expansions = 1'000'000'000;
};

bigint integer_power(std::uint64_t base, std::uint64_t exp);

// Number of length-k walks from the origin using only the fixed-sign basis
// steps +e_1..+e_d, counted by exhaustive traversal (the claim under audit
// is that this equals d^k).
bigint count_monotone_paths(int d, int k, const EnumerationBudget& budget = {});

// Exact number of self-avoiding walks of the given length from the origin
// whose endpoint lies on the arc of radius k (in the chosen reading).
// Walks of length != k (mod 2) or length < k cannot end on the arc.
bigint count_saws_with_length(int d, int length, int k, ArcSet arc,
                              std::optional<int> ball_radius = {},
                              const EnumerationBudget& budget = {});
bigint count_saws_to_arc(const SawQuery& q, const EnumerationBudget& budget = {});

// Exact number of self-avoiding walks of the given length, any endpoint.
bigint total_saw_count(int d, int length, const EnumerationBudget& budget = {},
                       std::optional<int> ball_radius = {});

// Exact counts n_length(A_k) keyed by (d, k, length).
struct CountKey {
  int d;
  int k;
  int length;
  auto operator<=>(const CountKey&) const = default;
};

class CountTable {
 public:
  void set(const CountKey& key, bigint value);
  bool contains(const CountKey& key) const;
  const bigint& at(const CountKey& key) const;  // throws missing_count
  const std::map<CountKey, bigint>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::map<CountKey, bigint> entries_;
};

// One audited claim instance: the exact count n_{k+2m}(A_k) next to the
// claimed ceiling d^k (m <= 1) or m*d^k (m >= 2). bound_holds is reported,
// never assumed.
struct AuditRow {
  int d = 0;
  int k = 0;
  int m = 0;
  int length = 0;
  bigint exact_count;
  bigint paper_bound;
  bool bound_holds = false;
  bool computed = false;  // false when the budget cut the row off
};

struct AuditOptions {
  std::optional<int> ball_radius;
  ArcSet arc = ArcSet::positive_face;
  EnumerationBudget budget{};
};

struct AuditReport {
  std::string timestamp;  // ISO-8601 UTC, generation time
  std::string tool_version;
  ArcSet arc = ArcSet::positive_face;
  std::optional<int> ball_radius;
  // Endpoint convention in force: a (k+2m)-walk counts toward n_{k+2m}(A_k)
  // iff its endpoint lies on A_k itself.
  std::string convention;
  std::vector<AuditRow> rows;
  CountTable counts;
};

bigint paper_bound(int d, int k, int m);

// Exact counts for every k in 1..k_max, m in 0..m_max, each compared
// against the claimed bound. Rows whose enumeration exceeds the budget are
// included with computed = false rather than failing the whole audit.
AuditReport audit_paper_bounds(int d, int k_max, int m_max, const AuditOptions& options = {});

}  // namespace percolab
