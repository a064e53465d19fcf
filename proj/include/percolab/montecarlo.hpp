#pragma once

#include <cstdint>
#include <vector>

#include "percolab/lattice.hpp"

namespace percolab {

// One Bernoulli site-percolation experiment on the ball ||v|| <= k: does an
// open path join the origin to an open site of the sphere ||v|| = k?
struct TrialSpec {
  int d = 2;
  int k = 8;
  double p = 0.5;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  // Condition on the origin being open (forced open, matching the series
  // convention). When false the origin is sampled like any other site.
  bool condition_origin_open = true;
};

struct WilsonInterval {
  double low;
  double high;
};

// Wilson score interval for a binomial proportion at z standard normal
// quantiles; well behaved at 0 and 1.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z);

inline constexpr double kZ95 = 1.959963984540054;

struct ThetaEstimate {
  TrialSpec spec;
  std::uint64_t successes = 0;
  double point = 0.0;
  double ci_low = 0.0;   // 95% Wilson
  double ci_high = 0.0;
  double elapsed_seconds = 0.0;  // wall time; not part of the value
};

// Immutable ball geometry shared by all trials of a spec: sites in
// canonical lexicographic order (the RNG site indexing), adjacency in CSR
// form, and the indices of the target sphere.
class BallGeometry {
 public:
  BallGeometry(int d, int k);

  int d() const { return d_; }
  int k() const { return k_; }
  std::size_t site_count() const { return sites_.size(); }
  std::uint32_t origin_index() const { return origin_; }
  bool on_arc(std::uint32_t site) const { return is_arc_[site] != 0; }
  const std::vector<Vertex>& sites() const { return sites_; }
  const std::vector<std::uint32_t>& arc_sites() const { return arc_sites_; }

  const std::uint32_t* neighbors_begin(std::uint32_t site) const {
    return adjacency_.data() + offsets_[site];
  }
  const std::uint32_t* neighbors_end(std::uint32_t site) const {
    return adjacency_.data() + offsets_[site + 1];
  }

 private:
  int d_;
  int k_;
  std::vector<Vertex> sites_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> adjacency_;
  std::vector<std::uint32_t> arc_sites_;
  std::vector<std::uint8_t> is_arc_;
  std::uint32_t origin_ = 0;
};

enum class ConnectivityEngine { bfs, union_find };

// Scratch buffers reused across trials by one worker.
struct TrialScratch {
  std::vector<std::uint8_t> open;
  std::vector<std::uint32_t> queue;
  std::vector<std::uint8_t> seen;
};

// Samples configuration (seed, trial_index) and reports whether the origin
// reaches an open arc site through open sites. Both connectivity engines
// give identical answers; BFS is the default, union_find is kept for
// cross-checking and batch-labeling experiments.
bool run_trial(const TrialSpec& spec, const BallGeometry& geometry, std::uint64_t trial_index,
               TrialScratch& scratch, ConnectivityEngine engine = ConnectivityEngine::bfs);

// All trials of the spec, parallelized; the outcome is a pure function of
// the spec (bit-identical for any worker count).
ThetaEstimate estimate_theta(const TrialSpec& spec);
ThetaEstimate estimate_theta(const TrialSpec& spec, const BallGeometry& geometry);

// One estimate per grid point with sub-seeds derived from (seed, index).
std::vector<ThetaEstimate> sweep_theta(const TrialSpec& base, const std::vector<double>& p_grid);

// Shared-variate sweep: every grid point reuses the same per-site uniforms,
// so a trial's success indicator is exactly non-decreasing along an
// increasing p-grid, not just in distribution.
struct CoupledSweep {
  std::vector<ThetaEstimate> estimates;
  // success[g][t] for grid point g, trial t
  std::vector<std::vector<std::uint8_t>> success;
};

CoupledSweep sweep_theta_coupled(const TrialSpec& base, const std::vector<double>& p_grid);

}  // namespace percolab
