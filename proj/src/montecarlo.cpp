#include "percolab/montecarlo.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "percolab/rng.hpp"
#include "percolab/union_find.hpp"

namespace percolab {

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  if (successes > trials) throw std::invalid_argument("successes exceed trials");
  double n = static_cast<double>(trials);
  double phat = static_cast<double>(successes) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (phat + z2 / (2.0 * n)) / denom;
  double half = z / denom * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
  // The interval always contains the point estimate, rounding included.
  double low = std::min(std::max(0.0, center - half), phat);
  double high = std::max(std::min(1.0, center + half), phat);
  return {low, high};
}

BallGeometry::BallGeometry(int d, int k) : d_(d), k_(k) {
  detail::require_dimension(d);
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  sites_ = enumerate_ball(d, k);

  auto radius = static_cast<std::uint64_t>(k);
  Vertex zero = origin(d);
  offsets_.reserve(sites_.size() + 1);
  offsets_.push_back(0);
  is_arc_.assign(sites_.size(), 0);
  for (std::uint32_t i = 0; i < sites_.size(); ++i) {
    const Vertex& v = sites_[i];
    if (v == zero) origin_ = i;
    if (l1_norm(v) == radius) {
      arc_sites_.push_back(i);
      is_arc_[i] = 1;
    }
    for (const Vertex& w : neighbors(v)) {
      if (l1_norm(w) > radius) continue;
      auto it = std::lower_bound(sites_.begin(), sites_.end(), w);
      adjacency_.push_back(static_cast<std::uint32_t>(it - sites_.begin()));
    }
    offsets_.push_back(static_cast<std::uint32_t>(adjacency_.size()));
  }
}

namespace {

void sample_open(const TrialSpec& spec, std::size_t n, std::uint64_t trial_index,
                 std::vector<std::uint8_t>& open) {
  open.assign(n, 0);
  for (std::size_t block = 0; block * 4 < n; ++block) {
    auto words = site_word_block(spec.seed, trial_index, block);
    std::size_t base = block * 4;
    for (std::size_t j = 0; j < 4 && base + j < n; ++j) {
      open[base + j] = uniform_from_word(words[j]) < spec.p;
    }
  }
}

bool origin_reaches_arc_bfs(const BallGeometry& g, const std::vector<std::uint8_t>& open,
                            TrialScratch& scratch) {
  auto n = g.site_count();
  scratch.seen.assign(n, 0);
  scratch.queue.clear();

  std::uint32_t start = g.origin_index();
  if (!open[start]) return false;
  if (g.on_arc(start)) return true;  // k = 0

  scratch.seen[start] = 1;
  scratch.queue.push_back(start);
  for (std::size_t head = 0; head < scratch.queue.size(); ++head) {
    std::uint32_t site = scratch.queue[head];
    for (const std::uint32_t* it = g.neighbors_begin(site); it != g.neighbors_end(site); ++it) {
      std::uint32_t w = *it;
      if (scratch.seen[w] || !open[w]) continue;
      if (g.on_arc(w)) return true;
      scratch.seen[w] = 1;
      scratch.queue.push_back(w);
    }
  }
  return false;
}

bool origin_reaches_arc_unionfind(const BallGeometry& g, const std::vector<std::uint8_t>& open) {
  auto n = g.site_count();
  if (!open[g.origin_index()]) return false;
  // Virtual node n stands for the whole arc.
  UnionFind uf(n + 1);
  for (std::uint32_t site = 0; site < n; ++site) {
    if (!open[site]) continue;
    for (const std::uint32_t* it = g.neighbors_begin(site); it != g.neighbors_end(site); ++it) {
      if (*it > site && open[*it]) uf.merge(site, *it);
    }
  }
  for (std::uint32_t site : g.arc_sites()) {
    if (open[site]) uf.merge(static_cast<std::uint32_t>(n), site);
  }
  return uf.connected(g.origin_index(), static_cast<std::uint32_t>(n));
}

void validate(const TrialSpec& spec) {
  detail::require_dimension(spec.d);
  if (spec.k < 0) throw std::invalid_argument("k must be >= 0");
  if (!(spec.p >= 0.0 && spec.p <= 1.0)) throw std::invalid_argument("p must be in [0,1]");
  if (spec.trials < 1) throw std::invalid_argument("trials must be >= 1");
}

ThetaEstimate aggregate(const TrialSpec& spec, std::uint64_t successes, double elapsed) {
  ThetaEstimate est;
  est.spec = spec;
  est.successes = successes;
  est.point = static_cast<double>(successes) / static_cast<double>(spec.trials);
  WilsonInterval ci = wilson_interval(successes, spec.trials, kZ95);
  est.ci_low = ci.low;
  est.ci_high = ci.high;
  est.elapsed_seconds = elapsed;
  return est;
}

}  // namespace

bool run_trial(const TrialSpec& spec, const BallGeometry& geometry, std::uint64_t trial_index,
               TrialScratch& scratch, ConnectivityEngine engine) {
  sample_open(spec, geometry.site_count(), trial_index, scratch.open);
  if (spec.condition_origin_open) scratch.open[geometry.origin_index()] = 1;
  return engine == ConnectivityEngine::bfs
             ? origin_reaches_arc_bfs(geometry, scratch.open, scratch)
             : origin_reaches_arc_unionfind(geometry, scratch.open);
}

ThetaEstimate estimate_theta(const TrialSpec& spec) {
  validate(spec);
  BallGeometry geometry(spec.d, spec.k);
  return estimate_theta(spec, geometry);
}

ThetaEstimate estimate_theta(const TrialSpec& spec, const BallGeometry& geometry) {
  validate(spec);
  if (geometry.d() != spec.d || geometry.k() != spec.k) {
    throw std::invalid_argument("geometry does not match the trial spec");
  }
  auto t0 = std::chrono::steady_clock::now();
  std::uint64_t successes = 0;

#pragma omp parallel reduction(+ : successes)
  {
    TrialScratch scratch;
#pragma omp for schedule(static)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(spec.trials); ++t) {
      successes += run_trial(spec, geometry, static_cast<std::uint64_t>(t), scratch) ? 1 : 0;
    }
  }

  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return aggregate(spec, successes, elapsed);
}

std::vector<ThetaEstimate> sweep_theta(const TrialSpec& base, const std::vector<double>& p_grid) {
  if (p_grid.empty()) throw std::invalid_argument("p grid must be non-empty");
  BallGeometry geometry(base.d, base.k);
  std::vector<ThetaEstimate> out;
  out.reserve(p_grid.size());
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    TrialSpec spec = base;
    spec.p = p_grid[i];
    spec.seed = derive_seed(base.seed, kPurposeSweep, i);
    out.push_back(estimate_theta(spec, geometry));
  }
  return out;
}

CoupledSweep sweep_theta_coupled(const TrialSpec& base, const std::vector<double>& p_grid) {
  if (p_grid.empty()) throw std::invalid_argument("p grid must be non-empty");
  for (double p : p_grid) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must be in [0,1]");
  }
  TrialSpec probe = base;
  probe.p = p_grid.front();
  validate(probe);

  BallGeometry geometry(base.d, base.k);
  auto n = geometry.site_count();
  auto t0 = std::chrono::steady_clock::now();

  CoupledSweep sweep;
  sweep.success.assign(p_grid.size(), std::vector<std::uint8_t>(base.trials, 0));

#pragma omp parallel
  {
    TrialScratch scratch;
    std::vector<double> uniforms(n);
#pragma omp for schedule(static)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(base.trials); ++t) {
      // One set of variates per trial, thresholded at every grid point.
      for (std::size_t block = 0; block * 4 < n; ++block) {
        auto words = site_word_block(base.seed, static_cast<std::uint64_t>(t), block);
        std::size_t base_idx = block * 4;
        for (std::size_t j = 0; j < 4 && base_idx + j < n; ++j) {
          uniforms[base_idx + j] = uniform_from_word(words[j]);
        }
      }
      for (std::size_t g = 0; g < p_grid.size(); ++g) {
        scratch.open.assign(n, 0);
        for (std::size_t s = 0; s < n; ++s) scratch.open[s] = uniforms[s] < p_grid[g];
        if (base.condition_origin_open) scratch.open[geometry.origin_index()] = 1;
        if (!scratch.open[geometry.origin_index()]) continue;
        sweep.success[g][static_cast<std::size_t>(t)] =
            origin_reaches_arc_bfs(geometry, scratch.open, scratch) ? 1 : 0;
      }
    }
  }

  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  sweep.estimates.reserve(p_grid.size());
  for (std::size_t g = 0; g < p_grid.size(); ++g) {
    TrialSpec spec = base;
    spec.p = p_grid[g];
    std::uint64_t successes = 0;
    for (std::uint8_t s : sweep.success[g]) successes += s;
    sweep.estimates.push_back(aggregate(spec, successes, elapsed / static_cast<double>(p_grid.size())));
  }
  return sweep;
}

}  // namespace percolab
