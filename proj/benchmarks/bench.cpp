// Parallel production kernels vs the serial reference implementations.

#include <benchmark/benchmark.h>

#include <omp.h>

#include "percolab/enumeration.hpp"
#include "percolab/montecarlo.hpp"
#include "percolab/reference.hpp"

using namespace percolab;

namespace {

void BM_SawEngine(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    bigint n = count_saws_with_length(2, 10, 4, ArcSet::sphere);
    benchmark::DoNotOptimize(n);
  }
  omp_set_num_threads(omp_get_num_procs());
}
BENCHMARK(BM_SawEngine)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SawReference(benchmark::State& state) {
  for (auto _ : state) {
    bigint n = reference::count_saws_with_length(2, 10, 4, ArcSet::sphere);
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_SawReference)->Unit(benchmark::kMillisecond);

void BM_TotalSawEngine(benchmark::State& state) {
  for (auto _ : state) {
    bigint n = total_saw_count(2, 12);
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_TotalSawEngine)->Unit(benchmark::kMillisecond);

void BM_TotalSawReference(benchmark::State& state) {
  for (auto _ : state) {
    bigint n = reference::total_saw_count(2, 12);
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_TotalSawReference)->Unit(benchmark::kMillisecond);

void BM_TrialBfs(benchmark::State& state) {
  BallGeometry geometry(2, static_cast<int>(state.range(0)));
  TrialSpec spec;
  spec.d = 2;
  spec.k = static_cast<int>(state.range(0));
  spec.p = 0.59;
  spec.seed = 7;
  TrialScratch scratch;
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_trial(spec, geometry, trial++, scratch, ConnectivityEngine::bfs));
  }
}
BENCHMARK(BM_TrialBfs)->Arg(16)->Arg(32)->Arg(64);

void BM_TrialUnionFind(benchmark::State& state) {
  BallGeometry geometry(2, static_cast<int>(state.range(0)));
  TrialSpec spec;
  spec.d = 2;
  spec.k = static_cast<int>(state.range(0));
  spec.p = 0.59;
  spec.seed = 7;
  TrialScratch scratch;
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_trial(spec, geometry, trial++, scratch, ConnectivityEngine::union_find));
  }
}
BENCHMARK(BM_TrialUnionFind)->Arg(16)->Arg(32)->Arg(64);

void BM_EstimateTheta(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  TrialSpec spec;
  spec.d = 2;
  spec.k = 32;
  spec.p = 0.59;
  spec.trials = 20000;
  spec.seed = 11;
  BallGeometry geometry(2, 32);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_theta(spec, geometry));
  }
  omp_set_num_threads(omp_get_num_procs());
}
BENCHMARK(BM_EstimateTheta)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
