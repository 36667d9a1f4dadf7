#include <benchmark/benchmark.h>

#include <random>

#include "deltaideal/curvature.hpp"
#include "deltaideal/delta.hpp"

using namespace deltaideal;

namespace {

CurvatureTensor random_tensor(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> raw(static_cast<std::size_t>(n) * n * n * n);
  for (double& v : raw) v = uni(rng);
  return validate_curvature_tensor(symmetrize_components(raw, n), n);
}

void BM_delta_invariant(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CurvatureTensor R = random_tensor(n, 7);
  const Partition p(n, {2});
  OptimizerOptions opts;
  opts.restarts = 8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(delta_invariant(R, p, opts).value);
  }
}
BENCHMARK(BM_delta_invariant)->Arg(3)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_delta_sweep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CurvatureTensor R = random_tensor(n, 11);
  OptimizerOptions opts;
  opts.restarts = 8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_normalized_delta(R, opts).value);
  }
}
BENCHMARK(BM_delta_sweep)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_bruteforce_sampling(benchmark::State& state) {
  const CurvatureTensor R = random_tensor(4, 13);
  const Partition p(4, {2, 2});
  const long samples = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(delta_bruteforce(R, p, samples, 5));
  }
  state.SetItemsProcessed(state.iterations() * samples);
}
BENCHMARK(BM_bruteforce_sampling)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_objective_gradient(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CurvatureTensor R = random_tensor(n, 17);
  const Partition p(n, {2, 2});
  const SubspaceConfig cfg(random_orthogonal(n, 3), p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(configuration_objective(R, cfg));
  }
}
BENCHMARK(BM_objective_gradient)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
