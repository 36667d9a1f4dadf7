#include <benchmark/benchmark.h>

#include "deltaideal/mesh.hpp"
#include "deltaideal/spectral.hpp"

using namespace deltaideal;

namespace {

void BM_icosphere_generation(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(make_icosphere(level).face_count());
  }
}
BENCHMARK(BM_icosphere_generation)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_laplacian_assembly(benchmark::State& state) {
  const TriMesh m = make_icosphere(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_mesh_laplacian(m).mass.sum());
  }
  state.SetLabel(std::to_string(m.vertex_count()) + " vertices");
}
BENCHMARK(BM_laplacian_assembly)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_lambda1_icosphere(benchmark::State& state) {
  const TriMesh m = make_icosphere(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambda1_mesh(m).lambda1);
  }
  state.SetLabel(std::to_string(m.vertex_count()) + " vertices");
}
BENCHMARK(BM_lambda1_icosphere)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_lambda1_quotient(benchmark::State& state) {
  const TriMesh q = antipodal_quotient(make_icosphere(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambda1_mesh(q).lambda1);
  }
}
BENCHMARK(BM_lambda1_quotient)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_lambda1_torus(benchmark::State& state) {
  const TriMesh m = make_flat_torus_grid(static_cast<int>(state.range(0)),
                                         static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambda1_mesh(m).lambda1);
  }
}
BENCHMARK(BM_lambda1_torus)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
