// Serial reference path against the OpenMP path for the per-sample kernels.
// Arg: grid size.

#include <darboux/scene.hpp>

#include <benchmark/benchmark.h>

using namespace darboux;

namespace {

const SceneConfig& cylinder() {
  static const SceneConfig c = builtinScene("cylinder-geodesic");
  return c;
}

Grid gridOf(const benchmark::State& state) {
  const SceneConfig& c = cylinder();
  return Grid(c.grid.s0, c.grid.s1, static_cast<int>(state.range(0)));
}

template <Exec E>
void BM_Frames(benchmark::State& state) {
  const Grid g = gridOf(state);
  for (auto _ : state) benchmark::DoNotOptimize(sampleDarbouxJets(cylinder().source, g, E));
  state.SetItemsProcessed(state.iterations() * g.size());
}

template <Exec E>
void BM_Construct(benchmark::State& state) {
  const Grid g = gridOf(state);
  const auto jets = sampleDarbouxJets(cylinder().source, g, Exec::serial);
  const FamilyConstants k = withDefaults(Family::rns2, cylinder().constants);
  for (auto _ : state) benchmark::DoNotOptimize(construct(Family::rns2, jets, k, g, E));
  state.SetItemsProcessed(state.iterations() * g.size());
}

template <Exec E>
void BM_Pipeline(benchmark::State& state) {
  SceneConfig c = cylinder();
  c.grid.n = static_cast<int>(state.range(0));
  RunOptions opt;
  opt.exec = E;
  opt.formats = std::vector<std::string>{};
  for (auto _ : state) benchmark::DoNotOptimize(runScene(c, opt));
}

}  // namespace

BENCHMARK(BM_Frames<Exec::serial>)->Arg(2001)->Arg(20001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Frames<Exec::parallel>)->Arg(2001)->Arg(20001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Construct<Exec::serial>)->Arg(2001)->Arg(20001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Construct<Exec::parallel>)->Arg(2001)->Arg(20001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Pipeline<Exec::serial>)->Arg(2001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Pipeline<Exec::parallel>)->Arg(2001)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
