#include <benchmark/benchmark.h>

#include <cstdint>

#include "phyllo/diophantine.hpp"
#include "phyllo/linlattice.hpp"
#include "phyllo/spiral.hpp"
#include "phyllo/tessellation.hpp"

using namespace phyllo;

namespace {

SpiralConfig golden(double alpha) { return SpiralConfig::from_turns(alpha, golden_ratio()); }

void BM_ExpandGolden(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cf_expand(golden_ratio(), 80));
}
BENCHMARK(BM_ExpandGolden);

void BM_FracTurns(benchmark::State& state) {
  const auto cfg = golden(0.5);
  std::int64_t j = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cfg.frac_turns(j));
    j = j * 6364136223846793005LL % 1'000'000'000'000LL + 1;
  }
}
BENCHMARK(BM_FracTurns);

void BM_LatticeCell(benchmark::State& state) {
  const LinearLattice lat(cf_expand(golden_ratio(), 80), 1e-3);
  for (auto _ : state) benchmark::DoNotOptimize(voronoi_cell_origin(lat));
}
BENCHMARK(BM_LatticeCell);

void BM_ParastichyState(benchmark::State& state) {
  const LinearLattice lat(cf_expand(golden_ratio(), 80), 1e-5);
  for (auto _ : state) benchmark::DoNotOptimize(parastichy_state(lat));
}
BENCHMARK(BM_ParastichyState);

// Single cell at index 10^k.
void BM_SpiralCell(benchmark::State& state) {
  const auto cfg = golden(0.5);
  std::int64_t j = 1;
  for (int k = 0; k < state.range(0); ++k) j *= 10;
  for (auto _ : state) benchmark::DoNotOptimize(cell(cfg, j));
}
BENCHMARK(BM_SpiralCell)->DenseRange(2, 8, 2);

void BM_AreaSweep(benchmark::State& state) {
  const auto cfg = golden(0.5);
  SweepOptions opt;
  opt.threads = static_cast<unsigned>(state.range(0));
  opt.keep_polygons = false;
  for (auto _ : state) benchmark::DoNotOptimize(area_sweep(cfg, 1, 10000, opt));
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_AreaSweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
BENCHMARK_MAIN();
