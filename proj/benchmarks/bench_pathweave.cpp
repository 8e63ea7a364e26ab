#include <benchmark/benchmark.h>

#include "pathweave/crossing.hpp"
#include "pathweave/metrics.hpp"
#include "pathweave/random_paths.hpp"
#include "pathweave/rng.hpp"
#include "pathweave/weave.hpp"

using namespace pathweave;

namespace {

CadlagPath jumpy_path(int jumps, std::uint64_t seed) {
  Rng rng(seed);
  return random_simple_step_path(rng, jumps, 2.0, 2.0);
}

void BM_frechet_dp(benchmark::State& state) {
  const CadlagPath a = jumpy_path(static_cast<int>(state.range(0)), 1);
  const CadlagPath b = jumpy_path(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(d_J1(a, b, 0.01, false).value);
  }
}
BENCHMARK(BM_frechet_dp)->Arg(2)->Arg(8)->Arg(32);

void BM_graph_refine(benchmark::State& state) {
  const CadlagPath p = jumpy_path(static_cast<int>(state.range(0)), 3);
  const GraphPolyline g = compact_graph(p, GraphKind::Filled);
  for (auto _ : state) {
    benchmark::DoNotOptimize(refine_graph(g, 0.01).points.size());
  }
}
BENCHMARK(BM_graph_refine)->Arg(8)->Arg(64);

void BM_weave_trace(benchmark::State& state) {
  const HeavyTailModel model = default_mu(1.0);
  const SimWindow win{-1.5, 1.5, -1.2, 1.0, static_cast<double>(state.range(0))};
  const GridSpec grid{GridSpec::Kind::Uniform, 15, 15, {}};
  std::uint64_t seed = 1;
  std::size_t events = 0;
  for (auto _ : state) {
    const Weave w = build_weave(model, win, grid, seed++);
    events += w.events.events.size();
    benchmark::DoNotOptimize(w.ensemble.size());
  }
  state.SetItemsProcessed(static_cast<int64_t>(events));
}
BENCHMARK(BM_weave_trace)->Arg(1)->Arg(4)->Arg(16);

void BM_in_S_scan(benchmark::State& state) {
  const SimWindow win{-1.5, 1.5, -1.2, 1.0, 16.0};
  const Weave w = build_weave(default_mu(1.0), win, {GridSpec::Kind::Uniform, 15, 15, {}}, 7);
  const CrossingWindow cw{1.0, 0.05, 0.5, 0.0};
  for (auto _ : state) {
    int members = 0;
    for (const auto& p : w.ensemble.paths())
      if (in_S(p, SVariant::M, cw).member) ++members;
    benchmark::DoNotOptimize(members);
  }
}
BENCHMARK(BM_in_S_scan);

void BM_modulusM(benchmark::State& state) {
  const SimWindow win{-1.5, 1.5, -1.2, 1.0, 16.0};
  const Weave w = build_weave(default_mu(1.0), win, {GridSpec::Kind::Uniform, 8, 8, {}}, 9);
  for (auto _ : state) {
    double sup = 0.0;
    for (const auto& p : w.ensemble.paths()) sup = std::max(sup, modulusM(p, 1.0, 0.1));
    benchmark::DoNotOptimize(sup);
  }
}
BENCHMARK(BM_modulusM);

}  // namespace

BENCHMARK_MAIN();
