#include <benchmark/benchmark.h>

#include <vector>

#include "dcpack/bounds.hpp"
#include "dcpack/feasibility.hpp"
#include "dcpack/grid.hpp"
#include "dcpack/reduction.hpp"

using namespace dcpack;

namespace {

Instance zimm(int n) {
  std::vector<double> r;
  for (int i = 1; i <= n; ++i) r.push_back(i);
  return Instance(r, CircleContainer{});
}

void BM_BitmapCount(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Bitmap2D b(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = (j % 3); i < n; i += 3) b.set(i, j);
  for (auto _ : state) benchmark::DoNotOptimize(b.count());
}
BENCHMARK(BM_BitmapCount)->Arg(129)->Arg(513)->Arg(2049);

void BM_Frontier(benchmark::State& state) {
  const double ratio = static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto f = separation_frontier(ratio, 1.0, ModelMode::kRestricted,
                                 static_cast<int>(ratio) + 2);
    benchmark::DoNotOptimize(f.pairs.data());
  }
}
BENCHMARK(BM_Frontier)->Arg(16)->Arg(128)->Arg(1024);

void BM_RestrictedCandidates(benchmark::State& state) {
  const Grid g = build_grid(CircleContainer{}, 9.0, 9.0 / state.range(0), 1.0);
  for (auto _ : state) {
    auto c = restricted_candidates(g, Circle{1, 5.0});
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_RestrictedCandidates)->Arg(32)->Arg(128);

void BM_Propagate(benchmark::State& state) {
  const Instance inst({7.0, 6.0}, CircleContainer{});
  const Grid g = region_grid(CircleContainer{}, 13.6, 0.2);
  const RegionMap initial = initial_regions(inst, g, true);
  for (auto _ : state) benchmark::DoNotOptimize(propagate(initial, inst.radii()));
}
BENCHMARK(BM_Propagate)->Unit(benchmark::kMillisecond);

void BM_SolveZimm4(benchmark::State& state) {
  const Instance inst = zimm(4);
  const double R = 6.9;
  const Grid g = build_grid(CircleContainer{}, R, R / state.range(0), 1.0);
  for (auto _ : state) {
    const auto p = build_problem(inst, g, ModelMode::kRelaxed);
    benchmark::DoNotOptimize(solve(p).outcome);
  }
}
BENCHMARK(BM_SolveZimm4)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_GreedyUpperBound(benchmark::State& state) {
  const Instance inst = zimm(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(initial_upper_bound(inst).value);
}
BENCHMARK(BM_GreedyUpperBound)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
