// Serial reference kernels against the OpenMP ones on the flagship problem.

#include <benchmark/benchmark.h>

#include <vector>

#include "uqie/catalog.hpp"
#include "uqie/kernels.hpp"
#include "uqie/operator.hpp"

using namespace uqie;

namespace {

const Problem& problem() {
  static const Problem p = manufactured_corpus()[1].problem;
  return p;
}

template <bool Parallel>
void apply_operator(benchmark::State& state) {
  const Problem& p = problem();
  const Grid grid(p.horizon(), static_cast<int>(state.range(0)));
  const GridFunction a = serial::sample_forcing(p, grid);
  const std::vector<double> x(grid.size(), 1.0);
  std::vector<double> out(grid.size());
  for (auto _ : state) {
    if constexpr (Parallel) {
      parallel::apply_operator(p, grid, a.values(), x, out);
    } else {
      serial::apply_operator(p, grid, a.values(), x, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(state.range(0));
}

template <bool Parallel>
void majorant_bound(benchmark::State& state) {
  const Problem& p = problem();
  const Grid grid(p.horizon(), static_cast<int>(state.range(0)));
  for (auto _ : state) {
    double m = Parallel ? parallel::majorant_bound(p, 1, grid) : serial::majorant_bound(p, 1, grid);
    benchmark::DoNotOptimize(m);
  }
}

void picard(benchmark::State& state) {
  const Problem& p = problem();
  const Grid grid(p.horizon(), static_cast<int>(state.range(0)));
  SolverConfig cfg;
  cfg.parallel = state.range(1) != 0;
  for (auto _ : state) {
    SolveResult r = picard_solve(p, grid, cfg);
    benchmark::DoNotOptimize(r.x.values().data());
  }
}

}  // namespace

BENCHMARK(apply_operator<false>)->Name("apply_operator/serial")->RangeMultiplier(2)->Range(100, 1600)->Complexity();
BENCHMARK(apply_operator<true>)->Name("apply_operator/parallel")->RangeMultiplier(2)->Range(100, 1600)->Complexity();
BENCHMARK(majorant_bound<false>)->Name("majorant_bound/serial")->RangeMultiplier(4)->Range(100, 1600);
BENCHMARK(majorant_bound<true>)->Name("majorant_bound/parallel")->RangeMultiplier(4)->Range(100, 1600);
BENCHMARK(picard)->Name("picard_solve")->ArgsProduct({{400}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
