#include <benchmark/benchmark.h>

#include "phiid/charfn.hpp"
#include "phiid/parallel.hpp"
#include "phiid/stats.hpp"

namespace {

using namespace phiid;

void BM_CfEvalGrid(benchmark::State& state) {
  PhiIdLaw law(LaplaceTransform::gamma(2.0, 1.0),
               IdExponent::stable(1.0, 1.5, 0.3));
  const auto grid = symmetric_grid(5.0, 101);
  for (auto _ : state) {
    Complex acc{0.0, 0.0};
    for (double t : grid) acc += law.cf(t);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_CfEvalGrid);

void BM_EmpiricalCf(benchmark::State& state) {
  const auto xs = sample_many(static_cast<std::size_t>(state.range(0)), 7, 0,
                              [](Rng& r) { return normal01(r); });
  const auto grid = symmetric_grid(5.0, 101);
  for (auto _ : state) {
    benchmark::DoNotOptimize(empirical_cf(xs, grid));
  }
}
BENCHMARK(BM_EmpiricalCf)->Arg(1000)->Arg(10000);

void BM_CompleteMonotonicity(benchmark::State& state) {
  const auto phi = LaplaceTransform::gamma(2.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(complete_monotonicity_check(
        [&phi](double s) { return phi.eval(s); }, 0.1, 0.2, 8, 24));
  }
}
BENCHMARK(BM_CompleteMonotonicity);

}  // namespace

BENCHMARK_MAIN();
