#include <benchmark/benchmark.h>

#include "phiid/charfn.hpp"
#include "phiid/counts.hpp"
#include "phiid/sampler.hpp"

namespace {

using namespace phiid;

void BM_StableDraw(benchmark::State& state) {
  Rng rng = make_rng(1);
  const double alpha = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_stable(alpha, 1.0, 0.0, rng));
  }
}
BENCHMARK(BM_StableDraw)->Arg(5)->Arg(15)->Arg(20);

void BM_PhiIdDraw(benchmark::State& state) {
  Rng rng = make_rng(2);
  PhiIdLaw law(LaplaceTransform::gamma(2.0, 1.0),
               IdExponent::stable(1.0, 1.5, 0.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_phi_id(law, rng));
  }
}
BENCHMARK(BM_PhiIdDraw);

void BM_CountDraw(benchmark::State& state) {
  Rng rng = make_rng(3);
  CountModel model(LaplaceTransform::exponential(1.0),
                   1.0 / static_cast<double>(state.range(0)), 0, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.sample(rng));
  }
}
BENCHMARK(BM_CountDraw)->Arg(10)->Arg(1000)->Arg(100000);

void BM_GeometricRandomSum(benchmark::State& state) {
  Rng rng = make_rng(4);
  const double p = 1.0 / static_cast<double>(state.range(0));
  CountModel count(LaplaceTransform::exponential(1.0), p / (1.0 - p), 1, 1);
  const ComponentLaw comp(ExponentialComponent{1.0}, 0.0, p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_random_sum(count, comp, rng));
  }
}
BENCHMARK(BM_GeometricRandomSum)->Arg(10)->Arg(100);

}  // namespace
