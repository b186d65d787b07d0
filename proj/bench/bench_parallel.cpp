// Serial vs OpenMP execution of the slice-parallel kernels.

#include <benchmark/benchmark.h>

#include <cmath>

#include "granular/ftransform.hpp"
#include "granular/ode.hpp"
#include "granular/prey_predator.hpp"

using namespace granular;

namespace {

using T = TriangularFuzzyNumber;

const model::ModelParams kParams{{T{0.01, 0.02, 0.03}, T{2, 4, 6}, T{0.1, 0.2, 0.3}, T{3, 4, 5}, T{1, 2, 3}},
                                 {T::crisp(0.1), T::crisp(0.2), T::crisp(0.3)}};

Execution execution_of(const benchmark::State& state) {
  return state.range(1) == 0 ? Execution::serial : Execution::parallel;
}

void BM_GranularFTransform(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto spec = GridSpec::uniform(n, n);
  const auto p = uniform_partition(0, 3, 201);
  const Quadrature quad{Quadrature::Rule::simpson, 8};
  const auto g = sample_on_partition(
      [](double u, double alpha, double mu) { return std::sin(u) * (1 + alpha) + mu * (1 - alpha) * u * u; }, spec, p,
      quad);
  for (auto _ : state) benchmark::DoNotOptimize(granular_ftransform(g, p, quad, execution_of(state)));
}

void BM_Simulate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto spec = GridSpec::uniform(n, n);
  const auto p = partition_with_step(0, 1, 0.01);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        model::simulate(kParams, spec, p, Method::reference, {.refinement = 10, .execution = execution_of(state)}));
  }
}

void BM_Stability(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto spec = GridSpec::uniform(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(model::stability(kParams, spec, execution_of(state)));
}

}  // namespace

BENCHMARK(BM_GranularFTransform)->ArgsProduct({{11, 41}, {0, 1}})->ArgNames({"levels", "parallel"});
BENCHMARK(BM_Simulate)->ArgsProduct({{5, 11}, {0, 1}})->ArgNames({"levels", "parallel"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Stability)->ArgsProduct({{21, 61}, {0, 1}})->ArgNames({"levels", "parallel"})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
