#include <benchmark/benchmark.h>

#include "steinhaus/constructions.hpp"
#include "steinhaus/content.hpp"
#include "steinhaus/distance.hpp"
#include "steinhaus/lambda.hpp"
#include "steinhaus/measure.hpp"
#include "steinhaus/quadrature.hpp"

using namespace steinhaus;

static void BM_ContentIterated(benchmark::State& st) {
  const GridSet e = iterated_set(4, Rational(3, 2), 2, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(content(e, Rational(4, 3)));
  st.counters["cells"] = static_cast<double>(e.size());
}
BENCHMARK(BM_ContentIterated)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_DistanceSet(benchmark::State& st) {
  const GridSet e = iterated_set(4, Rational(3, 2), 2, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(distance_set(e));
  st.counters["cells"] = static_cast<double>(e.size());
}
BENCHMARK(BM_DistanceSet)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_FourierEval(benchmark::State& st) {
  const CellMeasure mu = CellMeasure::uniform(iterated_set(4, Rational(3, 2), 2, 3));
  double x = 1.0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(mu.fourier({x, 0.7 * x}));
    x += 0.37;
  }
}
BENCHMARK(BM_FourierEval);

static void BM_PartialL2(benchmark::State& st) {
  const CellMeasure mu = CellMeasure::uniform(iterated_set(4, Rational(3, 2), 2, 2));
  for (auto _ : st) benchmark::DoNotOptimize(partial_l2(mu, static_cast<double>(st.range(0))));
}
BENCHMARK(BM_PartialL2)->Arg(16)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_LambdaOracle(benchmark::State& st) {
  const GridSet f = building_block(4, Rational(3, 2), 2);
  for (auto _ : st) benchmark::DoNotOptimize(lambda_oracle(f, f, 0.3));
}
BENCHMARK(BM_LambdaOracle)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
