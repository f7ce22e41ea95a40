#include <benchmark/benchmark.h>

#include <cmath>

#include "hardy/logspace.hpp"
#include "hardy/quadrature.hpp"

using namespace hardy;

namespace {

LogIntegrand power_law(double e) {
  return {[e](double r) { return e * std::log(r); }, 0.0, kInf};
}

LogIntegrand sinh_pow(double e) {
  return {[e](double r) { return e * log_sinh(r); }, 0.0, kInf};
}

void BM_interval_smooth(benchmark::State& state) {
  const LogIntegrand g = power_law(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_interval(g, 1.0, 2.0, {}));
}
BENCHMARK(BM_interval_smooth);

void BM_interval_origin_singularity(benchmark::State& state) {
  const LogIntegrand g = power_law(-0.5);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_interval(g, 0.0, 4.0, {}));
}
BENCHMARK(BM_interval_origin_singularity);

void BM_tail_power(benchmark::State& state) {
  const LogIntegrand g = power_law(-3.0);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_tail(g, 0.5, {}));
}
BENCHMARK(BM_tail_power);

void BM_tail_exponential(benchmark::State& state) {
  const LogIntegrand g = sinh_pow(-2.0);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_tail(g, 1.0, {}));
}
BENCHMARK(BM_tail_exponential);

void BM_tail_divergence_detection(benchmark::State& state) {
  const LogIntegrand g = power_law(-1.0);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_tail(g, 1.0, {}));
}
BENCHMARK(BM_tail_divergence_detection);

void BM_cumulative_table(benchmark::State& state) {
  const LogIntegrand g = power_law(2.0);
  std::vector<double> grid;
  for (int i = 0; i <= 240; ++i) grid.push_back(std::exp(-6.0 + i * 0.05));
  for (auto _ : state) benchmark::DoNotOptimize(cumulative_table(g, grid, {}));
}
BENCHMARK(BM_cumulative_table);

}  // namespace

BENCHMARK_MAIN();
