#include <benchmark/benchmark.h>

#include "hardy/hardy.hpp"
#include "hardy/sharpness.hpp"

using namespace hardy;

namespace {

HardyProblem critical_flat() {
  HardyProblem pb;
  pb.geometry = PolarGeometry::euclidean(3);
  pb.u = RadialWeight::power(-4.0);
  pb.v = RadialWeight::power(-1.0);
  pb.q = 1.0;
  return pb;
}

HardyProblem curved() {
  HardyProblem pb;
  pb.geometry = PolarGeometry::hyperbolic(3);
  pb.u = RadialWeight::sinh_power(-4.0);
  pb.v = RadialWeight::sinh_power(-1.0);
  pb.q = 1.0;
  return pb;
}

void BM_constant_flat_critical(benchmark::State& state) {
  const HardyProblem pb = critical_flat();
  for (auto _ : state) benchmark::DoNotOptimize(characterization_constant(pb));
}
BENCHMARK(BM_constant_flat_critical);

void BM_constant_curved(benchmark::State& state) {
  const HardyProblem pb = curved();
  for (auto _ : state) benchmark::DoNotOptimize(characterization_constant(pb));
}
BENCHMARK(BM_constant_curved);

void BM_constant_with_p(benchmark::State& state) {
  HardyProblem pb;
  pb.geometry = PolarGeometry::half_line();
  pb.u = RadialWeight::power(-2.0);
  pb.v = RadialWeight::power(0.0);
  pb.q = 2.0;
  pb.p = 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(muckenhoupt_constant(pb));
}
BENCHMARK(BM_constant_with_p);

void BM_tail_mass(benchmark::State& state) {
  const HardyProblem pb = critical_flat();
  for (auto _ : state) benchmark::DoNotOptimize(tail_mass(pb, 1.0, {}));
}
BENCHMARK(BM_tail_mass);

void BM_witness_certificate(benchmark::State& state) {
  const HardyProblem pb = critical_flat();
  const ExtendedValue known = characterization_constant(pb).constant;
  for (auto _ : state)
    benchmark::DoNotOptimize(lower_bound_certificate(pb, 1.0, 1000, {}, &known));
}
BENCHMARK(BM_witness_certificate);

void BM_inequality_verify(benchmark::State& state) {
  const HardyProblem pb = critical_flat();
  const RadialTestFunction f = RadialTestFunction::indicator(1.0, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(verify_inequality(pb, f));
}
BENCHMARK(BM_inequality_verify);

}  // namespace

BENCHMARK_MAIN();
