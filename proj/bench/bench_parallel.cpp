// Serial reference vs OpenMP kernel for each parallel hot path.
#include <benchmark/benchmark.h>

#include "ginoe/asymptotics.hpp"
#include "ginoe/kernel.hpp"
#include "ginoe/sampler.hpp"

namespace {

using namespace ginoe;

void BM_BuildSerial(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(build_serial(n, mpq_class(1, 2), 512));
}
void BM_BuildParallel(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(build(n, mpq_class(1, 2), 512));
}

void BM_JacobiCyclic(benchmark::State& st) {
  const KernelMatrix m = build(static_cast<int>(st.range(0)), mpq_class(1, 2), 256);
  for (auto _ : st) benchmark::DoNotOptimize(spectrum(m, EigenMethod::JacobiCyclic));
}
void BM_JacobiRoundRobin(benchmark::State& st) {
  const KernelMatrix m = build(static_cast<int>(st.range(0)), mpq_class(1, 2), 256);
  for (auto _ : st) benchmark::DoNotOptimize(spectrum(m, EigenMethod::JacobiRoundRobin));
}

SampleConfig sample_config(int dim) {
  SampleConfig c;
  c.dim = dim;
  c.trials = 4096;
  c.seed = 1;
  return c;
}
void BM_SampleSerial(benchmark::State& st) {
  const SampleConfig c = sample_config(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(empirical_pmf_serial(c));
}
void BM_SampleParallel(benchmark::State& st) {
  const SampleConfig c = sample_config(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(empirical_pmf(c));
}

std::vector<double> grid() {
  std::vector<double> xs;
  for (int i = 1; i < 400; ++i) xs.push_back(i / 400.0);
  return xs;
}
void BM_RateSerial(benchmark::State& st) {
  const auto xs = grid();
  for (auto _ : st) benchmark::DoNotOptimize(rate_curve_serial(xs, Regime::weak(1.0)));
}
void BM_RateParallel(benchmark::State& st) {
  const auto xs = grid();
  for (auto _ : st) benchmark::DoNotOptimize(rate_curve(xs, Regime::weak(1.0)));
}

}  // namespace

BENCHMARK(BM_BuildSerial)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildParallel)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JacobiCyclic)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JacobiRoundRobin)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleSerial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleParallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RateParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
