#include <benchmark/benchmark.h>

#include "tiltmom/model.hpp"
#include "tiltmom/oracle.hpp"
#include "tiltmom/tilt.hpp"

namespace {

void bm_invert_h(benchmark::State& state) {
  const auto model = tiltmom::builtin_model("weibull", 2.0);
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tiltmom::invert_h(model, t));
  }
}
BENCHMARK(bm_invert_h)->Arg(10)->Arg(1000)->Arg(100000);

void bm_log_mgf(benchmark::State& state) {
  const auto model = tiltmom::builtin_model("weibull", 2.0);
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tiltmom::log_mgf(model, t));
  }
}
BENCHMARK(bm_log_mgf)->Arg(10)->Arg(1000);

void bm_exact_moments(benchmark::State& state) {
  const auto model = tiltmom::builtin_model("weibull", 2.0);
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tiltmom::exact_moments(model, t, 5));
  }
}
BENCHMARK(bm_exact_moments)->Arg(10)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
