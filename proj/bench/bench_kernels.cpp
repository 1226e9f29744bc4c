// Serial vs OpenMP slice sweeps.

#include <benchmark/benchmark.h>

#include <map>

#include "paramode/sweep.hpp"

using namespace paramode;

namespace {

struct Problem {
  LinearSystem sys;
  SweepRequest req;
};

Problem& problem(std::size_t nt) {
  static std::map<std::size_t, Problem> cache;
  auto it = cache.find(nt);
  if (it != cache.end()) return it->second;
  Region r = fixtures::rectangle(0, 1, 0, 1);
  ScalarOperator op = ScalarOperator::parse(r, {"1", "t+sin(x)", "1"});
  Problem& p = cache[nt];
  p.sys = companion(op);
  p.req = {&p.sys, constant_fn(0.5), [](double) { return std::vector<double>{1, 0}; },
           numeric::linspace(0.005, 0.995, nt), {}, 0};
  return p;
}

void BM_sweep_serial(benchmark::State& st) {
  Problem& p = problem(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::sweep_serial(p.req));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_sweep_omp(benchmark::State& st) {
  Problem& p = problem(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::sweep_omp(p.req));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK(BM_sweep_serial)->Arg(50)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_omp)->Arg(50)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
