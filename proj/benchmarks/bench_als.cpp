#include <benchmark/benchmark.h>

#include "tenuniq/lab.hpp"

using namespace tenuniq;

namespace {

Tensor3 synthetic(int i, int j, int k, int r) {
  SampleSpec spec;
  spec.dims = ProblemDims::cpd(i, j, k);
  spec.rank = r;
  spec.seed = 7;
  return from_factors(sample_factors(spec, 0));
}

void BM_AlsIterations_4x5x6_R6(benchmark::State& state) {
  Tensor3 t = synthetic(4, 5, 6, 6);
  AlsOptions opts;
  opts.max_iters = 50;
  opts.fit_tol = 1e-300;  // effectively: fixed iteration count
  for (auto _ : state) benchmark::DoNotOptimize(als_cpd_single(t, 6, opts, 3));
}
BENCHMARK(BM_AlsIterations_4x5x6_R6);

void BM_AlsIterations_7x8x30_R31(benchmark::State& state) {
  Tensor3 t = synthetic(7, 8, 30, 31);
  AlsOptions opts;
  opts.max_iters = 10;
  opts.fit_tol = 1e-300;
  for (auto _ : state) benchmark::DoNotOptimize(als_cpd_single(t, 31, opts, 3));
}
BENCHMARK(BM_AlsIterations_7x8x30_R31);

void BM_MatchDecompositions_R20(benchmark::State& state) {
  SampleSpec spec;
  spec.dims = ProblemDims::cpd(8, 8, 20);
  spec.rank = 20;
  spec.seed = 11;
  FactorSet f1 = sample_factors(spec, 0);
  FactorSet f2 = sample_factors(spec, 1);
  for (auto _ : state) benchmark::DoNotOptimize(match_decompositions(f1, f2));
}
BENCHMARK(BM_MatchDecompositions_R20);

}  // namespace
