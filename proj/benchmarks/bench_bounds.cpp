#include <benchmark/benchmark.h>

#include "tenuniq/bounds.hpp"

using namespace tenuniq;

namespace {

void BM_Aggregate_4x5x6(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(aggregate(ProblemDims::cpd(4, 5, 6), 200));
}
BENCHMARK(BM_Aggregate_4x5x6);

void BM_Aggregate_SFS_8x200(benchmark::State& state) {
  // Closure scans every K' below K, the table's worst case.
  for (auto _ : state) benchmark::DoNotOptimize(aggregate(ProblemDims::sfs_dims(8, 200), 200));
}
BENCHMARK(BM_Aggregate_SFS_8x200);

void BM_DualFormScan(benchmark::State& state) {
  using namespace bounds_detail;
  for (auto _ : state) {
    bool acc = false;
    for (long long I = 2; I <= 40; ++I)
      for (long long K = I; K <= 40; ++K)
        for (long long R = K; R <= 80; ++R)
          acc ^= prop19_radical(I, K, R) == prop19_mform(I, K, R);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_DualFormScan);

}  // namespace
