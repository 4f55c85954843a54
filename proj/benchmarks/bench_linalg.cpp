#include <benchmark/benchmark.h>

#include "tenuniq/linalg.hpp"
#include "tenuniq/rng.hpp"

using namespace tenuniq;

namespace {

RealMatrix gaussian(std::uint64_t seed, Eigen::Index rows, Eigen::Index cols) {
  GaussianSampler g(seed);
  RealMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = g.normal();
  return m;
}

void BM_Compound_8x20_m2(benchmark::State& state) {
  FieldMatrix m(gaussian(1, 8, 20));
  for (auto _ : state) benchmark::DoNotOptimize(compound(m, 2));
}
BENCHMARK(BM_Compound_8x20_m2);

void BM_CompoundKhatriRao_4x7_m3(benchmark::State& state) {
  FieldMatrix a(gaussian(2, 4, 7)), b(gaussian(3, 5, 7));
  for (auto _ : state) {
    FieldMatrix prod = khatri_rao(compound(a, 3), compound(b, 3));
    benchmark::DoNotOptimize(rank(prod));
  }
}
BENCHMARK(BM_CompoundKhatriRao_4x7_m3);

void BM_KRank_4x6(benchmark::State& state) {
  FieldMatrix m(gaussian(4, 4, 6));
  for (auto _ : state) benchmark::DoNotOptimize(k_rank(m));
}
BENCHMARK(BM_KRank_4x6);

void BM_KRank_6x12(benchmark::State& state) {
  FieldMatrix m(gaussian(5, 6, 12));
  for (auto _ : state) benchmark::DoNotOptimize(k_rank(m));
}
BENCHMARK(BM_KRank_6x12);

void BM_Rank_60x15(benchmark::State& state) {
  FieldMatrix m(gaussian(6, 60, 15));
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_Rank_60x15);

}  // namespace

BENCHMARK_MAIN();
