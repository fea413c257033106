#include <random>

#include <benchmark/benchmark.h>

#include "mpoly/constructions.hpp"
#include "mpoly/kernels.hpp"
#include "mpoly/linalg.hpp"
#include "mpoly/rank_analysis.hpp"

namespace {

using namespace mpoly;

Tensor bench_tensor(std::size_t d) {
  std::mt19937_64 rng(7);
  return random_tensor(Shape{d, d, d}, rng);
}

template <class Gram>
void run_gram(benchmark::State& state, Gram gram) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const Tensor t = bench_tensor(d);
  const kernels::LegView v{d, d, d};
  std::vector<cplx> g(d * d);
  for (auto _ : state) {
    gram(t.data(), v, g);
    benchmark::DoNotOptimize(g.data());
  }
}

template <class Apply>
void run_apply(benchmark::State& state, Apply apply) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const Tensor t = bench_tensor(d);
  std::mt19937_64 rng(3);
  const Matrix m = random_gaussian(d, d, rng);
  const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = m;
  const kernels::LegView v{d, d, d};
  std::vector<cplx> out(t.size());
  for (auto _ : state) {
    apply(t.data(), v, std::span<const cplx>(rm.data(), static_cast<std::size_t>(rm.size())), d, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_GramSerial(benchmark::State& s) { run_gram(s, kernels::serial::leg_gram); }
void BM_GramOmp(benchmark::State& s) { run_gram(s, kernels::omp::leg_gram); }
void BM_ApplySerial(benchmark::State& s) { run_apply(s, kernels::serial::leg_apply); }
void BM_ApplyOmp(benchmark::State& s) { run_apply(s, kernels::omp::leg_apply); }

void BM_MinrankMatmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Tensor m = matmul_tensor(n, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(minrank_upper(m).minrank_upper);
}

void BM_MinrankMatmulSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Tensor m = matmul_tensor(n, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(minrank_upper_serial(m).minrank_upper);
}

}  // namespace

BENCHMARK(BM_GramSerial)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_GramOmp)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_ApplySerial)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_ApplyOmp)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_MinrankMatmul)->Arg(3)->Arg(4);
BENCHMARK(BM_MinrankMatmulSerial)->Arg(3)->Arg(4);

BENCHMARK_MAIN();
