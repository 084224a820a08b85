// OpenMP kernels against their serial reference twins.

#include <benchmark/benchmark.h>

#include <random>

#include "ght/catalog.hpp"
#include "ght/gbh.hpp"
#include "ght/kernels.hpp"
#include "ght/transform.hpp"

namespace {

const ght::Ring& rationals() {
  static const ght::Ring r(ght::RingSpec::rationals());
  return r;
}

const ght::Ring& cyclo12() {
  static const ght::Ring r(ght::RingSpec::cyclotomic(12));
  return r;
}

ght::GMatrix mixed(int t) {
  const ght::Ring& r = cyclo12();
  ght::GMatrix m = ght::k6(r, ght::imaginary_unit(r));
  for (int k = 0; k < t; ++k) m = ght::tensor(m, ght::walsh(1, r));
  return m;
}

void BM_MatVecKernel(benchmark::State& state) {
  const auto m = ght::walsh(static_cast<unsigned>(state.range(0)), rationals());
  std::mt19937_64 rng(1);
  const auto x = ght::random_signal(rationals(), m.order(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(ght::kernels::mat_vec(m, x.elements));
}

void BM_MatVecReference(benchmark::State& state) {
  const auto m = ght::walsh(static_cast<unsigned>(state.range(0)), rationals());
  std::mt19937_64 rng(1);
  const auto x = ght::random_signal(rationals(), m.order(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(ght::reference::mat_vec(m, x.elements));
}

void BM_MatMulKernel(benchmark::State& state) {
  const auto m = mixed(static_cast<int>(state.range(0)));
  const auto s = ght::star(m);
  for (auto _ : state) benchmark::DoNotOptimize(ght::kernels::mat_mul(m, s));
}

void BM_MatMulReference(benchmark::State& state) {
  const auto m = mixed(static_cast<int>(state.range(0)));
  const auto s = ght::star(m);
  for (auto _ : state) benchmark::DoNotOptimize(ght::reference::mat_mul(m, s));
}

void BM_GramKernel(benchmark::State& state) {
  const auto m = ght::walsh(static_cast<unsigned>(state.range(0)), rationals());
  for (auto _ : state) benchmark::DoNotOptimize(ght::kernels::pm1_gram(m, false));
}

void BM_GramReference(benchmark::State& state) {
  const auto m = ght::walsh(static_cast<unsigned>(state.range(0)), rationals());
  for (auto _ : state) benchmark::DoNotOptimize(ght::reference::pm1_gram(m, false));
}

void BM_FastApply(benchmark::State& state) {
  const auto m = ght::walsh(static_cast<unsigned>(state.range(0)), rationals());
  std::mt19937_64 rng(1);
  const auto x = ght::random_signal(rationals(), m.order(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(ght::fast_apply(m, x));
}

}  // namespace

BENCHMARK(BM_MatVecKernel)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatVecReference)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatMulKernel)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatMulReference)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GramKernel)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GramReference)->DenseRange(6, 8, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FastApply)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
