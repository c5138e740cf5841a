// Serial reference kernels against their OpenMP versions, plus the cost of the two
// sides of D_n = Z det(I - K_n) as n grows.
#include "tdet/determinants.hpp"
#include "tdet/families.hpp"
#include "tdet/identities.hpp"
#include "tdet/kernels.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace tdet;

namespace {

ComplexMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ComplexMatrix m(n, n);
  for (auto& x : m.entries()) x = Complex(dist(rng), dist(rng));
  return m;
}

LaurentSeries random_series(std::size_t dim, std::size_t band, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  LaurentSeries s(dim, band);
  for (long k = -static_cast<long>(band); k <= static_cast<long>(band); ++k)
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) s.set(k, r, c, Complex(dist(rng), dist(rng)));
  return s;
}

template <ComplexMatrix (*Multiply)(const ComplexMatrix&, const ComplexMatrix&)>
void BM_multiply(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix a = random_matrix(n, 1), b = random_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(Multiply(a, b));
  state.SetComplexityN(state.range(0));
}

template <kernels::LuFactors (*Decompose)(ComplexMatrix)>
void BM_lu(benchmark::State& state) {
  const ComplexMatrix a = random_matrix(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(Decompose(a));
  state.SetComplexityN(state.range(0));
}

template <LaurentSeries (*Convolve)(const LaurentSeries&, const LaurentSeries&)>
void BM_convolve(benchmark::State& state) {
  const auto band = static_cast<std::size_t>(state.range(0));
  const LaurentSeries a = random_series(4, band, 4), b = random_series(4, band, 5);
  for (auto _ : state) benchmark::DoNotOptimize(Convolve(a, b));
}

void BM_toeplitz_det(benchmark::State& state) {
  PipelineParams params;
  params.band = 128;
  params.fft_samples = 1024;
  const ScalarProblem p = scalar_problem_from_log(families::random_scalar_log(1, 16), params);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(toeplitz_det(p.phi, n));
  state.SetComplexityN(state.range(0));
}

void BM_fredholm_det(benchmark::State& state) {
  PipelineParams params;
  params.band = 128;
  params.fft_samples = 1024;
  const ScalarProblem p = scalar_problem_from_log(families::random_scalar_log(1, 16), params);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fredholm_det(p.ratios.u, p.ratios.v, n));
}

} // namespace

BENCHMARK(BM_multiply<kernels::multiply_serial>)->Name("multiply/serial")->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(BM_multiply<kernels::multiply>)->Name("multiply/parallel")->RangeMultiplier(2)->Range(64, 512)->UseRealTime();
BENCHMARK(BM_lu<kernels::lu_decompose_serial>)->Name("lu/serial")->RangeMultiplier(2)->Range(64, 1024);
BENCHMARK(BM_lu<kernels::lu_decompose>)->Name("lu/parallel")->RangeMultiplier(2)->Range(64, 1024)->UseRealTime();
BENCHMARK(BM_convolve<kernels::convolve_full_serial>)->Name("convolve/serial")->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK(BM_convolve<kernels::convolve_full>)->Name("convolve/parallel")->RangeMultiplier(4)->Range(16, 1024)->UseRealTime();
BENCHMARK(BM_toeplitz_det)->Name("D_n/direct")->RangeMultiplier(2)->Range(16, 1024)->UseRealTime();
BENCHMARK(BM_fredholm_det)->Name("D_n/fredholm")->RangeMultiplier(2)->Range(16, 1024)->UseRealTime();

BENCHMARK_MAIN();
