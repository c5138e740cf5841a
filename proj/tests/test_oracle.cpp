// Cross-checks of the brute-force oracles against the production numerics.
#include "oracle.hpp"
#include "test_util.hpp"

#include "tdet/determinants.hpp"
#include "tdet/families.hpp"
#include "tdet/operators.hpp"
#include "tdet/symbol.hpp"

#include <doctest.h>

#include <random>

using namespace tdet;
using tdet::testing::max_coeff_diff;
using tdet::testing::rel_diff;
using tdet::testing::sample_function;

TEST_CASE("slow_dft matches the FFT-backed coefficients") {
  const std::vector<std::function<Complex(Complex)>> fs = {
      [](Complex w) { return std::exp(0.3 * (w + 1.0 / w)); },
      [](Complex w) { return 1.0 / ((1.0 - 0.5 * w) * (1.0 - 0.3 / w)); },
      [](Complex w) { return std::exp(Complex(0.2, -0.1) * w * w + Complex(0.0, 0.4) / w); },
  };
  for (const auto& f : fs) {
    const SampleGrid g = sample_function(128, f);
    CHECK(max_coeff_diff(oracle::slow_dft(g.values, 40), coeffs_from_samples(g, 40)) <= 1e-14);
  }
}

TEST_CASE("det_cofactor against det_complex") {
  ComplexMatrix one(1, 1);
  one(0, 0) = Complex(2.0, -1.0);
  CHECK(oracle::det_cofactor(one) == Complex(2.0, -1.0));
  ComplexMatrix two(2, 2);
  two(0, 0) = 1.0;
  two(0, 1) = 2.0;
  two(1, 0) = 3.0;
  two(1, 1) = 4.0;
  CHECK(oracle::det_cofactor(two) == Complex(-2.0));
  CHECK(std::abs(det_complex(two).value + 2.0) <= 1e-14);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    ComplexMatrix m(6, 6);
    for (auto& x : m.entries()) x = Complex(dist(rng), dist(rng));
    CHECK(rel_diff(oracle::det_cofactor(m), det_complex(m).value) <= 1e-11);
  }
}

TEST_CASE("kernel_bruteforce against kernel_K") {
  const LaurentSeries u = oracle::exp_power_series(LaurentSeries::scalar({{-1, 0.3}, {1, -0.3}}), 30);
  const LaurentSeries v = oracle::exp_power_series(LaurentSeries::scalar({{-1, -0.3}, {1, 0.3}}), 30);
  for (std::size_t n : {0u, 1u, 5u}) {
    const ComplexMatrix k = kernel_K(u, v, n, 20);
    CHECK(max_abs_difference(k, oracle::kernel_bruteforce(u, v, n, 20)) <= 1e-15);
  }
  const FactorPair psi = families::random_factor_pair(3, 2, 4, 0.3);
  const LaurentSeries bu = convolve(psi.minus, psi.plus, 12);
  const LaurentSeries bv = convolve(psi.plus, psi.minus, 12);
  CHECK(max_abs_difference(kernel_K(bu, bv, 2, 6), oracle::kernel_bruteforce(bu, bv, 2, 6)) <= 1e-15);
}
