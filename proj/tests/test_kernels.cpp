#include "tdet/kernels.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace tdet;

namespace {

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (auto& x : m.entries()) x = Complex(dist(rng), dist(rng));
  return m;
}

LaurentSeries random_series(std::size_t dim, std::size_t band, Support support, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  LaurentSeries s(dim, band, support);
  const long lo = support == Support::plus ? 0 : -static_cast<long>(band);
  const long hi = support == Support::minus ? 0 : static_cast<long>(band);
  for (long k = lo; k <= hi; ++k)
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) s.set(k, r, c, Complex(dist(rng), dist(rng)));
  return s;
}

} // namespace

TEST_CASE("multiply: parallel and serial agree bitwise") {
  for (std::size_t n : {1u, 7u, 65u, 200u}) {
    const ComplexMatrix a = random_matrix(n, n + 3, n);
    const ComplexMatrix b = random_matrix(n + 3, n, n + 100);
    CHECK(kernels::multiply(a, b) == kernels::multiply_serial(a, b));
  }
  CHECK_THROWS_AS(kernels::multiply(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), DimensionError);
}

TEST_CASE("lu_decompose: parallel and serial agree bitwise") {
  for (std::size_t n : {1u, 10u, 64u, 150u}) {
    const ComplexMatrix a = random_matrix(n, n, 7 * n);
    const auto p = kernels::lu_decompose(a);
    const auto s = kernels::lu_decompose_serial(a);
    CHECK(p.lu == s.lu);
    CHECK(p.row_swaps == s.row_swaps);
    CHECK(p.parity == s.parity);
    CHECK_FALSE(p.singular);
  }
}

TEST_CASE("lu_solve: residual of a random system") {
  const ComplexMatrix a = random_matrix(40, 40, 3);
  const ComplexMatrix b = random_matrix(40, 3, 4);
  const ComplexMatrix x = kernels::lu_solve(kernels::lu_decompose(a), b);
  const ComplexMatrix ax = kernels::multiply(a, x);
  CHECK(max_abs_difference(ax, b) <= 1e-12);
}

TEST_CASE("lu_decompose: singular input is flagged and solve refuses it") {
  ComplexMatrix a(3, 3);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  const auto f = kernels::lu_decompose(a);
  CHECK(f.singular);
  CHECK(f.singular_column == 2);
  CHECK_THROWS_AS(kernels::lu_solve(f, ComplexMatrix::identity(3)), SingularError);
}

TEST_CASE("convolve_full: parallel and serial agree bitwise, support is kept") {
  for (std::size_t dim : {1u, 3u}) {
    const LaurentSeries a = random_series(dim, 40, Support::general, dim);
    const LaurentSeries b = random_series(dim, 25, Support::general, dim + 9);
    const LaurentSeries p = kernels::convolve_full(a, b);
    const LaurentSeries s = kernels::convolve_full_serial(a, b);
    CHECK(p.band() == 65);
    CHECK(std::ranges::equal(p.data(), s.data()));
  }
  const LaurentSeries pa = random_series(2, 5, Support::plus, 1);
  const LaurentSeries pb = random_series(2, 6, Support::plus, 2);
  CHECK(kernels::convolve_full(pa, pb).support() == Support::plus);
  CHECK(kernels::convolve_full(pa, pb.reflected()).support() == Support::general);
}
