#include "tdet/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace tdet::kernels {

namespace {

constexpr std::size_t kParallelRowThreshold = 64;

inline void multiply_row(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c, std::size_t i) {
  auto out = c.row(i);
  for (std::size_t k = 0; k < a.cols(); ++k) {
    const Complex aik = a(i, k);
    if (aik == Complex{}) continue;
    auto brow = b.row(k);
    for (std::size_t j = 0; j < b.cols(); ++j) out[j] += aik * brow[j];
  }
}

void check_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("multiply: inner dimensions " + std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()) + " differ");
}

// One elimination step below pivot row k.
inline void eliminate_row(ComplexMatrix& a, std::size_t k, std::size_t i) {
  const std::size_t n = a.cols();
  const Complex factor = a(i, k) / a(k, k);
  a(i, k) = factor;
  if (factor == Complex{}) return;
  auto pivot_row = a.row(k);
  auto row = a.row(i);
  for (std::size_t j = k + 1; j < n; ++j) row[j] -= factor * pivot_row[j];
}

// Chooses and swaps the pivot for column k; returns false when the column is below the floor.
bool select_pivot(LuFactors& f, std::size_t k, double floor) {
  ComplexMatrix& a = f.lu;
  const std::size_t n = a.rows();
  std::size_t best = k;
  double best_abs = std::abs(a(k, k));
  for (std::size_t i = k + 1; i < n; ++i) {
    const double v = std::abs(a(i, k));
    if (v > best_abs) {
      best_abs = v;
      best = i;
    }
  }
  f.row_swaps[k] = best;
  if (best_abs <= floor) return false;
  if (best != k) {
    std::swap_ranges(a.row(k).begin(), a.row(k).end(), a.row(best).begin());
    f.parity = -f.parity;
  }
  f.max_pivot = std::max(f.max_pivot, best_abs);
  f.min_pivot = k == 0 ? best_abs : std::min(f.min_pivot, best_abs);
  return true;
}

LuFactors prepare(ComplexMatrix a) {
  if (!a.is_square()) throw DimensionError("lu_decompose: matrix is not square");
  LuFactors f;
  f.row_swaps.assign(a.rows(), 0);
  f.lu = std::move(a);
  return f;
}

double pivot_floor(const ComplexMatrix& a) {
  const double eps = std::numeric_limits<double>::epsilon();
  return a.max_abs() * eps * eps;
}

} // namespace

double LuFactors::condition_hint() const {
  if (singular) return std::numeric_limits<double>::infinity();
  if (lu.rows() == 0 || min_pivot == 0.0) return 1.0;
  return std::max(1.0, max_pivot / min_pivot);
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_product(a, b);
  ComplexMatrix c(a.rows(), b.cols());
  const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static) if (a.rows() >= kParallelRowThreshold)
  for (std::ptrdiff_t i = 0; i < rows; ++i) multiply_row(a, b, c, static_cast<std::size_t>(i));
  return c;
}

ComplexMatrix multiply_serial(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_product(a, b);
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) multiply_row(a, b, c, i);
  return c;
}

LuFactors lu_decompose(ComplexMatrix a) {
  LuFactors f = prepare(std::move(a));
  const std::size_t n = f.lu.rows();
  const double floor = pivot_floor(f.lu);
  for (std::size_t k = 0; k < n; ++k) {
    if (!select_pivot(f, k, floor)) {
      f.singular = true;
      f.singular_column = k;
      return f;
    }
    const std::ptrdiff_t first = static_cast<std::ptrdiff_t>(k + 1);
    const std::ptrdiff_t last = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (n - k >= kParallelRowThreshold)
    for (std::ptrdiff_t i = first; i < last; ++i) eliminate_row(f.lu, k, static_cast<std::size_t>(i));
  }
  return f;
}

LuFactors lu_decompose_serial(ComplexMatrix a) {
  LuFactors f = prepare(std::move(a));
  const std::size_t n = f.lu.rows();
  const double floor = pivot_floor(f.lu);
  for (std::size_t k = 0; k < n; ++k) {
    if (!select_pivot(f, k, floor)) {
      f.singular = true;
      f.singular_column = k;
      return f;
    }
    for (std::size_t i = k + 1; i < n; ++i) eliminate_row(f.lu, k, i);
  }
  return f;
}

ComplexMatrix lu_solve(const LuFactors& f, const ComplexMatrix& rhs) {
  const std::size_t n = f.lu.rows();
  if (rhs.rows() != n) throw DimensionError("lu_solve: right-hand side has the wrong number of rows");
  if (f.singular)
    throw SingularError("lu_solve: matrix is singular (pivot column " + std::to_string(f.singular_column) + ")",
                        f.condition_hint());
  ComplexMatrix x = rhs;
  for (std::size_t k = 0; k < n; ++k)
    if (f.row_swaps[k] != k) std::swap_ranges(x.row(k).begin(), x.row(k).end(), x.row(f.row_swaps[k]).begin());
  const std::size_t m = x.cols();
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t i = 1; i < n; ++i) {
      Complex s = x(i, c);
      for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * x(j, c);
      x(i, c) = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
      Complex s = x(ii, c);
      for (std::size_t j = ii + 1; j < n; ++j) s -= f.lu(ii, j) * x(j, c);
      x(ii, c) = s / f.lu(ii, ii);
    }
  }
  return x;
}

namespace {

void check_convolution(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.dim() != b.dim())
    throw DimensionError("convolve: block dimensions " + std::to_string(a.dim()) + " and " +
                         std::to_string(b.dim()) + " differ");
}

Support product_support(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.support() == b.support()) return a.support();
  return Support::general;
}

// Coefficient k of the full product, accumulated in ascending j.
void convolve_index(const LaurentSeries& a, const LaurentSeries& b, LaurentSeries& out, long k) {
  const std::size_t d = a.dim();
  const long ma = static_cast<long>(a.band());
  const long mb = static_cast<long>(b.band());
  const long lo = std::max(-ma, k - mb);
  const long hi = std::min(ma, k + mb);
  auto dst = out.block_mut(k);
  for (long j = lo; j <= hi; ++j) {
    auto aj = a.block(j);
    auto bk = b.block(k - j);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t s = 0; s < d; ++s) {
        const Complex ars = aj[r * d + s];
        if (ars == Complex{}) continue;
        for (std::size_t c = 0; c < d; ++c) dst[r * d + c] += ars * bk[s * d + c];
      }
  }
}

} // namespace

LaurentSeries convolve_full(const LaurentSeries& a, const LaurentSeries& b) {
  check_convolution(a, b);
  LaurentSeries out(a.dim(), a.band() + b.band(), product_support(a, b));
  const long m = static_cast<long>(out.band());
#pragma omp parallel for schedule(static) if (m >= 64)
  for (long k = -m; k <= m; ++k) convolve_index(a, b, out, k);
  return out;
}

LaurentSeries convolve_full_serial(const LaurentSeries& a, const LaurentSeries& b) {
  check_convolution(a, b);
  LaurentSeries out(a.dim(), a.band() + b.band(), product_support(a, b));
  const long m = static_cast<long>(out.band());
  for (long k = -m; k <= m; ++k) convolve_index(a, b, out, k);
  return out;
}

} // namespace tdet::kernels
