#include "tdet/operators.hpp"

#include "tdet/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace tdet {

namespace {

void put_block(ComplexMatrix& m, std::size_t bi, std::size_t bj, const LaurentSeries& s, long k) {
  if (!s.in_band(k)) return;
  const std::size_t d = s.dim();
  auto blk = s.block(k);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) m(bi * d + r, bj * d + c) = blk[r * d + c];
}

ComplexMatrix hankel(const LaurentSeries& s, std::size_t rows, std::size_t cols, long base, long sign) {
  const std::size_t d = s.dim();
  ComplexMatrix out(rows * d, cols * d);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      put_block(out, i, j, s, sign * (base + static_cast<long>(i + j)));
  return out;
}

double hankel_hs(const LaurentSeries& s, std::size_t n, long sign) {
  double sum = 0.0;
  for (long l = static_cast<long>(n) + 1; l <= static_cast<long>(s.band()); ++l) {
    double norm_sq = 0.0;
    for (const Complex& x : s.block(sign * l)) norm_sq += std::norm(x);
    sum += static_cast<double>(l - static_cast<long>(n)) * norm_sq;
  }
  return std::sqrt(sum);
}

} // namespace

ComplexMatrix toeplitz_matrix(const LaurentSeries& phi, std::size_t n) {
  if (n == 0) throw DomainError("toeplitz_matrix: n must be at least 1");
  const std::size_t d = phi.dim();
  ComplexMatrix out(n * d, n * d);
  const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (n >= 128)
  for (std::ptrdiff_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < n; ++j)
      put_block(out, static_cast<std::size_t>(i), j, phi, static_cast<long>(i) - static_cast<long>(j));
  return out;
}

ComplexMatrix hankel_U(const LaurentSeries& u, std::size_t n, std::size_t m) {
  return hankel(u, m, m, static_cast<long>(n) + 1, 1);
}

ComplexMatrix hankel_V(const LaurentSeries& v, std::size_t n, std::size_t m) {
  return hankel(v, m, m, static_cast<long>(n) + 1, -1);
}

std::size_t exact_section(const LaurentSeries& u, const LaurentSeries& v, std::size_t n) {
  const std::size_t band = std::max(u.band(), v.band());
  return band > n ? band - n : 1;
}

ComplexMatrix kernel_K(const LaurentSeries& u, const LaurentSeries& v, std::size_t n, std::size_t m) {
  if (u.dim() != v.dim()) throw DimensionError("kernel_K: u and v block dimensions differ");
  if (m == 0) throw DomainError("kernel_K: section size must be at least 1");
  // u_{n+i+k} v_{-n-k-j} with k = k' + 1 can be nonzero only for k' < min(bands) - n.
  const std::size_t band = std::min(u.band(), v.band());
  const std::size_t inner = band > n ? band - n : 0;
  if (inner == 0) return ComplexMatrix(m * u.dim(), m * u.dim());
  const ComplexMatrix left = hankel(u, m, inner, static_cast<long>(n) + 1, 1);
  const ComplexMatrix right = hankel(v, inner, m, static_cast<long>(n) + 1, -1);
  return kernels::multiply(left, right);
}

DeltaVectors delta_vectors(const LaurentSeries& u, const LaurentSeries& v, std::size_t n, std::size_t m) {
  if (!u.is_scalar() || !v.is_scalar())
    throw DomainError("delta_vectors: only scalar symbols are supported (no block quotient formula)");
  DeltaVectors out{std::vector<Complex>(m), std::vector<Complex>(m)};
  for (std::size_t i = 0; i < m; ++i) {
    const long idx = static_cast<long>(n + i);
    out.u_delta[i] = u[idx];
    out.v_delta[i] = v[-idx];
  }
  return out;
}

double hankel_U_hs_norm(const LaurentSeries& u, std::size_t n) { return hankel_hs(u, n, 1); }
double hankel_V_hs_norm(const LaurentSeries& v, std::size_t n) { return hankel_hs(v, n, -1); }

} // namespace tdet
