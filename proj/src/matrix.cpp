#include "tdet/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace tdet {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool ComplexMatrix::is_finite() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Complex& x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

bool ComplexMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Complex& x) { return x == Complex{}; });
}

double ComplexMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (const Complex& x : entries_) sum += std::norm(x);
  return std::sqrt(sum);
}

double ComplexMatrix::max_abs() const {
  double best = 0.0;
  for (const Complex& x : entries_) best = std::max(best, std::abs(x));
  return best;
}

ComplexMatrix ComplexMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("ComplexMatrix::block: range exceeds matrix");
  ComplexMatrix out(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
  return out;
}

ComplexMatrix ComplexMatrix::transposed() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix identity_minus(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("identity_minus: matrix is not square");
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = (i == j ? Complex(1.0) : Complex{}) - m(i, j);
  return out;
}

double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("max_abs_difference: shapes differ");
  double best = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) best = std::max(best, std::abs(ea[i] - eb[i]));
  return best;
}

} // namespace tdet
