#pragma once

#include "tdet/errors.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace tdet {

/// Dense row-major complex matrix.  Block matrices with d x d blocks use the
/// flattened index (block_index * d + component) on both axes.
class ComplexMatrix {
public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<Complex> row(std::size_t r) { return std::span<Complex>(entries_).subspan(r * cols_, cols_); }
  std::span<const Complex> row(std::size_t r) const {
    return std::span<const Complex>(entries_).subspan(r * cols_, cols_);
  }
  std::span<const Complex> entries() const noexcept { return entries_; }
  std::span<Complex> entries() noexcept { return entries_; }

  bool is_finite() const;
  bool is_zero() const;
  double frobenius_norm() const;
  double max_abs() const;

  /// Submatrix of rows [r0, r0 + nr) and columns [c0, c0 + nc).
  ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  ComplexMatrix transposed() const;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

/// I - m, m square.
ComplexMatrix identity_minus(const ComplexMatrix& m);
/// Largest entrywise modulus of a - b.
double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b);

} // namespace tdet
