#pragma once

// Data-parallel inner loops.  Every OpenMP kernel has a `_serial` twin that
// performs the same floating-point operations in the same order; the test suite
// asserts bitwise agreement and bench/ compares their speed.

#include "tdet/laurent.hpp"
#include "tdet/matrix.hpp"

#include <cstddef>
#include <vector>

namespace tdet::kernels {

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix multiply_serial(const ComplexMatrix& a, const ComplexMatrix& b);

/// Row-pivoted LU factors, P A = L U with unit-diagonal L stored below the diagonal.
struct LuFactors {
  ComplexMatrix lu;
  std::vector<std::size_t> row_swaps;  ///< at step k, row k was swapped with row_swaps[k]
  int parity = 1;                      ///< sign of the permutation
  bool singular = false;               ///< a pivot column was identically below the floor
  std::size_t singular_column = 0;
  double max_pivot = 0.0;
  double min_pivot = 0.0;

  double condition_hint() const;
};

LuFactors lu_decompose(ComplexMatrix a);
LuFactors lu_decompose_serial(ComplexMatrix a);

/// Solves A X = B for every column of B.  Throws SingularError on singular factors.
ComplexMatrix lu_solve(const LuFactors& f, const ComplexMatrix& rhs);

/// Full block convolution (a * b)_k = sum_j a_j b_{k-j}, band a.band() + b.band().
LaurentSeries convolve_full(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries convolve_full_serial(const LaurentSeries& a, const LaurentSeries& b);

} // namespace tdet::kernels
