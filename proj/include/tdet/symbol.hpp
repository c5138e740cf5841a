#pragma once

// Symbols on the unit circle: sampling, discrete Fourier inversion, products,
// logarithm and pointwise inverse of banded Laurent series.

#include "tdet/laurent.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace tdet {

/// Values of a (block) symbol at the N-th roots of unity w_j = exp(2 pi i j / N).
struct SampleGrid {
  std::size_t dim = 1;
  std::vector<Complex> values;  ///< N blocks of dim * dim entries, row-major

  std::size_t size() const { return values.size() / (dim * dim); }
  Complex at(std::size_t j, std::size_t r = 0, std::size_t c = 0) const { return values[(j * dim + r) * dim + c]; }
};

/// Relative magnitude below which a sample counts as vanishing (or singular).
inline constexpr double kZeroFloor = 1e-12;

/// Evaluates the series on an N-point grid.  Requires N >= 2 * band + 1.
SampleGrid samples_of(const LaurentSeries& s, std::size_t n_samples);

/// Discrete Fourier coefficients c_k = (1/N) sum_j values[j] exp(-2 pi i j k / N), |k| <= band.
/// Aliasing from harmonics beyond N - band is not corrected; choose N large enough.
LaurentSeries coeffs_from_samples(const SampleGrid& samples, std::size_t band);

/// Product of two symbols truncated to `out_band`; the dropped Frobenius mass is
/// available through discarded_tail() on the result.
LaurentSeries convolve(const LaurentSeries& a, const LaurentSeries& b, std::size_t out_band);

/// Winding number of nonvanishing scalar samples about the origin.
int winding_number(const SampleGrid& samples);

/// Normalized logarithm: `log` has zero mean coefficient, `geometric_mean` = exp of the removed constant.
struct LogSymbol {
  LaurentSeries log;
  Complex geometric_mean{1.0};
};

/// Continuous logarithm of a scalar symbol sampled on `n_samples` points.
/// The branch is followed sample to sample and a jump of pi/2 or more between
/// neighbours is rejected as an unresolved grid.  `band` defaults to (N - 2) / 2.
LogSymbol log_symbol(const LaurentSeries& phi, std::size_t n_samples, std::optional<std::size_t> band = {});

struct KreinDiagnostics {
  double krein_seminorm = 0.0;      ///< sqrt(sum_k |k| ||f_k||_F^2)
  double sup_norm_estimate = 0.0;   ///< max spectral norm over circle samples
  double tail_mass = 0.0;           ///< sum_{|k| > cutoff} |k| ||f_k||_F^2
};

KreinDiagnostics krein_diagnostics(const LaurentSeries& f, std::size_t cutoff);

struct SymbolInverse {
  LaurentSeries series;
  double residual = 0.0;  ///< ||convolve(phi, inverse) - 1|| in the Frobenius sense
};

/// Pointwise (block) inverse by sampling and Fourier inversion.
SymbolInverse invert_symbol(const LaurentSeries& phi, std::size_t n_samples, std::size_t band);

/// Largest and smallest singular value of a d x d block (row-major).
std::pair<double, double> singular_value_range(std::span<const Complex> block, std::size_t dim);

} // namespace tdet
