#pragma once

#include "tdet/laurent.hpp"
#include "tdet/matrix.hpp"

#include <cstddef>
#include <limits>
#include <optional>

namespace tdet {

/// Determinant carried as log-magnitude and phase so products of many pivots
/// neither overflow nor underflow.  A zero determinant has log_magnitude = -inf.
struct LogDet {
  double log_magnitude = 0.0;
  double phase = 0.0;           ///< in (-pi, pi]
  Complex value{1.0};
  double condition_hint = 1.0;  ///< max |pivot| / min |pivot|

  static LogDet from_parts(double log_magnitude, double phase, double condition_hint = 1.0);
  static LogDet zero();
  bool is_zero() const { return value == Complex{} && log_magnitude == -std::numeric_limits<double>::infinity(); }
};

LogDet operator*(const LogDet& a, const LogDet& b);
/// a / b without forming either value.
Complex ratio(const LogDet& a, const LogDet& b);

/// Row-pivoted elimination; triangular input takes the exact diagonal product.
LogDet det_complex(const ComplexMatrix& m);

/// D_n(phi) = det T_n(phi).
LogDet toeplitz_det(const LaurentSeries& phi, std::size_t n);

struct FredholmParams {
  std::optional<std::size_t> section;  ///< default: exact_section(u, v, n)
};

struct FredholmResult {
  LogDet det;
  double tail_estimate = 0.0;  ///< 0 when the section is exact for the banded data
  std::size_t section = 0;
  double hs_U = 0.0;
  double hs_V = 0.0;
};

/// det(I - K_n) by finite section.  When the section is smaller than the exact
/// one, tail_estimate = ||U_tail||_HS ||V_tail||_HS exp(||U_n||_HS ||V_n||_HS + 1),
/// a heuristic size for the neglected part.
FredholmResult fredholm_det(const LaurentSeries& u, const LaurentSeries& v, std::size_t n,
                            const FredholmParams& params = {});

/// Z = exp(sum_{k >= 1} k (log phi)_k (log phi)_{-k}) over the stored band.
Complex szego_Z_series(const LaurentSeries& log_phi);

struct ZOperatorParams {
  std::size_t n_samples = 512;          ///< grid for the pointwise inverse of phi
  std::optional<std::size_t> band;      ///< band of phi^{-1}; default min(4 * phi.band(), (N - 2) / 2)
  std::size_t initial_section = 0;      ///< 0: phi.band() + 1 blocks
  std::size_t section_cap = 4096;       ///< blocks
  double tol = 1e-10;                   ///< on log_magnitude and on phase, separately
};

struct ZOperatorResult {
  LogDet det;
  std::size_t section = 0;
  double inverse_residual = 0.0;
};

/// Z = det T(phi) T(phi^{-1}) from growing sections of the semi-infinite product.
/// Works for scalar and block symbols.
ZOperatorResult szego_Z_operator(const LaurentSeries& phi, const ZOperatorParams& params = {});

} // namespace tdet
