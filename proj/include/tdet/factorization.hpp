#pragma once

// Wiener-Hopf factorization phi = phi_+ phi_- (and, for block symbols, the
// reversed-order factorization phi = psi_- psi_+), normalized so that the
// coefficient at 0 of every factor is the identity, plus the ratio symbols
// u = phi_- / phi_+ and v = phi_+ / phi_- that feed the Hankel matrices.

#include "tdet/laurent.hpp"

#include <cstddef>
#include <optional>
#include <utility>

namespace tdet {

inline constexpr double kDefaultFactorizationTol = 1e-10;

/// phi = minus * center * plus with both factors normalized to the identity at
/// index 0; `center` is the constant block that normalization leaves over.
struct FactorPair {
  LaurentSeries minus;
  LaurentSeries plus;
  LaurentSeries center;  ///< band-0 series
};

/// phi = phi_+ G phi_-, and for block symbols also phi = psi_- H psi_+.
/// For scalar symbols G is the geometric mean exp((log phi)_0).
struct FactorizationData {
  LaurentSeries plus;    ///< phi_+, plus-supported, plus_0 = I
  LaurentSeries minus;   ///< phi_-, minus-supported, minus_0 = I
  LaurentSeries center;  ///< G, band 0
  std::optional<FactorPair> second_pair;  ///< psi_-, psi_+, H
  double recon_residual = 0.0;
  double second_recon_residual = 0.0;

  /// det G; equals the geometric mean of det phi.
  Complex geometric_mean() const;
};

struct RatioPair {
  LaurentSeries u;  ///< phi_- phi_+^{-1}  (block: phi_- psi_+^{-1})
  LaurentSeries v;  ///< phi_+ phi_-^{-1}  (block: psi_-^{-1} phi_+)
  double inverse_residual = 0.0;
};

/// exp of a one-sided scalar series with a_0 = 0, via e_n = (1/n) sum_j j a_j e_{n-j}.
/// Minus-supported input is handled by reflection.
LaurentSeries exp_series(const LaurentSeries& a, std::size_t band);

/// Inverse of a plus- or minus-supported series with identity coefficient at 0:
/// q_0 = I, q_n = -sum_{j=1..n} p_j q_{n-j}.
LaurentSeries invert_one_sided(const LaurentSeries& p, std::size_t band);

/// phi_+ = exp(sum_{k>0} l_k z^k), phi_- = exp(sum_{k<0} l_k z^k) from a normalized log
/// (center = exp(l_0)).
FactorPair factors_from_log(const LaurentSeries& log_phi, std::size_t band);

struct ScalarFactorizationParams {
  std::size_t n_samples = 512;
  std::optional<std::size_t> band;  ///< default: min(4 * phi.band(), (N - 2) / 2)
  double tol = kDefaultFactorizationTol;
};

FactorizationData wiener_hopf_scalar(const LaurentSeries& phi, const ScalarFactorizationParams& params = {});

/// phi = phi_+ phi_- for a block symbol by solving (w phi)_k = 0, k = 1..band,
/// for w = phi_+^{-1} with w_0 = I (finite-section block Toeplitz system).
FactorizationData block_plus_factorization(const LaurentSeries& phi, std::size_t band,
                                           double tol = kDefaultFactorizationTol);

/// phi = psi_- H psi_+ (reversed order), the mirror image of block_plus_factorization.
/// Returns the pair and its reconstruction residual.
std::pair<FactorPair, double> block_minus_factorization(const LaurentSeries& phi, std::size_t band,
                                                        double tol = kDefaultFactorizationTol);

/// Reconstruction residual ||first * center * second - phi|| over max(band, phi.band()).
double reconstruction_residual(const LaurentSeries& phi, const LaurentSeries& first, const LaurentSeries& center,
                               const LaurentSeries& second);

/// Ratio symbols at `band`.  Without a second pair (scalar only): u = phi_-/phi_+, v = phi_+/phi_-.
/// With a second pair: u = (G phi_-) (H psi_+)^{-1}, v = psi_-^{-1} phi_+.
RatioPair make_ratios(const FactorizationData& f, std::size_t band, double tol = kDefaultFactorizationTol);

} // namespace tdet
