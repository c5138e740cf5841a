#pragma once

// Named symbol families used by the CLI configs and the acceptance suite.

#include "tdet/factorization.hpp"
#include "tdet/laurent.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace tdet::families {

/// log phi = sum_k c_k z^k from explicit (k, c_k) terms ("exp_trig" / "log_coeffs").
LaurentSeries exp_trig_log(const std::vector<std::pair<int, Complex>>& terms);

/// (1 - root z)^power for the plus side, (1 - root / z)^power for the minus side; |root| < 1.
struct RationalFactor {
  Support side = Support::plus;
  Complex root;
  int power = 1;
};

/// Exact log of a product of rational factors, truncated at `band`:
/// log(1 - a z) = -sum_k a^k z^k / k.
LaurentSeries rational_log(std::span<const RationalFactor> factors, std::size_t band);

/// Random log phi with |(log phi)_k| <= amplitude * decay^|k|, 0 < |k| <= band.
/// Real draws give real coefficients, complex draws fill a disc.
LaurentSeries random_scalar_log(std::uint64_t seed, std::size_t band = 16, double amplitude = 0.3,
                                double decay = 0.5, bool complex_coeffs = true);

/// psi_- = I + sum_{k=1..b} A_k z^{-k}, psi_+ = I + sum_{k=1..b} B_k z^k with random
/// complex blocks scaled so that sum_k ||A_k||_F = sum_k ||B_k||_F = scale.
FactorPair random_factor_pair(std::uint64_t seed, std::size_t dim, std::size_t factor_band, double scale);

} // namespace tdet::families
