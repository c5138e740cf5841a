#include "tdet/families.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace tdet::families {

namespace {

Complex draw_disc(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = radius * std::sqrt(unit(rng));
  const double theta = 2.0 * std::numbers::pi * unit(rng);
  return std::polar(r, theta);
}

LaurentSeries random_one_sided(std::mt19937_64& rng, std::size_t dim, std::size_t band, double scale, long sign) {
  LaurentSeries s(dim, band, sign > 0 ? Support::plus : Support::minus);
  for (std::size_t r = 0; r < dim; ++r) s.block_mut(0)[r * dim + r] = 1.0;
  double total = 0.0;
  for (long k = 1; k <= static_cast<long>(band); ++k)
    for (Complex& x : s.block_mut(sign * k)) x = draw_disc(rng, 1.0);
  for (long k = 1; k <= static_cast<long>(band); ++k) {
    double norm_sq = 0.0;
    for (const Complex& x : s.block(sign * k)) norm_sq += std::norm(x);
    total += std::sqrt(norm_sq);
  }
  if (total > 0.0)
    for (long k = 1; k <= static_cast<long>(band); ++k)
      for (Complex& x : s.block_mut(sign * k)) x *= scale / total;
  return s;
}

} // namespace

LaurentSeries exp_trig_log(const std::vector<std::pair<int, Complex>>& terms) { return LaurentSeries::scalar(terms); }

LaurentSeries rational_log(std::span<const RationalFactor> factors, std::size_t band) {
  LaurentSeries log(1, band);
  for (const RationalFactor& f : factors) {
    if (!(std::abs(f.root) < 1.0))
      throw DomainError("rational_log: factor root must lie strictly inside the unit disc");
    if (f.side == Support::general) throw DomainError("rational_log: factor side must be plus or minus");
    const long sign = f.side == Support::plus ? 1 : -1;
    Complex power = 1.0;
    for (long k = 1; k <= static_cast<long>(band); ++k) {
      power *= f.root;
      log.set(sign * k, log[sign * k] - static_cast<double>(f.power) * power / static_cast<double>(k));
    }
  }
  return log;
}

LaurentSeries random_scalar_log(std::uint64_t seed, std::size_t band, double amplitude, double decay,
                                bool complex_coeffs) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  LaurentSeries log(1, band);
  for (long k = 1; k <= static_cast<long>(band); ++k) {
    const double bound = amplitude * std::pow(decay, static_cast<double>(k));
    for (long sign : {1L, -1L}) {
      const Complex c = complex_coeffs ? draw_disc(rng, bound) : Complex(bound * sym(rng), 0.0);
      log.set(sign * k, c);
    }
  }
  return log;
}

FactorPair random_factor_pair(std::uint64_t seed, std::size_t dim, std::size_t factor_band, double scale) {
  std::mt19937_64 rng(seed);
  FactorPair pair;
  pair.minus = random_one_sided(rng, dim, factor_band, scale, -1);
  pair.plus = random_one_sided(rng, dim, factor_band, scale, 1);
  pair.center = LaurentSeries::identity(dim);
  return pair;
}

} // namespace tdet::families
