#include "tdet/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace tdet {

namespace {

double block_norm_sq(std::span<const Complex> block) {
  double sum = 0.0;
  for (const Complex& x : block) sum += std::norm(x);
  return sum;
}

bool allowed(Support support, long k) {
  switch (support) {
  case Support::plus: return k >= 0;
  case Support::minus: return k <= 0;
  case Support::general: return true;
  }
  return true;
}

} // namespace

LaurentSeries::LaurentSeries(std::size_t dim, std::size_t band, Support support)
    : dim_(dim), band_(band), support_(support), coeffs_((2 * band + 1) * dim * dim) {
  if (dim == 0) throw DimensionError("LaurentSeries: block dimension must be positive");
}

LaurentSeries LaurentSeries::scalar(std::initializer_list<std::pair<int, Complex>> terms, std::size_t band) {
  return scalar(std::vector<std::pair<int, Complex>>(terms), band);
}

LaurentSeries LaurentSeries::scalar(const std::vector<std::pair<int, Complex>>& terms, std::size_t band) {
  for (const auto& [k, c] : terms) band = std::max<std::size_t>(band, static_cast<std::size_t>(std::abs(k)));
  LaurentSeries s(1, band);
  for (const auto& [k, c] : terms) s.coeffs_[s.offset(k)] += c;
  return s;
}

LaurentSeries LaurentSeries::identity(std::size_t dim, std::size_t band) {
  LaurentSeries s(dim, band);
  for (std::size_t r = 0; r < dim; ++r) s.set(0, r, r, 1.0);
  return s;
}

Complex LaurentSeries::get(long k, std::size_t r, std::size_t c) const {
  if (!in_band(k)) return {};
  return coeffs_[offset(k) + r * dim_ + c];
}

void LaurentSeries::set(long k, std::size_t r, std::size_t c, Complex value) {
  if (r >= dim_ || c >= dim_) throw DimensionError("LaurentSeries::set: block index out of range");
  if (!in_band(k)) {
    if (value == Complex{}) return;
    throw DomainError("LaurentSeries::set: index " + std::to_string(k) + " outside band " +
                      std::to_string(band_));
  }
  if (!allowed(support_, k) && value != Complex{})
    throw DomainError("LaurentSeries::set: nonzero coefficient at k = " + std::to_string(k) +
                      " violates the series support");
  coeffs_[offset(k) + r * dim_ + c] = value;
}

std::span<const Complex> LaurentSeries::block(long k) const {
  if (!in_band(k)) throw DomainError("LaurentSeries::block: index outside band");
  return std::span<const Complex>(coeffs_).subspan(offset(k), block_size());
}

std::span<Complex> LaurentSeries::block_mut(long k) {
  if (!in_band(k)) throw DomainError("LaurentSeries::block_mut: index outside band");
  return std::span<Complex>(coeffs_).subspan(offset(k), block_size());
}

void LaurentSeries::set_block(long k, std::span<const Complex> values) {
  if (values.size() != block_size()) throw DimensionError("LaurentSeries::set_block: wrong block size");
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) set(k, r, c, values[r * dim_ + c]);
}

LaurentSeries LaurentSeries::with_band(std::size_t band) const {
  LaurentSeries out(dim_, band, support_);
  const long common = static_cast<long>(std::min(band, band_));
  for (long k = -common; k <= common; ++k) {
    auto src = block(k);
    std::copy(src.begin(), src.end(), out.block_mut(k).begin());
  }
  double dropped = 0.0;
  for (long k = common + 1; k <= static_cast<long>(band_); ++k)
    dropped += block_norm_sq(block(k)) + block_norm_sq(block(-k));
  out.discarded_tail_ = std::sqrt(dropped);
  return out;
}

LaurentSeries LaurentSeries::reflected() const {
  Support flipped = support_ == Support::plus    ? Support::minus
                    : support_ == Support::minus ? Support::plus
                                                 : Support::general;
  LaurentSeries out(dim_, band_, flipped);
  const long m = static_cast<long>(band_);
  for (long k = -m; k <= m; ++k) {
    auto src = block(k);
    std::copy(src.begin(), src.end(), out.block_mut(-k).begin());
  }
  out.discarded_tail_ = discarded_tail_;
  return out;
}

LaurentSeries LaurentSeries::scaled(Complex factor) const {
  LaurentSeries out = *this;
  for (Complex& x : out.coeffs_) x *= factor;
  return out;
}

LaurentSeries LaurentSeries::strictly_plus_part() const {
  LaurentSeries out(dim_, band_, Support::plus);
  for (long k = 1; k <= static_cast<long>(band_); ++k) {
    auto src = block(k);
    std::copy(src.begin(), src.end(), out.block_mut(k).begin());
  }
  return out;
}

LaurentSeries LaurentSeries::strictly_minus_part() const {
  LaurentSeries out(dim_, band_, Support::minus);
  for (long k = 1; k <= static_cast<long>(band_); ++k) {
    auto src = block(-k);
    std::copy(src.begin(), src.end(), out.block_mut(-k).begin());
  }
  return out;
}

double LaurentSeries::positive_mass() const {
  double sum = 0.0;
  for (long k = 1; k <= static_cast<long>(band_); ++k) sum += block_norm_sq(block(k));
  return std::sqrt(sum);
}

double LaurentSeries::negative_mass() const {
  double sum = 0.0;
  for (long k = 1; k <= static_cast<long>(band_); ++k) sum += block_norm_sq(block(-k));
  return std::sqrt(sum);
}

bool LaurentSeries::is_finite() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Complex& x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

void LaurentSeries::set_support(Support support) {
  if (support == Support::plus && negative_mass() != 0.0)
    throw DomainError("LaurentSeries::set_support: series has coefficients at k < 0");
  if (support == Support::minus && positive_mass() != 0.0)
    throw DomainError("LaurentSeries::set_support: series has coefficients at k > 0");
  support_ = support;
}

double frobenius_distance(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.dim() != b.dim()) throw DimensionError("frobenius_distance: block dimensions differ");
  const long m = static_cast<long>(std::max(a.band(), b.band()));
  double sum = 0.0;
  for (long k = -m; k <= m; ++k)
    for (std::size_t r = 0; r < a.dim(); ++r)
      for (std::size_t c = 0; c < a.dim(); ++c) sum += std::norm(a.get(k, r, c) - b.get(k, r, c));
  return std::sqrt(sum);
}

} // namespace tdet
