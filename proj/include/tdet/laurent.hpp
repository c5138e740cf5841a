#pragma once

#include "tdet/errors.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace tdet {

/// Which side of the circle a series is analytic on.  `plus` series have no
/// coefficients at k < 0, `minus` series none at k > 0.
enum class Support { general, plus, minus };

/// Banded Laurent series with d x d complex coefficient blocks, k in [-band, band].
///
/// Blocks are stored row-major and contiguously, index k at offset (k + band) * d * d.
/// Indices outside the band read as zero blocks.  The support flag is enforced on
/// every write.
class LaurentSeries {
public:
  LaurentSeries() : LaurentSeries(1, 0) {}
  LaurentSeries(std::size_t dim, std::size_t band, Support support = Support::general);

  /// Scalar series from (k, c_k) pairs; the band is the largest |k| given unless `band` is larger.
  static LaurentSeries scalar(std::initializer_list<std::pair<int, Complex>> terms, std::size_t band = 0);
  static LaurentSeries scalar(const std::vector<std::pair<int, Complex>>& terms, std::size_t band = 0);
  /// The unit: identity block at k = 0.
  static LaurentSeries identity(std::size_t dim, std::size_t band = 0);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t band() const noexcept { return band_; }
  std::size_t block_size() const noexcept { return dim_ * dim_; }
  Support support() const noexcept { return support_; }
  bool is_scalar() const noexcept { return dim_ == 1; }
  bool in_band(long k) const noexcept { return k >= -static_cast<long>(band_) && k <= static_cast<long>(band_); }

  /// Entry (r, c) of the block at index k; zero outside the band.
  Complex get(long k, std::size_t r = 0, std::size_t c = 0) const;
  /// Scalar shorthand for get(k, 0, 0).
  Complex operator[](long k) const { return get(k); }
  void set(long k, std::size_t r, std::size_t c, Complex value);
  void set(long k, Complex value) { set(k, 0, 0, value); }

  /// Read-only view of the block at k (must lie in the band).
  std::span<const Complex> block(long k) const;
  /// Mutable view; writes through here bypass the support check.
  std::span<Complex> block_mut(long k);
  void set_block(long k, std::span<const Complex> values);

  std::span<const Complex> data() const noexcept { return coeffs_; }
  std::span<Complex> data_mut() noexcept { return coeffs_; }

  /// Frobenius norm of whatever the producing operation discarded outside the band.
  double discarded_tail() const noexcept { return discarded_tail_; }
  void set_discarded_tail(double mass) noexcept { discarded_tail_ = mass; }

  /// Copy restricted (or zero-padded) to a new band; the dropped Frobenius mass is recorded.
  LaurentSeries with_band(std::size_t band) const;
  /// f(z) -> f(1/z): index k moves to -k, plus and minus support swap.
  LaurentSeries reflected() const;
  LaurentSeries scaled(Complex factor) const;
  /// Coefficients with k > 0 (plus) or k < 0 (minus); index 0 dropped.
  LaurentSeries strictly_plus_part() const;
  LaurentSeries strictly_minus_part() const;

  /// Frobenius norm of all blocks at k > 0 or k < 0, respectively.
  double positive_mass() const;
  double negative_mass() const;
  bool is_finite() const;

  /// Relabels support after checking the stored values allow it.
  void set_support(Support support);

private:
  std::size_t offset(long k) const { return static_cast<std::size_t>(k + static_cast<long>(band_)) * block_size(); }

  std::size_t dim_;
  std::size_t band_;
  Support support_;
  std::vector<Complex> coeffs_;
  double discarded_tail_ = 0.0;
};

/// Frobenius distance sqrt(sum_k ||a_k - b_k||_F^2) over the union of bands.
double frobenius_distance(const LaurentSeries& a, const LaurentSeries& b);

} // namespace tdet
