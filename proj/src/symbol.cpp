#include "tdet/symbol.hpp"

#include "tdet/kernels.hpp"

#include <Eigen/Dense>
#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>

namespace tdet {

namespace {

// FFTW planning is not thread-safe; execution on distinct arrays is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

enum class Direction { forward, backward };

// Unnormalized DFT of one sequence; forward uses exp(-2 pi i jk / N).
std::vector<Complex> dft(std::vector<Complex> in, Direction dir) {
  std::vector<Complex> out(in.size());
  auto* src = reinterpret_cast<fftw_complex*>(in.data());
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(in.size()), src, dst, dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

std::size_t wrap(long k, std::size_t n) {
  const long m = static_cast<long>(n);
  return static_cast<std::size_t>(((k % m) + m) % m);
}

using BlockMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const BlockMatrix> as_matrix(std::span<const Complex> block, std::size_t dim) {
  return {block.data(), static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)};
}

} // namespace

std::pair<double, double> singular_value_range(std::span<const Complex> block, std::size_t dim) {
  if (dim == 1) {
    const double a = std::abs(block[0]);
    return {a, a};
  }
  Eigen::JacobiSVD<BlockMatrix> svd(as_matrix(block, dim));
  const auto& sv = svd.singularValues();
  return {sv(0), sv(sv.size() - 1)};
}

SampleGrid samples_of(const LaurentSeries& s, std::size_t n_samples) {
  const std::size_t band = s.band();
  if (n_samples < 2 * band + 1)
    throw DomainError("samples_of: " + std::to_string(n_samples) + " samples cannot resolve band " +
                      std::to_string(band) + " (need at least " + std::to_string(2 * band + 1) + ")");
  const std::size_t d = s.dim();
  SampleGrid grid{d, std::vector<Complex>(n_samples * d * d)};
  const long m = static_cast<long>(band);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      std::vector<Complex> spectrum(n_samples);
      for (long k = -m; k <= m; ++k) spectrum[wrap(k, n_samples)] = s.get(k, r, c);
      auto values = dft(std::move(spectrum), Direction::backward);
      for (std::size_t j = 0; j < n_samples; ++j) grid.values[(j * d + r) * d + c] = values[j];
    }
  return grid;
}

LaurentSeries coeffs_from_samples(const SampleGrid& samples, std::size_t band) {
  const std::size_t n = samples.size();
  if (n < 2 * band + 2)
    throw DomainError("coeffs_from_samples: " + std::to_string(n) + " samples are too few for band " +
                      std::to_string(band) + "; need at least " + std::to_string(2 * band + 2));
  const std::size_t d = samples.dim;
  LaurentSeries out(d, band);
  const long m = static_cast<long>(band);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      std::vector<Complex> values(n);
      for (std::size_t j = 0; j < n; ++j) values[j] = samples.at(j, r, c);
      auto spectrum = dft(std::move(values), Direction::forward);
      for (long k = -m; k <= m; ++k) out.block_mut(k)[r * d + c] = spectrum[wrap(k, n)] * scale;
    }
  return out;
}

LaurentSeries convolve(const LaurentSeries& a, const LaurentSeries& b, std::size_t out_band) {
  return kernels::convolve_full(a, b).with_band(out_band);
}

int winding_number(const SampleGrid& samples) {
  if (samples.dim != 1) throw DimensionError("winding_number: scalar samples required");
  const std::size_t n = samples.size();
  if (n < 2) throw DomainError("winding_number: need at least two samples");
  double peak = 0.0;
  for (const Complex& v : samples.values) peak = std::max(peak, std::abs(v));
  for (std::size_t j = 0; j < n; ++j)
    if (!(std::abs(samples.values[j]) > kZeroFloor * peak))
      throw DomainError("winding_number: symbol vanishes (numerically) at sample " + std::to_string(j));
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) total += std::arg(samples.values[(j + 1) % n] / samples.values[j]);
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

LogSymbol log_symbol(const LaurentSeries& phi, std::size_t n_samples, std::optional<std::size_t> band) {
  if (!phi.is_scalar()) throw DimensionError("log_symbol: scalar symbol required (no block logarithm)");
  if (n_samples < 4) throw DomainError("log_symbol: need at least 4 samples");
  const std::size_t out_band = band.value_or((n_samples - 2) / 2);
  const SampleGrid grid = samples_of(phi, n_samples);

  const int winding = winding_number(grid);
  if (winding != 0)
    throw WindingError("log_symbol: symbol has winding number " + std::to_string(winding) +
                           "; a continuous logarithm requires winding number 0",
                       winding);

  SampleGrid logs{1, std::vector<Complex>(n_samples)};
  double phase = std::arg(grid.values[0]);
  for (std::size_t j = 0; j < n_samples; ++j) {
    if (j > 0) {
      const double step = std::arg(grid.values[j] / grid.values[j - 1]);
      if (std::abs(step) >= std::numbers::pi / 2)
        throw DomainError("log_symbol: argument jumps by " + std::to_string(step) + " between samples " +
                          std::to_string(j - 1) + " and " + std::to_string(j) + "; use a finer grid");
      phase += step;
    }
    logs.values[j] = Complex(std::log(std::abs(grid.values[j])), phase);
  }
  const double closing = std::arg(grid.values[0] / grid.values[n_samples - 1]);
  if (std::abs(closing) >= std::numbers::pi / 2)
    throw DomainError("log_symbol: argument jumps across the last grid interval; use a finer grid");

  LogSymbol out;
  out.log = coeffs_from_samples(logs, out_band);
  const Complex mean = out.log[0];
  out.geometric_mean = std::exp(mean);
  out.log.set(0, Complex{});
  return out;
}

KreinDiagnostics krein_diagnostics(const LaurentSeries& f, std::size_t cutoff) {
  KreinDiagnostics diag;
  const long m = static_cast<long>(f.band());
  double weighted = 0.0;
  double tail = 0.0;
  for (long k = -m; k <= m; ++k) {
    double norm_sq = 0.0;
    for (const Complex& x : f.block(k)) norm_sq += std::norm(x);
    const double term = static_cast<double>(std::abs(k)) * norm_sq;
    weighted += term;
    if (static_cast<std::size_t>(std::abs(k)) > cutoff) tail += term;
  }
  diag.krein_seminorm = std::sqrt(weighted);
  diag.tail_mass = tail;

  const std::size_t n = std::max<std::size_t>(64, 4 * (f.band() + 1));
  const SampleGrid grid = samples_of(f, n);
  const std::size_t bs = f.block_size();
  for (std::size_t j = 0; j < n; ++j) {
    auto block = std::span<const Complex>(grid.values).subspan(j * bs, bs);
    diag.sup_norm_estimate = std::max(diag.sup_norm_estimate, singular_value_range(block, f.dim()).first);
  }
  return diag;
}

SymbolInverse invert_symbol(const LaurentSeries& phi, std::size_t n_samples, std::size_t band) {
  SampleGrid grid = samples_of(phi, n_samples);
  const std::size_t d = phi.dim();
  const std::size_t bs = d * d;
  std::vector<std::pair<double, double>> ranges(n_samples);
  double peak = 0.0;
  for (std::size_t j = 0; j < n_samples; ++j) {
    ranges[j] = singular_value_range(std::span<const Complex>(grid.values).subspan(j * bs, bs), d);
    peak = std::max(peak, ranges[j].first);
  }
  for (std::size_t j = 0; j < n_samples; ++j) {
    if (!(ranges[j].second > kZeroFloor * peak))
      throw SingularError("invert_symbol: symbol is singular at sample " + std::to_string(j),
                          ranges[j].second > 0 ? ranges[j].first / ranges[j].second
                                               : std::numeric_limits<double>::infinity());
    auto block = std::span<Complex>(grid.values).subspan(j * bs, bs);
    if (d == 1) {
      block[0] = 1.0 / block[0];
    } else {
      BlockMatrix inv = as_matrix(block, d).partialPivLu().inverse();
      std::copy(inv.data(), inv.data() + bs, block.begin());
    }
  }
  SymbolInverse out;
  out.series = coeffs_from_samples(grid, band);
  out.residual = frobenius_distance(convolve(phi, out.series, band), LaurentSeries::identity(d));
  return out;
}

} // namespace tdet
