#include "tdet/determinants.hpp"

#include "tdet/kernels.hpp"
#include "tdet/operators.hpp"
#include "tdet/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace tdet {

namespace {

double wrap_phase(double phase) {
  double p = std::remainder(phase, 2.0 * std::numbers::pi);
  if (p <= -std::numbers::pi) p += 2.0 * std::numbers::pi;
  return p;
}

enum class Shape { lower, upper, full };

Shape triangular_shape(const ComplexMatrix& m) {
  bool lower = true;
  bool upper = true;
  for (std::size_t i = 0; i < m.rows() && (lower || upper); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) == Complex{}) continue;
      if (j > i) lower = false;
      if (j < i) upper = false;
    }
  if (lower) return Shape::lower;
  if (upper) return Shape::upper;
  return Shape::full;
}

LogDet accumulate(const ComplexMatrix& diag_source, int parity, double condition_hint) {
  double log_mag = 0.0;
  double phase = parity < 0 ? std::numbers::pi : 0.0;
  for (std::size_t i = 0; i < diag_source.rows(); ++i) {
    const Complex p = diag_source(i, i);
    if (p == Complex{}) return LogDet::zero();
    log_mag += std::log(std::abs(p));
    phase += std::arg(p);
  }
  return LogDet::from_parts(log_mag, phase, condition_hint);
}

} // namespace

LogDet LogDet::from_parts(double log_magnitude, double phase, double condition_hint) {
  LogDet d;
  d.log_magnitude = log_magnitude;
  d.phase = wrap_phase(phase);
  d.value = std::polar(std::exp(log_magnitude), d.phase);
  d.condition_hint = std::max(1.0, condition_hint);
  return d;
}

LogDet LogDet::zero() {
  LogDet d;
  d.log_magnitude = -std::numeric_limits<double>::infinity();
  d.phase = 0.0;
  d.value = Complex{};
  d.condition_hint = std::numeric_limits<double>::infinity();
  return d;
}

LogDet operator*(const LogDet& a, const LogDet& b) {
  if (a.is_zero() || b.is_zero()) return LogDet::zero();
  return LogDet::from_parts(a.log_magnitude + b.log_magnitude, a.phase + b.phase,
                            std::max(a.condition_hint, b.condition_hint));
}

Complex ratio(const LogDet& a, const LogDet& b) {
  if (b.is_zero()) return {std::numeric_limits<double>::infinity(), 0.0};
  if (a.is_zero()) return {};
  return std::polar(std::exp(a.log_magnitude - b.log_magnitude), a.phase - b.phase);
}

LogDet det_complex(const ComplexMatrix& m) {
  if (!m.is_square())
    throw DimensionError("det_complex: matrix is " + std::to_string(m.rows()) + " x " + std::to_string(m.cols()));
  if (m.rows() == 0) return LogDet{};
  if (triangular_shape(m) != Shape::full) {
    double hi = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      hi = std::max(hi, std::abs(m(i, i)));
      lo = std::min(lo, std::abs(m(i, i)));
    }
    return accumulate(m, 1, lo > 0 ? hi / lo : 1.0);
  }
  const kernels::LuFactors f = kernels::lu_decompose(m);
  if (f.singular) return LogDet::zero();
  return accumulate(f.lu, f.parity, f.condition_hint());
}

LogDet toeplitz_det(const LaurentSeries& phi, std::size_t n) { return det_complex(toeplitz_matrix(phi, n)); }

FredholmResult fredholm_det(const LaurentSeries& u, const LaurentSeries& v, std::size_t n,
                            const FredholmParams& params) {
  FredholmResult out;
  const std::size_t exact = exact_section(u, v, n);
  out.section = params.section.value_or(exact);
  if (out.section == 0) throw DomainError("fredholm_det: section size must be at least 1");
  out.hs_U = hankel_U_hs_norm(u, n);
  out.hs_V = hankel_V_hs_norm(v, n);
  out.det = det_complex(identity_minus(kernel_K(u, v, n, out.section)));
  if (out.section < exact) {
    const std::size_t m = out.section;
    auto tail = [&](const LaurentSeries& s, long sign) {
      double sum = 0.0;
      for (std::size_t i = 0; i < exact; ++i)
        for (std::size_t j = 0; j < exact; ++j) {
          if (i < m && j < m) continue;
          const long idx = sign * static_cast<long>(n + i + j + 1);
          if (!s.in_band(idx)) continue;
          for (const Complex& x : s.block(idx)) sum += std::norm(x);
        }
      return std::sqrt(sum);
    };
    out.tail_estimate = tail(u, 1) * tail(v, -1) * std::exp(out.hs_U * out.hs_V + 1.0);
  }
  return out;
}

Complex szego_Z_series(const LaurentSeries& log_phi) {
  if (!log_phi.is_scalar()) throw DimensionError("szego_Z_series: scalar log symbol required");
  Complex sum{};
  for (long k = 1; k <= static_cast<long>(log_phi.band()); ++k)
    sum += static_cast<double>(k) * log_phi[k] * log_phi[-k];
  return std::exp(sum);
}

namespace {

// N x N (blocks) section of T(phi) T(psi) with an inner dimension that covers every nonzero product.
LogDet section_det(const LaurentSeries& phi, const LaurentSeries& psi, std::size_t n) {
  const std::size_t d = phi.dim();
  const std::size_t inner = n + std::min(phi.band(), psi.band());
  ComplexMatrix a(n * d, inner * d);
  ComplexMatrix b(inner * d, n * d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      const long ia = static_cast<long>(i) - static_cast<long>(k);
      if (phi.in_band(ia)) {
        auto blk = phi.block(ia);
        for (std::size_t r = 0; r < d; ++r)
          for (std::size_t c = 0; c < d; ++c) a(i * d + r, k * d + c) = blk[r * d + c];
      }
      const long ib = static_cast<long>(k) - static_cast<long>(i);
      if (psi.in_band(ib)) {
        auto blk = psi.block(ib);
        for (std::size_t r = 0; r < d; ++r)
          for (std::size_t c = 0; c < d; ++c) b(k * d + r, i * d + c) = blk[r * d + c];
      }
    }
  return det_complex(kernels::multiply(a, b));
}

} // namespace

ZOperatorResult szego_Z_operator(const LaurentSeries& phi, const ZOperatorParams& params) {
  const std::size_t band = params.band.value_or(std::min(4 * phi.band(), (params.n_samples - 2) / 2));
  const SymbolInverse inverse = invert_symbol(phi, params.n_samples, std::max<std::size_t>(band, 1));

  ZOperatorResult out;
  out.inverse_residual = inverse.residual;
  std::size_t n = params.initial_section != 0
                      ? params.initial_section
                      : phi.band() + 1;
  n = std::min(n, params.section_cap);
  LogDet previous = section_det(phi, inverse.series, n);
  while (true) {
    if (n >= params.section_cap)
      throw ConvergenceError("szego_Z_operator: no convergence within " + std::to_string(params.section_cap) +
                                 " blocks",
                             previous.value, previous.value);
    const std::size_t next = std::min(2 * n, params.section_cap);
    const LogDet current = section_det(phi, inverse.series, next);
    const double dmag = std::abs(current.log_magnitude - previous.log_magnitude);
    const double dphase = std::abs(wrap_phase(current.phase - previous.phase));
    if (dmag < params.tol && dphase < params.tol) {
      out.det = current;
      out.section = next;
      return out;
    }
    if (next >= params.section_cap)
      throw ConvergenceError("szego_Z_operator: no convergence within " + std::to_string(params.section_cap) +
                                 " blocks",
                             previous.value, current.value);
    previous = current;
    n = next;
  }
}

} // namespace tdet
