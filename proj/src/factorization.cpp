#include "tdet/factorization.hpp"

#include "tdet/kernels.hpp"
#include "tdet/symbol.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace tdet {

namespace {

using BlockMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

LaurentSeries constant_block(const BlockMatrix& m) {
  const std::size_t d = static_cast<std::size_t>(m.rows());
  LaurentSeries out(d, 0);
  std::copy(m.data(), m.data() + d * d, out.block_mut(0).begin());
  return out;
}

BlockMatrix block_at(const LaurentSeries& s, long k) {
  const auto d = static_cast<Eigen::Index>(s.dim());
  BlockMatrix m(d, d);
  auto b = s.block(k);
  std::copy(b.begin(), b.end(), m.data());
  return m;
}

BlockMatrix invert_block(const BlockMatrix& m, const char* what) {
  auto [largest, smallest] = singular_value_range(std::span<const Complex>(m.data(), static_cast<std::size_t>(m.size())),
                                                  static_cast<std::size_t>(m.rows()));
  if (!(smallest > kZeroFloor * largest))
    throw SingularError(std::string(what) + ": constant block is singular",
                        smallest > 0 ? largest / smallest : std::numeric_limits<double>::infinity());
  return m.partialPivLu().inverse();
}

std::string describe(double value) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << value;
  return os.str();
}

void require_identity_at_zero(const LaurentSeries& p, const char* what) {
  const std::size_t d = p.dim();
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      if (p.get(0, r, c) != (r == c ? Complex(1.0) : Complex{}))
        throw DomainError(std::string(what) + ": coefficient at index 0 must be the identity");
}

} // namespace

Complex FactorizationData::geometric_mean() const {
  return block_at(center, 0).determinant();
}

LaurentSeries exp_series(const LaurentSeries& a, std::size_t band) {
  if (!a.is_scalar()) throw DimensionError("exp_series: scalar series required");
  if (a[0] != Complex{}) throw DomainError("exp_series: coefficient a_0 must be zero");
  const bool has_plus = a.positive_mass() > 0.0;
  const bool has_minus = a.negative_mass() > 0.0;
  if (has_plus && has_minus) throw DomainError("exp_series: series must be one-sided");
  if (has_minus) return exp_series(a.reflected(), band).reflected();

  LaurentSeries e(1, band, Support::plus);
  auto coeff = e.data_mut();
  const long m = static_cast<long>(band);
  const long ma = static_cast<long>(a.band());
  coeff[static_cast<std::size_t>(m)] = 1.0;
  for (long n = 1; n <= m; ++n) {
    Complex sum{};
    for (long j = 1; j <= std::min(n, ma); ++j) sum += static_cast<double>(j) * a[j] * coeff[static_cast<std::size_t>(m + n - j)];
    coeff[static_cast<std::size_t>(m + n)] = sum / static_cast<double>(n);
  }
  return e;
}

LaurentSeries invert_one_sided(const LaurentSeries& p, std::size_t band) {
  require_identity_at_zero(p, "invert_one_sided");
  const bool has_plus = p.positive_mass() > 0.0;
  const bool has_minus = p.negative_mass() > 0.0;
  if (has_plus && has_minus) throw DomainError("invert_one_sided: series must be one-sided");
  if (has_minus) return invert_one_sided(p.reflected(), band).reflected();

  const std::size_t d = p.dim();
  const long m = static_cast<long>(band);
  const long mp = static_cast<long>(p.band());
  LaurentSeries q(d, band, Support::plus);
  for (std::size_t r = 0; r < d; ++r) q.block_mut(0)[r * d + r] = 1.0;
  for (long n = 1; n <= m; ++n) {
    auto qn = q.block_mut(n);
    for (long j = 1; j <= std::min(n, mp); ++j) {
      auto pj = p.block(j);
      auto prev = q.block(n - j);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t s = 0; s < d; ++s) {
          const Complex prs = pj[r * d + s];
          if (prs == Complex{}) continue;
          for (std::size_t c = 0; c < d; ++c) qn[r * d + c] -= prs * prev[s * d + c];
        }
    }
  }
  return q;
}

FactorPair factors_from_log(const LaurentSeries& log_phi, std::size_t band) {
  if (!log_phi.is_scalar()) throw DimensionError("factors_from_log: scalar log required");
  FactorPair out;
  out.plus = exp_series(log_phi.strictly_plus_part(), band);
  out.minus = exp_series(log_phi.strictly_minus_part(), band);
  out.center = LaurentSeries::scalar({{0, std::exp(log_phi[0])}});
  return out;
}

double reconstruction_residual(const LaurentSeries& phi, const LaurentSeries& first, const LaurentSeries& center,
                               const LaurentSeries& second) {
  const std::size_t band = std::max({phi.band(), first.band(), second.band()});
  const LaurentSeries product = convolve(convolve(first, center, band), second, band);
  return frobenius_distance(product, phi);
}

FactorizationData wiener_hopf_scalar(const LaurentSeries& phi, const ScalarFactorizationParams& params) {
  if (!phi.is_scalar()) throw DimensionError("wiener_hopf_scalar: scalar symbol required");
  const std::size_t band = params.band.value_or(std::min(4 * phi.band(), (params.n_samples - 2) / 2));
  const LogSymbol log = log_symbol(phi, params.n_samples);
  FactorPair pair = factors_from_log(log.log, band);

  FactorizationData out;
  out.plus = std::move(pair.plus);
  out.minus = std::move(pair.minus);
  out.center = LaurentSeries::scalar({{0, log.geometric_mean}});
  out.recon_residual = reconstruction_residual(phi, out.plus, out.center, out.minus);
  if (!(out.recon_residual <= params.tol))
    throw ResidualError("wiener_hopf_scalar: reconstruction residual " + describe(out.recon_residual) +
                            " exceeds tolerance at band " + std::to_string(band),
                        out.recon_residual);
  return out;
}

FactorizationData block_plus_factorization(const LaurentSeries& phi, std::size_t band, double tol) {
  if (band == 0) throw DomainError("block_plus_factorization: band must be positive");
  const std::size_t d = phi.dim();
  const std::size_t m = band;

  // Unknowns w_1..w_m solve sum_{j=1..m} w_j phi_{k-j} = -phi_k, k = 1..m.  In
  // row form X G = R with G(j, k) = phi_{k-j}; we solve the transpose G^T X^T = R^T.
  ComplexMatrix gt(m * d, m * d);
  ComplexMatrix rt(m * d, d);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t j = 0; j < m; ++j) {
      const long idx = static_cast<long>(k) - static_cast<long>(j);
      if (!phi.in_band(idx)) continue;
      auto blk = phi.block(idx);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) gt(k * d + c, j * d + r) = blk[r * d + c];
    }
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) rt(k * d + c, r) = -phi.get(static_cast<long>(k + 1), r, c);
  }
  const kernels::LuFactors lu = kernels::lu_decompose(gt);
  if (lu.singular || lu.condition_hint() > 1e12)
    throw SingularError("block_plus_factorization: finite-section system is singular at band " + std::to_string(m) +
                            "; reduce the symbol norm or enlarge the band",
                        lu.condition_hint());
  const ComplexMatrix xt = kernels::lu_solve(lu, rt);

  LaurentSeries w(d, m, Support::plus);
  for (std::size_t r = 0; r < d; ++r) w.block_mut(0)[r * d + r] = 1.0;
  for (std::size_t j = 0; j < m; ++j) {
    auto blk = w.block_mut(static_cast<long>(j + 1));
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) blk[r * d + c] = xt(j * d + c, r);
  }

  // w phi = G phi_-; its k > 0 part must vanish.
  LaurentSeries left = kernels::convolve_full(w, phi);
  const double leak = left.positive_mass();
  if (!(leak <= tol))
    throw ResidualError("block_plus_factorization: minus factor leaks " + describe(leak) +
                            " into positive indices at band " + std::to_string(m),
                        leak);
  const BlockMatrix g = block_at(left, 0);
  const LaurentSeries g_inv = constant_block(invert_block(g, "block_plus_factorization"));
  LaurentSeries minus = convolve(g_inv, left.strictly_minus_part(), phi.band());
  for (std::size_t r = 0; r < d; ++r) minus.block_mut(0)[r * d + r] = 1.0;
  minus.set_support(Support::minus);

  FactorizationData out;
  out.plus = invert_one_sided(w, m);
  out.minus = std::move(minus);
  out.center = constant_block(g);
  out.recon_residual = reconstruction_residual(phi, out.plus, out.center, out.minus);
  if (!(out.recon_residual <= tol))
    throw ResidualError("block_plus_factorization: reconstruction residual " + describe(out.recon_residual) +
                            " exceeds tolerance at band " + std::to_string(m),
                        out.recon_residual);
  return out;
}

std::pair<FactorPair, double> block_minus_factorization(const LaurentSeries& phi, std::size_t band, double tol) {
  // phi(1/z) = A_+(z) C A_-(z) reflects to phi = psi_- H psi_+ with psi_- = A_+(1/z).
  const FactorizationData mirrored = block_plus_factorization(phi.reflected(), band, tol);
  FactorPair pair;
  pair.minus = mirrored.plus.reflected();
  pair.plus = mirrored.minus.reflected();
  pair.center = mirrored.center;
  return {std::move(pair), mirrored.recon_residual};
}

RatioPair make_ratios(const FactorizationData& f, std::size_t band, double tol) {
  RatioPair out;
  const std::size_t d = f.plus.dim();
  if (f.second_pair) {
    const FactorPair& psi = *f.second_pair;
    const LaurentSeries h_inv = constant_block(invert_block(block_at(psi.center, 0), "make_ratios"));
    const LaurentSeries outer_minus = convolve(f.center, f.minus, band);  // G phi_-
    const LaurentSeries psi_plus_inv = convolve(invert_one_sided(psi.plus, band), h_inv, band);
    out.u = convolve(outer_minus, psi_plus_inv, band);
    out.v = convolve(invert_one_sided(psi.minus, band), f.plus, band);
  } else {
    if (d != 1) throw DomainError("make_ratios: block symbols need the second factorization psi_- psi_+");
    out.u = convolve(f.minus, invert_one_sided(f.plus, band), band);
    out.v = convolve(f.plus, invert_one_sided(f.minus, band), band);
  }
  out.inverse_residual = frobenius_distance(convolve(out.u, out.v, band), LaurentSeries::identity(d));
  if (!(out.inverse_residual <= tol))
    throw ResidualError("make_ratios: u v differs from the identity by " + describe(out.inverse_residual) +
                            " at band " + std::to_string(band),
                        out.inverse_residual);
  return out;
}

} // namespace tdet
