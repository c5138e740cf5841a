#include "tdet/identities.hpp"

#include "tdet/kernels.hpp"
#include "tdet/operators.hpp"
#include "tdet/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tdet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kUnchecked = std::numeric_limits<double>::infinity();

ZOperatorParams z_params(const PipelineParams& params) {
  ZOperatorParams z;
  z.n_samples = params.fft_samples;
  z.band = std::min(params.band, (params.fft_samples - 2) / 2);
  z.section_cap = params.section_cap;
  return z;
}

Complex center_power(const FactorizationData& f, std::size_t n, const PipelineParams& params) {
  if (!params.rescale_geometric_mean) return 1.0;
  return std::pow(f.geometric_mean(), static_cast<double>(n));
}

std::size_t ratio_band(const RatioPair& r) { return std::max(r.u.band(), r.v.band()); }

void require_scalar(const ScalarProblem& p, const char* what) {
  if (!p.phi.is_scalar()) throw DimensionError(std::string(what) + ": scalar symbol required");
}

} // namespace

std::string_view to_string(CheckKind kind) {
  switch (kind) {
  case CheckKind::bo: return "bo";
  case CheckKind::quotient: return "quotient";
  case CheckKind::cramer: return "cramer";
  case CheckKind::lambda_sweep: return "lambda_sweep";
  case CheckKind::block_bo: return "block_bo";
  }
  return "unknown";
}

std::optional<CheckKind> parse_check_kind(std::string_view name) {
  for (CheckKind k : {CheckKind::bo, CheckKind::quotient, CheckKind::cramer, CheckKind::lambda_sweep,
                      CheckKind::block_bo})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

CheckReport make_report(CheckKind kind, std::size_t n, Complex lhs, Complex rhs) {
  CheckReport r;
  r.kind = kind;
  r.n = n;
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_residual = std::abs(lhs - rhs);
  r.rel_residual = r.abs_residual / std::max(std::abs(lhs), kResidualFloor);
  return r;
}

CheckReport failed_report(CheckKind kind, std::size_t n, std::string message) {
  CheckReport r = make_report(kind, n, {kNaN, kNaN}, {kNaN, kNaN});
  r.abs_residual = kNaN;
  r.rel_residual = kNaN;
  r.error = std::move(message);
  return r;
}

ScalarProblem scalar_problem_from_log(const LaurentSeries& log_phi, const PipelineParams& params) {
  if (!log_phi.is_scalar()) throw DimensionError("scalar_problem_from_log: scalar log required");
  ScalarProblem p;
  p.log_phi = log_phi;
  p.log_phi.set(0, Complex{});
  FactorPair pair = factors_from_log(log_phi, params.band);
  p.factors.plus = std::move(pair.plus);
  p.factors.minus = std::move(pair.minus);
  p.factors.center = std::move(pair.center);
  p.phi = convolve(convolve(p.factors.plus, p.factors.center, params.band), p.factors.minus, params.band);
  p.factors.recon_residual = reconstruction_residual(p.phi, p.factors.plus, p.factors.center, p.factors.minus);
  p.ratios = make_ratios(p.factors, params.band, kUnchecked);
  return p;
}

ScalarProblem scalar_problem_from_symbol(const LaurentSeries& phi, const PipelineParams& params) {
  ScalarProblem p;
  p.phi = phi;
  const LogSymbol log = log_symbol(phi, params.fft_samples);
  p.log_phi = log.log;
  ScalarFactorizationParams fp;
  fp.n_samples = params.fft_samples;
  fp.band = std::min(params.band, (params.fft_samples - 2) / 2);
  fp.tol = params.factorization_tol;
  p.factors = wiener_hopf_scalar(phi, fp);
  p.ratios = make_ratios(p.factors, *fp.band, kUnchecked);
  return p;
}

BlockProblem block_problem(const LaurentSeries& phi, const std::optional<FactorPair>& psi,
                           const PipelineParams& params) {
  BlockProblem p;
  p.phi = phi;
  p.factors = block_plus_factorization(phi, params.band, params.factorization_tol);
  if (psi) {
    p.factors.second_pair = *psi;
    p.factors.second_recon_residual = reconstruction_residual(phi, psi->minus, psi->center, psi->plus);
    if (!(p.factors.second_recon_residual <= params.factorization_tol))
      throw ResidualError("block_problem: supplied psi_- H psi_+ does not reproduce phi (residual " +
                              std::to_string(p.factors.second_recon_residual) + ")",
                          p.factors.second_recon_residual);
  } else {
    auto [pair, residual] = block_minus_factorization(phi, params.band, params.factorization_tol);
    p.factors.second_pair = std::move(pair);
    p.factors.second_recon_residual = residual;
  }
  p.ratios = make_ratios(p.factors, params.band, kUnchecked);
  p.z = szego_Z_operator(phi, z_params(params));
  return p;
}

BlockProblem block_problem_factor_first(const LaurentSeries& psi_minus, const LaurentSeries& psi_plus,
                                        const PipelineParams& params) {
  const LaurentSeries phi = convolve(psi_minus, psi_plus, psi_minus.band() + psi_plus.band());
  FactorPair psi{psi_minus, psi_plus, LaurentSeries::identity(psi_minus.dim())};
  return block_problem(phi, psi, params);
}

CheckReport bo_check(const ScalarProblem& p, std::size_t n, const PipelineParams& params) {
  require_scalar(p, "bo_check");
  const LogDet lhs = toeplitz_det(p.phi, n);
  const Complex z = params.z_route == ZRoute::series ? szego_Z_series(p.log_phi)
                                                     : szego_Z_operator(p.phi, z_params(params)).det.value;
  FredholmParams fp{params.section};
  const FredholmResult fred = fredholm_det(p.ratios.u, p.ratios.v, n, fp);
  CheckReport r = make_report(CheckKind::bo, n, lhs.value, z * fred.det.value * center_power(p.factors, n, params));
  r.diagnostics["band"] = static_cast<double>(ratio_band(p.ratios));
  r.diagnostics["section"] = static_cast<double>(fred.section);
  r.diagnostics["z_re"] = z.real();
  r.diagnostics["z_im"] = z.imag();
  r.diagnostics["fredholm_re"] = fred.det.value.real();
  r.diagnostics["fredholm_im"] = fred.det.value.imag();
  r.diagnostics["hs_U"] = fred.hs_U;
  r.diagnostics["hs_V"] = fred.hs_V;
  r.diagnostics["tail_estimate"] = fred.tail_estimate;
  r.diagnostics["condition_lhs"] = lhs.condition_hint;
  r.diagnostics["condition_fredholm"] = fred.det.condition_hint;
  r.diagnostics["ratio_inverse_residual"] = p.ratios.inverse_residual;
  return r;
}

CheckReport quotient_check(const ScalarProblem& p, std::size_t n, const PipelineParams& params) {
  require_scalar(p, "quotient_check");
  if (n == 0) throw DomainError("quotient_check: n must be at least 1");
  (void)params;
  const LogDet d_prev = n == 1 ? LogDet{} : toeplitz_det(p.phi, n - 1);
  const LogDet d_n = toeplitz_det(p.phi, n);
  const Complex lhs = ratio(d_prev, d_n);

  // m = band - n + 1 rows hold every nonzero u_{n+i}.
  const std::size_t band = ratio_band(p.ratios);
  const std::size_t m = band >= n ? band - n + 1 : 1;
  const ComplexMatrix uv =
      kernels::multiply(hankel_U(p.ratios.u, n, m), hankel_V(p.ratios.v, n, m));
  const kernels::LuFactors lu = kernels::lu_decompose(identity_minus(uv));
  if (lu.singular)
    throw SingularError("quotient_check: I - U_n V_n is singular at n = " + std::to_string(n), lu.condition_hint());
  const DeltaVectors delta = delta_vectors(p.ratios.u, p.ratios.v, n, m);
  ComplexMatrix rhs_vec(m, 1);
  for (std::size_t i = 0; i < m; ++i) rhs_vec(i, 0) = delta.u_delta[i];
  const ComplexMatrix x = kernels::lu_solve(lu, rhs_vec);
  Complex bilinear{};
  Complex conjugated{};
  for (std::size_t i = 0; i < m; ++i) {
    bilinear += x(i, 0) * delta.v_delta[i];
    conjugated += x(i, 0) * std::conj(delta.v_delta[i]);
  }
  CheckReport r = make_report(CheckKind::quotient, n, lhs, 1.0 - bilinear);
  const CheckReport alt = make_report(CheckKind::quotient, n, lhs, 1.0 - conjugated);
  r.diagnostics["band"] = static_cast<double>(band);
  r.diagnostics["section"] = static_cast<double>(m);
  r.diagnostics["condition_solve"] = lu.condition_hint();
  r.diagnostics["conjugated_rel_residual"] = alt.rel_residual;
  return r;
}

CheckReport cramer_check(const ScalarProblem& p, std::size_t n, const PipelineParams& params) {
  require_scalar(p, "cramer_check");
  if (n == 0) throw DomainError("cramer_check: n must be at least 1");
  (void)params;
  const LaurentSeries& u = p.ratios.u;
  const LaurentSeries& v = p.ratios.v;
  const std::size_t m = exact_section(u, v, n - 1);
  const ComplexMatrix outer = identity_minus(kernel_K(u, v, n - 1, m));
  const kernels::LuFactors lu = kernels::lu_decompose(outer);
  if (lu.singular)
    throw SingularError("cramer_check: I - K_" + std::to_string(n - 1) + " is singular", lu.condition_hint());
  ComplexMatrix e0(m, 1);
  e0(0, 0) = 1.0;
  const Complex entry = kernels::lu_solve(lu, e0)(0, 0);

  const FredholmResult det_prev = fredholm_det(u, v, n - 1);
  const FredholmResult det_n = fredholm_det(u, v, n);
  CheckReport r = make_report(CheckKind::cramer, n, entry, ratio(det_n.det, det_prev.det));

  // Upper-left entry again through the Schur complement A - B D^{-1} C.
  Complex schur = outer(0, 0);
  if (m > 1) {
    const ComplexMatrix d = outer.block(1, 1, m - 1, m - 1);
    const ComplexMatrix c = outer.block(1, 0, m - 1, 1);
    const ComplexMatrix b = outer.block(0, 1, 1, m - 1);
    const ComplexMatrix dc = kernels::lu_solve(kernels::lu_decompose(d), c);
    schur -= kernels::multiply(b, dc)(0, 0);
  }
  const CheckReport schur_route = make_report(CheckKind::cramer, n, entry, 1.0 / schur);
  r.diagnostics["band"] = static_cast<double>(ratio_band(p.ratios));
  r.diagnostics["section"] = static_cast<double>(m);
  r.diagnostics["condition_solve"] = lu.condition_hint();
  r.diagnostics["schur_rel_residual"] = schur_route.rel_residual;
  return r;
}

CheckReport block_bo_check(const BlockProblem& p, std::size_t n, const PipelineParams& params) {
  if (!p.factors.second_pair) throw DomainError("block_bo_check: second factorization psi_- psi_+ missing");
  const LogDet lhs = toeplitz_det(p.phi, n);
  FredholmParams fp{params.section};
  const FredholmResult fred = fredholm_det(p.ratios.u, p.ratios.v, n, fp);
  const Complex z = p.z.det.value;
  CheckReport r =
      make_report(CheckKind::block_bo, n, lhs.value, z * fred.det.value * center_power(p.factors, n, params));
  r.diagnostics["band"] = static_cast<double>(ratio_band(p.ratios));
  r.diagnostics["section"] = static_cast<double>(fred.section);
  r.diagnostics["z_re"] = z.real();
  r.diagnostics["z_im"] = z.imag();
  r.diagnostics["z_section"] = static_cast<double>(p.z.section);
  r.diagnostics["fredholm_re"] = fred.det.value.real();
  r.diagnostics["fredholm_im"] = fred.det.value.imag();
  r.diagnostics["hs_U"] = fred.hs_U;
  r.diagnostics["hs_V"] = fred.hs_V;
  r.diagnostics["recon_residual"] = p.factors.recon_residual;
  r.diagnostics["second_recon_residual"] = p.factors.second_recon_residual;
  r.diagnostics["ratio_inverse_residual"] = p.ratios.inverse_residual;
  r.diagnostics["det_center_re"] = p.factors.geometric_mean().real();
  r.diagnostics["det_center_im"] = p.factors.geometric_mean().imag();
  return r;
}

std::vector<CheckReport> lambda_sweep(const LaurentSeries& log_phi, std::span<const Complex> lambdas,
                                      std::span<const std::size_t> ns, const PipelineParams& params) {
  std::vector<CheckReport> out(lambdas.size() * ns.size());
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(lambdas.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t li = 0; li < count; ++li) {
    const Complex lambda = lambdas[static_cast<std::size_t>(li)];
    const std::size_t base = static_cast<std::size_t>(li) * ns.size();
    std::optional<ScalarProblem> problem;
    std::string setup_error;
    try {
      problem = scalar_problem_from_log(log_phi.scaled(lambda), params);
    } catch (const std::exception& e) {
      setup_error = std::string("setup: ") + e.what();
    }
    for (std::size_t ni = 0; ni < ns.size(); ++ni) {
      CheckReport r;
      if (!problem) {
        r = failed_report(CheckKind::lambda_sweep, ns[ni], setup_error);
      } else {
        try {
          r = bo_check(*problem, ns[ni], params);
          r.kind = CheckKind::lambda_sweep;
        } catch (const std::exception& e) {
          r = failed_report(CheckKind::lambda_sweep, ns[ni], std::string("bo_check: ") + e.what());
        }
      }
      r.lambda = lambda;
      out[base + ni] = std::move(r);
    }
  }
  return out;
}

} // namespace tdet
