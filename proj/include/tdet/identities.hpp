#pragma once

// Both sides of the Toeplitz/Fredholm determinant identities, evaluated
// independently and compared:
//
//   bo        D_n(phi) = Z det(I - K_n)
//   quotient  D_{n-1}/D_n = 1 - ((I - U_n V_n)^{-1} U_n delta, V_n delta)   (bilinear pairing)
//   cramer    [(I - K_{n-1})^{-1}]_{00} = det(I - K_n) / det(I - K_{n-1})
//   lambda    bo for phi^lambda = exp(lambda log phi)
//   block_bo  bo for block symbols with Z = det T(phi) T(phi^{-1})

#include "tdet/determinants.hpp"
#include "tdet/factorization.hpp"
#include "tdet/laurent.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tdet {

enum class CheckKind { bo, quotient, cramer, lambda_sweep, block_bo };

std::string_view to_string(CheckKind kind);
std::optional<CheckKind> parse_check_kind(std::string_view name);

inline constexpr double kResidualFloor = 1e-300;

struct CheckReport {
  CheckKind kind = CheckKind::bo;
  std::size_t n = 0;
  std::optional<Complex> lambda;
  Complex lhs;
  Complex rhs;
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  std::map<std::string, double> diagnostics;
  std::optional<std::string> error;

  bool ok(double tol) const { return !error && rel_residual <= tol; }
};

/// Fills lhs, rhs and both residuals; rel uses max(|lhs|, kResidualFloor).
CheckReport make_report(CheckKind kind, std::size_t n, Complex lhs, Complex rhs);
/// A row for a check that threw; residuals are NaN.
CheckReport failed_report(CheckKind kind, std::size_t n, std::string message);

enum class ZRoute { series, operator_det };

struct PipelineParams {
  std::size_t band = 64;
  std::size_t fft_samples = 512;
  std::size_t section_cap = 4096;
  std::optional<std::size_t> section;  ///< Fredholm section override (default: exact)
  double factorization_tol = kDefaultFactorizationTol;
  /// Multiply the right side by G^n (det G^n for blocks) when phi is not normalized.
  bool rescale_geometric_mean = false;
  ZRoute z_route = ZRoute::series;     ///< scalar bo only
};

/// Everything the scalar checks need, built once per symbol.
struct ScalarProblem {
  LaurentSeries phi;
  LaurentSeries log_phi;  ///< normalized: (log phi)_0 = 0
  FactorizationData factors;
  RatioPair ratios;
};

/// phi = exp(log phi) assembled from its factors at params.band.
ScalarProblem scalar_problem_from_log(const LaurentSeries& log_phi, const PipelineParams& params);
/// Logarithm and factors computed from the coefficients of phi.
ScalarProblem scalar_problem_from_symbol(const LaurentSeries& phi, const PipelineParams& params);

struct BlockProblem {
  LaurentSeries phi;
  FactorizationData factors;  ///< second_pair always present
  RatioPair ratios;
  ZOperatorResult z;
};

/// phi = phi_+ G phi_- computed numerically; psi pair taken from `psi` when given,
/// otherwise computed by the mirrored finite-section solve.
BlockProblem block_problem(const LaurentSeries& phi, const std::optional<FactorPair>& psi,
                           const PipelineParams& params);
/// Factor-first instance: phi := psi_- psi_+.
BlockProblem block_problem_factor_first(const LaurentSeries& psi_minus, const LaurentSeries& psi_plus,
                                        const PipelineParams& params);

CheckReport bo_check(const ScalarProblem& p, std::size_t n, const PipelineParams& params);
CheckReport quotient_check(const ScalarProblem& p, std::size_t n, const PipelineParams& params);
CheckReport cramer_check(const ScalarProblem& p, std::size_t n, const PipelineParams& params);
CheckReport block_bo_check(const BlockProblem& p, std::size_t n, const PipelineParams& params);

/// bo_check for every (lambda, n) on phi^lambda.  Failures are recorded in the
/// report's error field and the sweep continues.  Order: lambdas outer, ns inner.
std::vector<CheckReport> lambda_sweep(const LaurentSeries& log_phi, std::span<const Complex> lambdas,
                                      std::span<const std::size_t> ns, const PipelineParams& params);

} // namespace tdet
