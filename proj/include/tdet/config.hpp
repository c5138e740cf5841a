#pragma once

#include "tdet/errors.hpp"
#include "tdet/families.hpp"
#include "tdet/identities.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tdet {

/// Malformed or invalid run configuration; the message starts with the field path.
class ConfigError : public Error {
public:
  using Error::Error;
};

enum class SymbolKind { log_coeffs, coeffs, rational, block_factor_first, block_explicit };

std::string_view to_string(SymbolKind kind);
bool is_block(SymbolKind kind);

struct ScalarTerm {
  int k = 0;
  Complex value;
  friend bool operator==(const ScalarTerm&, const ScalarTerm&) = default;
};

struct BlockTerm {
  int k = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  Complex value;
  friend bool operator==(const BlockTerm&, const BlockTerm&) = default;
};

struct SymbolSpec {
  SymbolKind kind = SymbolKind::log_coeffs;
  std::size_t dim = 1;
  std::vector<ScalarTerm> coeffs;                  ///< log_coeffs, coeffs
  std::vector<families::RationalFactor> factors;   ///< rational
  std::size_t factor_band = 4;                     ///< block_factor_first
  double scale = 0.2;                              ///< block_factor_first
  std::uint64_t seed = 0;                          ///< block_factor_first
  std::vector<BlockTerm> block_coeffs;             ///< block_explicit: phi
  std::vector<BlockTerm> psi_minus;                ///< block_explicit: optional second pair
  std::vector<BlockTerm> psi_plus;
};

struct TruncationSpec {
  std::size_t band = 64;
  std::size_t fft_samples = 512;
  std::size_t section_cap = 4096;
  std::optional<std::size_t> section;
};

struct CheckSpec {
  CheckKind kind = CheckKind::bo;
  std::vector<std::size_t> n;
  std::vector<Complex> lambda;
};

struct Tolerances {
  double factorization_tol = 1e-10;
  double residual_tol = 1e-8;
};

struct RunConfig {
  SymbolSpec symbol;
  TruncationSpec truncation;
  CheckSpec check;
  Tolerances tolerances;
  std::string output = "report.csv";
};

bool operator==(const SymbolSpec& a, const SymbolSpec& b);
bool operator==(const TruncationSpec& a, const TruncationSpec& b);
bool operator==(const CheckSpec& a, const CheckSpec& b);
bool operator==(const Tolerances& a, const Tolerances& b);
bool operator==(const RunConfig& a, const RunConfig& b);

/// Parses JSON text, fills defaults and validates every invariant.
RunConfig parse_config(std::string_view text);
/// Canonical JSON form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);
/// Throws ConfigError on the first violated invariant.
void validate(const RunConfig& config);

PipelineParams pipeline_params(const RunConfig& config);

} // namespace tdet
