#include "tdet/runner.hpp"

#include "tdet/families.hpp"
#include "tdet/symbol.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace tdet {

namespace {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    else if (ch == '\n' || ch == '\r') out += ' ';
    else out += ch;
  }
  return out + "\"";
}

LaurentSeries scalar_series(const std::vector<ScalarTerm>& terms) {
  std::vector<std::pair<int, Complex>> pairs;
  for (const auto& t : terms) pairs.emplace_back(t.k, t.value);
  return LaurentSeries::scalar(pairs);
}

LaurentSeries block_series(const std::vector<BlockTerm>& terms, std::size_t dim, Support support = Support::general) {
  std::size_t band = 0;
  for (const auto& t : terms) band = std::max<std::size_t>(band, static_cast<std::size_t>(std::abs(t.k)));
  LaurentSeries s(dim, band, support);
  for (const auto& t : terms) s.set(t.k, t.row, t.col, s.get(t.k, t.row, t.col) + t.value);
  return s;
}

LaurentSeries scalar_log(const SymbolSpec& s, const PipelineParams& params) {
  switch (s.kind) {
  case SymbolKind::log_coeffs: return scalar_series(s.coeffs);
  case SymbolKind::rational: return families::rational_log(s.factors, params.band);
  case SymbolKind::coeffs: return log_symbol(scalar_series(s.coeffs), params.fft_samples).log;
  default: throw DomainError("scalar_log: not a scalar symbol kind");
  }
}

ScalarProblem scalar_problem(const SymbolSpec& s, const PipelineParams& params) {
  if (s.kind == SymbolKind::coeffs) return scalar_problem_from_symbol(scalar_series(s.coeffs), params);
  return scalar_problem_from_log(scalar_log(s, params), params);
}

BlockProblem make_block_problem(const SymbolSpec& s, const RunOptions& options, const PipelineParams& params) {
  if (s.kind == SymbolKind::block_factor_first) {
    const FactorPair psi =
        families::random_factor_pair(options.seed.value_or(s.seed), s.dim, s.factor_band, s.scale);
    return block_problem_factor_first(psi.minus, psi.plus, params);
  }
  std::optional<FactorPair> psi;
  if (!s.psi_minus.empty()) {
    psi = FactorPair{block_series(s.psi_minus, s.dim, Support::minus), block_series(s.psi_plus, s.dim, Support::plus),
                     LaurentSeries::identity(s.dim)};
    // Missing index-0 blocks default to the identity.
    for (LaurentSeries* f : {&psi->minus, &psi->plus}) {
      bool has_zero_block = false;
      for (const auto& t : (f == &psi->minus ? s.psi_minus : s.psi_plus)) has_zero_block |= t.k == 0;
      if (!has_zero_block)
        for (std::size_t r = 0; r < s.dim; ++r) f->set(0, r, r, 1.0);
    }
  }
  LaurentSeries phi = s.block_coeffs.empty()
                          ? convolve(psi->minus, psi->plus, psi->minus.band() + psi->plus.band())
                          : block_series(s.block_coeffs, s.dim);
  return block_problem(phi, psi, params);
}

template <typename Problem, typename Check>
std::vector<CheckReport> run_rows(const Problem& problem, const std::vector<std::size_t>& ns, CheckKind kind,
                                  Check check, const PipelineParams& params) {
  std::vector<CheckReport> rows(ns.size());
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(ns.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const std::size_t n = ns[static_cast<std::size_t>(i)];
    try {
      rows[static_cast<std::size_t>(i)] = check(problem, n, params);
    } catch (const std::exception& e) {
      rows[static_cast<std::size_t>(i)] = failed_report(kind, n, std::string(to_string(kind)) + ": " + e.what());
    }
  }
  return rows;
}

std::vector<CheckReport> setup_failed(CheckKind kind, const std::vector<std::size_t>& ns, const std::string& what) {
  std::vector<CheckReport> rows;
  for (std::size_t n : ns) rows.push_back(failed_report(kind, n, "setup: " + what));
  return rows;
}

std::vector<CheckReport> execute(const RunConfig& config, const RunOptions& options) {
  const PipelineParams params = pipeline_params(config);
  const CheckSpec& check = config.check;
  if (check.kind == CheckKind::lambda_sweep) {
    LaurentSeries log;
    try {
      log = scalar_log(config.symbol, params);
    } catch (const std::exception& e) {
      std::vector<CheckReport> rows;
      for (const Complex& l : check.lambda)
        for (std::size_t n : check.n) {
          rows.push_back(failed_report(check.kind, n, std::string("setup: ") + e.what()));
          rows.back().lambda = l;
        }
      return rows;
    }
    return lambda_sweep(log, check.lambda, check.n, params);
  }
  if (check.kind == CheckKind::block_bo) {
    std::optional<BlockProblem> problem;
    try {
      problem = make_block_problem(config.symbol, options, params);
    } catch (const std::exception& e) {
      return setup_failed(check.kind, check.n, e.what());
    }
    return run_rows(*problem, check.n, check.kind, block_bo_check, params);
  }
  std::optional<ScalarProblem> problem;
  try {
    problem = scalar_problem(config.symbol, params);
  } catch (const std::exception& e) {
    return setup_failed(check.kind, check.n, e.what());
  }
  switch (check.kind) {
  case CheckKind::bo: return run_rows(*problem, check.n, check.kind, bo_check, params);
  case CheckKind::quotient: return run_rows(*problem, check.n, check.kind, quotient_check, params);
  case CheckKind::cramer: return run_rows(*problem, check.n, check.kind, cramer_check, params);
  default: break;
  }
  return {};
}

} // namespace

std::string format_csv(const std::vector<CheckReport>& reports, std::size_t band) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const CheckReport& r : reports) {
    const Complex lambda = r.lambda.value_or(Complex(1.0, 0.0));
    auto section = r.diagnostics.find("section");
    os << to_string(r.kind) << ',' << fmt_double(lambda.real()) << ',' << fmt_double(lambda.imag()) << ',' << r.n
       << ',' << fmt_double(r.lhs.real()) << ',' << fmt_double(r.lhs.imag()) << ',' << fmt_double(r.rhs.real())
       << ',' << fmt_double(r.rhs.imag()) << ',' << fmt_double(r.abs_residual) << ','
       << fmt_double(r.rel_residual) << ',' << band << ','
       << (section == r.diagnostics.end() ? 0 : static_cast<std::size_t>(section->second)) << ','
       << (r.error ? csv_quote(*r.error) : std::string()) << '\n';
  }
  return os.str();
}

RunResult run(const RunConfig& config, const RunOptions& options, std::ostream& log) {
  RunResult result;
  result.output_path = options.output.value_or(config.output);
  result.reports = execute(config, options);

  const double tol = config.tolerances.residual_tol;
  std::size_t failures = 0;
  for (const CheckReport& r : result.reports) {
    const bool pass = r.ok(tol);
    failures += pass ? 0 : 1;
    if (!options.quiet) {
      log << (pass ? "PASS " : "FAIL ") << to_string(r.kind) << " n=" << r.n;
      if (r.lambda) log << " lambda=(" << r.lambda->real() << "," << r.lambda->imag() << ")";
      if (r.error) log << " error: " << *r.error;
      else log << " rel_residual=" << fmt_double(r.rel_residual);
      log << '\n';
    }
  }
  result.exit_code = failures == 0 ? kExitPass : kExitTolerance;

  std::ofstream out(result.output_path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open output file " + result.output_path);
  out << format_csv(result.reports, config.truncation.band);
  if (!out) throw Error("failed writing " + result.output_path);
  if (!options.quiet)
    log << result.reports.size() - failures << "/" << result.reports.size() << " checks passed; wrote "
        << result.output_path << '\n';
  return result;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Toeplitz determinant identity verifier"};
  app.require_subcommand(1);
  std::string config_path;
  std::string output;
  std::uint64_t seed = 0;
  bool quiet = false;
  CLI::App* verify = app.add_subcommand("verify", "Run the checks described by a JSON config");
  verify->add_option("config", config_path, "Path to the run config")->required();
  CLI::Option* output_opt = verify->add_option("--output", output, "CSV output path (overrides the config)");
  CLI::Option* seed_opt = verify->add_option("--seed", seed, "Seed for random symbol families");
  verify->add_flag("--quiet", quiet, "Suppress per-check summary lines");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitStructural;
  }

  try {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) throw Error("cannot read config " + config_path);
    std::ostringstream text;
    text << in.rdbuf();
    const RunConfig config = parse_config(text.str());
    RunOptions options;
    if (*output_opt) options.output = output;
    if (*seed_opt) options.seed = seed;
    options.quiet = quiet;
    return run(config, options, std::cout).exit_code;
  } catch (const std::exception& e) {
    std::cerr << "tdet: " << e.what() << '\n';
    return kExitStructural;
  }
}

} // namespace tdet
