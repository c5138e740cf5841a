#include "tdet/config.hpp"

#include <json.hpp>

#include <algorithm>

namespace tdet {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError(path + ": " + message);
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      fail(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
}

const json& require(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) fail(path.empty() ? key : path + "." + key, "missing required field");
  return obj.at(key);
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

long get_integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long>();
}

std::size_t get_count(const json& j, const std::string& path) {
  const long v = get_integer(j, path);
  if (v < 0) fail(path, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

const json& get_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  return j;
}

const json& get_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::vector<ScalarTerm> parse_scalar_terms(const json& j, const std::string& path) {
  std::vector<ScalarTerm> out;
  for (std::size_t i = 0; i < get_array(j, path).size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const json& t = j[i];
    if (!t.is_array() || t.size() != 3) fail(p, "expected [k, re, im]");
    out.push_back({static_cast<int>(get_integer(t[0], p + "[0]")),
                   {get_number(t[1], p + "[1]"), get_number(t[2], p + "[2]")}});
  }
  return out;
}

std::vector<BlockTerm> parse_block_terms(const json& j, const std::string& path) {
  std::vector<BlockTerm> out;
  for (std::size_t i = 0; i < get_array(j, path).size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const json& t = j[i];
    if (!t.is_array() || t.size() != 5) fail(p, "expected [k, row, col, re, im]");
    out.push_back({static_cast<int>(get_integer(t[0], p + "[0]")), get_count(t[1], p + "[1]"),
                   get_count(t[2], p + "[2]"), {get_number(t[3], p + "[3]"), get_number(t[4], p + "[4]")}});
  }
  return out;
}

Complex parse_complex(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected [re, im]");
  return {get_number(j[0], path + "[0]"), get_number(j[1], path + "[1]")};
}

SymbolKind parse_symbol_kind(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  const std::string name = j.get<std::string>();
  for (SymbolKind k : {SymbolKind::log_coeffs, SymbolKind::coeffs, SymbolKind::rational,
                       SymbolKind::block_factor_first, SymbolKind::block_explicit})
    if (to_string(k) == name) return k;
  fail(path, "unknown symbol kind \"" + name + "\"");
}

SymbolSpec parse_symbol(const json& j) {
  const std::string path = "symbol";
  get_object(j, path);
  SymbolSpec s;
  s.kind = parse_symbol_kind(require(j, path, "kind"), path + ".kind");
  switch (s.kind) {
  case SymbolKind::log_coeffs:
  case SymbolKind::coeffs:
    reject_unknown(j, path, {"kind", "coeffs"});
    s.coeffs = parse_scalar_terms(require(j, path, "coeffs"), path + ".coeffs");
    break;
  case SymbolKind::rational: {
    reject_unknown(j, path, {"kind", "factors"});
    const json& fs = get_array(require(j, path, "factors"), path + ".factors");
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const std::string p = path + ".factors[" + std::to_string(i) + "]";
      const json& f = get_object(fs[i], p);
      reject_unknown(f, p, {"side", "root", "power"});
      families::RationalFactor rf;
      const json& side = require(f, p, "side");
      if (side == "plus") rf.side = Support::plus;
      else if (side == "minus") rf.side = Support::minus;
      else fail(p + ".side", "expected \"plus\" or \"minus\"");
      rf.root = parse_complex(require(f, p, "root"), p + ".root");
      rf.power = f.contains("power") ? static_cast<int>(get_integer(f.at("power"), p + ".power")) : 1;
      s.factors.push_back(rf);
    }
    break;
  }
  case SymbolKind::block_factor_first:
    reject_unknown(j, path, {"kind", "dim", "factor_band", "scale", "seed"});
    if (j.contains("dim")) s.dim = get_count(j.at("dim"), path + ".dim");
    else s.dim = 2;
    if (j.contains("factor_band")) s.factor_band = get_count(j.at("factor_band"), path + ".factor_band");
    if (j.contains("scale")) s.scale = get_number(j.at("scale"), path + ".scale");
    if (j.contains("seed")) {
      const json& seed = j.at("seed");
      if (!seed.is_number_unsigned()) fail(path + ".seed", "expected an unsigned integer");
      s.seed = seed.get<std::uint64_t>();
    }
    break;
  case SymbolKind::block_explicit:
    reject_unknown(j, path, {"kind", "dim", "coeffs", "psi_minus", "psi_plus"});
    s.dim = get_count(require(j, path, "dim"), path + ".dim");
    if (j.contains("coeffs")) s.block_coeffs = parse_block_terms(j.at("coeffs"), path + ".coeffs");
    if (j.contains("psi_minus")) s.psi_minus = parse_block_terms(j.at("psi_minus"), path + ".psi_minus");
    if (j.contains("psi_plus")) s.psi_plus = parse_block_terms(j.at("psi_plus"), path + ".psi_plus");
    break;
  }
  return s;
}

TruncationSpec parse_truncation(const json& j) {
  const std::string path = "truncation";
  get_object(j, path);
  reject_unknown(j, path, {"band", "fft_samples", "section_cap", "section"});
  TruncationSpec t;
  if (j.contains("band")) t.band = get_count(j.at("band"), path + ".band");
  if (j.contains("fft_samples")) t.fft_samples = get_count(j.at("fft_samples"), path + ".fft_samples");
  if (j.contains("section_cap")) t.section_cap = get_count(j.at("section_cap"), path + ".section_cap");
  if (j.contains("section")) t.section = get_count(j.at("section"), path + ".section");
  return t;
}

CheckSpec parse_check(const json& j) {
  const std::string path = "check";
  get_object(j, path);
  reject_unknown(j, path, {"kind", "n", "lambda"});
  CheckSpec c;
  const json& kind = require(j, path, "kind");
  if (!kind.is_string()) fail(path + ".kind", "expected a string");
  auto parsed = parse_check_kind(kind.get<std::string>());
  if (!parsed) fail(path + ".kind", "unknown check kind \"" + kind.get<std::string>() + "\"");
  c.kind = *parsed;
  const json& ns = get_array(require(j, path, "n"), path + ".n");
  for (std::size_t i = 0; i < ns.size(); ++i) c.n.push_back(get_count(ns[i], path + ".n[" + std::to_string(i) + "]"));
  if (j.contains("lambda")) {
    const json& ls = get_array(j.at("lambda"), path + ".lambda");
    for (std::size_t i = 0; i < ls.size(); ++i)
      c.lambda.push_back(parse_complex(ls[i], path + ".lambda[" + std::to_string(i) + "]"));
  }
  return c;
}

Tolerances parse_tolerances(const json& j) {
  const std::string path = "tolerances";
  get_object(j, path);
  reject_unknown(j, path, {"factorization_tol", "residual_tol"});
  Tolerances t;
  if (j.contains("factorization_tol"))
    t.factorization_tol = get_number(j.at("factorization_tol"), path + ".factorization_tol");
  if (j.contains("residual_tol")) t.residual_tol = get_number(j.at("residual_tol"), path + ".residual_tol");
  return t;
}

void validate_block_terms(const std::vector<BlockTerm>& terms, std::size_t dim, const std::string& path) {
  for (std::size_t i = 0; i < terms.size(); ++i)
    if (terms[i].row >= dim || terms[i].col >= dim)
      fail(path + "[" + std::to_string(i) + "]", "row/col outside the block dimension " + std::to_string(dim));
}

json scalar_terms_json(const std::vector<ScalarTerm>& terms) {
  json a = json::array();
  for (const auto& t : terms) a.push_back({t.k, t.value.real(), t.value.imag()});
  return a;
}

json block_terms_json(const std::vector<BlockTerm>& terms) {
  json a = json::array();
  for (const auto& t : terms) a.push_back({t.k, t.row, t.col, t.value.real(), t.value.imag()});
  return a;
}

} // namespace

std::string_view to_string(SymbolKind kind) {
  switch (kind) {
  case SymbolKind::log_coeffs: return "log_coeffs";
  case SymbolKind::coeffs: return "coeffs";
  case SymbolKind::rational: return "rational";
  case SymbolKind::block_factor_first: return "block_factor_first";
  case SymbolKind::block_explicit: return "block_explicit";
  }
  return "unknown";
}

bool is_block(SymbolKind kind) {
  return kind == SymbolKind::block_factor_first || kind == SymbolKind::block_explicit;
}

bool operator==(const SymbolSpec& a, const SymbolSpec& b) {
  auto same_factors = [](const auto& x, const auto& y) {
    return std::equal(x.begin(), x.end(), y.begin(), y.end(), [](const auto& f, const auto& g) {
      return f.side == g.side && f.root == g.root && f.power == g.power;
    });
  };
  return a.kind == b.kind && a.dim == b.dim && a.coeffs == b.coeffs && same_factors(a.factors, b.factors) &&
         a.factor_band == b.factor_band && a.scale == b.scale && a.seed == b.seed &&
         a.block_coeffs == b.block_coeffs && a.psi_minus == b.psi_minus && a.psi_plus == b.psi_plus;
}

bool operator==(const TruncationSpec& a, const TruncationSpec& b) {
  return a.band == b.band && a.fft_samples == b.fft_samples && a.section_cap == b.section_cap &&
         a.section == b.section;
}

bool operator==(const CheckSpec& a, const CheckSpec& b) {
  return a.kind == b.kind && a.n == b.n && a.lambda == b.lambda;
}

bool operator==(const Tolerances& a, const Tolerances& b) {
  return a.factorization_tol == b.factorization_tol && a.residual_tol == b.residual_tol;
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.symbol == b.symbol && a.truncation == b.truncation && a.check == b.check &&
         a.tolerances == b.tolerances && a.output == b.output;
}

void validate(const RunConfig& c) {
  const TruncationSpec& t = c.truncation;
  if (t.band < 1) fail("truncation.band", "band must be at least 1");
  if (t.fft_samples < 2 * t.band + 2)
    fail("truncation.fft_samples", "fft_samples < 2*band+2 (" + std::to_string(t.fft_samples) + " < " +
                                       std::to_string(2 * t.band + 2) + ")");
  if (t.section && *t.section < 1) fail("truncation.section", "section must be at least 1");
  if (t.section_cap < 2) fail("truncation.section_cap", "section_cap must be at least 2");
  if (c.check.n.empty()) fail("check.n", "n list must not be empty");
  for (std::size_t i = 0; i < c.check.n.size(); ++i)
    if (c.check.n[i] < 1) fail("check.n[" + std::to_string(i) + "]", "n must be at least 1");
  if (!(c.tolerances.factorization_tol > 0)) fail("tolerances.factorization_tol", "tolerance must be positive");
  if (!(c.tolerances.residual_tol > 0)) fail("tolerances.residual_tol", "tolerance must be positive");
  if (c.output.empty()) fail("output", "output path must not be empty");

  const bool block = is_block(c.symbol.kind);
  if (c.check.kind == CheckKind::block_bo && !block)
    fail("check.kind", "block_bo needs a block symbol (block_factor_first or block_explicit)");
  if (c.check.kind != CheckKind::block_bo && block)
    fail("check.kind", std::string(to_string(c.check.kind)) + " needs a scalar symbol");
  if (c.check.kind == CheckKind::lambda_sweep && c.check.lambda.empty())
    fail("check.lambda", "lambda_sweep needs a nonempty lambda list");
  if (c.check.kind != CheckKind::lambda_sweep && !c.check.lambda.empty())
    fail("check.lambda", "lambda values only apply to lambda_sweep");

  const SymbolSpec& s = c.symbol;
  if (s.dim < 1) fail("symbol.dim", "block dimension must be at least 1");
  switch (s.kind) {
  case SymbolKind::log_coeffs:
  case SymbolKind::coeffs:
    if (s.coeffs.empty()) fail("symbol.coeffs", "at least one coefficient is required");
    break;
  case SymbolKind::rational:
    for (std::size_t i = 0; i < s.factors.size(); ++i)
      if (!(std::abs(s.factors[i].root) < 1.0))
        fail("symbol.factors[" + std::to_string(i) + "].root", "root must satisfy |root| < 1");
    break;
  case SymbolKind::block_factor_first:
    if (s.factor_band < 1) fail("symbol.factor_band", "factor_band must be at least 1");
    if (!(s.scale >= 0 && s.scale < 1)) fail("symbol.scale", "scale must lie in [0, 1)");
    break;
  case SymbolKind::block_explicit:
    validate_block_terms(s.block_coeffs, s.dim, "symbol.coeffs");
    validate_block_terms(s.psi_minus, s.dim, "symbol.psi_minus");
    validate_block_terms(s.psi_plus, s.dim, "symbol.psi_plus");
    if (s.psi_minus.empty() != s.psi_plus.empty())
      fail("symbol", "psi_minus and psi_plus must be given together");
    if (s.block_coeffs.empty() && s.psi_minus.empty())
      fail("symbol.coeffs", "give the symbol coefficients or a psi_-/psi_+ pair");
    for (std::size_t i = 0; i < s.psi_minus.size(); ++i)
      if (s.psi_minus[i].k > 0) fail("symbol.psi_minus[" + std::to_string(i) + "]", "psi_minus needs k <= 0");
    for (std::size_t i = 0; i < s.psi_plus.size(); ++i)
      if (s.psi_plus[i].k < 0) fail("symbol.psi_plus[" + std::to_string(i) + "]", "psi_plus needs k >= 0");
    break;
  }
}

RunConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("<root>: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("<root>", "expected an object");
  reject_unknown(j, "", {"symbol", "truncation", "check", "tolerances", "output"});
  RunConfig c;
  c.symbol = parse_symbol(require(j, "", "symbol"));
  if (j.contains("truncation")) c.truncation = parse_truncation(j.at("truncation"));
  c.check = parse_check(require(j, "", "check"));
  if (j.contains("tolerances")) c.tolerances = parse_tolerances(j.at("tolerances"));
  if (j.contains("output")) {
    if (!j.at("output").is_string()) fail("output", "expected a string");
    c.output = j.at("output").get<std::string>();
  }
  validate(c);
  return c;
}

std::string serialize_config(const RunConfig& c) {
  json sym;
  const SymbolSpec& s = c.symbol;
  sym["kind"] = std::string(to_string(s.kind));
  switch (s.kind) {
  case SymbolKind::log_coeffs:
  case SymbolKind::coeffs: sym["coeffs"] = scalar_terms_json(s.coeffs); break;
  case SymbolKind::rational: {
    json fs = json::array();
    for (const auto& f : s.factors)
      fs.push_back({{"side", f.side == Support::plus ? "plus" : "minus"},
                    {"root", {f.root.real(), f.root.imag()}},
                    {"power", f.power}});
    sym["factors"] = fs;
    break;
  }
  case SymbolKind::block_factor_first:
    sym["dim"] = s.dim;
    sym["factor_band"] = s.factor_band;
    sym["scale"] = s.scale;
    sym["seed"] = s.seed;
    break;
  case SymbolKind::block_explicit:
    sym["dim"] = s.dim;
    if (!s.block_coeffs.empty()) sym["coeffs"] = block_terms_json(s.block_coeffs);
    if (!s.psi_minus.empty()) sym["psi_minus"] = block_terms_json(s.psi_minus);
    if (!s.psi_plus.empty()) sym["psi_plus"] = block_terms_json(s.psi_plus);
    break;
  }
  json trunc = {{"band", c.truncation.band},
                {"fft_samples", c.truncation.fft_samples},
                {"section_cap", c.truncation.section_cap}};
  if (c.truncation.section) trunc["section"] = *c.truncation.section;
  json check = {{"kind", std::string(to_string(c.check.kind))}, {"n", c.check.n}};
  if (!c.check.lambda.empty()) {
    json ls = json::array();
    for (const Complex& l : c.check.lambda) ls.push_back({l.real(), l.imag()});
    check["lambda"] = ls;
  }
  json root = {{"symbol", sym},
               {"truncation", trunc},
               {"check", check},
               {"tolerances",
                {{"factorization_tol", c.tolerances.factorization_tol}, {"residual_tol", c.tolerances.residual_tol}}},
               {"output", c.output}};
  return root.dump(2) + "\n";
}

PipelineParams pipeline_params(const RunConfig& c) {
  PipelineParams p;
  p.band = c.truncation.band;
  p.fft_samples = c.truncation.fft_samples;
  p.section_cap = c.truncation.section_cap;
  p.section = c.truncation.section;
  p.factorization_tol = c.tolerances.factorization_tol;
  return p;
}

} // namespace tdet
