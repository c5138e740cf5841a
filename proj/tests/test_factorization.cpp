#include "oracle.hpp"
#include "test_util.hpp"

#include "tdet/families.hpp"
#include "tdet/factorization.hpp"
#include "tdet/symbol.hpp"

#include <doctest.h>

#include <cmath>

using namespace tdet;
using tdet::testing::max_coeff_diff;
using tdet::testing::sample_function;

namespace {

double factorial(int k) { return std::tgamma(k + 1.0); }

// (1 - 0.5 z)^{-1} (1 - 0.3 / z) at `band`.
LaurentSeries rational_phi(std::size_t band) {
  const LaurentSeries geometric = invert_one_sided(LaurentSeries::scalar({{0, 1.0}, {1, -0.5}}), band);
  return convolve(geometric, LaurentSeries::scalar({{0, 1.0}, {-1, -0.3}}), band);
}

bool identity_at_zero(const LaurentSeries& s) {
  for (std::size_t r = 0; r < s.dim(); ++r)
    for (std::size_t c = 0; c < s.dim(); ++c)
      if (s.get(0, r, c) != (r == c ? Complex(1.0) : Complex{})) return false;
  return true;
}

} // namespace

TEST_CASE("exp_series: zero, single harmonic and a two-term polynomial") {
  LaurentSeries e0 = exp_series(LaurentSeries(1, 3), 8);
  CHECK(max_coeff_diff(e0, LaurentSeries::identity(1)) == 0.0);

  const double t = 0.7;
  LaurentSeries e1 = exp_series(LaurentSeries::scalar({{1, t}}), 20);
  for (int k = 0; k <= 20; ++k) CHECK(std::abs(e1[k] - std::pow(t, k) / factorial(k)) <= 1e-16);

  LaurentSeries e2 = exp_series(LaurentSeries::scalar({{1, 0.5}, {2, 0.25}}), 32);
  auto samples = sample_function(256, [](Complex w) { return std::exp(0.5 * w + 0.25 * w * w); });
  LaurentSeries expected = oracle::slow_dft(samples.values, 32);
  CHECK(max_coeff_diff(e2, expected) <= 1e-12);

  LaurentSeries em = exp_series(LaurentSeries::scalar({{-1, t}}), 10);
  CHECK(em.support() == Support::minus);
  CHECK(std::abs(em[-3] - std::pow(t, 3) / 6.0) <= 1e-16);
}

TEST_CASE("exp_series: preconditions") {
  CHECK_THROWS_AS(exp_series(LaurentSeries::scalar({{0, 0.1}, {1, 0.2}}), 4), DomainError);
  CHECK_THROWS_AS(exp_series(LaurentSeries::scalar({{-1, 0.1}, {1, 0.2}}), 4), DomainError);
  CHECK_THROWS_AS(exp_series(LaurentSeries::identity(2), 4), DimensionError);
}

TEST_CASE("invert_one_sided: triangular recursion is an exact inverse") {
  LaurentSeries p = LaurentSeries::identity(2, 3);
  p.set(1, 0, 1, Complex(0.2, 0.1));
  p.set(2, 1, 0, -0.3);
  p.set(3, 1, 1, 0.05);
  LaurentSeries q = invert_one_sided(p, 30);
  LaurentSeries pq = convolve(p, q, 30);
  CHECK(max_coeff_diff(pq, LaurentSeries::identity(2)) <= 1e-15);
  LaurentSeries pm = p.reflected();
  CHECK(max_coeff_diff(convolve(invert_one_sided(pm, 30), pm, 30), LaurentSeries::identity(2)) <= 1e-15);
  CHECK_THROWS_AS(invert_one_sided(LaurentSeries::scalar({{0, 2.0}, {1, 1.0}}), 4), DomainError);
}

TEST_CASE("wiener_hopf_scalar: trivial, exponential and rational symbols") {
  FactorizationData one = wiener_hopf_scalar(LaurentSeries::identity(1, 2), {64, 8});
  CHECK(max_coeff_diff(one.plus, LaurentSeries::identity(1)) <= 1e-15);
  CHECK(max_coeff_diff(one.minus, LaurentSeries::identity(1)) <= 1e-15);

  const double t = 0.3;
  const LaurentSeries phi = oracle::exp_power_series(LaurentSeries::scalar({{1, t}, {-1, t}}), 30);
  FactorizationData f = wiener_hopf_scalar(phi, {512, 30});
  for (int k = 0; k <= 30; ++k) {
    CHECK(std::abs(f.plus[k] - std::pow(t, k) / factorial(k)) <= 1e-13);
    CHECK(std::abs(f.minus[-k] - std::pow(t, k) / factorial(k)) <= 1e-13);
  }
  CHECK(identity_at_zero(f.plus));
  CHECK(identity_at_zero(f.minus));
  CHECK(f.plus.support() == Support::plus);
  CHECK(f.minus.support() == Support::minus);
  CHECK(f.recon_residual <= 1e-10);

  FactorizationData r = wiener_hopf_scalar(rational_phi(64), {512, 64});
  const LaurentSeries plus_expected = invert_one_sided(LaurentSeries::scalar({{0, 1.0}, {1, -0.5}}), 64);
  CHECK(max_coeff_diff(r.plus, plus_expected) <= 1e-13);
  CHECK(max_coeff_diff(r.minus, LaurentSeries::scalar({{0, 1.0}, {-1, -0.3}})) <= 1e-13);
  // Convolution oracle: plus * minus reproduces phi.
  CHECK(max_coeff_diff(oracle::naive_convolve(r.plus, r.minus).with_band(60), rational_phi(60)) <= 1e-12);
}

TEST_CASE("wiener_hopf_scalar: a band too small for the symbol fails the residual certificate") {
  const LaurentSeries phi = rational_phi(64);
  try {
    (void)wiener_hopf_scalar(phi, {512, 4});
    FAIL("expected residual failure");
  } catch (const ResidualError& e) {
    CHECK(e.residual() > 1e-10);
    CHECK(std::string(e.what()).find("band 4") != std::string::npos);
  }
}

TEST_CASE("log/exp inversion reconstructs phi on analytic families") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const LaurentSeries log = families::random_scalar_log(seed, 8, 0.3, 0.5, seed % 2 == 1);
    const FactorPair f = factors_from_log(log, 64);
    const LaurentSeries phi = convolve(f.plus, f.minus, 64);
    const LogSymbol back = log_symbol(phi, 512, 32);
    const FactorPair g = factors_from_log(back.log, 64);
    CHECK(max_coeff_diff(convolve(g.plus, g.minus, 64), phi) <= 1e-10);
    CHECK(max_coeff_diff(back.log, log) <= 1e-12);
  }
}

TEST_CASE("block_plus_factorization: identity and scalar cross-check") {
  FactorizationData id = block_plus_factorization(LaurentSeries::identity(2, 1), 8);
  CHECK(max_coeff_diff(id.plus, LaurentSeries::identity(2)) <= 1e-15);
  CHECK(max_coeff_diff(id.minus, LaurentSeries::identity(2)) <= 1e-15);

  const LaurentSeries phi = rational_phi(64);
  FactorizationData block = block_plus_factorization(phi, 64);
  FactorizationData scalar = wiener_hopf_scalar(phi, {512, 64});
  CHECK(max_coeff_diff(block.plus, scalar.plus) <= 1e-10);
  CHECK(max_coeff_diff(block.minus, scalar.minus) <= 1e-10);
  CHECK(std::abs(block.geometric_mean() - 1.0) <= 1e-10);
}

TEST_CASE("block_plus_factorization: factor-first round trips") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const FactorPair psi = families::random_factor_pair(seed, 2, 4, 0.2);
    const LaurentSeries phi = convolve(psi.minus, psi.plus, 8);
    FactorizationData f = block_plus_factorization(phi, 48);
    CHECK(f.recon_residual <= 1e-10);
    CHECK(identity_at_zero(f.plus));
    CHECK(identity_at_zero(f.minus));
    CHECK(f.plus.support() == Support::plus);
    CHECK(f.minus.support() == Support::minus);
    CHECK(std::abs(f.geometric_mean() - 1.0) <= 1e-12);

    // The mirrored solve recovers the factors we started from.
    auto [pair, residual] = block_minus_factorization(phi, 48);
    CHECK(residual <= 1e-10);
    CHECK(max_coeff_diff(pair.minus, psi.minus) <= 1e-10);
    CHECK(max_coeff_diff(pair.plus, psi.plus) <= 1e-10);
    CHECK(max_coeff_diff(pair.center, LaurentSeries::identity(2)) <= 1e-10);
  }
}

TEST_CASE("block_plus_factorization: singular finite section is reported") {
  LaurentSeries phi(1, 1);
  phi.set(1, 1.0);
  phi.set(-1, 1.0);
  CHECK_THROWS_AS(block_plus_factorization(phi, 6), Error);
}

TEST_CASE("make_ratios: trivial and exponential symbol") {
  FactorizationData one;
  one.plus = LaurentSeries::identity(1);
  one.minus = LaurentSeries::identity(1);
  one.center = LaurentSeries::identity(1);
  RatioPair r1 = make_ratios(one, 8);
  CHECK(max_coeff_diff(r1.u, LaurentSeries::identity(1)) == 0.0);
  CHECK(max_coeff_diff(r1.v, LaurentSeries::identity(1)) == 0.0);

  const double t = 0.3;
  const FactorPair f = factors_from_log(LaurentSeries::scalar({{1, t}, {-1, t}}), 64);
  FactorizationData data{f.plus, f.minus, f.center, std::nullopt, 0.0, 0.0};
  RatioPair r = make_ratios(data, 40);
  auto u_samples = sample_function(256, [t](Complex w) { return std::exp(t * (1.0 / w - w)); });
  auto v_samples = sample_function(256, [t](Complex w) { return std::exp(t * (w - 1.0 / w)); });
  CHECK(max_coeff_diff(r.u, coeffs_from_samples(u_samples, 40)) <= 1e-14);
  CHECK(max_coeff_diff(r.v, coeffs_from_samples(v_samples, 40)) <= 1e-14);
  CHECK(r.inverse_residual <= 1e-10);
}

TEST_CASE("make_ratios: block symbols need a second pair") {
  FactorizationData f = block_plus_factorization(LaurentSeries::identity(2, 1), 4);
  CHECK_THROWS_AS(make_ratios(f, 4), DomainError);
}

TEST_CASE("make_ratios: commuting block family reduces to the scalar ratios") {
  // phi = f (I + (a z + b / z) J), J = [[0, 1], [0, 0]].
  const Complex a(0.2, 0.1), b(-0.15, 0.05);
  const LaurentSeries log_f = LaurentSeries::scalar({{1, 0.3}, {-1, 0.2}, {2, -0.1}});
  const FactorPair fs = factors_from_log(log_f, 48);
  FactorizationData scalar{fs.plus, fs.minus, fs.center, std::nullopt, 0.0, 0.0};
  const RatioPair sr = make_ratios(scalar, 48);

  auto lift = [](const LaurentSeries& s, const LaurentSeries& offdiag) {
    LaurentSeries out(2, std::max(s.band(), offdiag.band()));
    for (long k = -static_cast<long>(out.band()); k <= static_cast<long>(out.band()); ++k) {
      out.set(k, 0, 0, s[k]);
      out.set(k, 1, 1, s[k]);
      out.set(k, 0, 1, offdiag[k]);
    }
    return out;
  };
  const LaurentSeries phi_f = convolve(fs.plus, fs.minus, 48);
  const LaurentSeries h = LaurentSeries::scalar({{1, a}, {-1, b}});
  const LaurentSeries phi = lift(phi_f, convolve(phi_f, h, 48));

  FactorizationData f = block_plus_factorization(phi, 48);
  f.second_pair = FactorPair{f.minus, f.plus, f.center};
  const RatioPair br = make_ratios(f, 48);

  // u = (f_-/f_+)(I + (b/z - a z) J), v = (f_+/f_-)(I + (a z - b/z) J).
  const LaurentSeries du = LaurentSeries::scalar({{-1, b}, {1, -a}});
  const LaurentSeries u_expected = lift(sr.u, convolve(sr.u, du, 48));
  const LaurentSeries v_expected = lift(sr.v, convolve(sr.v, du.scaled(-1.0), 48));
  CHECK(max_coeff_diff(br.u, u_expected) <= 1e-10);
  CHECK(max_coeff_diff(br.v, v_expected) <= 1e-10);
  CHECK(br.inverse_residual <= 1e-10);
}
