#include "oracle.hpp"
#include "test_util.hpp"

#include "tdet/factorization.hpp"
#include "tdet/families.hpp"
#include "tdet/kernels.hpp"
#include "tdet/operators.hpp"
#include "tdet/symbol.hpp"

#include <doctest.h>

using namespace tdet;
using tdet::testing::max_coeff_diff;

namespace {

const double kT = 0.3;

LaurentSeries exp_trig_phi(std::size_t band) {
  return oracle::exp_power_series(LaurentSeries::scalar({{1, kT}, {-1, kT}}), band);
}

// u = exp(t(1/z - z)), v = exp(t(z - 1/z)) for phi = exp(t(z + 1/z)).
RatioPair exp_trig_ratios(std::size_t band) {
  return {oracle::exp_power_series(LaurentSeries::scalar({{-1, kT}, {1, -kT}}), band),
          oracle::exp_power_series(LaurentSeries::scalar({{-1, -kT}, {1, kT}}), band), 0.0};
}

bool all_zero(const ComplexMatrix& m) { return m.is_zero(); }

} // namespace

TEST_CASE("toeplitz_matrix examples") {
  CHECK(toeplitz_matrix(LaurentSeries::identity(1), 3) == ComplexMatrix::identity(3));

  ComplexMatrix shift = toeplitz_matrix(LaurentSeries::scalar({{1, 1.0}}), 2);
  CHECK(shift(0, 0) == Complex{});
  CHECK(shift(0, 1) == Complex{});
  CHECK(shift(1, 0) == Complex(1.0));
  CHECK(shift(1, 1) == Complex{});

  const LaurentSeries phi = exp_trig_phi(20);
  const LaurentSeries e = exp_series(LaurentSeries::scalar({{1, kT}}), 20);
  ComplexMatrix t = toeplitz_matrix(phi, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(t(i, j) == t(j, i));
      // phi_k = sum_j e_{k+j} e_j
      Complex expected{};
      const long k = static_cast<long>(i) - static_cast<long>(j);
      for (long m = 0; m + std::abs(k) <= 20; ++m) expected += e[m] * e[m + std::abs(k)];
      CHECK(std::abs(t(i, j) - expected) <= 1e-15);
    }
}

TEST_CASE("toeplitz_matrix: block layout") {
  LaurentSeries phi = LaurentSeries::identity(2, 1);
  phi.set(1, 0, 1, 5.0);
  ComplexMatrix t = toeplitz_matrix(phi, 2);
  CHECK(t.rows() == 4);
  CHECK(t(2, 1) == Complex(5.0));  // block (1, 0) = phi_1, entry (0, 1)
  CHECK(t(0, 3) == Complex{});
}

TEST_CASE("hankel_U and hankel_V examples") {
  CHECK(all_zero(hankel_U(LaurentSeries::identity(1), 1, 4)));
  CHECK(all_zero(hankel_V(LaurentSeries::identity(1), 1, 4)));

  ComplexMatrix u = hankel_U(LaurentSeries::scalar({{2, 5.0}}), 1, 2);
  CHECK(u(0, 0) == Complex(5.0));
  CHECK(u(0, 1) == Complex{});
  CHECK(u(1, 0) == Complex{});
  CHECK(u(1, 1) == Complex{});

  ComplexMatrix v = hankel_V(LaurentSeries::scalar({{-3, 2.0}}), 1, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(v(i, j) == (i + j == 1 ? Complex(2.0) : Complex{}));

  const RatioPair r = exp_trig_ratios(40);
  const ComplexMatrix h = hankel_U(r.u, 3, 16);
  double bound = 0.0;
  for (long l = 4; l <= 40; ++l) bound += static_cast<double>(l - 3) * std::norm(r.u[l]);
  CHECK(h.frobenius_norm() <= std::sqrt(bound) * (1.0 + 1e-14));
  CHECK(std::abs(h.frobenius_norm() - hankel_U_hs_norm(r.u, 3)) <= 1e-14);
}

TEST_CASE("analytic symbol has V_n = K_n = 0") {
  const FactorPair f = factors_from_log(LaurentSeries::scalar({{1, 0.4}, {2, Complex(0.1, 0.2)}}), 32);
  FactorizationData data{f.plus, f.minus, f.center, std::nullopt, 0.0, 0.0};
  const RatioPair r = make_ratios(data, 32);
  for (std::size_t n : {0u, 1u, 4u, 9u}) {
    CHECK(all_zero(hankel_V(r.v, n, 12)));
    CHECK(all_zero(kernel_K(r.u, r.v, n, 12)));
  }
}

TEST_CASE("kernel_K examples") {
  const Complex a(2.0, 1.0), b(0.5, -3.0);
  ComplexMatrix k = kernel_K(LaurentSeries::scalar({{2, a}}), LaurentSeries::scalar({{-2, b}}), 0, 2);
  CHECK(k(0, 0) == a * b);
  CHECK(k(0, 1) == Complex{});
  CHECK(k(1, 0) == Complex{});
  // i = j = 1, k = 1 also picks up u_2 v_{-2}.
  CHECK(k(1, 1) == a * b);
  CHECK(max_abs_difference(k, oracle::kernel_bruteforce(LaurentSeries::scalar({{2, a}}),
                                                        LaurentSeries::scalar({{-2, b}}), 0, 2)) == 0.0);

  const RatioPair r = exp_trig_ratios(40);
  CHECK(max_abs_difference(kernel_K(r.u, r.v, 2, 24), oracle::kernel_bruteforce(r.u, r.v, 2, 24)) <= 1e-14);
}

TEST_CASE("kernel_K equals the U V product and is nested in n") {
  const RatioPair r = exp_trig_ratios(24);
  for (std::size_t n = 0; n < 10; ++n) {
    const std::size_t m = exact_section(r.u, r.v, n);
    const ComplexMatrix k = kernel_K(r.u, r.v, n, m);
    const ComplexMatrix uv = kernels::multiply(hankel_U(r.u, n, m), hankel_V(r.v, n, m));
    CHECK(k == uv);
    if (n > 0) {
      const ComplexMatrix prev = kernel_K(r.u, r.v, n - 1, m + 1);
      CHECK(prev.block(1, 1, m, m) == k);
    }
  }
}

TEST_CASE("Hilbert-Schmidt norms decrease to zero") {
  const RatioPair r = exp_trig_ratios(40);
  double prev_u = hankel_U_hs_norm(r.u, 0), prev_v = hankel_V_hs_norm(r.v, 0);
  for (std::size_t n = 1; n <= 40; ++n) {
    const double hu = hankel_U_hs_norm(r.u, n), hv = hankel_V_hs_norm(r.v, n);
    CHECK(hu <= prev_u + 1e-14);
    CHECK(hv <= prev_v + 1e-14);
    prev_u = hu;
    prev_v = hv;
  }
  CHECK(prev_u <= 1e-8);
  CHECK(prev_v <= 1e-8);
  CHECK(hankel_U_hs_norm(r.u, 10) <= 1e-8);
}

TEST_CASE("delta_vectors examples") {
  DeltaVectors one = delta_vectors(LaurentSeries::identity(1), LaurentSeries::identity(1), 1, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(one.u_delta[i] == Complex{});
    CHECK(one.v_delta[i] == Complex{});
  }
  DeltaVectors seven = delta_vectors(LaurentSeries::scalar({{3, 7.0}}), LaurentSeries::identity(1), 3, 3);
  CHECK(seven.u_delta[0] == Complex(7.0));
  CHECK(seven.u_delta[1] == Complex{});

  // phi = (1 - 0.5z)^{-1}(1 - 0.3/z): u = phi_-/phi_+ = (1 - 0.3/z)(1 - 0.5z), v = 1/u.
  const LaurentSeries u = oracle::naive_convolve(LaurentSeries::scalar({{0, 1.0}, {-1, -0.3}}),
                                                 LaurentSeries::scalar({{0, 1.0}, {1, -0.5}}));
  const LaurentSeries v = invert_symbol(u, 256, 60).series;
  DeltaVectors d = delta_vectors(u, v, 2, 8);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(d.u_delta[i] == u.get(static_cast<long>(2 + i), 0, 0));
    CHECK(d.v_delta[i] == v.get(-static_cast<long>(2 + i), 0, 0));
  }
  // v = 1/((1 - 0.3/z)(1 - 0.5z)) has v_{-k} = 0.3^k / (1 - 0.15).
  for (std::size_t i = 0; i < 8; ++i)
    CHECK(std::abs(d.v_delta[i] - std::pow(0.3, 2.0 + static_cast<double>(i)) / 0.85) <= 1e-14);

  CHECK_THROWS_AS(delta_vectors(LaurentSeries::identity(2), LaurentSeries::identity(2), 1, 2), DomainError);
}
