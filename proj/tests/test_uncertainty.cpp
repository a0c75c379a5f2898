#include <cmath>

#include "doctest.h"
#include "pgf/uncertainty.hpp"
#include "test_support.hpp"

using namespace pgf;

namespace {

BandLimitedState cos_state() {
  return BandLimitedState::normalized_from(CoeffSeq::from_generator(1, [](std::int64_t n) { return cplx{n == 0 ? 0.0 : 1.0, 0.0}; }));
}

}  // namespace

TEST_SUITE("uncertainty") {
  TEST_CASE("mean direction") {
    for (double eps : {0.05, 0.3, 1.0}) CHECK(std::abs(mean_direction(wrapped_gaussian_state(eps))) < 1e-14);
    CHECK(mean_direction(rotate(wrapped_gaussian_state(0.2), 0.8)) == doctest::Approx(0.8).epsilon(1e-10));
    CHECK(mean_direction(rotate(wrapped_gaussian_state(0.2), -2.9)) == doctest::Approx(-2.9).epsilon(1e-10));
    const BandLimitedState e0(CoeffSeq::basis(0), true);
    CHECK_THROWS_AS(mean_direction(e0), UndefinedDirection);
    try {
      mean_direction(e0);
    } catch (const UndefinedDirection& e) {
      CHECK(e.magnitude() < 1e-12);
    }
    CHECK_THROWS_AS(mean_direction(BandLimitedState(CoeffSeq::basis(0))), std::invalid_argument);
  }

  TEST_CASE("mean angular momentum") {
    CHECK(mean_J(BandLimitedState(CoeffSeq::basis(5), true)) == 5.0);
    CHECK(std::abs(mean_J(wrapped_gaussian_state(0.1))) < 1e-15);
    CHECK(std::abs(mean_J(cos_state())) < 1e-15);
  }

  TEST_CASE("angle variance") {
    CHECK(variance_theta(wrapped_gaussian_state(0.05)) == doctest::Approx(0.0125).epsilon(0.01));
    CHECK(variance_theta(BandLimitedState(CoeffSeq::basis(0), true)) == doctest::Approx(pi * pi / 3.0).epsilon(1e-12));
    auto rng = test::rng(61);
    for (int t = 0; t < 10; ++t) {
      const auto psi = BandLimitedState::normalized_from(random_coeffs(12, rng));
      const auto centred = rotate(psi, -mean_direction(psi));
      const double v = variance_theta(centred);
      CHECK(v >= 0.0);
      CHECK(v <= pi * pi);
    }
    CHECK_THROWS_AS(variance_theta(rotate(wrapped_gaussian_state(0.2), 0.5)), std::domain_error);
  }

  TEST_CASE("angular momentum variance") {
    CHECK(variance_J(BandLimitedState(CoeffSeq::basis(0), true)) == 0.0);
    CHECK(variance_J(wrapped_gaussian_state(0.05)) == doctest::Approx(20.0).epsilon(0.01));
    CHECK(variance_J(cos_state()) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(variance_J(BandLimitedState(CoeffSeq::basis(2), true)), std::domain_error);
  }

  TEST_CASE("uncertainty product of the wrapped Gaussian saturates 1/2") {
    const UncertaintyReport r = uncertainty_product(wrapped_gaussian_state(0.05));
    CHECK(r.product == doctest::Approx(0.5).epsilon(0.05));
    CHECK(r.product == doctest::Approx(std::sqrt(r.var_theta * r.var_J)).epsilon(1e-15));
    CHECK(r.schwartz_slack() >= -1e-10);
    // (ψ, ΘJψ) = i/2 for the line Gaussian, so the rhs is 1/4.
    CHECK(r.schwartz_rhs == doctest::Approx(0.25).epsilon(1e-6));
    for (double eps : {0.4, 0.2, 0.1}) CHECK(uncertainty_product(wrapped_gaussian_state(eps)).product == doctest::Approx(0.5).epsilon(0.05));
  }

  TEST_CASE("uncertainty product of an angular momentum eigenstate vanishes") {
    const UncertaintyReport r = uncertainty_product(BandLimitedState(CoeffSeq::basis(0), true));
    CHECK(r.product == 0.0);
    CHECK_FALSE(r.direction_defined);
    CHECK(r.var_theta == doctest::Approx(pi * pi / 3.0).epsilon(1e-12));
  }

  TEST_CASE("Schwartz inequality for random states") {
    auto rng = test::rng(62);
    for (int t = 0; t < 50; ++t) {
      const auto psi = BandLimitedState::normalized_from(random_coeffs(1 + t % 16, rng));
      CHECK(uncertainty_product(psi).schwartz_slack() >= 0.0);
    }
  }

  TEST_CASE("shifted family has the requested means and the same variances") {
    const auto psi = wrapped_gaussian_state(0.1);
    CHECK(test::max_abs_diff(shift_state(psi, 0.0, 0.0).coeffs(), psi.coeffs()) == 0.0);
    const auto s = shift_state(psi, pi / 3.0, 2.0);
    CHECK(std::abs(mean_direction(s) - pi / 3.0) < 1e-6);
    CHECK(std::abs(mean_J(s) - 2.0) < 1e-8);
    const UncertaintyReport a = uncertainty_product(psi);
    const UncertaintyReport b = uncertainty_product(s);
    CHECK(b.var_theta == doctest::Approx(a.var_theta).epsilon(1e-10));
    CHECK(b.var_J == doctest::Approx(a.var_J).epsilon(1e-10));
    CHECK_THROWS_AS(shift_state(psi, 0.0, 0.5), std::domain_error);
  }

  TEST_CASE("random states stay above the saturation value") {
    const ProductSearch s = random_product_search(16, 40, 7);
    CHECK(s.trials == 40);
    CHECK(s.min_product > 0.5);
    CHECK(s.median_product >= s.min_product);
  }

  TEST_CASE("wrapped Gaussian states are normalized and band-limited") {
    const auto psi = wrapped_gaussian_state(0.05);
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(psi.bandwidth() == wrapped_gaussian_bandwidth(0.05));
    CHECK(std::exp(-0.05 * std::pow(psi.bandwidth(), 2) / 4.0) <= 1e-17);
    CHECK_THROWS_AS(wrapped_gaussian_bandwidth(0.0), std::invalid_argument);
  }
}
