#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "pgf/operators.hpp"
#include "test_support.hpp"

using namespace pgf;

TEST_SUITE("operators") {
  TEST_CASE("angular momentum and Hamiltonian act diagonally") {
    auto rng = test::rng(41);
    const BandLimitedState f(random_coeffs(6, rng));
    const auto J = angular_momentum(f);
    const auto H = hamiltonian(f, 2.0);
    for (int k = -6; k <= 6; ++k) {
      CHECK(J.coeffs()[k] == double(k) * f.coeffs()[k]);
      CHECK(std::abs(H.coeffs()[k] - (k * k / 4.0) * f.coeffs()[k]) < 1e-15);
    }
    CHECK_THROWS_AS(hamiltonian(f, 0.0), std::domain_error);
    CHECK_THROWS_AS(hamiltonian(f, -1.0), std::domain_error);
  }

  TEST_CASE("rotation translates the function") {
    auto rng = test::rng(42);
    const BandLimitedState f(random_coeffs(10, rng));
    const auto g = rotate(f, 0.7);
    for (double x : {-2.0, 0.1, 2.9}) CHECK(std::abs(evaluate_at(g.coeffs(), x) - evaluate_at(f.coeffs(), x - 0.7)) < 1e-13);
    CHECK(g.norm() == doctest::Approx(f.norm()).epsilon(1e-14));
  }

  TEST_CASE("ladder multiplies by e^{inθ}") {
    auto rng = test::rng(43);
    const BandLimitedState f(random_coeffs(5, rng));
    const auto g = ladder(f, -3);
    CHECK(g.bandwidth() == 8);
    for (double x : {-1.0, 0.5, 3.0}) {
      CHECK(std::abs(evaluate_at(g.coeffs(), x) - std::polar(1.0, -3.0 * x) * evaluate_at(f.coeffs(), x)) < 1e-13);
    }
  }

  TEST_CASE("Weyl relation holds to rounding") {
    auto rng = test::rng(44);
    const BandLimitedState f = BandLimitedState::normalized_from(random_coeffs(32, rng));
    for (int n = 1; n <= 5; ++n)
      for (double y : {-3.0, -0.3, 1.0, 2.5}) CHECK(weyl_defect(n, y, f) < 1e-13);
  }

  TEST_CASE("Borel sets validate their intervals") {
    CHECK_THROWS_AS(BorelSet({{0.0, 1.0}, {0.5, 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(BorelSet({{1.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(BorelSet({{-4.0, 0.0}}), std::invalid_argument);
    const BorelSet B({{-1.0, 0.0}, {1.0, 2.0}});
    CHECK(B.contains(-0.5));
    CHECK_FALSE(B.contains(0.5));
    CHECK(B.indicator(-1.0) == 0.5);
    CHECK(B.indicator(2.0) == 0.5);
    CHECK(B.indicator(1.5) == 1.0);
    CHECK(BorelSet::full_circle().indicator(-pi) == 1.0);
  }

  TEST_CASE("spectral measures of complementary sets add up") {
    auto rng = test::rng(45);
    const BandLimitedState f = BandLimitedState::normalized_from(random_coeffs(8, rng));
    const BorelSet A({{-pi, 0.4}});
    const BorelSet B({{0.4, pi}});
    const auto ea = spectral_measure(f, A, 256, 4096);
    const auto eb = spectral_measure(f, B, 256, 4096);
    CHECK(ea.norm_sq_quadrature + eb.norm_sq_quadrature == doctest::Approx(1.0).epsilon(1e-12));
    const auto full = spectral_measure(f, BorelSet::full_circle(), 8);
    CHECK(test::max_abs_diff(full.state.coeffs(), f.coeffs()) < 1e-14);
    CHECK(full.truncation_loss < 1e-20);
  }

  TEST_CASE("Borel pairing: resolution of identity, ladder and moments") {
    auto rng = test::rng(46);
    const CoeffSeq phi = random_coeffs(6, rng);
    const CoeffSeq psi = random_coeffs(7, rng);
    const QuadratureResult one = borel_decomposition_pairing([](double) { return cplx{1.0, 0.0}; }, phi, psi);
    CHECK(std::abs(one.value - inner_product(phi, psi)) < 1e-14);
    for (int n = -3; n <= 3; ++n) {
      const auto r = borel_decomposition_pairing([n](double t) { return std::polar(1.0, n * t); }, phi, psi, 64);
      CHECK(std::abs(r.value - inner_product(phi, ladder(BandLimitedState(psi), n).coeffs())) < 1e-14);
    }
    for (int p = 1; p <= 4; ++p) {
      const auto r = borel_decomposition_pairing([p](double t) { return cplx{std::pow(t, p), 0.0}; }, phi, psi, 2048);
      auto re = [&](double t) { return (std::pow(t, p) * std::conj(evaluate_at(phi, t)) * evaluate_at(psi, t)).real(); };
      auto im = [&](double t) { return (std::pow(t, p) * std::conj(evaluate_at(phi, t)) * evaluate_at(psi, t)).imag(); };
      using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
      const cplx oracle{GK::integrate(re, -pi, pi, 15, 1e-14), GK::integrate(im, -pi, pi, 15, 1e-14)};
      CHECK(std::abs(r.value - oracle) < 1e-9 * (1.0 + std::abs(oracle)));
    }
  }

  TEST_CASE("Borel pairing rejects non-finite multipliers") {
    const CoeffSeq e0 = CoeffSeq::basis(0);
    CHECK_THROWS_AS(borel_decomposition_pairing([](double t) { return cplx{1.0 / t, 0.0}; }, e0, e0, 64), std::domain_error);
  }

  TEST_CASE("projector pairing is the pointwise product") {
    const CoeffSeq e1 = CoeffSeq::basis(1);
    const CoeffSeq e2 = CoeffSeq::basis(2);
    CHECK(std::abs(projector_pairing(0.5, e1, e2) - std::polar(1.0 / two_pi, 0.5)) < 1e-15);
  }
}
