#include <climits>
#include <cmath>

#include <omp.h>

#include "doctest.h"
#include "pgf/colombeau.hpp"
#include "test_support.hpp"

using namespace pgf;

namespace {

double direct_psi(double eps, double theta, int K) {
  double s = 0.0;
  for (int k = -K; k <= K; ++k) s += std::exp(-std::pow(theta + two_pi * k, 2) / eps) / std::sqrt(pi * eps);
  return s;
}

double direct_residual(double eps, double theta, int K) {
  double s = 0.0;
  for (int k = -K; k <= K; ++k) s += k * std::exp(-std::pow(theta + two_pi * k, 2) / eps);
  return -4.0 * std::sqrt(pi) / (eps * std::sqrt(eps)) * s;
}

}  // namespace

TEST_SUITE("colombeau") {
  TEST_CASE("wrapped Gaussian net: values, mass and coefficients") {
    const Net psi = wrapped_gaussian_net();
    const double v = psi.value(0.5, 0.0).real();
    CHECK(v >= 1.0 / std::sqrt(0.5 * pi));
    CHECK(v - 1.0 / std::sqrt(0.5 * pi) < 1e-16 * 1e3);
    CHECK(std::abs(v - direct_psi(0.5, 0.0, 20)) < 1e-15);
    for (double t : {-3.0, -1.0, 2.0, pi}) CHECK(std::abs(psi.value(0.3, t).real() - direct_psi(0.3, t, 20)) < 1e-15);
    // Mass and coefficients from a trapezoid on the sampled net.
    for (double eps : {0.2, 0.5, 1.0}) {
      const std::size_t M = 256;
      std::vector<cplx> s(M);
      for (std::size_t j = 0; j < M; ++j) s[j] = psi.value(eps, grid_node(j, M));
      const CoeffSeq c = coeffs_from_samples(SampledFunction(s), 12);
      CHECK(std::abs(c[0].real() * std::sqrt(two_pi) - 1.0) < 1e-14);
      for (int k = -12; k <= 12; ++k) CHECK(std::abs(c[k] - wrapped_gaussian_coefficient(eps, k)) < 1e-15);
    }
    CHECK(wrapped_gaussian_coefficient(0.5, 2) == doctest::Approx(std::exp(-0.5) / std::sqrt(two_pi)).epsilon(1e-15));
    CHECK_THROWS_AS(wrapped_gaussian_net(2), std::invalid_argument);
  }

  TEST_CASE("Gaussian derivatives match finite differences") {
    const double eps = 0.4, u = 0.3, h = 1e-4;
    for (int j = 0; j < 4; ++j) {
      const double fd = (gaussian_derivative(eps, u + h, j) - gaussian_derivative(eps, u - h, j)) / (2 * h);
      CHECK(std::abs(fd - gaussian_derivative(eps, u, j + 1)) < 1e-6 * (1.0 + std::abs(fd)));
    }
  }

  TEST_CASE("residual net: closed form, symmetries and bound") {
    const Net res = residual_net();
    for (double eps : {0.2, 0.5, 1.0}) CHECK(res.value(eps, 0.0) == cplx{0.0, 0.0});
    const double at_pi = res.value(0.5, pi).real();
    CHECK(std::abs(at_pi - direct_residual(0.5, pi, 20)) < 1e-15 * std::abs(at_pi));
    const double dominant = 4.0 * std::sqrt(pi) / (0.5 * std::sqrt(0.5)) * std::exp(-pi * pi / 0.5);
    CHECK(at_pi == doctest::Approx(dominant).epsilon(1e-12));
    const EpsGrid grid = EpsGrid::verification_default();
    for (double eps : grid.values()) {
      CHECK(net_sup(res, eps, 0, sup_samples(500)) < residual_bound(eps));
    }
    for (double eps : {0.3, 0.5, 0.8}) CHECK(residual_operator_check(6, eps) < 1e-6);
  }

  TEST_CASE("residual bound: closed form, monotone, below every power on the tail") {
    CHECK(residual_bound(1.0) == doctest::Approx(8.0 * std::sqrt(pi) * std::exp(-pi * pi)).epsilon(1e-15));
    CHECK(residual_bound(1.0) > residual_bound(0.5));
    const EpsGrid grid = EpsGrid::verification_default();
    const auto& g = grid.values();
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(residual_bound(g[i]) < residual_bound(g[i - 1]));
    for (double eps : g)
      if (eps <= 0.5)
        for (int q = 1; q <= 8; ++q) CHECK(residual_bound(eps) <= std::pow(eps, q));
  }

  TEST_CASE("classification of the reference nets") {
    const EpsGrid grid = EpsGrid::verification_default();
    const GrowthVerdict wg = classify_net(wrapped_gaussian_net(), grid);
    CHECK(wg.tag == GrowthVerdict::Tag::Moderate);
    CHECK(wg.per_derivative[0].witness_q == 1);
    CHECK(wg.per_derivative[0].slope == doctest::Approx(0.5).epsilon(0.02));
    CHECK(classify_net(residual_net(), grid).tag == GrowthVerdict::Tag::Negligible);
    CHECK(classify_net(zero_net(), grid).tag == GrowthVerdict::Tag::Negligible);
    const GrowthVerdict c = classify_net(constant_net({2.0, 0.0}), grid);
    CHECK(c.tag == GrowthVerdict::Tag::Moderate);
    CHECK(c.witness_q == 0);
  }

  TEST_CASE("exponentially growing nets are neither moderate nor negligible") {
    const Net blow("exp", [](double eps, double, int order) { return cplx{order == 0 ? std::exp(1.0 / eps) : 0.0, 0.0}; });
    const EpsGrid grid({0.5, 0.2, 0.1, 0.05, 0.02});
    CHECK(classify_net(blow, grid).tag == GrowthVerdict::Tag::Neither);
    const GrowthVerdict r = classify_number({[](double eps) { return cplx{std::exp(1.0 / eps), 0.0}; }, "exp"}, grid);
    CHECK(r.tag == GrowthVerdict::Tag::Neither);
    CHECK(classify_number(lambda_number(), grid).tag == GrowthVerdict::Tag::Moderate);
    CHECK(classify_number(lambda_number(), grid).witness_q == 1);
  }

  TEST_CASE("non-finite sup values name the failing point") {
    const Net bad("bad", [](double eps, double, int order) {
      return cplx{(order == 1 && eps < 0.35) ? std::nan("") : 1.0, 0.0};
    });
    try {
      classify_net(bad, EpsGrid::verification_default());
      FAIL("expected ClassificationError");
    } catch (const ClassificationError& e) {
      CHECK(e.eps() == 0.3);
      CHECK(e.order() == 1);
    }
  }

  TEST_CASE("ideal property and algebra identities") {
    const EpsGrid grid = EpsGrid::verification_default();
    const Net psi = wrapped_gaussian_net();
    CHECK(classify_net(net_multiply(psi, zero_net()), grid).tag == GrowthVerdict::Tag::Negligible);
    CHECK(classify_net(net_multiply(psi, residual_net()), grid).tag == GrowthVerdict::Tag::Negligible);
    CHECK(classify_net(net_multiply(coordinate_net(), residual_net()), grid).tag == GrowthVerdict::Tag::Negligible);
    const Net sq = net_multiply(psi, psi);
    CHECK(sq.value(0.5, 0.0).real() == doctest::Approx(std::pow(psi.value(0.5, 0.0).real(), 2)).epsilon(1e-15));
    // d/dθ ψ + (2/ε)θψ built from the algebra reproduces the closed form.
    const Net built = min_uncertainty_operator(psi, lambda_number());
    const Net res = residual_net();
    for (double eps : {0.3, 0.5, 0.8}) {
      const double scale = net_sup(psi, eps, 1, sup_samples(200));
      for (double t : sup_samples(200)) CHECK(std::abs(built.value(eps, t) - res.value(eps, t)) < 1e-6 * scale);
    }
    CHECK(classify_net(net_subtract(built, res), grid).tag == GrowthVerdict::Tag::Negligible);
    // Product rule through the algebra.
    const Net d = net_differentiate(sq);
    CHECK(std::abs(d.value(0.4, 0.7) - 2.0 * psi.value(0.4, 0.7) * psi.derivative(0.4, 0.7, 1)) < 1e-13);
  }

  TEST_CASE("the factor in lambda matters") {
    const EpsGrid grid = EpsGrid::verification_default();
    const GrowthVerdict half = classify_net(residual_net(6, 1.0), grid);
    CHECK(half.tag == GrowthVerdict::Tag::Moderate);
    CHECK(classify_net(residual_net(6, 2.0), grid).tag == GrowthVerdict::Tag::Negligible);
  }

  TEST_CASE("contrast: the operator applied to a constant is not negligible") {
    const Net c = min_uncertainty_operator(constant_net({1.0, 0.0}), lambda_number());
    const GrowthVerdict v = classify_net(c, EpsGrid::verification_default());
    CHECK(v.tag == GrowthVerdict::Tag::Moderate);
    CHECK(v.per_derivative[0].witness_q == 1);
    for (std::size_t i = 0; i < v.eps.size(); ++i) CHECK(v.sup[0][i] == doctest::Approx(two_pi / v.eps[i]).epsilon(1e-12));
  }

  TEST_CASE("mudec certificate passes with the bound below every sup") {
    const MudecCertificate cert = mudec_certificate(6, EpsGrid::verification_default());
    CHECK(cert.passed);
    CHECK(cert.bound_holds);
    for (std::size_t i = 0; i < cert.eps.size(); ++i) CHECK(cert.sup[i] < cert.bound[i]);
    // For each q there is a tail of the grid where sup ≤ ε^q.
    for (const auto& from : cert.verdict.negligible_from) {
      REQUIRE(from.has_value());
      CHECK(*from >= 0.5);
    }
  }

  TEST_CASE("classification is independent of the thread count") {
    const EpsGrid grid = EpsGrid::verification_default();
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const GrowthVerdict a = classify_net(residual_net(), grid);
    omp_set_num_threads(4);
    const GrowthVerdict b = classify_net(residual_net(), grid);
    omp_set_num_threads(saved);
    CHECK(a.sup == b.sup);
    CHECK(a.tag == b.tag);
  }

  TEST_CASE("grid validation and wrap certification") {
    CHECK_THROWS_AS(EpsGrid({0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(EpsGrid({1.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(EpsGrid(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(classify_net(zero_net(), EpsGrid({0.5, 0.4, 0.3})), std::invalid_argument);
    CHECK(wrapped_gaussian_net(3).omitted_wrap_term(1.0, 0) < 1e-200);
    CHECK(wrapped_gaussian_net(3).omitted_wrap_term(1.0, 0) > wrapped_gaussian_net(4).omitted_wrap_term(1.0, 0));
    CHECK(zero_net().omitted_wrap_term(1.0, 0) == 0.0);
    // A net whose wrap tail is not certified is refused.
    const Net loose("loose", [](double, double, int) { return cplx{1.0, 0.0}; }, INT_MAX, 3, [](double, int) { return 1e-10; });
    CHECK_THROWS_AS(classify_net(loose, EpsGrid::verification_default()), std::invalid_argument);
  }

  TEST_CASE("derivatives beyond the exact order fall back to finite differences") {
    const Net once("sin", [](double, double t, int order) { return cplx{order == 0 ? std::sin(t) : std::cos(t), 0.0}; }, 1);
    CHECK_FALSE(once.approximate_at(1));
    CHECK(once.approximate_at(2));
    CHECK(std::abs(once.derivative(0.5, 0.4, 2).real() + std::sin(0.4)) < 1e-8);
    CHECK(Net::fd_step_for(1) == 1e-5);
    CHECK(net_differentiate(once).exact_order() == 0);
  }

  TEST_CASE("embedding: Dirac to the wrapped Gaussian, constants fixed") {
    const Net e = embed_distribution(DistributionSpectrum::dirac(0.0));
    const Net psi = wrapped_gaussian_net();
    for (double eps : {0.2, 0.5, 1.0})
      for (double t : {-3.0, -0.5, 0.0, 1.0, pi}) CHECK(std::abs(e.value(eps, t) - psi.value(eps, t)) < 1e-13);
    const Net shifted = embed_distribution(DistributionSpectrum::dirac(1.2));
    CHECK(std::abs(shifted.value(0.3, 0.9) - psi.value(0.3, -0.3)) < 1e-13);
    const Net one = embed_distribution(DistributionSpectrum::from_window(CoeffSeq::basis(0)));
    for (double eps : {0.1, 0.7}) CHECK(std::abs(one.value(eps, 2.0) - 1.0 / std::sqrt(two_pi)) < 1e-15);
  }

  TEST_CASE("embedding is linear") {
    auto rng = test::rng(51);
    const CoeffSeq a = random_coeffs(6, rng);
    const auto F = DistributionSpectrum::from_window(a);
    const auto G = DistributionSpectrum::dirac(-0.8);
    const cplx x{1.5, -0.5}, y{0.25, 2.0};
    const Net lhs = embed_distribution(linear_combination(x, F, y, G));
    const Net eF = embed_distribution(F), eG = embed_distribution(G);
    for (double eps : {0.2, 0.6})
      for (double t : {-2.0, 0.3, 3.0})
        CHECK(std::abs(lhs.value(eps, t) - (x * eF.value(eps, t) + y * eG.value(eps, t))) < 1e-12);
  }

  TEST_CASE("embedding of a smooth distribution converges linearly in eps") {
    auto rng = test::rng(52);
    const CoeffSeq a = random_coeffs(5, rng);
    const Net diff = net_subtract(embed_distribution(DistributionSpectrum::from_window(a)), spectral_net(a));
    const EpsGrid grid({0.08, 0.04, 0.02, 0.01, 0.005});
    const GrowthVerdict v = classify_net(diff, grid, ClassifyOptions{.j_max = 0});
    // sup ~ C ε: halving ε halves the sup, with an O(ε²) correction.
    CHECK(v.per_derivative[0].slope == doctest::Approx(-1.0).epsilon(0.1));
    for (std::size_t i = 1; i < v.eps.size(); ++i) {
      const double ratio = v.sup[0][i - 1] / v.sup[0][i];
      CHECK(ratio > 1.8);
      CHECK(ratio < 2.05);
    }
  }

  TEST_CASE("association of the wrapped Gaussian with the Dirac measure") {
    const CoeffSeq cos_test = CoeffSeq::from_generator(1, [](std::int64_t n) { return cplx{n == 0 ? 0.0 : 1.0, 0.0}; });
    const EpsGrid grid({0.4, 0.2, 0.1, 0.05, 0.02, 0.01});
    const AssociationReport r = association_check(wrapped_gaussian_net(), DistributionSpectrum::dirac(0.0), {{"cos", cos_test}}, grid);
    REQUIRE(r.rows.size() == 1);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double oracle = 2.0 / std::sqrt(two_pi) * std::abs(std::exp(-grid.values()[i] / 4.0) - 1.0);
      CHECK(r.rows[0].discrepancy[i] == doctest::Approx(oracle).epsilon(1e-9));
    }
    CHECK(r.rows[0].fitted_order == doctest::Approx(1.0).epsilon(0.02));
    CHECK(r.passed);
  }

  TEST_CASE("association of constants and of the residual") {
    const EpsGrid grid({0.5, 0.4, 0.3, 0.25, 0.2});
    const cplx c{0.7, 0.0};
    const auto F = DistributionSpectrum::from_window(CoeffSeq::from_generator(0, [&](std::int64_t) { return c * std::sqrt(two_pi); }));
    const std::vector<std::pair<std::string, CoeffSeq>> tests{{"e0", CoeffSeq::basis(0)}, {"e2", CoeffSeq::basis(2)}};
    const AssociationReport rc = association_check(constant_net(c), F, tests, grid);
    for (const auto& row : rc.rows)
      for (double d : row.discrepancy) CHECK(d < 1e-13);
    CHECK(rc.passed);
    const AssociationReport rr = association_check(residual_net(), DistributionSpectrum::zero(), tests, grid);
    for (const auto& row : rr.rows)
      for (std::size_t i = 0; i < grid.size(); ++i) CHECK(row.discrepancy[i] <= two_pi * residual_bound(grid.values()[i]));
  }
}
