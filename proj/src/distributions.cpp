#include "pgf/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

namespace pgf {

cplx dirac_coefficient(double theta, std::int64_t n) {
  return std::polar(inv_sqrt_two_pi, -static_cast<double>(n) * theta);
}

DistributionSpectrum::DistributionSpectrum(Kind kind, CoeffGenerator gen, GrowthClass growth,
                                           std::string label)
    : kind_(kind), gen_(std::move(gen)), growth_(growth), label_(std::move(label)) {}

DistributionSpectrum DistributionSpectrum::dirac(double theta) {
  const double t = wrap_angle(theta);
  DistributionSpectrum d(Kind::Dirac, [t](std::int64_t n) { return dirac_coefficient(t, n); },
                         GrowthClass{GrowthTag::SlowGrowth, 0.0, 0.0}, "dirac");
  d.dirac_angle_ = t;
  return d;
}

DistributionSpectrum DistributionSpectrum::from_generator(CoeffGenerator gen, std::string label,
                                                          int classify_window) {
  const GrowthClass g = classify_growth(gen, classify_window);
  if (!g.tempered()) {
    throw std::invalid_argument("distribution '" + label +
                                "': coefficients are not of slow growth (fitted exponent " +
                                std::to_string(g.exponent) + ")");
  }
  return DistributionSpectrum(Kind::Generator, std::move(gen), g, std::move(label));
}

DistributionSpectrum DistributionSpectrum::from_window(const CoeffSeq& coeffs, std::string label) {
  auto stored = std::make_shared<const CoeffSeq>(coeffs);
  DistributionSpectrum d(Kind::Window, [stored](std::int64_t n) { return (*stored)[n]; },
                         GrowthClass{GrowthTag::RapidDecay, 0.0, 0.0}, std::move(label));
  d.window_ = coeffs;
  return d;
}

DistributionSpectrum DistributionSpectrum::zero() { return from_window(CoeffSeq(0), "zero"); }

std::optional<double> DistributionSpectrum::dirac_angle() const {
  if (kind_ != Kind::Dirac) return std::nullopt;
  return dirac_angle_;
}

std::optional<int> DistributionSpectrum::window_bandwidth() const {
  if (!window_) return std::nullopt;
  return window_->bandwidth();
}

PairingResult pair(const DistributionSpectrum& F, const CoeffSeq& phi) {
  const int N = phi.bandwidth();
  cplx acc{0.0, 0.0};
  for (int n = -N; n <= N; ++n) acc += std::conj(F.coefficient(n)) * phi[n];
  return {acc, N, 0.0};
}

DistributionSpectrum translate(const DistributionSpectrum& F, double theta) {
  if (auto a = F.dirac_angle()) return DistributionSpectrum::dirac(*a + theta);
  if (auto N = F.window_bandwidth()) {
    const CoeffSeq w = F.window(*N);
    return DistributionSpectrum::from_window(
        CoeffSeq::from_generator(*N, [&](std::int64_t n) {
          return w[n] * std::polar(1.0, -static_cast<double>(n) * theta);
        }),
        F.label());
  }
  auto gen = F.generator();
  return DistributionSpectrum::from_generator(
      [gen, theta](std::int64_t n) { return gen(n) * std::polar(1.0, -static_cast<double>(n) * theta); },
      "translate(" + F.label() + ")");
}

DistributionSpectrum reflect(const DistributionSpectrum& F) {
  if (auto a = F.dirac_angle()) return DistributionSpectrum::dirac(-*a);
  if (auto N = F.window_bandwidth()) {
    const CoeffSeq w = F.window(*N);
    return DistributionSpectrum::from_window(
        CoeffSeq::from_generator(*N, [&](std::int64_t n) { return w[-n]; }), F.label());
  }
  auto gen = F.generator();
  return DistributionSpectrum::from_generator([gen](std::int64_t n) { return gen(-n); },
                                              "reflect(" + F.label() + ")");
}

DistributionSpectrum derivative(const DistributionSpectrum& F) {
  if (auto N = F.window_bandwidth()) {
    return DistributionSpectrum::from_window(differentiate(F.window(*N)), "d(" + F.label() + ")");
  }
  auto gen = F.generator();
  return DistributionSpectrum::from_generator(
      [gen](std::int64_t n) { return cplx{0.0, static_cast<double>(n)} * gen(n); },
      "d(" + F.label() + ")");
}

DistributionSpectrum linear_combination(cplx a, const DistributionSpectrum& F, cplx b,
                                        const DistributionSpectrum& G) {
  auto fw = F.window_bandwidth();
  auto gw = G.window_bandwidth();
  if (fw && gw) {
    return DistributionSpectrum::from_window(a * F.window(*fw) + b * G.window(*gw), "combination");
  }
  auto f = F.generator();
  auto g = G.generator();
  return DistributionSpectrum::from_generator([=](std::int64_t n) { return a * f(n) + b * g(n); },
                                              "combination");
}

ThetaPairing apply_theta(const DistributionSpectrum& F, const CoeffSeq& phi, const ThetaOptions& opts) {
  const int N = phi.bandwidth();
  int L = opts.enlarged_bandwidth > 0 ? opts.enlarged_bandwidth : 8 * N + 16;
  if (auto W = F.window_bandwidth()) L = std::max(L, *W);
  const std::size_t M = static_cast<std::size_t>(8 * L + 8);

  // x·φ(x) on [-π, π); the sawtooth takes its jump midpoint 0 at the node -π.
  const SampledFunction phi_s = evaluate(phi, M);
  std::vector<cplx> xphi(M);
  for (std::size_t j = 0; j < M; ++j) {
    const double x = (j == 0) ? 0.0 : grid_node(j, M);
    xphi[j] = x * phi_s.samples()[j];
  }
  const CoeffSeq projected = coeffs_from_samples(SampledFunction(std::move(xphi)), L);

  // Residual on the staggered grid, which never touches the jump: the odd
  // nodes of the doubled grid.
  const std::size_t check = static_cast<std::size_t>(4 * L + 4);
  const SampledFunction approx = evaluate(projected, 2 * check);
  const SampledFunction exact_phi = evaluate(phi, 2 * check);
  double residual = 0.0;
  for (std::size_t j = 1; j < 2 * check; j += 2) {
    const double x = grid_node(j, 2 * check);
    residual = std::max(residual, std::abs(approx.samples()[j] - x * exact_phi.samples()[j]));
  }

  cplx acc{0.0, 0.0};
  for (int n = -L; n <= L; ++n) acc += std::conj(F.coefficient(n)) * projected[n];

  ThetaPairing out;
  out.pairing = {acc, L, 0.0};
  out.reprojection_residual = residual;
  out.gibbs_warning = residual > opts.residual_tolerance;
  return out;
}

DistributionSpectrum sesquilinear_product(const DistributionSpectrum& F, const DistributionSpectrum& G) {
  if (!F.growth().tempered() || !G.growth().tempered()) {
    throw std::invalid_argument("sesquilinear_product: operands must be of slow growth");
  }
  auto fw = F.window_bandwidth();
  auto gw = G.window_bandwidth();
  if (fw || gw) {
    // Finite support on either side makes the product finitely supported.
    const int N = (fw && gw) ? std::min(*fw, *gw) : (fw ? *fw : *gw);
    auto f = F.generator();
    auto g = G.generator();
    return DistributionSpectrum::from_window(
        CoeffSeq::from_generator(N, [&](std::int64_t n) { return sqrt_two_pi * (std::conj(f(n)) * g(n)); }),
        "product");
  }
  auto f = F.generator();
  auto g = G.generator();
  return DistributionSpectrum::from_generator(
      [f, g](std::int64_t n) { return sqrt_two_pi * (std::conj(f(n)) * g(n)); },
      "product(" + F.label() + "," + G.label() + ")");
}

}  // namespace pgf
