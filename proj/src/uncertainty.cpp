#include "pgf/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pgf/quadrature.hpp"

namespace pgf {

UndefinedDirection::UndefinedDirection(double magnitude)
    : std::domain_error("mean direction undefined: |∫ e^{iθ}|ψ|²| = " + std::to_string(magnitude) +
                        " ≤ 1e-12 (uniform-like density)"),
      magnitude_(magnitude) {}

namespace {

void require_normalized(const BandLimitedState& psi, const char* who) {
  if (!psi.normalized()) throw std::invalid_argument(std::string(who) + ": state must be normalized");
}

std::size_t nodes_for(const BandLimitedState& psi, std::size_t M) {
  return M == 0 ? default_moment_nodes(psi.bandwidth()) : round_up_to_eight(M);
}

constexpr double kDirectionFloor = 1e-12;

// ∫ θ w(θ) dθ on [-π, π] from samples with the jump at ±π averaged.
QuadratureResult weighted_moment(const std::vector<cplx>& density, int power) {
  const std::size_t M = density.size();
  std::vector<cplx> integrand(M);
  for (std::size_t j = 0; j < M; ++j) {
    const double t = grid_node(j, M);
    // At the seam θ^p jumps between (-π)^p and π^p.
    const double w = (j == 0) ? 0.5 * (std::pow(-pi, power) + std::pow(pi, power)) : std::pow(t, power);
    integrand[j] = w * density[j];
  }
  return trapezoid_richardson(integrand);
}

std::vector<cplx> density(const BandLimitedState& psi, std::size_t M) {
  const SampledFunction s = evaluate(psi.coeffs(), M);
  std::vector<cplx> d(M);
  for (std::size_t j = 0; j < M; ++j) d[j] = std::norm(s.samples()[j]);
  return d;
}

}  // namespace

std::size_t default_moment_nodes(int bandwidth) {
  return round_up_to_eight(static_cast<std::size_t>(64 * (2 * bandwidth + 1)));
}

cplx first_trig_moment(const BandLimitedState& psi, std::size_t M) {
  M = nodes_for(psi, M);
  const SampledFunction s = evaluate(psi.coeffs(), M);
  cplx acc{0.0, 0.0};
  for (std::size_t j = 0; j < M; ++j) acc += std::polar(std::norm(s.samples()[j]), grid_node(j, M));
  return acc * (two_pi / static_cast<double>(M));
}

double mean_direction(const BandLimitedState& psi, std::size_t M) {
  require_normalized(psi, "mean_direction");
  const cplx I = first_trig_moment(psi, M);
  if (std::abs(I) <= kDirectionFloor) throw UndefinedDirection(std::abs(I));
  return wrap_angle(std::arg(I));
}

double mean_J(const BandLimitedState& psi) {
  require_normalized(psi, "mean_J");
  const CoeffSeq& c = psi.coeffs();
  double acc = 0.0;
  for (int k = -c.bandwidth(); k <= c.bandwidth(); ++k) acc += k * std::norm(c[k]);
  return acc;
}

double variance_theta(const BandLimitedState& psi, std::size_t M) {
  require_normalized(psi, "variance_theta");
  M = nodes_for(psi, M);
  const cplx I = first_trig_moment(psi, M);
  if (std::abs(I) > kDirectionFloor && std::abs(std::arg(I)) > 1e-6) {
    throw std::domain_error("variance_theta: mean direction is " + std::to_string(std::arg(I)) +
                            ", rotate the state to mean direction 0 first");
  }
  return weighted_moment(density(psi, M), 2).value.real();
}

double variance_J(const BandLimitedState& psi) {
  const double m = mean_J(psi);
  if (std::abs(m) > 1e-6) {
    throw std::domain_error("variance_J: mean angular momentum is " + std::to_string(m) +
                            ", apply the ladder shift by -mean_J first");
  }
  const CoeffSeq& c = psi.coeffs();
  double acc = 0.0;
  for (int k = -c.bandwidth(); k <= c.bandwidth(); ++k) acc += static_cast<double>(k) * k * std::norm(c[k]);
  return acc;
}

UncertaintyReport uncertainty_product(const BandLimitedState& psi, std::size_t M) {
  require_normalized(psi, "uncertainty_product");
  M = nodes_for(psi, M);
  UncertaintyReport r;
  const cplx I = first_trig_moment(psi, M);
  r.circular_variance = 1.0 - std::abs(I);
  r.direction_defined = std::abs(I) > kDirectionFloor;
  r.mean_theta = r.direction_defined ? wrap_angle(std::arg(I)) : 0.0;
  const BandLimitedState centred = rotate(psi, -r.mean_theta);
  r.mean_J = mean_J(centred);

  const CoeffSeq& c = centred.coeffs();
  const int N = c.bandwidth();
  double vj = 0.0;
  for (int k = -N; k <= N; ++k) vj += (k - r.mean_J) * (k - r.mean_J) * std::norm(c[k]);
  r.var_J = vj;

  const SampledFunction s = evaluate(c, M);
  const CoeffSeq jc = CoeffSeq::from_generator(N, [&](std::int64_t k) { return (k - r.mean_J) * c[k]; });
  const SampledFunction js = evaluate(jc, M);
  std::vector<cplx> dens(M), cross(M);
  for (std::size_t j = 0; j < M; ++j) {
    dens[j] = std::norm(s.samples()[j]);
    cross[j] = std::conj(s.samples()[j]) * js.samples()[j];
  }
  r.var_theta = weighted_moment(dens, 2).value.real();
  r.schwartz_lhs = r.var_theta * r.var_J;
  r.schwartz_rhs = std::norm(weighted_moment(cross, 1).value);
  r.product = std::sqrt(r.schwartz_lhs);
  return r;
}

BandLimitedState shift_state(const BandLimitedState& psi, double theta_bar, double j_bar) {
  if (!std::isfinite(j_bar) || j_bar != std::round(j_bar)) {
    throw std::domain_error("shift_state: mean angular momentum shift must be an integer, got " +
                            std::to_string(j_bar));
  }
  return ladder(rotate(psi, theta_bar), static_cast<int>(j_bar));
}

int wrapped_gaussian_bandwidth(double eps, double cutoff) {
  if (!(eps > 0.0)) throw std::invalid_argument("wrapped_gaussian_bandwidth: eps must be positive");
  return static_cast<int>(std::ceil(std::sqrt(-4.0 * std::log(cutoff) / eps)));
}

BandLimitedState wrapped_gaussian_state(double eps, double cutoff) {
  const int N = wrapped_gaussian_bandwidth(eps, cutoff);
  return BandLimitedState::normalized_from(CoeffSeq::from_generator(N, [eps](std::int64_t k) {
    const double kk = static_cast<double>(k);
    return cplx{std::exp(-eps * kk * kk / 4.0), 0.0};
  }));
}

ProductSearch random_product_search(int bandwidth, std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> products;
  products.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    const BandLimitedState psi(random_coeffs(bandwidth, rng), true);
    products.push_back(uncertainty_product(psi).product);
  }
  std::sort(products.begin(), products.end());
  ProductSearch out{bandwidth, trials, 0.0, 0.0};
  if (!products.empty()) {
    out.min_product = products.front();
    out.median_product = products[products.size() / 2];
  }
  return out;
}

}  // namespace pgf
