#include "pgf/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pgf {

BandLimitedState::BandLimitedState(CoeffSeq coeffs, bool normalized)
    : coeffs_(std::move(coeffs)), normalized_(normalized) {
  if (normalized_ && std::abs(coeffs_.norm_squared() - 1.0) > 1e-10) {
    throw std::invalid_argument("BandLimitedState: flagged normalized but (f,f) = " +
                                std::to_string(coeffs_.norm_squared()));
  }
}

BandLimitedState BandLimitedState::normalized_from(const CoeffSeq& coeffs) {
  const double n = coeffs.norm();
  if (n == 0.0) throw std::invalid_argument("BandLimitedState: cannot normalize the zero state");
  return BandLimitedState(cplx{1.0 / n, 0.0} * coeffs, true);
}

// --- BorelSet ---------------------------------------------------------------

BorelSet::BorelSet(std::vector<std::pair<double, double>> intervals) : intervals_(std::move(intervals)) {
  std::sort(intervals_.begin(), intervals_.end());
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto [a, b] = intervals_[i];
    if (!(a >= -pi && b <= pi && a < b)) {
      throw std::invalid_argument("BorelSet: interval must satisfy -π ≤ a < b ≤ π");
    }
    if (i > 0 && a < intervals_[i - 1].second) throw std::invalid_argument("BorelSet: intervals overlap");
  }
}

BorelSet BorelSet::full_circle() { return BorelSet({{-pi, pi}}); }

bool BorelSet::contains(double theta) const {
  const double t = wrap_angle(theta);
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [t](const auto& iv) { return iv.first <= t && t < iv.second; });
}

double BorelSet::indicator(double theta) const {
  const double t = wrap_angle(theta);
  const double right = contains(t) ? 1.0 : 0.0;
  // The left limit at -π is the left limit at π.
  const double u = (t == -pi) ? pi : t;
  const bool left_in = std::any_of(intervals_.begin(), intervals_.end(),
                                   [u](const auto& iv) { return iv.first < u && u <= iv.second; });
  return 0.5 * (right + (left_in ? 1.0 : 0.0));
}

// --- operators ----------------------------------------------------------------

namespace {

BandLimitedState diagonal(const BandLimitedState& f, const std::function<cplx(std::int64_t)>& d,
                          bool keeps_norm) {
  const CoeffSeq& c = f.coeffs();
  CoeffSeq out = CoeffSeq::from_generator(c.bandwidth(), [&](std::int64_t k) { return d(k) * c[k]; });
  // Unitary maps keep the flag; rounding stays far inside the 1e-10 window.
  return BandLimitedState(std::move(out), keeps_norm && f.normalized());
}

}  // namespace

BandLimitedState angular_momentum(const BandLimitedState& f) {
  return diagonal(f, [](std::int64_t k) { return cplx{static_cast<double>(k), 0.0}; }, false);
}

BandLimitedState hamiltonian(const BandLimitedState& f, double moment_of_inertia) {
  if (!(moment_of_inertia > 0.0)) throw std::domain_error("hamiltonian: moment of inertia must be positive");
  const double scale = 1.0 / (2.0 * moment_of_inertia);
  return diagonal(f, [scale](std::int64_t k) { return cplx{scale * static_cast<double>(k * k), 0.0}; }, false);
}

BandLimitedState rotate(const BandLimitedState& f, double y) {
  return diagonal(f, [y](std::int64_t k) { return std::polar(1.0, -y * static_cast<double>(k)); }, true);
}

BandLimitedState ladder(const BandLimitedState& f, int n) {
  const CoeffSeq& c = f.coeffs();
  const int N = c.bandwidth() + std::abs(n);
  CoeffSeq out = CoeffSeq::from_generator(N, [&](std::int64_t k) { return c[k - n]; });
  return BandLimitedState(std::move(out), f.normalized());
}

double weyl_defect(int n, double y, const BandLimitedState& f) {
  const BandLimitedState lhs = ladder(rotate(f, y), n);
  const BandLimitedState rhs = ladder(f, n);
  const CoeffSeq rhs_rot = rotate(rhs, y).coeffs();
  const cplx phase = std::polar(1.0, y * static_cast<double>(n));
  return (lhs.coeffs() - phase * rhs_rot).norm();
}

SpectralMeasureResult spectral_measure(const BandLimitedState& f, const BorelSet& B, int output_bandwidth,
                                       std::size_t M) {
  if (output_bandwidth < 0) throw std::invalid_argument("spectral_measure: negative output bandwidth");
  if (M == 0) M = static_cast<std::size_t>(8 * std::max(output_bandwidth, f.bandwidth()) + 8);
  if (M < static_cast<std::size_t>(2 * output_bandwidth + 1)) {
    throw std::invalid_argument("spectral_measure: too few quadrature nodes for the output bandwidth");
  }
  const SampledFunction fs = evaluate(f.coeffs(), M);
  std::vector<cplx> masked(M);
  double norm_sq = 0.0;
  for (std::size_t j = 0; j < M; ++j) {
    const double w = B.indicator(grid_node(j, M));
    masked[j] = w * fs.samples()[j];
    // I_B² = I_B, so the jump weight enters linearly.
    norm_sq += w * std::norm(fs.samples()[j]);
  }
  norm_sq *= two_pi / static_cast<double>(M);
  CoeffSeq projected = coeffs_from_samples(SampledFunction(std::move(masked)), output_bandwidth);
  const double kept = projected.norm_squared();
  return {BandLimitedState(std::move(projected)), norm_sq, norm_sq - kept};
}

cplx projector_pairing(double theta, const CoeffSeq& phi, const CoeffSeq& psi) {
  return std::conj(evaluate_at(phi, theta)) * evaluate_at(psi, theta);
}

QuadratureResult borel_decomposition_pairing(const AngleFunction& fn, const CoeffSeq& phi, const CoeffSeq& psi,
                                             std::size_t M) {
  if (M == 0) M = static_cast<std::size_t>(4 * std::max(phi.bandwidth(), psi.bandwidth()));
  M = round_up_to_eight(std::max<std::size_t>(M, 8));
  const SampledFunction a = evaluate(phi, M);
  const SampledFunction b = evaluate(psi, M);
  std::vector<cplx> integrand(M);
  for (std::size_t j = 0; j < M; ++j) {
    const double t = grid_node(j, M);
    const cplx w = (j == 0) ? 0.5 * (fn(-pi) + fn(pi)) : fn(t);
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
      throw std::domain_error("borel_decomposition_pairing: non-finite function value at θ = " +
                              std::to_string(t));
    }
    integrand[j] = w * std::conj(a.samples()[j]) * b.samples()[j];
  }
  return trapezoid_richardson(integrand);
}

}  // namespace pgf
