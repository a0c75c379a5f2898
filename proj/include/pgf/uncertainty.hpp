#pragma once

// Circular statistics and the angle / angular-momentum uncertainty product.
//
// ΔΘ uses the linear variance on [-π, π] with the mean direction rotated to 0;
// ΔJ uses the coefficient variance. Both need an L²-normalized state.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "pgf/operators.hpp"

namespace pgf {

class UndefinedDirection : public std::domain_error {
public:
  explicit UndefinedDirection(double magnitude);
  /// |∫ e^{iθ} |ψ|² dθ|.
  double magnitude() const { return magnitude_; }

private:
  double magnitude_;
};

struct UncertaintyReport {
  double mean_theta = 0.0;
  double mean_J = 0.0;
  double var_theta = 0.0;
  double var_J = 0.0;
  double product = 0.0;
  double schwartz_lhs = 0.0;
  double schwartz_rhs = 0.0;
  /// 1 - |∫ e^{iθ}|ψ|²|, for reference only.
  double circular_variance = 0.0;
  bool direction_defined = true;

  double schwartz_slack() const { return schwartz_lhs - schwartz_rhs; }
};

/// Default quadrature size: 64(2N+1) rounded up to a multiple of 8.
std::size_t default_moment_nodes(int bandwidth);

/// ∫ e^{iθ} |ψ|² dθ (exact for band-limited ψ once M > 2N+1).
cplx first_trig_moment(const BandLimitedState& psi, std::size_t M = 0);

/// arg of the first trigonometric moment, in [-π, π).
/// Throws UndefinedDirection when its modulus is ≤ 1e-12.
double mean_direction(const BandLimitedState& psi, std::size_t M = 0);

/// Σ k |ψ_k|².
double mean_J(const BandLimitedState& psi);

/// ∫ θ² |ψ|² dθ. Requires zero mean direction (within 1e-6) unless the
/// direction is undefined; otherwise throws std::domain_error.
double variance_theta(const BandLimitedState& psi, std::size_t M = 0);

/// Σ k² |ψ_k|². Requires |mean_J| ≤ 1e-6, otherwise throws std::domain_error.
double variance_J(const BandLimitedState& psi);

/// Full report. The state is first rotated so its mean direction is 0 (a
/// state with undefined direction is left as is) and J is centred on mean_J.
UncertaintyReport uncertainty_product(const BandLimitedState& psi, std::size_t M = 0);

/// ψ_{Θ̄,J̄} = U_{J̄} V_{Θ̄} ψ. Throws std::domain_error unless J̄ is an integer.
BandLimitedState shift_state(const BandLimitedState& psi, double theta_bar, double j_bar);

/// Bandwidth at which e^{-εk²/4} drops below `cutoff`.
int wrapped_gaussian_bandwidth(double eps, double cutoff = 1e-17);

/// Normalized ψ_ε with coefficients ∝ e^{-εk²/4}.
BandLimitedState wrapped_gaussian_state(double eps, double cutoff = 1e-17);

struct ProductSearch {
  int bandwidth = 0;
  std::size_t trials = 0;
  double min_product = 0.0;
  double median_product = 0.0;
};

/// Uncertainty products of random normalized states at a fixed bandwidth.
ProductSearch random_product_search(int bandwidth, std::size_t trials, std::uint64_t seed);

}  // namespace pgf
