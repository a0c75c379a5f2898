#pragma once

// Quadrature of integrands over one period [-π, π].

#include <cstddef>
#include <functional>
#include <span>

#include "pgf/spectral.hpp"

namespace pgf {

struct QuadratureResult {
  /// Best estimate: the M-node trapezoid when it has converged spectrally,
  /// otherwise its Richardson (Romberg) extrapolation.
  cplx value;
  cplx trapezoid;
  double error_estimate = 0.0;
  /// Observed algebraic order of the plain trapezoid; +inf when spectral.
  double observed_order = 0.0;
  std::size_t nodes = 0;
};

/// Composite trapezoid over [-π, π] from samples on the periodic M-grid, then a
/// convergence check against the nested M/2, M/4, M/8 grids. Sample 0 (θ = -π)
/// must hold the average of the integrand's one-sided limits at ±π.
/// M must be a positive multiple of 8.
QuadratureResult trapezoid_richardson(std::span<const cplx> samples);

/// ∫_{-π}^{π} θⁿ e^{ijθ} dθ in closed form (repeated integration by parts).
cplx power_exponential_moment(int n, std::int64_t j);

/// ∫_{-π}^{π} θⁿ φ*(θ) ψ(θ) dθ summed exactly over the coefficient pairs.
cplx exact_power_moment(int n, const CoeffSeq& phi, const CoeffSeq& psi);

/// Smallest multiple of 8 that is ≥ m.
std::size_t round_up_to_eight(std::size_t m);

}  // namespace pgf
