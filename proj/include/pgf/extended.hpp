#pragma once

// Trapezoidal analysis carried out in 150-digit arithmetic, for coefficients
// far below the double-precision noise floor of the sampled sum (~1e-17).

#include <cstddef>
#include <vector>

namespace pgf {

/// Trapezoidal coefficients c_k, |k| ≤ N, of the wrapped Gaussian ψ_ε
/// (wrap terms |m| ≤ K) from M equally spaced samples, rounded to double.
/// Imaginary parts vanish by symmetry and are dropped.
std::vector<double> wrapped_gaussian_quadrature_extended(double eps, int N, std::size_t M, int K = 6);

}  // namespace pgf
