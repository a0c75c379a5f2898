#pragma once

// Dense transform and sampling kernels.
//
// Every kernel has a serial reference and an OpenMP variant. The parallel
// variants split work over output indices only and keep each inner sum in
// the serial order, so both produce bit-identical results.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>

namespace pgf::kernels {

using cplx = std::complex<double>;

/// out[k+N] = (2π/M) Σ_j samples[j] e^{-ikθ_j}/√(2π) on the grid θ_j = -π + 2πj/M.
void analyze_serial(std::span<const cplx> samples, int N, std::span<cplx> out);
void analyze_parallel(std::span<const cplx> samples, int N, std::span<cplx> out);

/// out[j] = Σ_k coeffs[k+N] e^{ikθ_j}/√(2π) on the M = out.size() grid.
void synthesize_grid_serial(std::span<const cplx> coeffs, std::span<cplx> out);
void synthesize_grid_parallel(std::span<const cplx> coeffs, std::span<cplx> out);

/// out[i] = Σ_k coeffs[k+N] e^{ikθ_i}/√(2π) at arbitrary angles.
void synthesize_points_serial(std::span<const cplx> coeffs, std::span<const double> thetas,
                              std::span<cplx> out);
void synthesize_points_parallel(std::span<const cplx> coeffs, std::span<const double> thetas,
                                std::span<cplx> out);

/// max_i |f(thetas[i])|. Returns NaN if any value is non-finite.
double sup_abs_serial(const std::function<cplx(double)>& f, std::span<const double> thetas);
double sup_abs_parallel(const std::function<cplx(double)>& f, std::span<const double> thetas);

// Dispatchers used by the library: parallel above a work threshold.
void analyze(std::span<const cplx> samples, int N, std::span<cplx> out);
void synthesize_grid(std::span<const cplx> coeffs, std::span<cplx> out);
void synthesize_points(std::span<const cplx> coeffs, std::span<const double> thetas,
                       std::span<cplx> out);
double sup_abs(const std::function<cplx(double)>& f, std::span<const double> thetas);

}  // namespace pgf::kernels
