#include "pgf/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <omp.h>

namespace pgf::kernels {

namespace {

constexpr std::size_t kParallelWork = 1u << 14;

// e^{-2πi m/M} for m = 0..M-1, indexed exactly so no phase is accumulated.
std::vector<cplx> twiddles(std::size_t M) {
  std::vector<cplx> w(M);
  for (std::size_t m = 0; m < M; ++m) {
    w[m] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(M));
  }
  return w;
}

// e^{-ikθ_j} with θ_j = -π + 2πj/M equals (-1)^k · w[(k·j) mod M].
inline cplx analysis_factor(long k, std::size_t j, const std::vector<cplx>& w) {
  const auto M = static_cast<long>(w.size());
  long m = (k * static_cast<long>(j)) % M;
  if (m < 0) m += M;
  const cplx t = w[static_cast<std::size_t>(m)];
  return (k % 2 == 0) ? t : -t;
}

inline cplx analyze_one(std::span<const cplx> samples, long k, const std::vector<cplx>& w) {
  cplx acc{0.0, 0.0};
  for (std::size_t j = 0; j < samples.size(); ++j) acc += samples[j] * analysis_factor(k, j, w);
  const double scale = std::sqrt(2.0 * std::numbers::pi) / static_cast<double>(samples.size());
  return acc * scale;
}

inline cplx synthesize_grid_one(std::span<const cplx> coeffs, std::size_t j,
                                const std::vector<cplx>& w) {
  const long N = static_cast<long>(coeffs.size() / 2);
  cplx acc{0.0, 0.0};
  for (long k = -N; k <= N; ++k) acc += coeffs[static_cast<std::size_t>(k + N)] * std::conj(analysis_factor(k, j, w));
  return acc / std::sqrt(2.0 * std::numbers::pi);
}

inline cplx synthesize_point_one(std::span<const cplx> coeffs, double theta) {
  const long N = static_cast<long>(coeffs.size() / 2);
  cplx acc{0.0, 0.0};
  for (long k = -N; k <= N; ++k) {
    acc += coeffs[static_cast<std::size_t>(k + N)] * std::polar(1.0, static_cast<double>(k) * theta);
  }
  return acc / std::sqrt(2.0 * std::numbers::pi);
}

inline double magnitude_or_nan(cplx v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return std::numeric_limits<double>::quiet_NaN();
  return std::abs(v);
}

}  // namespace

void analyze_serial(std::span<const cplx> samples, int N, std::span<cplx> out) {
  const auto w = twiddles(samples.size());
  for (long k = -N; k <= N; ++k) out[static_cast<std::size_t>(k + N)] = analyze_one(samples, k, w);
}

void analyze_parallel(std::span<const cplx> samples, int N, std::span<cplx> out) {
  const auto w = twiddles(samples.size());
  const long n = 2L * N + 1;
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = analyze_one(samples, i - N, w);
}

void synthesize_grid_serial(std::span<const cplx> coeffs, std::span<cplx> out) {
  const auto w = twiddles(out.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = synthesize_grid_one(coeffs, j, w);
}

void synthesize_grid_parallel(std::span<const cplx> coeffs, std::span<cplx> out) {
  const auto w = twiddles(out.size());
  const long M = static_cast<long>(out.size());
#pragma omp parallel for schedule(static)
  for (long j = 0; j < M; ++j) {
    out[static_cast<std::size_t>(j)] = synthesize_grid_one(coeffs, static_cast<std::size_t>(j), w);
  }
}

void synthesize_points_serial(std::span<const cplx> coeffs, std::span<const double> thetas,
                              std::span<cplx> out) {
  for (std::size_t i = 0; i < thetas.size(); ++i) out[i] = synthesize_point_one(coeffs, thetas[i]);
}

void synthesize_points_parallel(std::span<const cplx> coeffs, std::span<const double> thetas,
                                std::span<cplx> out) {
  const long n = static_cast<long>(thetas.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = synthesize_point_one(coeffs, thetas[static_cast<std::size_t>(i)]);
  }
}

double sup_abs_serial(const std::function<cplx(double)>& f, std::span<const double> thetas) {
  double sup = 0.0;
  for (double t : thetas) {
    const double m = magnitude_or_nan(f(t));
    if (std::isnan(m)) return m;
    sup = std::max(sup, m);
  }
  return sup;
}

double sup_abs_parallel(const std::function<cplx(double)>& f, std::span<const double> thetas) {
  const long n = static_cast<long>(thetas.size());
  std::vector<double> mags(thetas.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    mags[static_cast<std::size_t>(i)] = magnitude_or_nan(f(thetas[static_cast<std::size_t>(i)]));
  }
  double sup = 0.0;
  for (double m : mags) {
    if (std::isnan(m)) return m;
    sup = std::max(sup, m);
  }
  return sup;
}

void analyze(std::span<const cplx> samples, int N, std::span<cplx> out) {
  if (samples.size() * out.size() >= kParallelWork) {
    analyze_parallel(samples, N, out);
  } else {
    analyze_serial(samples, N, out);
  }
}

void synthesize_grid(std::span<const cplx> coeffs, std::span<cplx> out) {
  if (coeffs.size() * out.size() >= kParallelWork) {
    synthesize_grid_parallel(coeffs, out);
  } else {
    synthesize_grid_serial(coeffs, out);
  }
}

void synthesize_points(std::span<const cplx> coeffs, std::span<const double> thetas,
                       std::span<cplx> out) {
  if (coeffs.size() * thetas.size() >= kParallelWork) {
    synthesize_points_parallel(coeffs, thetas, out);
  } else {
    synthesize_points_serial(coeffs, thetas, out);
  }
}

double sup_abs(const std::function<cplx(double)>& f, std::span<const double> thetas) {
  // Evaluating a std::function is the expensive part; any non-trivial sample
  // count is worth spreading.
  if (thetas.size() >= 256) return sup_abs_parallel(f, thetas);
  return sup_abs_serial(f, thetas);
}

}  // namespace pgf::kernels
