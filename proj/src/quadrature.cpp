#include "pgf/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pgf {

std::size_t round_up_to_eight(std::size_t m) { return ((m + 7) / 8) * 8; }

QuadratureResult trapezoid_richardson(std::span<const cplx> samples) {
  const std::size_t M = samples.size();
  if (M == 0 || M % 8 != 0) {
    throw std::invalid_argument("trapezoid_richardson: node count must be a positive multiple of 8");
  }
  std::array<cplx, 4> T{};  // T[l] uses every 2^l-th node
  for (std::size_t l = 0; l < 4; ++l) {
    const std::size_t stride = std::size_t{1} << l;
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < M; j += stride) acc += samples[j];
    T[l] = acc * (two_pi * static_cast<double>(stride) / static_cast<double>(M));
  }
  double scale = 0.0;
  for (const auto& s : samples) scale += std::abs(s);
  scale *= two_pi / static_cast<double>(M);

  QuadratureResult out;
  out.trapezoid = T[0];
  out.nodes = M;
  const double d01 = std::abs(T[0] - T[1]);
  const double d12 = std::abs(T[1] - T[2]);
  if (d01 <= 1e-13 * std::max(scale, 1e-300)) {
    out.value = T[0];
    out.error_estimate = d01;
    out.observed_order = std::numeric_limits<double>::infinity();
    return out;
  }
  const double p = std::log2(d12 / d01);
  out.observed_order = p;
  if (std::isfinite(p) && std::abs(p - 2.0) <= 0.5) {
    // Romberg table, coarsest grid first.
    std::array<std::array<cplx, 4>, 4> R{};
    for (std::size_t i = 0; i < 4; ++i) R[i][0] = T[3 - i];
    for (std::size_t k = 1; k < 4; ++k) {
      const double f = std::pow(4.0, static_cast<double>(k)) - 1.0;
      for (std::size_t i = k; i < 4; ++i) R[i][k] = R[i][k - 1] + (R[i][k - 1] - R[i - 1][k - 1]) / f;
    }
    out.value = R[3][3];
    out.error_estimate = std::abs(R[3][3] - R[3][2]);
  } else {
    out.value = T[0];
    out.error_estimate = (std::isfinite(p) && p > 0.0) ? d01 / (std::pow(2.0, p) - 1.0) : d01;
  }
  return out;
}

cplx power_exponential_moment(int n, std::int64_t j) {
  if (n < 0) throw std::invalid_argument("power_exponential_moment: negative power");
  if (j == 0) {
    // ∫ θⁿ dθ vanishes for odd n.
    if (n % 2 == 1) return {0.0, 0.0};
    return {2.0 * std::pow(pi, n + 1) / (n + 1), 0.0};
  }
  const double sign = (j % 2 == 0) ? 1.0 : -1.0;  // e^{±ijπ}
  const cplx ij{0.0, static_cast<double>(j)};
  cplx I{0.0, 0.0};  // n = 0 with j ≠ 0
  for (int m = 1; m <= n; ++m) {
    const double boundary = (m % 2 == 1) ? 2.0 * std::pow(pi, m) : 0.0;  // πᵐ - (-π)ᵐ
    I = (sign * boundary - static_cast<double>(m) * I) / ij;
  }
  return I;
}

cplx exact_power_moment(int n, const CoeffSeq& phi, const CoeffSeq& psi) {
  const int P = phi.bandwidth();
  const int Q = psi.bandwidth();
  cplx acc{0.0, 0.0};
  for (int k = -P; k <= P; ++k) {
    const cplx a = std::conj(phi[k]);
    if (a == cplx{0.0, 0.0}) continue;
    for (int m = -Q; m <= Q; ++m) acc += a * psi[m] * power_exponential_moment(n, m - k);
  }
  return acc / two_pi;
}

}  // namespace pgf
