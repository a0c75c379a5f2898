#include "pgf/extended.hpp"

#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace pgf {

namespace {
using real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<150>>;
}

std::vector<double> wrapped_gaussian_quadrature_extended(double eps, int N, std::size_t M, int K) {
  if (!(eps > 0.0)) throw std::invalid_argument("wrapped_gaussian_quadrature_extended: eps must be positive");
  if (M < static_cast<std::size_t>(2 * N + 1)) {
    throw std::invalid_argument("wrapped_gaussian_quadrature_extended: need M ≥ 2N+1");
  }
  const real pi = boost::math::constants::pi<real>();
  const real e = eps;
  const real norm = 1 / sqrt(pi * e);
  std::vector<real> theta(M), psi(M);
  for (std::size_t j = 0; j < M; ++j) {
    theta[j] = -pi + 2 * pi * j / M;
    real acc = 0;
    for (int m = -K; m <= K; ++m) {
      const real u = theta[j] + 2 * pi * m;
      acc += exp(-u * u / e);
    }
    psi[j] = acc * norm;
  }
  // ψ_ε is even, so c_k = (2π/M)/√(2π) Σ_j ψ(θ_j) cos(kθ_j).
  const real scale = sqrt(2 * pi) / M;
  std::vector<double> out(static_cast<std::size_t>(2 * N + 1));
  for (int k = 0; k <= N; ++k) {
    real acc = 0;
    for (std::size_t j = 0; j < M; ++j) acc += psi[j] * cos(k * theta[j]);
    const double c = static_cast<double>(acc * scale);
    out[static_cast<std::size_t>(N + k)] = c;
    out[static_cast<std::size_t>(N - k)] = c;
  }
  return out;
}

}  // namespace pgf
