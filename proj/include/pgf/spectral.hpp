#pragma once

// Fourier coefficient arithmetic on the unit circle.
//
// Basis convention: e_k(θ) = e^{ikθ}/√(2π), k ∈ ℤ. A CoeffSeq of bandwidth N
// stores the coefficients of e_{-N}..e_{N}. Sample grids are
// θ_j = -π + 2πj/M, j = 0..M-1 (the endpoint π is identified with -π).

#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace pgf {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline const double inv_sqrt_two_pi = 1.0 / std::sqrt(two_pi);
inline const double sqrt_two_pi = std::sqrt(two_pi);

/// Coefficient generator k -> c_k, used for unbounded (closed-form) sequences.
using CoeffGenerator = std::function<cplx(std::int64_t)>;

/// Reduce an angle to the half-open interval [-π, π).
double wrap_angle(double theta);

/// Node θ_j of the M-point periodic grid.
double grid_node(std::size_t j, std::size_t M);

/// Truncated two-sided Fourier coefficient array; immutable once built.
class CoeffSeq {
public:
  CoeffSeq();
  /// All-zero sequence of the given bandwidth.
  explicit CoeffSeq(int bandwidth);
  /// Takes ownership of 2N+1 coefficients ordered k = -N..N. Throws
  /// std::invalid_argument on a length mismatch or a non-finite entry.
  CoeffSeq(int bandwidth, std::vector<cplx> coeffs);

  /// The basis element e_k, stored at bandwidth max(|k|, bandwidth).
  static CoeffSeq basis(int k, int bandwidth = 0);
  static CoeffSeq from_generator(int bandwidth, const CoeffGenerator& gen);

  int bandwidth() const { return bandwidth_; }
  /// Coefficient of e_k; zero outside the stored window.
  cplx operator[](std::int64_t k) const;
  std::span<const cplx> data() const { return coeffs_; }

  /// Same function at a different bandwidth (zero padded or truncated).
  CoeffSeq resized(int bandwidth) const;
  double norm() const;
  double norm_squared() const;

  friend CoeffSeq operator+(const CoeffSeq& a, const CoeffSeq& b);
  friend CoeffSeq operator-(const CoeffSeq& a, const CoeffSeq& b);
  friend CoeffSeq operator*(cplx s, const CoeffSeq& a);

private:
  int bandwidth_ = 0;
  std::vector<cplx> coeffs_;
};

/// Point values on the periodic grid θ_j = -π + 2πj/M.
class SampledFunction {
public:
  explicit SampledFunction(std::vector<cplx> samples);
  static SampledFunction from_function(std::size_t M, const std::function<cplx(double)>& f);

  std::size_t grid_size() const { return samples_.size(); }
  std::span<const cplx> samples() const { return samples_; }
  double node(std::size_t j) const { return grid_node(j, samples_.size()); }

private:
  std::vector<cplx> samples_;
};

/// Trapezoidal analysis f_k = (2π/M) Σ_j f(θ_j) e^{-ikθ_j}/√(2π), |k| ≤ N.
/// Throws std::invalid_argument unless M ≥ 2N+1.
CoeffSeq coeffs_from_samples(const SampledFunction& f, int N);

/// Truncated Fourier synthesis on the M-point grid.
SampledFunction evaluate(const CoeffSeq& f, std::size_t M);

/// Synthesis at one angle.
cplx evaluate_at(const CoeffSeq& f, double theta);

/// Synthesis at arbitrary angles.
std::vector<cplx> evaluate_at(const CoeffSeq& f, std::span<const double> thetas);

/// (f, g) = Σ_k f_k* g_k; missing coefficients count as zero.
cplx inner_product(const CoeffSeq& f, const CoeffSeq& g);

/// Coefficients of f' (multiplication by ik).
CoeffSeq differentiate(const CoeffSeq& f);

/// Random coefficients with independent standard normal real and imaginary
/// parts, rescaled to unit norm.
CoeffSeq random_coeffs(int N, std::mt19937_64& rng);

/// Random g of bandwidth N - order times (1 + cos θ)^order, rescaled to unit
/// norm: a test function vanishing to order 2·order at θ = ±π.
CoeffSeq random_edge_vanishing_coeffs(int N, int order, std::mt19937_64& rng);

// --- growth classification -------------------------------------------------

enum class GrowthTag { RapidDecay, SquareSummable, SlowGrowth, Unclassified };

std::string to_string(GrowthTag tag);

/// Empirical growth class of a coefficient sequence, with the fitted evidence.
/// `exponent` is the slope of log|c_k| against log(1+k²) over the tail window;
/// `fit_residual` is the slope drift between the two halves of that window.
struct GrowthClass {
  GrowthTag tag = GrowthTag::Unclassified;
  double exponent = 0.0;
  double fit_residual = 0.0;

  /// True for SlowGrowth or any stronger class.
  bool tempered() const { return tag != GrowthTag::Unclassified; }
  /// True when this class is at least as strong as `other`.
  bool at_least(GrowthTag other) const;
};

struct GrowthOptions {
  int j_max = 8;
  double tail_fraction = 0.5;
  double slope_tolerance = 0.1;
};

/// Classifies c_k over the window |k| ≤ K using the tail K(1-tail_fraction) ≤ |k| ≤ K.
/// Requires K ≥ 16.
GrowthClass classify_growth(const CoeffGenerator& c, int K, const GrowthOptions& opts = {});
GrowthClass classify_growth(const CoeffSeq& c, const GrowthOptions& opts = {});

}  // namespace pgf
