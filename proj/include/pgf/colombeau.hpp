#pragma once

// ε-nets of smooth periodic functions and their growth classification.
//
// A net (u_ε), ε ∈ (0,1], is represented by a closed-form generator
// (ε, θ, j) -> d^j/dθ^j u_ε(θ). Membership in the moderate nets E_M(T) and in
// the negligible ideal N(T) is certified empirically on a finite ε grid; the
// quotient E_M/N is never formed, equality of generalised functions is
// "difference classifies Negligible".

#include <climits>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pgf/distributions.hpp"
#include "pgf/spectral.hpp"

namespace pgf {

/// Strictly decreasing ε values in (0, 1].
class EpsGrid {
public:
  explicit EpsGrid(std::vector<double> values);
  /// {0.8, 0.6, 0.5, 0.4, 0.3, 0.25, 0.2}
  static EpsGrid verification_default();

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double smallest() const { return values_.back(); }

private:
  std::vector<double> values_;
};

/// Generator (ε, θ, derivative order) -> value.
using NetFunction = std::function<cplx(double, double, int)>;

class Net {
public:
  /// `f` must be valid for every order ≤ exact_order; higher orders fall back to
  /// central differences of f(·, exact_order). `wrap_tail(ε, j)` bounds the first
  /// omitted wrap term of a truncated comb (absent for non-comb nets).
  Net(std::string label, NetFunction f, int exact_order = INT_MAX, int comb_truncation = 0,
      std::function<double(double, int)> wrap_tail = {}, bool approximate = false);

  cplx value(double eps, double theta) const { return derivative(eps, theta, 0); }
  cplx derivative(double eps, double theta, int order) const;

  const std::string& label() const { return label_; }
  int exact_order() const { return exact_order_; }
  int comb_truncation() const { return comb_truncation_; }
  /// True when some derivative order (or the net itself) involves finite differences.
  bool approximate() const { return approximate_; }
  bool approximate_at(int order) const { return approximate_ || order > exact_order_; }
  /// Bound on the first omitted wrap term; 0 for nets without a comb.
  double omitted_wrap_term(double eps, int order) const;

  /// First-order central-difference step.
  static constexpr double fd_step = 1e-5;
  /// Step used for an m-th order central difference.
  static double fd_step_for(int m);

private:
  std::string label_;
  NetFunction f_;
  int exact_order_;
  int comb_truncation_;
  std::function<double(double, int)> wrap_tail_;
  bool approximate_;
};

/// ε-parameterised scalar (r_ε).
struct GeneralizedNumber {
  std::function<cplx(double)> generator;
  std::string label;
  cplx at(double eps) const { return generator(eps); }
};

/// λ_ε = factor/ε (factor 2 solves the Gaussian minimum-uncertainty equation).
GeneralizedNumber lambda_number(double factor = 2.0);
GeneralizedNumber constant_number(cplx c);

/// j-th θ-derivative of the line Gaussian g_ε(u) = e^{-u²/ε}/√(πε).
double gaussian_derivative(double eps, double u, int order);

/// Fourier coefficient e^{-εk²/4}/√(2π) of the wrapped Gaussian ψ_ε.
double wrapped_gaussian_coefficient(double eps, std::int64_t k);

/// ψ_ε(θ) = Σ_{|k|≤K} g_ε(θ + 2πk). Requires K ≥ 3.
Net wrapped_gaussian_net(int K = 6);

/// Ψ_ε = (d/dθ + (λ_factor/ε) θ) ψ_ε. With λ_factor = 2 this is the closed form
/// -(4√π/ε^{3/2}) Σ k e^{-(θ+2πk)²/ε}. Requires K ≥ 3.
Net residual_net(int K = 6, double lambda_factor = 2.0);

Net zero_net();
Net constant_net(cplx c);
/// x_ε(θ) = θ on [-π, π].
Net coordinate_net();
/// ε-independent net with the given Fourier coefficients.
Net spectral_net(const CoeffSeq& c, std::string label = "spectral");

Net net_add(const Net& u, const Net& v);
Net net_subtract(const Net& u, const Net& v);
Net net_multiply(const Net& u, const Net& v);
Net net_differentiate(const Net& u);
Net net_scale(const GeneralizedNumber& lambda, const Net& u);

/// (d/dθ + λ θ) u, built from the algebra operations.
Net min_uncertainty_operator(const Net& u, const GeneralizedNumber& lambda);

// --- classification -----------------------------------------------------------

struct DerivativeFit {
  int order = 0;
  /// Least-squares slope of log S_j against log(1/ε).
  double slope = 0.0;
  /// RMS deviation of that fit.
  double residual = 0.0;
  /// Largest slope between consecutive grid points.
  double max_local_slope = 0.0;
  /// Smallest integer q with S_j = O(ε^{-q}) on the grid.
  int witness_q = 0;
};

struct GrowthVerdict {
  enum class Tag { Moderate, Negligible, Neither };
  Tag tag = Tag::Neither;
  /// Moderate: sup norms bounded like ε^{-witness_q}; Negligible: q_max.
  int witness_q = 0;
  std::vector<DerivativeFit> per_derivative;
  std::vector<double> eps;
  /// sup[j][i] = sup_θ |d^j u_{ε_i}|.
  std::vector<std::vector<double>> sup;
  /// For q = 1..q_max: the largest grid ε_q below which sup|u_ε| ≤ ε^q holds.
  std::vector<std::optional<double>> negligible_from;

  bool moderate() const { return tag != Tag::Neither; }
  bool negligible() const { return tag == Tag::Negligible; }
};

std::string to_string(GrowthVerdict::Tag tag);

struct ClassifyOptions {
  int j_max = 2;
  int q_max = 8;
  /// θ samples, equally spaced over [-π, π] including both ends.
  std::size_t samples = 500;
  /// Grid points required below ε_q for the negligibility test.
  std::size_t min_tail_points = 2;
  /// Allowed increase of the local slope across the grid before growth is
  /// judged faster than any power of 1/ε.
  double curvature_tolerance = 1.0;
  /// Sup values below this are clamped before slopes are fitted, so rounding
  /// noise in a cancelled net does not read as growth. Negligibility uses raw values.
  double noise_floor = 1e-12;
  /// Limit on the first omitted wrap term at the smallest ε.
  double wrap_tolerance = 1e-15;
};

class ClassificationError : public std::runtime_error {
public:
  ClassificationError(const std::string& what, double eps, int order)
      : std::runtime_error(what), eps_(eps), order_(order) {}
  double eps() const { return eps_; }
  int order() const { return order_; }

private:
  double eps_;
  int order_;
};

/// Equally spaced angles covering [-π, π] inclusive.
std::vector<double> sup_samples(std::size_t count);

/// sup_θ |d^j u_ε| over the given samples (parallel kernel).
double net_sup(const Net& u, double eps, int order, std::span<const double> thetas);

GrowthVerdict classify_net(const Net& u, const EpsGrid& grid, const ClassifyOptions& opts = {});
GrowthVerdict classify_number(const GeneralizedNumber& r, const EpsGrid& grid, int q_max = 8,
                              std::size_t min_tail_points = 2);

// --- minimum-uncertainty residual -------------------------------------------

/// (8√π/ε^{3/2}) e^{-π²/ε} Σ_{k≥1} k (e^{-π²/ε})^{4k(k-1)}, an upper bound for
/// sup over [-π, π] of |Ψ_ε|.
double residual_bound(double eps);

struct MudecCertificate {
  GrowthVerdict verdict;
  std::vector<double> eps;
  std::vector<double> sup;
  std::vector<double> bound;
  bool bound_holds = false;
  /// verdict Negligible and sup < bound at every grid point.
  bool passed = false;
};

/// Certifies that ψ = [(ψ_ε)] solves (d/dθ + (2/ε)θ)ψ = 0 in G(T): the residual
/// net must classify Negligible and respect residual_bound on the grid.
MudecCertificate mudec_certificate(int K, const EpsGrid& grid, const ClassifyOptions& opts = {});

/// Max over samples of |Ψ_fd - Ψ| / max(|ψ'_fd| + |(2/ε)θψ|, sup|Ψ|), with ψ'_fd a
/// fourth-order central difference of the wrapped Gaussian with step h.
/// The denominator is the size of the two cancelling terms of the operator.
double residual_operator_check(int K, double eps, std::size_t samples = 500, double h = 1e-3);

// --- distributions ------------------------------------------------------------

/// Bandwidth N(ε) at which Σ_{|n|>N} |n|^order |F_n| e^{-εn²/4} < tail_tolerance.
int embedding_bandwidth(const DistributionSpectrum& F, double eps, int order = 0,
                        double tail_tolerance = 1e-14);

/// Smoothing embedding: u_ε has coefficients F_n e^{-εn²/4} (convolution with
/// the wrapped-Gaussian mollifier). δ_0 maps onto ψ_ε.
Net embed_distribution(const DistributionSpectrum& F, double tail_tolerance = 1e-14);

struct AssociationRow {
  std::string test_id;
  std::vector<double> discrepancy;  ///< d(ε) per grid point
  double fitted_order = 0.0;        ///< slope of log d against log ε on the tail; +inf if d is at rounding level
  bool monotone = false;
  double tolerance = 0.0;           ///< ε_min (1 + max|φ''|)
  bool passed = false;
};

struct AssociationReport {
  std::vector<double> eps;
  std::vector<AssociationRow> rows;
  bool passed = false;
};

struct AssociationOptions {
  std::size_t nodes = 4096;
};

/// d(ε) = |∫ u_ε* φ dθ - ⟨F, φ⟩| for each test φ.
AssociationReport association_check(const Net& u, const DistributionSpectrum& F,
                                    const std::vector<std::pair<std::string, CoeffSeq>>& tests,
                                    const EpsGrid& grid, const AssociationOptions& opts = {});

}  // namespace pgf
