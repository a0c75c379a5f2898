#pragma once

// Periodic distributions represented by their (slow-growth) Fourier
// coefficients against e_n.
//
// Pairing convention: ⟨F, φ⟩ = Σ_n F_n* φ_n. It coincides with the L² inner
// product on embedded functions, and δ_θ (coefficients e^{-inθ}/√(2π))
// reproduces point values: ⟨δ_θ, φ⟩ = φ(θ).

#include <optional>
#include <string>

#include "pgf/spectral.hpp"

namespace pgf {

class DistributionSpectrum {
public:
  enum class Kind { Dirac, Generator, Window };

  /// δ_θ, θ reduced to [-π, π).
  static DistributionSpectrum dirac(double theta);
  /// Closed-form coefficients; the growth class is fitted over |n| ≤ classify_window.
  /// Throws std::invalid_argument when the sequence is not of slow growth.
  static DistributionSpectrum from_generator(CoeffGenerator gen, std::string label,
                                             int classify_window = 64);
  /// Finitely supported coefficients (a trigonometric polynomial).
  static DistributionSpectrum from_window(const CoeffSeq& coeffs, std::string label = "window");
  static DistributionSpectrum zero();

  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  const GrowthClass& growth() const { return growth_; }
  /// Support location when kind() == Dirac.
  std::optional<double> dirac_angle() const;
  /// Stored bandwidth when kind() == Window.
  std::optional<int> window_bandwidth() const;

  cplx coefficient(std::int64_t n) const { return gen_(n); }
  const CoeffGenerator& generator() const { return gen_; }
  /// Coefficients restricted to |n| ≤ N.
  CoeffSeq window(int N) const { return CoeffSeq::from_generator(N, gen_); }

private:
  DistributionSpectrum(Kind kind, CoeffGenerator gen, GrowthClass growth, std::string label);

  Kind kind_;
  CoeffGenerator gen_;
  GrowthClass growth_;
  std::string label_;
  double dirac_angle_ = 0.0;
  std::optional<CoeffSeq> window_;
};

/// Dirac coefficient e^{-inθ}/√(2π).
cplx dirac_coefficient(double theta, std::int64_t n);

struct PairingResult {
  cplx value;
  int truncation_bandwidth = 0;
  double tail_estimate = 0.0;
};

/// ⟨F, φ⟩ for band-limited φ: a finite sum, so tail_estimate is zero.
PairingResult pair(const DistributionSpectrum& F, const CoeffSeq& phi);

/// Coefficients F_n e^{-inθ}; ⟨translate(F,θ), φ⟩ = ⟨F, φ(·+θ)⟩.
DistributionSpectrum translate(const DistributionSpectrum& F, double theta);

/// Reflection x -> -x (coefficients F_{-n}).
DistributionSpectrum reflect(const DistributionSpectrum& F);

/// Distributional derivative; ⟨F', φ⟩ = -⟨F, φ'⟩.
DistributionSpectrum derivative(const DistributionSpectrum& F);

/// a·F + b·G.
DistributionSpectrum linear_combination(cplx a, const DistributionSpectrum& F, cplx b,
                                        const DistributionSpectrum& G);

struct ThetaOptions {
  /// Bandwidth at which xφ is re-projected; 0 selects 8N + 16.
  int enlarged_bandwidth = 0;
  /// Re-projection residual above which the Gibbs warning is raised.
  double residual_tolerance = 1e-8;
};

struct ThetaPairing {
  PairingResult pairing;
  /// sup |xφ - P_L(xφ)| on the staggered check grid.
  double reprojection_residual = 0.0;
  bool gibbs_warning = false;
};

/// ⟨ΘF, φ⟩ = ⟨F, xφ⟩ with xφ formed in point space on [-π, π] and re-projected.
/// The sawtooth x jumps at ±π, so the result is only accurate when φ vanishes
/// to high order there; otherwise gibbs_warning is set.
ThetaPairing apply_theta(const DistributionSpectrum& F, const CoeffSeq& phi, const ThetaOptions& opts = {});

/// Generalised sesquilinear product P(F, G)(x) = Σ_n F_n* G_n e^{inx}, i.e.
/// coefficient √(2π) F_n* G_n against e_n. Conjugate-linear in F, linear in G;
/// P(δ_θ, δ_θ') = δ_{θ'-θ}. Both operands must be of slow growth.
DistributionSpectrum sesquilinear_product(const DistributionSpectrum& F, const DistributionSpectrum& G);

}  // namespace pgf
