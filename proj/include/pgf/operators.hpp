#pragma once

// Kinematic operators of the planar rotator acting on band-limited states
// (ħ = 1): angular momentum J = -i d/dθ, H = J²/2I, the rotation group
// V_y = e^{-iyJ}, the ladder group U_n = e^{inΘ}, the angle spectral measure
// E(B), and pairing forms of the angle eigenoperators Π(θ).
//
// Θ itself is never applied as a coefficient-space map; everything derived
// from it goes through point-space quadrature.

#include <functional>
#include <utility>
#include <vector>

#include "pgf/quadrature.hpp"
#include "pgf/spectral.hpp"

namespace pgf {

class BandLimitedState {
public:
  explicit BandLimitedState(CoeffSeq coeffs, bool normalized = false);
  /// Rescales to unit norm. Throws std::invalid_argument for the zero state.
  static BandLimitedState normalized_from(const CoeffSeq& coeffs);

  const CoeffSeq& coeffs() const { return coeffs_; }
  bool normalized() const { return normalized_; }
  int bandwidth() const { return coeffs_.bandwidth(); }
  double norm() const { return coeffs_.norm(); }

private:
  CoeffSeq coeffs_;
  bool normalized_;
};

/// Finite union of disjoint half-open intervals [a, b) ⊂ [-π, π).
class BorelSet {
public:
  BorelSet() = default;
  /// Throws std::invalid_argument for overlapping, empty or out-of-range intervals.
  explicit BorelSet(std::vector<std::pair<double, double>> intervals);
  static BorelSet full_circle();

  bool contains(double theta) const;
  /// Indicator on the circle with jump points assigned the mean of the one-sided limits.
  double indicator(double theta) const;
  const std::vector<std::pair<double, double>>& intervals() const { return intervals_; }

private:
  std::vector<std::pair<double, double>> intervals_;
};

/// f_k -> k f_k.
BandLimitedState angular_momentum(const BandLimitedState& f);

/// f_k -> (k²/2I) f_k. Throws std::domain_error unless I > 0.
BandLimitedState hamiltonian(const BandLimitedState& f, double moment_of_inertia);

/// V_y: f_k -> e^{-iyk} f_k, so the result is f(x - y).
BandLimitedState rotate(const BandLimitedState& f, double y);

/// U_n: the coefficient of e_k becomes f_{k-n}; bandwidth grows by |n|.
BandLimitedState ladder(const BandLimitedState& f, int n);

/// ‖U_n V_y f - e^{iyn} V_y U_n f‖.
double weyl_defect(int n, double y, const BandLimitedState& f);

struct SpectralMeasureResult {
  BandLimitedState state;
  /// ‖I_B f‖² by quadrature.
  double norm_sq_quadrature;
  /// Energy lost by truncating I_B f to the output bandwidth.
  double truncation_loss;
};

/// E(B) f = I_B f, re-projected at `output_bandwidth` from M quadrature nodes
/// (M = 0 picks 8·output_bandwidth + 8).
SpectralMeasureResult spectral_measure(const BandLimitedState& f, const BorelSet& B, int output_bandwidth,
                                       std::size_t M = 0);

/// ⟨Π(θ)φ, ψ⟩ = φ*(θ) ψ(θ).
cplx projector_pairing(double theta, const CoeffSeq& phi, const CoeffSeq& psi);

using AngleFunction = std::function<cplx(double)>;

/// ⟨F_φ, ψ⟩ = ∫ f(θ) φ*(θ) ψ(θ) dθ by trapezoid with M nodes (rounded up to a
/// multiple of 8; M = 0 picks 4N with N the larger bandwidth). Non-periodic f
/// is handled by taking the mean of f(-π) and f(π) at the seam and reporting
/// the observed order. Throws std::domain_error on a non-finite f value.
QuadratureResult borel_decomposition_pairing(const AngleFunction& fn, const CoeffSeq& phi, const CoeffSeq& psi,
                                             std::size_t M = 0);

}  // namespace pgf
