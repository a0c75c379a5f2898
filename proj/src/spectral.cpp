#include "pgf/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pgf/kernels.hpp"

namespace pgf {

double wrap_angle(double theta) {
  double r = std::remainder(theta, two_pi);  // in [-π, π]
  if (r >= pi) r -= two_pi;
  return r;
}

double grid_node(std::size_t j, std::size_t M) {
  return -pi + two_pi * static_cast<double>(j) / static_cast<double>(M);
}

// --- CoeffSeq ---------------------------------------------------------------

CoeffSeq::CoeffSeq() : CoeffSeq(0) {}

CoeffSeq::CoeffSeq(int bandwidth) {
  if (bandwidth < 0) throw std::invalid_argument("CoeffSeq: negative bandwidth");
  bandwidth_ = bandwidth;
  coeffs_.assign(static_cast<std::size_t>(2 * bandwidth + 1), cplx{0.0, 0.0});
}

CoeffSeq::CoeffSeq(int bandwidth, std::vector<cplx> coeffs) {
  if (bandwidth < 0) throw std::invalid_argument("CoeffSeq: negative bandwidth");
  if (coeffs.size() != static_cast<std::size_t>(2 * bandwidth + 1)) {
    throw std::invalid_argument("CoeffSeq: expected " + std::to_string(2 * bandwidth + 1) +
                                " coefficients, got " + std::to_string(coeffs.size()));
  }
  for (const auto& c : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw std::invalid_argument("CoeffSeq: non-finite coefficient");
    }
  }
  bandwidth_ = bandwidth;
  coeffs_ = std::move(coeffs);
}

CoeffSeq CoeffSeq::basis(int k, int bandwidth) {
  const int N = std::max(std::abs(k), bandwidth);
  std::vector<cplx> c(static_cast<std::size_t>(2 * N + 1), cplx{0.0, 0.0});
  c[static_cast<std::size_t>(k + N)] = 1.0;
  return CoeffSeq(N, std::move(c));
}

CoeffSeq CoeffSeq::from_generator(int bandwidth, const CoeffGenerator& gen) {
  std::vector<cplx> c(static_cast<std::size_t>(2 * bandwidth + 1));
  for (int k = -bandwidth; k <= bandwidth; ++k) c[static_cast<std::size_t>(k + bandwidth)] = gen(k);
  return CoeffSeq(bandwidth, std::move(c));
}

cplx CoeffSeq::operator[](std::int64_t k) const {
  if (k < -bandwidth_ || k > bandwidth_) return {0.0, 0.0};
  return coeffs_[static_cast<std::size_t>(k + bandwidth_)];
}

CoeffSeq CoeffSeq::resized(int bandwidth) const {
  return from_generator(bandwidth, [this](std::int64_t k) { return (*this)[k]; });
}

double CoeffSeq::norm_squared() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::norm(c);
  return s;
}

double CoeffSeq::norm() const { return std::sqrt(norm_squared()); }

CoeffSeq operator+(const CoeffSeq& a, const CoeffSeq& b) {
  const int N = std::max(a.bandwidth(), b.bandwidth());
  return CoeffSeq::from_generator(N, [&](std::int64_t k) { return a[k] + b[k]; });
}

CoeffSeq operator-(const CoeffSeq& a, const CoeffSeq& b) {
  const int N = std::max(a.bandwidth(), b.bandwidth());
  return CoeffSeq::from_generator(N, [&](std::int64_t k) { return a[k] - b[k]; });
}

CoeffSeq operator*(cplx s, const CoeffSeq& a) {
  return CoeffSeq::from_generator(a.bandwidth(), [&](std::int64_t k) { return s * a[k]; });
}

// --- SampledFunction --------------------------------------------------------

SampledFunction::SampledFunction(std::vector<cplx> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw std::invalid_argument("SampledFunction: empty grid");
}

SampledFunction SampledFunction::from_function(std::size_t M, const std::function<cplx(double)>& f) {
  std::vector<cplx> s(M);
  for (std::size_t j = 0; j < M; ++j) s[j] = f(grid_node(j, M));
  return SampledFunction(std::move(s));
}

// --- transforms -------------------------------------------------------------

CoeffSeq coeffs_from_samples(const SampledFunction& f, int N) {
  if (N < 0) throw std::invalid_argument("coeffs_from_samples: negative bandwidth");
  const std::size_t needed = static_cast<std::size_t>(2 * N + 1);
  if (f.grid_size() < needed) {
    throw std::invalid_argument("coeffs_from_samples: grid of " + std::to_string(f.grid_size()) +
                                " points cannot resolve bandwidth " + std::to_string(N) +
                                " (need at least " + std::to_string(needed) + ")");
  }
  std::vector<cplx> out(needed);
  kernels::analyze(f.samples(), N, out);
  return CoeffSeq(N, std::move(out));
}

SampledFunction evaluate(const CoeffSeq& f, std::size_t M) {
  if (M == 0) throw std::invalid_argument("evaluate: grid size must be positive");
  std::vector<cplx> out(M);
  kernels::synthesize_grid(f.data(), out);
  return SampledFunction(std::move(out));
}

cplx evaluate_at(const CoeffSeq& f, double theta) {
  cplx out;
  kernels::synthesize_points_serial(f.data(), std::span<const double>(&theta, 1), std::span<cplx>(&out, 1));
  return out;
}

std::vector<cplx> evaluate_at(const CoeffSeq& f, std::span<const double> thetas) {
  std::vector<cplx> out(thetas.size());
  kernels::synthesize_points(f.data(), thetas, out);
  return out;
}

cplx inner_product(const CoeffSeq& f, const CoeffSeq& g) {
  const int N = std::min(f.bandwidth(), g.bandwidth());
  cplx acc{0.0, 0.0};
  for (int k = -N; k <= N; ++k) acc += std::conj(f[k]) * g[k];
  return acc;
}

CoeffSeq differentiate(const CoeffSeq& f) {
  return CoeffSeq::from_generator(f.bandwidth(), [&](std::int64_t k) {
    return cplx{0.0, static_cast<double>(k)} * f[k];
  });
}

CoeffSeq random_coeffs(int N, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<cplx> c(static_cast<std::size_t>(2 * N + 1));
  for (auto& x : c) {
    const double re = normal(rng);
    const double im = normal(rng);
    x = {re, im};
  }
  CoeffSeq raw(N, std::move(c));
  return cplx{1.0 / raw.norm(), 0.0} * raw;
}

CoeffSeq random_edge_vanishing_coeffs(int N, int order, std::mt19937_64& rng) {
  if (order < 0 || order > N) throw std::invalid_argument("random_edge_vanishing_coeffs: need 0 ≤ order ≤ N");
  // Plain trigonometric coefficients of (1 + cos θ)^order.
  std::vector<double> w{1.0};
  for (int p = 0; p < order; ++p) {
    std::vector<double> next(w.size() + 2, 0.0);
    for (std::size_t i = 0; i < w.size(); ++i) {
      next[i] += 0.5 * w[i];
      next[i + 1] += w[i];
      next[i + 2] += 0.5 * w[i];
    }
    w = std::move(next);
  }
  const CoeffSeq g = random_coeffs(N - order, rng);
  const CoeffSeq prod = CoeffSeq::from_generator(N, [&](std::int64_t k) {
    cplx acc{0.0, 0.0};
    for (int m = -order; m <= order; ++m) acc += w[static_cast<std::size_t>(m + order)] * g[k - m];
    return acc;
  });
  return cplx{1.0 / prod.norm(), 0.0} * prod;
}

// --- growth classification --------------------------------------------------

std::string to_string(GrowthTag tag) {
  switch (tag) {
    case GrowthTag::RapidDecay: return "RapidDecay";
    case GrowthTag::SquareSummable: return "SquareSummable";
    case GrowthTag::SlowGrowth: return "SlowGrowth";
    case GrowthTag::Unclassified: return "Unclassified";
  }
  return "Unclassified";
}

bool GrowthClass::at_least(GrowthTag other) const {
  // Enumerators are declared strongest first.
  return static_cast<int>(tag) <= static_cast<int>(other);
}

namespace {

struct Point {
  double x;
  double y;
};

// Least-squares slope; NaN when the abscissae do not vary.
double fit_slope(const std::vector<Point>& pts) {
  if (pts.size() < 2) return std::nan("");
  double mx = 0.0, my = 0.0;
  for (const auto& p : pts) {
    mx += p.x;
    my += p.y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : pts) {
    sxx += (p.x - mx) * (p.x - mx);
    sxy += (p.x - mx) * (p.y - my);
  }
  if (sxx <= 0.0) return std::nan("");
  return sxy / sxx;
}

}  // namespace

GrowthClass classify_growth(const CoeffGenerator& c, int K, const GrowthOptions& opts) {
  if (K < 16) throw std::invalid_argument("classify_growth: window K must be at least 16");
  if (!(opts.tail_fraction > 0.0 && opts.tail_fraction < 1.0)) {
    throw std::invalid_argument("classify_growth: tail_fraction must lie in (0,1)");
  }
  const int k_lo = static_cast<int>(std::ceil(K * (1.0 - opts.tail_fraction)));
  const int k_mid = (k_lo + K) / 2;

  std::vector<Point> all, first, second;
  for (int k = k_lo; k <= K; ++k) {
    for (int sign : {-1, 1}) {
      const cplx v = c(sign * k);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        return {GrowthTag::Unclassified, std::nan(""), std::nan("")};
      }
      const double m = std::abs(v);
      if (m == 0.0) continue;
      const Point p{std::log1p(static_cast<double>(k) * k), std::log(m)};
      all.push_back(p);
      if (k <= k_mid) first.push_back(p);
      if (k >= k_mid) second.push_back(p);
    }
  }

  const double s = fit_slope(all);
  if (std::isnan(s)) {
    // Empty or single-index tail: the sequence is (numerically) finitely supported.
    return {GrowthTag::RapidDecay, 0.0, 0.0};
  }
  double s1 = fit_slope(first);
  double s2 = fit_slope(second);
  if (std::isnan(s1)) s1 = s;
  if (std::isnan(s2)) s2 = s;
  const double drift = s2 - s1;
  const double steepest_late = std::max(s1, s2);

  GrowthClass out;
  out.exponent = s;
  out.fit_residual = std::abs(drift);
  if (steepest_late < -static_cast<double>(opts.j_max)) {
    out.tag = GrowthTag::RapidDecay;
  } else if (drift > opts.slope_tolerance) {
    out.tag = GrowthTag::Unclassified;
  } else if (steepest_late < -0.25 - opts.slope_tolerance) {
    out.tag = GrowthTag::SquareSummable;
  } else {
    out.tag = GrowthTag::SlowGrowth;
  }
  return out;
}

GrowthClass classify_growth(const CoeffSeq& c, const GrowthOptions& opts) {
  return classify_growth([&c](std::int64_t k) { return c[k]; }, c.bandwidth(), opts);
}

}  // namespace pgf
