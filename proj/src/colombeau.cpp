#include "pgf/colombeau.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "pgf/kernels.hpp"

namespace pgf {

// --- EpsGrid ------------------------------------------------------------------

EpsGrid::EpsGrid(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("EpsGrid: empty grid");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double e = values_[i];
    if (!(e > 0.0 && e <= 1.0)) throw std::invalid_argument("EpsGrid: values must lie in (0, 1]");
    if (i > 0 && !(e < values_[i - 1])) throw std::invalid_argument("EpsGrid: values must be strictly decreasing");
  }
}

EpsGrid EpsGrid::verification_default() { return EpsGrid({0.8, 0.6, 0.5, 0.4, 0.3, 0.25, 0.2}); }

// --- Net ----------------------------------------------------------------------

Net::Net(std::string label, NetFunction f, int exact_order, int comb_truncation,
         std::function<double(double, int)> wrap_tail, bool approximate)
    : label_(std::move(label)),
      f_(std::move(f)),
      exact_order_(std::max(exact_order, 0)),
      comb_truncation_(comb_truncation),
      wrap_tail_(std::move(wrap_tail)),
      approximate_(approximate) {}

double Net::fd_step_for(int m) {
  if (m <= 1) return fd_step;
  return std::max(fd_step, std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (m + 2)));
}

cplx Net::derivative(double eps, double theta, int order) const {
  if (order < 0) throw std::invalid_argument("Net::derivative: negative order");
  if (order <= exact_order_) return f_(eps, theta, order);
  // m-th central difference of the highest exact derivative.
  const int m = order - exact_order_;
  const double h = fd_step_for(m);
  cplx acc{0.0, 0.0};
  double binom = 1.0;
  for (int i = 0; i <= m; ++i) {
    const double offset = (0.5 * m - i) * h;
    acc += ((i % 2 == 0) ? binom : -binom) * f_(eps, theta + offset, exact_order_);
    binom = binom * (m - i) / (i + 1);
  }
  return acc / std::pow(h, m);
}

double Net::omitted_wrap_term(double eps, int order) const {
  return wrap_tail_ ? wrap_tail_(eps, order) : 0.0;
}

GeneralizedNumber lambda_number(double factor) {
  std::ostringstream os;
  os << factor << "/eps";
  return {[factor](double eps) { return cplx{factor / eps, 0.0}; }, os.str()};
}

GeneralizedNumber constant_number(cplx c) {
  return {[c](double) { return c; }, "const"};
}

// --- Gaussian building blocks -------------------------------------------------

double gaussian_derivative(double eps, double u, int order) {
  const double s = std::sqrt(eps);
  const double x = u / s;
  // Physicists' Hermite recursion: d^j e^{-x²}/dx^j = (-1)^j H_j(x) e^{-x²}.
  double h_prev = 1.0;
  double h = 1.0;
  if (order >= 1) h = 2.0 * x;
  for (int n = 1; n < order; ++n) {
    const double next = 2.0 * x * h - 2.0 * n * h_prev;
    h_prev = h;
    h = next;
  }
  const double sign = (order % 2 == 0) ? 1.0 : -1.0;
  return sign * h * std::pow(s, -order) * std::exp(-x * x) / std::sqrt(pi * eps);
}

double wrapped_gaussian_coefficient(double eps, std::int64_t k) {
  const double kk = static_cast<double>(k);
  return std::exp(-eps * kk * kk / 4.0) * inv_sqrt_two_pi;
}

namespace {

void require_wrap(int K) {
  if (K < 3) throw std::invalid_argument("wrap truncation K must be at least 3");
}

// Comb sums are taken as the k = 0 term plus (k, -k) pairs so that odd and even
// symmetries in θ survive rounding exactly.
template <class Term>
double comb_sum(int K, Term term) {
  double acc = term(0);
  for (int k = 1; k <= K; ++k) acc += term(k) + term(-k);
  return acc;
}

}  // namespace

Net wrapped_gaussian_net(int K) {
  require_wrap(K);
  auto f = [K](double eps, double theta, int order) {
    return cplx{comb_sum(K, [&](int k) { return gaussian_derivative(eps, theta + two_pi * k, order); }), 0.0};
  };
  auto tail = [K](double eps, int order) {
    return 2.0 * std::abs(gaussian_derivative(eps, (2 * K + 1) * pi, order));
  };
  return Net("wrapped_gaussian", f, INT_MAX, K, tail);
}

Net residual_net(int K, double lambda_factor) {
  require_wrap(K);
  // Each wrap term is (αθ + β_k) g(θ + 2πk) with α = (λ - 2)/ε, β_k = -4πk/ε.
  auto f = [K, lambda_factor](double eps, double theta, int order) {
    const double alpha = (lambda_factor - 2.0) / eps;
    return cplx{comb_sum(K,
                         [&](int k) {
                           const double u = theta + two_pi * k;
                           const double beta = -4.0 * pi * k / eps;
                           double v = (alpha * theta + beta) * gaussian_derivative(eps, u, order);
                           if (order > 0) v += order * alpha * gaussian_derivative(eps, u, order - 1);
                           return v;
                         }),
                0.0};
  };
  auto tail = [K, lambda_factor](double eps, int order) {
    const double alpha = std::abs(lambda_factor - 2.0) / eps;
    const double u = (2 * K + 1) * pi;
    double v = (alpha * pi + 4.0 * pi * (K + 1) / eps) * std::abs(gaussian_derivative(eps, u, order));
    if (order > 0) v += order * alpha * std::abs(gaussian_derivative(eps, u, order - 1));
    return 2.0 * v;
  };
  std::ostringstream label;
  label << "residual";
  if (lambda_factor != 2.0) label << "(lambda=" << lambda_factor << "/eps)";
  return Net(label.str(), f, INT_MAX, K, tail);
}

Net zero_net() {
  return Net("zero", [](double, double, int) { return cplx{0.0, 0.0}; });
}

Net constant_net(cplx c) {
  return Net("constant", [c](double, double, int order) { return order == 0 ? c : cplx{0.0, 0.0}; });
}

Net coordinate_net() {
  return Net("coordinate", [](double, double theta, int order) {
    if (order == 0) return cplx{theta, 0.0};
    return order == 1 ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
  });
}

Net spectral_net(const CoeffSeq& c, std::string label) {
  auto stored = std::make_shared<const CoeffSeq>(c);
  return Net(std::move(label), [stored](double, double theta, int order) {
    const int N = stored->bandwidth();
    cplx acc{0.0, 0.0};
    for (int n = -N; n <= N; ++n) {
      acc += std::pow(cplx{0.0, static_cast<double>(n)}, order) * (*stored)[n] *
             std::polar(1.0, n * theta);
    }
    return acc * inv_sqrt_two_pi;
  });
}

// --- algebra ------------------------------------------------------------------

namespace {

std::function<double(double, int)> combined_tail(const Net& u, const Net& v) {
  if (u.comb_truncation() == 0 && v.comb_truncation() == 0) return {};
  return [u, v](double eps, int order) {
    return std::max(u.omitted_wrap_term(eps, order), v.omitted_wrap_term(eps, order));
  };
}

int combined_comb(const Net& u, const Net& v) { return std::max(u.comb_truncation(), v.comb_truncation()); }

Net combine(const Net& u, const Net& v, cplx sv, const std::string& op) {
  return Net(op + "(" + u.label() + "," + v.label() + ")",
             [u, v, sv](double eps, double theta, int order) {
               return u.derivative(eps, theta, order) + sv * v.derivative(eps, theta, order);
             },
             std::min(u.exact_order(), v.exact_order()), combined_comb(u, v), combined_tail(u, v),
             u.approximate() || v.approximate());
}

}  // namespace

Net net_add(const Net& u, const Net& v) { return combine(u, v, {1.0, 0.0}, "add"); }

Net net_subtract(const Net& u, const Net& v) { return combine(u, v, {-1.0, 0.0}, "sub"); }

Net net_multiply(const Net& u, const Net& v) {
  return Net("mul(" + u.label() + "," + v.label() + ")",
             [u, v](double eps, double theta, int order) {
               // Leibniz rule.
               cplx acc{0.0, 0.0};
               double binom = 1.0;
               for (int i = 0; i <= order; ++i) {
                 acc += binom * u.derivative(eps, theta, i) * v.derivative(eps, theta, order - i);
                 binom = binom * (order - i) / (i + 1);
               }
               return acc;
             },
             std::min(u.exact_order(), v.exact_order()), combined_comb(u, v), combined_tail(u, v),
             u.approximate() || v.approximate());
}

Net net_differentiate(const Net& u) {
  const bool fd = u.approximate() || u.exact_order() < 1;
  auto tail = u.comb_truncation() == 0 ? std::function<double(double, int)>{}
                                       : [u](double eps, int order) { return u.omitted_wrap_term(eps, order + 1); };
  return Net("d(" + u.label() + ")",
             [u](double eps, double theta, int order) { return u.derivative(eps, theta, order + 1); },
             u.exact_order() == INT_MAX ? INT_MAX : u.exact_order() - 1, u.comb_truncation(), tail, fd);
}

Net net_scale(const GeneralizedNumber& lambda, const Net& u) {
  auto tail = u.comb_truncation() == 0 ? std::function<double(double, int)>{}
                                       : [u, lambda](double eps, int order) {
                                           return std::abs(lambda.at(eps)) * u.omitted_wrap_term(eps, order);
                                         };
  return Net(lambda.label + "*" + u.label(),
             [u, lambda](double eps, double theta, int order) { return lambda.at(eps) * u.derivative(eps, theta, order); },
             u.exact_order(), u.comb_truncation(), tail, u.approximate());
}

Net min_uncertainty_operator(const Net& u, const GeneralizedNumber& lambda) {
  return net_add(net_differentiate(u), net_scale(lambda, net_multiply(coordinate_net(), u)));
}

// --- classification -----------------------------------------------------------

std::string to_string(GrowthVerdict::Tag tag) {
  switch (tag) {
    case GrowthVerdict::Tag::Moderate: return "Moderate";
    case GrowthVerdict::Tag::Negligible: return "Negligible";
    case GrowthVerdict::Tag::Neither: return "Neither";
  }
  return "?";
}

std::vector<double> sup_samples(std::size_t count) {
  if (count < 2) throw std::invalid_argument("sup_samples: need at least two samples");
  std::vector<double> t(count);
  for (std::size_t i = 0; i < count; ++i) {
    t[i] = -pi + two_pi * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  t.back() = pi;
  return t;
}

double net_sup(const Net& u, double eps, int order, std::span<const double> thetas) {
  return kernels::sup_abs([&](double t) { return u.derivative(eps, t, order); }, thetas);
}

namespace {

struct Fit {
  double slope;
  double residual;
};

Fit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (my + slope * (x[i] - mx));
    ss += r * r;
  }
  return {slope, std::sqrt(ss / n)};
}

constexpr double kLogFloor = 1e-300;

int ceil_slope(double s) { return std::max(0, static_cast<int>(std::ceil(s - 1e-9))); }

// Fills fits, witness and the Neither flag from sup tables, then runs the
// negligibility sweep on sup[0].
void summarize(GrowthVerdict& v, int q_max, std::size_t min_tail, double curvature_tolerance, double noise_floor) {
  const auto& eps = v.eps;
  const std::size_t n = eps.size();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::log(1.0 / eps[i]);

  bool runaway = false;
  int witness = 0;
  for (std::size_t j = 0; j < v.sup.size(); ++j) {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = std::log(std::max({v.sup[j][i], noise_floor, kLogFloor}));
    const Fit fit = least_squares(x, y);
    std::vector<double> local(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) local[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    const double max_local = *std::max_element(local.begin(), local.end());
    // A local slope that keeps climbing means growth beyond every power of 1/ε.
    if (local.back() > local.front() + curvature_tolerance && local.back() > 0.0) runaway = true;
    DerivativeFit d{static_cast<int>(j), fit.slope, fit.residual, max_local,
                    ceil_slope(std::max(max_local, fit.slope))};
    witness = std::max(witness, d.witness_q);
    v.per_derivative.push_back(d);
  }

  v.negligible_from.assign(static_cast<std::size_t>(std::max(q_max, 0)), std::nullopt);
  bool all_q = q_max > 0;
  for (int q = 1; q <= q_max; ++q) {
    std::size_t start = n;
    while (start > 0 && v.sup[0][start - 1] <= std::pow(eps[start - 1], q)) --start;
    if (n - start >= min_tail) {
      v.negligible_from[static_cast<std::size_t>(q - 1)] = eps[start];
    } else {
      all_q = false;
    }
  }

  if (runaway) {
    v.tag = GrowthVerdict::Tag::Neither;
    v.witness_q = 0;
  } else if (all_q) {
    v.tag = GrowthVerdict::Tag::Negligible;
    v.witness_q = q_max;
  } else {
    v.tag = GrowthVerdict::Tag::Moderate;
    v.witness_q = witness;
  }
}

}  // namespace

GrowthVerdict classify_net(const Net& u, const EpsGrid& grid, const ClassifyOptions& opts) {
  if (grid.size() < 4) throw std::invalid_argument("classify_net: the ε grid needs at least 4 points");
  if (opts.j_max < 0) throw std::invalid_argument("classify_net: negative j_max");
  for (int j = 0; j <= opts.j_max; ++j) {
    const double tail = u.omitted_wrap_term(grid.smallest(), j);
    if (!(tail < opts.wrap_tolerance)) {
      std::ostringstream os;
      os << "classify_net: wrap truncation K = " << u.comb_truncation() << " of '" << u.label()
         << "' is not certified at eps = " << grid.smallest() << " (order " << j << ", omitted term " << tail << ")";
      throw std::invalid_argument(os.str());
    }
  }
  const std::vector<double> thetas = sup_samples(opts.samples);
  GrowthVerdict v;
  v.eps = grid.values();
  v.sup.assign(static_cast<std::size_t>(opts.j_max + 1), std::vector<double>(grid.size()));
  for (int j = 0; j <= opts.j_max; ++j) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double eps = grid.values()[i];
      const double s = net_sup(u, eps, j, thetas);
      if (!std::isfinite(s)) {
        std::ostringstream os;
        os << "classify_net: non-finite sup of '" << u.label() << "' at eps = " << eps << ", derivative order " << j;
        throw ClassificationError(os.str(), eps, j);
      }
      v.sup[static_cast<std::size_t>(j)][i] = s;
    }
  }
  summarize(v, opts.q_max, opts.min_tail_points, opts.curvature_tolerance, opts.noise_floor);
  return v;
}

GrowthVerdict classify_number(const GeneralizedNumber& r, const EpsGrid& grid, int q_max,
                              std::size_t min_tail_points) {
  if (grid.size() < 4) throw std::invalid_argument("classify_number: the ε grid needs at least 4 points");
  GrowthVerdict v;
  v.eps = grid.values();
  v.sup.assign(1, std::vector<double>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double s = std::abs(r.at(grid.values()[i]));
    if (!std::isfinite(s)) {
      std::ostringstream os;
      os << "classify_number: non-finite value of '" << r.label << "' at eps = " << grid.values()[i];
      throw ClassificationError(os.str(), grid.values()[i], 0);
    }
    v.sup[0][i] = s;
  }
  summarize(v, q_max, min_tail_points, ClassifyOptions{}.curvature_tolerance, ClassifyOptions{}.noise_floor);
  return v;
}

// --- residual -------------------------------------------------------------------

double residual_bound(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("residual_bound: eps must lie in (0, 1]");
  const double a = pi * pi / eps;
  double series = 0.0;
  for (int k = 1;; ++k) {
    const double term = k * std::exp(-a * 4.0 * k * (k - 1));
    if (term < 1e-300) break;
    series += term;
  }
  return 8.0 * std::sqrt(pi) * std::pow(eps, -1.5) * std::exp(-a) * series;
}

MudecCertificate mudec_certificate(int K, const EpsGrid& grid, const ClassifyOptions& opts) {
  MudecCertificate c;
  c.verdict = classify_net(residual_net(K), grid, opts);
  c.eps = grid.values();
  c.sup = c.verdict.sup[0];
  c.bound_holds = true;
  for (double e : c.eps) c.bound.push_back(residual_bound(e));
  for (std::size_t i = 0; i < c.eps.size(); ++i) c.bound_holds = c.bound_holds && c.sup[i] < c.bound[i];
  c.passed = c.verdict.negligible() && c.bound_holds;
  return c;
}

double residual_operator_check(int K, double eps, std::size_t samples, double h) {
  const Net psi = wrapped_gaussian_net(K);
  const Net res = residual_net(K);
  const std::vector<double> thetas = sup_samples(samples);
  auto value = [&](double t) { return psi.value(eps, t).real(); };
  std::vector<double> fd(samples), cf(samples), scale(samples);
  double sup_res = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = thetas[i];
    const double d = (-value(t + 2 * h) + 8.0 * value(t + h) - 8.0 * value(t - h) + value(t - 2 * h)) / (12.0 * h);
    const double drift = (2.0 / eps) * t * value(t);
    fd[i] = d + drift;
    cf[i] = res.value(eps, t).real();
    scale[i] = std::abs(d) + std::abs(drift);
    sup_res = std::max(sup_res, std::abs(cf[i]));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double den = std::max(scale[i], sup_res);
    if (den > 0.0) worst = std::max(worst, std::abs(fd[i] - cf[i]) / den);
  }
  return worst;
}

// --- embedding ------------------------------------------------------------------

int embedding_bandwidth(const DistributionSpectrum& F, double eps, int order, double tail_tolerance) {
  if (auto N = F.window_bandwidth()) return *N;
  if (!(eps > 0.0)) throw std::invalid_argument("embedding_bandwidth: eps must be positive");
  const double s = std::max(F.growth().exponent, 0.0);
  // Past the peak of n^{2s+order} e^{-εn²/4} the terms decay monotonically.
  const double peak = std::sqrt(2.0 * (2.0 * s + order) / eps);
  int n = std::max(1, static_cast<int>(std::ceil(peak)));
  constexpr int kMaxBandwidth = 1 << 20;
  int quiet = 0;
  for (; n < kMaxBandwidth; ++n) {
    const double g = std::exp(-eps * n * static_cast<double>(n) / 4.0) * std::pow(static_cast<double>(n), order);
    const double mag = std::max(std::abs(F.coefficient(n)), std::abs(F.coefficient(-n)));
    const double ratio = std::exp(-eps * (2.0 * n + 1.0) / 4.0);
    const double tail = 2.0 * mag * g / (1.0 - ratio);
    quiet = (tail < tail_tolerance) ? quiet + 1 : 0;
    if (quiet == 4) return n - 4;
  }
  throw std::runtime_error("embedding_bandwidth: no bandwidth below 2^20 meets the tail tolerance");
}

Net embed_distribution(const DistributionSpectrum& F, double tail_tolerance) {
  if (!F.growth().tempered()) throw std::invalid_argument("embed_distribution: distribution is not of slow growth");
  return Net("embed(" + F.label() + ")", [F, tail_tolerance](double eps, double theta, int order) {
    const int N = embedding_bandwidth(F, eps, order, tail_tolerance);
    cplx acc{0.0, 0.0};
    for (int n = -N; n <= N; ++n) {
      const double nn = static_cast<double>(n);
      const cplx c = F.coefficient(n) * std::exp(-eps * nn * nn / 4.0);
      acc += std::pow(cplx{0.0, nn}, order) * c * std::polar(1.0, nn * theta);
    }
    return acc * inv_sqrt_two_pi;
  });
}

AssociationReport association_check(const Net& u, const DistributionSpectrum& F,
                                    const std::vector<std::pair<std::string, CoeffSeq>>& tests,
                                    const EpsGrid& grid, const AssociationOptions& opts) {
  const std::size_t M = opts.nodes;
  std::vector<double> nodes(M);
  for (std::size_t j = 0; j < M; ++j) nodes[j] = grid_node(j, M);

  // u_ε on the quadrature grid, shared by all tests.
  std::vector<std::vector<cplx>> u_samples(grid.size(), std::vector<cplx>(M));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double eps = grid.values()[i];
#pragma omp parallel for schedule(static)
    for (std::size_t j = 0; j < M; ++j) u_samples[i][j] = u.value(eps, nodes[j]);
  }

  AssociationReport rep;
  rep.eps = grid.values();
  rep.passed = true;
  const std::size_t n = grid.size();
  const std::size_t tail_start = std::min(n / 2, n >= 2 ? n - 2 : 0);
  for (const auto& [id, phi] : tests) {
    AssociationRow row;
    row.test_id = id;
    const SampledFunction ps = evaluate(phi, M);
    const cplx target = pair(F, phi).value;
    // Rounding level of each quadrature sum; discrepancies below it count as zero.
    std::vector<double> noise(n);
    for (std::size_t i = 0; i < n; ++i) {
      cplx acc{0.0, 0.0};
      double mag = 0.0;
      for (std::size_t j = 0; j < M; ++j) {
        acc += std::conj(u_samples[i][j]) * ps.samples()[j];
        mag += std::abs(u_samples[i][j]) * std::abs(ps.samples()[j]);
      }
      const double h = two_pi / static_cast<double>(M);
      noise[i] = 16.0 * std::numeric_limits<double>::epsilon() * (mag * h + std::abs(target));
      row.discrepancy.push_back(std::abs(acc * h - target));
    }
    row.monotone = true;
    for (std::size_t i = tail_start + 1; i < n; ++i) {
      row.monotone = row.monotone && row.discrepancy[i] <= row.discrepancy[i - 1] + noise[i];
    }
    std::vector<double> x, y;
    for (std::size_t i = tail_start; i < n; ++i) {
      if (row.discrepancy[i] > noise[i]) {
        x.push_back(std::log(rep.eps[i]));
        y.push_back(std::log(row.discrepancy[i]));
      }
    }
    row.fitted_order = x.size() >= 2 ? least_squares(x, y).slope : std::numeric_limits<double>::infinity();
    const SampledFunction dd = evaluate(differentiate(differentiate(phi)), M);
    double curv = 0.0;
    for (const cplx& z : dd.samples()) curv = std::max(curv, std::abs(z));
    row.tolerance = grid.smallest() * (1.0 + curv);
    row.passed = row.monotone && row.discrepancy.back() <= row.tolerance;
    rep.passed = rep.passed && row.passed;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace pgf
