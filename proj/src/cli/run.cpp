#include "cli/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "cli/report.hpp"
#include "pgf/colombeau.hpp"
#include "pgf/distributions.hpp"
#include "pgf/extended.hpp"
#include "pgf/json_io.hpp"
#include "pgf/operators.hpp"
#include "pgf/quadrature.hpp"
#include "pgf/uncertainty.hpp"

namespace pgf::cli {

namespace {

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config, format = "csv", output, plot_data;
  bool no_timestamp = false;
  std::uint64_t seed = 7;

  std::string eps, net = "wrapped_gaussian", net_json, distribution = "dirac", distribution_json, precision = "extended";
  std::string thetas, pairs, expect = "any";
  int bandwidth = 32, nodes = 0, wrap = 6, jmax = 2, qmax = 8, samples = 500, trials = 20;
  int n_max = 5, y_count = 8, grid = 16, moments = 4, ladder_max = 3, test_max = 3, random_states = 50;
  int edge_order = 8;
  double tol = 1e-10, lambda_factor = 2.0, theta0 = 0.0, theta_tol = 1e-6, j_tol = 1e-8, var_tol = 1e-8;
  double saturation_tol = 0.05, schwartz_tol = 1e-10, ulp_factor = 4.0;
  bool check_monotone = false;
};

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || !std::isfinite(v)) throw UsageError(std::string("--") + what + ": bad number '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string("--") + what + ": empty list");
  return out;
}

EpsGrid parse_grid(const std::string& text) {
  const std::vector<double> v = parse_list(text, "eps");
  for (double e : v)
    if (!(e > 0.0 && e <= 1.0)) throw UsageError("--eps: values must lie in (0, 1]");
  try {
    return EpsGrid(v);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--eps: ") + e.what());
  }
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) throw UsageError(std::string("--") + name + " must be positive");
}

// --- experiments ----------------------------------------------------------------

Report coeffs_experiment(const Options& o) {
  const EpsGrid grid = parse_grid(o.eps.empty() ? "1.0,0.5,0.2" : o.eps);
  require_positive(o.bandwidth, "bandwidth");
  const std::size_t M = o.nodes > 0 ? static_cast<std::size_t>(o.nodes) : 256;
  if (o.precision != "extended" && o.precision != "double") throw UsageError("--precision must be extended or double");
  Report r;
  r.experiment = "coeffs";
  r.input = {{"eps", grid.values()}, {"bandwidth", o.bandwidth}, {"nodes", M}, {"wrap", o.wrap},
             {"precision", o.precision}, {"tol", o.tol}};
  r.columns = {"eps", "k", "quadrature", "closed_form", "rel_error"};
  double worst = 0.0;
  for (double eps : grid.values()) {
    std::vector<double> c;
    if (o.precision == "extended") {
      c = wrapped_gaussian_quadrature_extended(eps, o.bandwidth, M, o.wrap);
    } else {
      const Net psi = wrapped_gaussian_net(o.wrap);
      const CoeffSeq q = coeffs_from_samples(
          SampledFunction::from_function(M, [&](double t) { return psi.value(eps, t); }), o.bandwidth);
      for (const cplx& z : q.data()) c.push_back(z.real());
    }
    Curve qc{"quadrature eps=" + format_number(eps), {}};
    for (int k = -o.bandwidth; k <= o.bandwidth; ++k) {
      const double exact = wrapped_gaussian_coefficient(eps, k);
      const double got = c[static_cast<std::size_t>(k + o.bandwidth)];
      const double rel = std::abs(got - exact) / exact;
      worst = std::max(worst, rel);
      r.rows.push_back({eps, k, got, exact, rel});
      qc.points.emplace_back(k, std::log10(std::abs(got)));
    }
    r.curves.push_back(std::move(qc));
  }
  r.add_check("max_rel_error", worst, o.tol);
  return r;
}

Report pair_experiment(const Options& o) {
  const std::vector<double> thetas =
      o.thetas.empty() ? std::vector<double>{-3.0, -2.5, -2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0}
                       : parse_list(o.thetas, "thetas");
  require_positive(o.bandwidth, "bandwidth");
  if (o.edge_order < 0 || o.edge_order >= o.bandwidth) throw UsageError("--edge-order must lie in [0, bandwidth)");
  Report r;
  r.experiment = "pair";
  r.input = {{"thetas", thetas}, {"bandwidth", o.bandwidth}, {"edge_order", o.edge_order}, {"trials", o.trials},
             {"seed", o.seed}, {"tol", o.tol}};
  r.columns = {"trial", "theta", "pair_error", "theta_error", "reprojection_residual", "gibbs_warning"};
  std::mt19937_64 rng(o.seed);
  double worst_pair = 0.0, worst_theta = 0.0;
  int warnings = 0;
  for (int t = 0; t < o.trials; ++t) {
    const CoeffSeq phi = random_edge_vanishing_coeffs(o.bandwidth, o.edge_order, rng);
    for (double th : thetas) {
      const DistributionSpectrum d = DistributionSpectrum::dirac(th);
      const cplx point = evaluate_at(phi, th);
      const double pe = std::abs(pair(d, phi).value - point);
      const ThetaPairing tp = apply_theta(d, phi);
      const double te = std::abs(tp.pairing.value - th * point);
      worst_pair = std::max(worst_pair, pe);
      worst_theta = std::max(worst_theta, te);
      warnings += tp.gibbs_warning ? 1 : 0;
      r.rows.push_back({t, th, pe, te, tp.reprojection_residual, tp.gibbs_warning});
    }
  }
  r.add_check("max_pair_error", worst_pair, o.tol);
  r.add_check("max_theta_eigen_error", worst_theta, o.tol);
  r.summary = {{"gibbs_warnings", warnings}};
  return r;
}

Report sesquilinear_experiment(const Options& o) {
  require_positive(o.grid, "grid");
  require_positive(o.bandwidth, "bandwidth");
  Report r;
  r.experiment = "sesquilinear";
  r.input = {{"grid", o.grid}, {"bandwidth", o.bandwidth}, {"ulp_factor", o.ulp_factor}};
  r.columns = {"theta", "theta_prime", "max_coeff_error", "max_ulp_ratio", "hermitian_defect", "reflection_defect"};
  constexpr double ulp = std::numeric_limits<double>::epsilon();
  double worst_ratio = 0.0, worst_herm = 0.0, worst_refl = 0.0;
  for (int i = 0; i < o.grid; ++i) {
    const double a = -pi + two_pi * (i + 0.5) / o.grid;
    for (int j = 0; j < o.grid; ++j) {
      const double b = -pi + two_pi * (j + 0.5) / o.grid;
      const DistributionSpectrum P = sesquilinear_product(DistributionSpectrum::dirac(a), DistributionSpectrum::dirac(b));
      const DistributionSpectrum Q = sesquilinear_product(DistributionSpectrum::dirac(b), DistributionSpectrum::dirac(a));
      const DistributionSpectrum D = DistributionSpectrum::dirac(b - a);
      double err = 0.0, ratio = 0.0, herm = 0.0, refl = 0.0;
      for (int n = -o.bandwidth; n <= o.bandwidth; ++n) {
        const double e = std::abs(P.coefficient(n) - D.coefficient(n));
        err = std::max(err, e);
        // Phase arguments n·θ carry a rounding error of about ulp·|n|·π.
        ratio = std::max(ratio, e / (inv_sqrt_two_pi * ulp * (1.0 + std::abs(n) * pi)));
        herm = std::max(herm, std::abs(Q.coefficient(n) - std::conj(P.coefficient(n))));
        refl = std::max(refl, std::abs(Q.coefficient(n) - P.coefficient(-n)));
      }
      worst_ratio = std::max(worst_ratio, ratio);
      worst_herm = std::max(worst_herm, herm);
      worst_refl = std::max(worst_refl, refl);
      r.rows.push_back({a, b, err, ratio, herm, refl});
    }
  }
  r.add_check("max_ulp_ratio", worst_ratio, o.ulp_factor);
  r.add_check("max_hermitian_defect", worst_herm, 0.0);
  r.add_check("max_reflection_defect", worst_refl, 0.0);
  return r;
}

Report weyl_experiment(const Options& o) {
  require_positive(o.bandwidth, "bandwidth");
  require_positive(o.y_count, "y-count");
  if (o.n_max < 0) throw UsageError("--n-max must be nonnegative");
  Report r;
  r.experiment = "weyl-check";
  r.input = {{"n_max", o.n_max}, {"y_count", o.y_count}, {"bandwidth", o.bandwidth}, {"trials", o.trials},
             {"seed", o.seed}, {"tol", o.tol}};
  r.columns = {"n", "y", "trial", "defect", "norm"};
  std::mt19937_64 rng(o.seed);
  std::vector<BandLimitedState> states;
  for (int t = 0; t < o.trials; ++t) states.emplace_back(random_coeffs(o.bandwidth, rng), true);
  double worst = 0.0;
  for (int n = 1; n <= o.n_max; ++n) {
    for (int i = 0; i < o.y_count; ++i) {
      const double y = -pi + two_pi * (i + 1) / (o.y_count + 1);
      for (int t = 0; t < o.trials; ++t) {
        const double nrm = states[static_cast<std::size_t>(t)].norm();
        const double d = weyl_defect(n, y, states[static_cast<std::size_t>(t)]);
        worst = std::max(worst, d / nrm);
        r.rows.push_back({n, y, t, d, nrm});
      }
    }
  }
  r.add_check("max_relative_defect", worst, o.tol);
  return r;
}

Report decompose_experiment(const Options& o) {
  require_positive(o.bandwidth, "bandwidth");
  Report r;
  r.experiment = "decompose";
  const std::size_t M = o.nodes > 0 ? static_cast<std::size_t>(o.nodes) : default_moment_nodes(o.bandwidth);
  r.input = {{"bandwidth", o.bandwidth}, {"trials", o.trials}, {"moments", o.moments}, {"ladder_max", o.ladder_max},
             {"nodes", M}, {"seed", o.seed}, {"tol", o.tol}};
  r.columns = {"trial", "identity", "order", "value_re", "value_im", "reference_re", "reference_im", "error"};
  std::mt19937_64 rng(o.seed);
  double worst_res = 0.0, worst_mom = 0.0, worst_lad = 0.0;
  auto row = [&](int t, const char* id, int n, cplx v, cplx ref) {
    const double e = std::abs(v - ref);
    r.rows.push_back({t, id, n, v.real(), v.imag(), ref.real(), ref.imag(), e});
    return e;
  };
  for (int t = 0; t < o.trials; ++t) {
    const CoeffSeq phi = random_coeffs(o.bandwidth, rng);
    const CoeffSeq psi = random_coeffs(o.bandwidth, rng);
    const cplx res = borel_decomposition_pairing([](double) { return cplx{1.0, 0.0}; }, phi, psi, M).value;
    worst_res = std::max(worst_res, row(t, "resolution", 0, res, inner_product(phi, psi)));
    for (int n = 0; n <= o.moments; ++n) {
      const cplx v = borel_decomposition_pairing([n](double th) { return cplx{std::pow(th, n), 0.0}; }, phi, phi, M).value;
      worst_mom = std::max(worst_mom, row(t, "moment", n, v, exact_power_moment(n, phi, phi)));
    }
    const BandLimitedState s(phi, true);
    for (int n = -o.ladder_max; n <= o.ladder_max; ++n) {
      const cplx v = borel_decomposition_pairing([n](double th) { return std::polar(1.0, n * th); }, phi, phi, M).value;
      worst_lad = std::max(worst_lad, row(t, "ladder", n, v, inner_product(phi, ladder(s, n).coeffs())));
    }
  }
  r.add_check("max_resolution_error", worst_res, o.tol);
  r.add_check("max_moment_error", worst_mom, o.tol);
  r.add_check("max_ladder_error", worst_lad, o.tol);
  return r;
}

Net select_net(const Options& o) {
  if (!o.net_json.empty()) {
    try {
      return net_from_json(json::parse(o.net_json));
    } catch (const json::exception& e) {
      throw UsageError(std::string("--net-json: ") + e.what());
    }
  }
  return named_net(o.net, o.wrap, o.lambda_factor);
}

DistributionSpectrum select_distribution(const Options& o) {
  if (!o.distribution_json.empty()) {
    try {
      return distribution_from_json(json::parse(o.distribution_json));
    } catch (const json::exception& e) {
      throw UsageError(std::string("--distribution-json: ") + e.what());
    }
  }
  if (o.distribution == "dirac") return DistributionSpectrum::dirac(o.theta0);
  if (o.distribution == "zero") return DistributionSpectrum::zero();
  if (o.distribution == "constant") return DistributionSpectrum::from_window(CoeffSeq::basis(0), "e_0");
  throw UsageError("--distribution must be dirac, zero or constant");
}

std::string net_name(const Options& o) { return o.net_json.empty() ? o.net : json::parse(o.net_json).dump(); }

Report classify_experiment(const Options& o) {
  const EpsGrid grid = parse_grid(o.eps.empty() ? "0.8,0.6,0.5,0.4,0.3,0.25,0.2" : o.eps);
  if (grid.size() < 4) throw UsageError("--eps: classification needs at least 4 grid points");
  const Net u = select_net(o);
  ClassifyOptions co;
  co.j_max = o.jmax;
  co.q_max = o.qmax;
  co.samples = static_cast<std::size_t>(std::max(o.samples, 2));
  Report r;
  r.experiment = "classify-net";
  r.input = {{"net", net_name(o)},  {"eps", grid.values()},  {"jmax", o.jmax},     {"qmax", o.qmax},
             {"samples", o.samples}, {"wrap", o.wrap}, {"lambda_factor", o.lambda_factor}, {"expect", o.expect}};
  r.columns = {"eps", "j", "sup_value", "bound_value"};
  const GrowthVerdict v = classify_net(u, grid, co);
  const bool residual = o.net_json.empty() && o.net == "residual" && o.lambda_factor == 2.0;
  Curve sup_curve{"sup", {}}, bound_curve{"bound", {}};
  double worst_ratio = 0.0;
  for (std::size_t j = 0; j < v.sup.size(); ++j) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double eps = grid.values()[i];
      json bound = nullptr;
      if (residual && j == 0) {
        const double b = residual_bound(eps);
        bound = b;
        worst_ratio = std::max(worst_ratio, v.sup[0][i] / b);
        bound_curve.points.emplace_back(std::log10(eps), std::log10(b));
      }
      if (j == 0) sup_curve.points.emplace_back(std::log10(eps), std::log10(std::max(v.sup[0][i], 1e-300)));
      r.rows.push_back({eps, static_cast<int>(j), v.sup[j][i], bound});
    }
  }
  r.curves.push_back(std::move(sup_curve));
  if (residual) {
    r.curves.push_back(std::move(bound_curve));
    r.add_check("max_sup_over_bound", worst_ratio, 1.0);
  }
  json fits = json::array();
  for (const auto& d : v.per_derivative) {
    fits.push_back({{"j", d.order}, {"slope", d.slope}, {"residual", d.residual}, {"witness_q", d.witness_q}});
  }
  json from = json::array();
  for (const auto& e : v.negligible_from) from.push_back(e ? json(*e) : json(nullptr));
  r.summary = {{"verdict", to_string(v.tag)}, {"witness_q", v.witness_q}, {"per_derivative", fits},
               {"negligible_from", from}, {"approximate_derivatives", u.approximate_at(o.jmax)}};
  if (o.expect != "any") {
    std::string want = o.expect;
    std::transform(want.begin(), want.end(), want.begin(), [](unsigned char c) { return std::tolower(c); });
    std::string got = to_string(v.tag);
    std::transform(got.begin(), got.end(), got.begin(), [](unsigned char c) { return std::tolower(c); });
    if (want != "moderate" && want != "negligible" && want != "neither") {
      throw UsageError("--expect must be any, moderate, negligible or neither");
    }
    r.add_check("verdict_is_" + want, got == want ? 1.0 : 0.0, 1.0, ">=");
  }
  return r;
}

Report associate_experiment(const Options& o) {
  const EpsGrid grid = parse_grid(o.eps.empty() ? "0.4,0.2,0.1,0.05,0.02,0.01" : o.eps);
  const Net u = select_net(o);
  const DistributionSpectrum F = select_distribution(o);
  if (o.test_max < 0) throw UsageError("--test-max must be nonnegative");
  std::vector<std::pair<std::string, CoeffSeq>> tests;
  for (int k = -o.test_max; k <= o.test_max; ++k) tests.emplace_back("e" + std::to_string(k), CoeffSeq::basis(k));
  AssociationOptions ao;
  if (o.nodes > 0) ao.nodes = static_cast<std::size_t>(o.nodes);
  Report r;
  r.experiment = "associate";
  r.input = {{"net", net_name(o)},
             {"distribution", o.distribution_json.empty() ? o.distribution : o.distribution_json},
             {"theta0", o.theta0},
             {"eps", grid.values()},
             {"test_max", o.test_max},
             {"nodes", ao.nodes},
             {"wrap", o.wrap}};
  r.columns = {"eps", "test_id", "discrepancy"};
  const AssociationReport rep = association_check(u, F, tests, grid, ao);
  json rows = json::array();
  const bool residual_zero = o.net_json.empty() && o.net == "residual" && o.lambda_factor == 2.0 &&
                             o.distribution_json.empty() && o.distribution == "zero";
  double worst_bound_ratio = 0.0;
  for (std::size_t i = 0; i < rep.eps.size(); ++i) {
    for (const auto& row : rep.rows) {
      r.rows.push_back({rep.eps[i], row.test_id, row.discrepancy[i]});
      if (residual_zero) {
        worst_bound_ratio = std::max(worst_bound_ratio, row.discrepancy[i] / (two_pi * residual_bound(rep.eps[i])));
      }
    }
  }
  for (const auto& row : rep.rows) {
    Curve c{"d " + row.test_id, {}};
    for (std::size_t i = 0; i < rep.eps.size(); ++i) c.points.emplace_back(rep.eps[i], row.discrepancy[i]);
    r.curves.push_back(std::move(c));
    rows.push_back({{"test_id", row.test_id}, {"fitted_order", row.fitted_order}, {"monotone", row.monotone},
                    {"tolerance", row.tolerance}});
    r.add_check(row.test_id + "_monotone_tail", row.monotone ? 1.0 : 0.0, 1.0, ">=");
    r.add_check(row.test_id + "_final_discrepancy", row.discrepancy.back(), row.tolerance);
  }
  if (residual_zero) r.add_check("max_discrepancy_over_2pi_bound", worst_bound_ratio, 1.0);
  r.summary = {{"tests", rows}};
  return r;
}

Report min_uncertainty_experiment(const Options& o) {
  const EpsGrid grid = parse_grid(o.eps.empty() ? "0.4,0.2,0.1,0.05" : o.eps);
  require_positive(o.bandwidth, "bandwidth");
  Report r;
  r.experiment = "min-uncertainty";
  r.input = {{"eps", grid.values()},          {"saturation_tol", o.saturation_tol}, {"schwartz_tol", o.schwartz_tol},
             {"random_states", o.random_states}, {"bandwidth", o.bandwidth},         {"seed", o.seed},
             {"check_monotone", o.check_monotone}};
  r.columns = {"eps", "var_theta", "var_J", "product", "schwartz_slack"};
  Curve prod{"product", {}}, ref{"reference", {}};
  std::vector<double> products;
  double worst_slack = std::numeric_limits<double>::infinity();
  for (double eps : grid.values()) {
    const UncertaintyReport u = uncertainty_product(wrapped_gaussian_state(eps));
    r.rows.push_back({eps, u.var_theta, u.var_J, u.product, u.schwartz_slack()});
    products.push_back(u.product);
    worst_slack = std::min(worst_slack, u.schwartz_slack());
    prod.points.emplace_back(eps, u.product);
    ref.points.emplace_back(eps, 0.5);
  }
  r.curves.push_back(std::move(prod));
  r.curves.push_back(std::move(ref));
  std::mt19937_64 rng(o.seed);
  double random_slack = std::numeric_limits<double>::infinity();
  for (int t = 0; t < o.random_states; ++t) {
    const UncertaintyReport u = uncertainty_product(BandLimitedState(random_coeffs(o.bandwidth, rng), true));
    random_slack = std::min(random_slack, u.schwartz_slack());
  }
  bool decreasing = true;
  double worst_step = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < products.size(); ++i) {
    decreasing = decreasing && products[i] < products[i - 1];
    worst_step = std::max(worst_step, products[i] - products[i - 1]);
  }
  r.add_check("saturation_rel_error", std::abs(products.back() - 0.5) / 0.5, o.saturation_tol);
  r.add_check("min_schwartz_slack_family", worst_slack, -o.schwartz_tol, ">=");
  if (o.random_states > 0) r.add_check("min_schwartz_slack_random", random_slack, 0.0, ">=");
  if (o.check_monotone) r.add_check("max_product_step", worst_step, 0.0, "<=");
  r.summary = {{"strictly_decreasing", decreasing}, {"max_product_step", worst_step}};
  return r;
}

Report shift_experiment(const Options& o) {
  const EpsGrid grid = parse_grid(o.eps.empty() ? "0.1" : o.eps);
  std::vector<std::pair<double, double>> pairs;
  if (o.pairs.empty()) {
    for (double a : {-2.5, pi / 3.0, 2.0})
      for (double m : {-3.0, 0.0, 2.0}) pairs.emplace_back(a, m);
  } else {
    std::stringstream ss(o.pairs);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw UsageError("--pairs: expected theta:j items");
      const auto a = parse_list(item.substr(0, colon), "pairs");
      const auto m = parse_list(item.substr(colon + 1), "pairs");
      pairs.emplace_back(a[0], m[0]);
    }
  }
  Report r;
  r.experiment = "shift-check";
  json echo = json::array();
  for (const auto& [a, m] : pairs) echo.push_back({a, m});
  r.input = {{"eps", grid.values()}, {"pairs", echo}, {"theta_tol", o.theta_tol}, {"j_tol", o.j_tol},
             {"var_tol", o.var_tol}};
  r.columns = {"eps", "theta_bar", "j_bar", "mean_direction", "mean_J", "theta_error", "j_error", "var_theta_change",
               "var_J_change"};
  double wt = 0.0, wj = 0.0, wv = 0.0;
  for (double eps : grid.values()) {
    const BandLimitedState psi = wrapped_gaussian_state(eps);
    const UncertaintyReport base = uncertainty_product(psi);
    for (const auto& [a, m] : pairs) {
      BandLimitedState s = shift_state(psi, a, m);
      const double md = mean_direction(s);
      const double mj = mean_J(s);
      const UncertaintyReport u = uncertainty_product(s);
      const double te = std::abs(wrap_angle(md - a));
      const double je = std::abs(mj - m);
      const double dvt = std::abs(u.var_theta - base.var_theta);
      const double dvj = std::abs(u.var_J - base.var_J);
      wt = std::max(wt, te);
      wj = std::max(wj, je);
      wv = std::max({wv, dvt, dvj});
      r.rows.push_back({eps, a, m, md, mj, te, je, dvt, dvj});
    }
  }
  r.add_check("max_theta_error", wt, o.theta_tol);
  r.add_check("max_j_error", wj, o.j_tol);
  r.add_check("max_variance_change", wv, o.var_tol);
  return r;
}

// --- plumbing -------------------------------------------------------------------

// Config keys become flags placed before the user's own arguments; with the
// take-last policy, flags given on the command line win.
std::vector<std::string> config_tokens(const json& cfg) {
  std::vector<std::string> out;
  for (const auto& [key, value] : cfg.items()) {
    if (key == "subcommand") continue;
    std::string flag = key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    flag = "--" + flag;
    if (flag == "--net" && value.is_object()) {
      out.insert(out.end(), {"--net-json", value.dump()});
    } else if (flag == "--distribution" && value.is_object()) {
      out.insert(out.end(), {"--distribution-json", value.dump()});
    } else if (value.is_boolean()) {
      if (value.get<bool>()) out.push_back(flag);
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) joined += (joined.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
      out.insert(out.end(), {flag, joined});
    } else if (value.is_string()) {
      out.insert(out.end(), {flag, value.get<std::string>()});
    } else {
      out.insert(out.end(), {flag, value.dump()});
    }
  }
  return out;
}

std::string find_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  return path;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "JSON file of flag values; explicit flags win");
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--output,-o", o.output, "Output file (default: $PGF_OUTPUT_DIR/<subcommand>.<ext>, else stdout)");
  sub->add_option("--plot-data", o.plot_data, "Write curve,x,y plot data to this file");
  sub->add_flag("--no-timestamp", o.no_timestamp, "Omit the timestamp line");
  sub->add_option("--seed", o.seed, "Seed for randomized sweeps");
}

using Experiment = Report (*)(const Options&);

struct Subcommand {
  const char* name;
  const char* help;
  Experiment fn;
};

const Subcommand kSubcommands[] = {
    {"coeffs", "Wrapped-Gaussian Fourier coefficients by quadrature against the closed form", coeffs_experiment},
    {"pair", "Dirac pairing and the eigen-relation of the angle operator", pair_experiment},
    {"sesquilinear", "Generalised sesquilinear product of Dirac pairs", sesquilinear_experiment},
    {"weyl-check", "Weyl commutation defect of ladder and rotation groups", weyl_experiment},
    {"decompose", "Eigenoperator decompositions: resolution, moments, ladder", decompose_experiment},
    {"classify-net", "Moderate/negligible classification of an eps-net", classify_experiment},
    {"associate", "Association of a net with a distribution", associate_experiment},
    {"min-uncertainty", "Uncertainty product of the wrapped-Gaussian family", min_uncertainty_experiment},
    {"shift-check", "Means of the shifted family", shift_experiment},
};

void register_options(const std::string& name, CLI::App* sub, Options& o) {
  add_common(sub, o);
  auto eps = [&] { sub->add_option("--eps", o.eps, "Comma-separated decreasing eps grid in (0,1]"); };
  auto tol = [&](const char* help) { sub->add_option("--tol", o.tol, help); };
  if (name == "coeffs") {
    eps();
    sub->add_option("--bandwidth,-N", o.bandwidth, "Largest |k|");
    sub->add_option("--nodes,-M", o.nodes, "Quadrature nodes (default 256)");
    sub->add_option("--wrap,-K", o.wrap, "Wrap terms per side");
    sub->add_option("--precision", o.precision, "extended or double")->check(CLI::IsMember({"extended", "double"}));
    tol("Relative tolerance");
  } else if (name == "pair") {
    sub->add_option("--thetas", o.thetas, "Comma-separated support points");
    sub->add_option("--bandwidth,-N", o.bandwidth, "Test function bandwidth");
    sub->add_option("--edge-order", o.edge_order, "Power of (1+cos) in the random test functions");
    sub->add_option("--trials", o.trials, "Random test functions");
    tol("Absolute tolerance");
  } else if (name == "sesquilinear") {
    sub->add_option("--grid", o.grid, "Points per axis of the (theta, theta') grid");
    sub->add_option("--bandwidth,-N", o.bandwidth, "Coefficients compared per pair");
    sub->add_option("--ulp-factor", o.ulp_factor, "Allowed error in units of eps_mach (1+|n|pi)/sqrt(2pi)");
  } else if (name == "weyl-check") {
    sub->add_option("--n-max", o.n_max, "Ladder steps 1..n-max");
    sub->add_option("--y-count", o.y_count, "Rotation angles");
    sub->add_option("--bandwidth,-N", o.bandwidth, "State bandwidth");
    sub->add_option("--trials", o.trials, "Random states");
    tol("Tolerance relative to the state norm");
  } else if (name == "decompose") {
    sub->add_option("--bandwidth,-N", o.bandwidth, "State bandwidth");
    sub->add_option("--trials", o.trials, "Random state pairs");
    sub->add_option("--moments", o.moments, "Highest moment power");
    sub->add_option("--ladder-max", o.ladder_max, "Largest |n| for e^{in theta}");
    sub->add_option("--nodes,-M", o.nodes, "Quadrature nodes (default 64(2N+1))");
    tol("Absolute tolerance");
  } else if (name == "classify-net") {
    eps();
    sub->add_option("--net", o.net, "wrapped_gaussian, residual, zero, constant, coordinate, mu_constant");
    sub->add_option("--net-json", o.net_json, "Net expression as JSON");
    sub->add_option("--jmax", o.jmax, "Highest derivative order");
    sub->add_option("--qmax", o.qmax, "Highest power tested for negligibility");
    sub->add_option("--samples", o.samples, "Theta samples for sup norms");
    sub->add_option("--wrap,-K", o.wrap, "Wrap terms per side");
    sub->add_option("--lambda-factor", o.lambda_factor, "lambda_eps = factor/eps");
    sub->add_option("--expect", o.expect, "Declared verdict: any, moderate, negligible, neither");
  } else if (name == "associate") {
    eps();
    sub->add_option("--net", o.net, "Named net");
    sub->add_option("--net-json", o.net_json, "Net expression as JSON");
    sub->add_option("--distribution", o.distribution, "dirac, zero or constant");
    sub->add_option("--distribution-json", o.distribution_json, "Distribution as JSON");
    sub->add_option("--theta0", o.theta0, "Support of the Dirac distribution");
    sub->add_option("--test-max", o.test_max, "Basis tests e_k, |k| <= test-max");
    sub->add_option("--nodes,-M", o.nodes, "Quadrature nodes (default 4096)");
    sub->add_option("--wrap,-K", o.wrap, "Wrap terms per side");
    sub->add_option("--lambda-factor", o.lambda_factor, "lambda_eps = factor/eps");
  } else if (name == "min-uncertainty") {
    eps();
    sub->add_option("--saturation-tol", o.saturation_tol, "Relative distance of the last product from 1/2");
    sub->add_option("--schwartz-tol", o.schwartz_tol, "Allowed negative Schwartz slack of the family");
    sub->add_option("--random-states", o.random_states, "Random states for the Schwartz check");
    sub->add_option("--bandwidth,-N", o.bandwidth, "Bandwidth of the random states");
    sub->add_flag("--check-monotone", o.check_monotone, "Declare the strictly decreasing trend as a check");
  } else if (name == "shift-check") {
    eps();
    sub->add_option("--pairs", o.pairs, "theta:j items, comma-separated");
    sub->add_option("--theta-tol", o.theta_tol, "Mean direction tolerance");
    sub->add_option("--j-tol", o.j_tol, "Mean angular momentum tolerance");
    sub->add_option("--var-tol", o.var_tol, "Variance invariance tolerance");
  }
}

std::string default_format(const std::string& name) { return name == "shift-check" ? "json" : "csv"; }

}  // namespace

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args = args_in;

  json cfg = json::object();
  const std::string config_path = find_config(args);
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      err << "error: cannot read config file '" << config_path << "'\n";
      return 2;
    }
    try {
      cfg = json::parse(in);
    } catch (const json::exception& e) {
      err << "error: config file '" << config_path << "': " << e.what() << '\n';
      return 2;
    }
    if (!cfg.is_object()) {
      err << "error: config file must hold a JSON object\n";
      return 2;
    }
    if (cfg.contains("params")) {
      json flat = cfg.at("params");
      if (cfg.contains("subcommand")) flat["subcommand"] = cfg.at("subcommand");
      cfg = flat;
    }
  }
  if ((args.empty() || args[0].rfind("-", 0) == 0) && cfg.contains("subcommand") &&
      !(args.size() == 1 && (args[0] == "--help" || args[0] == "-h"))) {
    args.insert(args.begin(), cfg.at("subcommand").get<std::string>());
  }

  CLI::App app{"Numerical calculus of periodic generalised functions", "pgf"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  std::map<std::string, Options> options;
  for (const auto& s : kSubcommands) {
    Options& o = options[s.name];
    o.format = default_format(s.name);
    if (std::string(s.name) == "weyl-check" || std::string(s.name) == "decompose") o.bandwidth = 64;
    if (std::string(s.name) == "decompose") {
      o.bandwidth = 16;
      o.trials = 10;
      o.tol = 1e-8;
    }
    if (std::string(s.name) == "pair") o.tol = 1e-8;
    if (std::string(s.name) == "sesquilinear") o.bandwidth = 64;
    register_options(s.name, app.add_subcommand(s.name, s.help), o);
  }

  std::vector<std::string> tokens;
  if (!args.empty()) {
    tokens.push_back(args[0]);
    if (args[0].rfind("-", 0) != 0) {
      const auto extra = config_tokens(cfg);
      tokens.insert(tokens.end(), extra.begin(), extra.end());
    }
    tokens.insert(tokens.end(), args.begin() + 1, args.end());
  }
  std::reverse(tokens.begin(), tokens.end());
  try {
    app.parse(tokens);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  const Subcommand* chosen = nullptr;
  for (const auto& s : kSubcommands)
    if (app.got_subcommand(s.name)) chosen = &s;
  const Options& o = options.at(chosen->name);

  Report report;
  try {
    const auto t0 = std::chrono::steady_clock::now();
    report = chosen->fn(o);
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << chosen->name << ": " << e.what() << '\n';
    return 1;
  }

  std::string path = o.output;
  if (path.empty()) {
    if (const char* dir = std::getenv("PGF_OUTPUT_DIR"); dir && *dir) {
      path = (std::filesystem::path(dir) / (std::string(chosen->name) + "." + o.format)).string();
    }
  }
  auto write = [&](std::ostream& os) {
    if (o.format == "json") {
      write_json(report, os, !o.no_timestamp);
    } else {
      write_csv(report, os, !o.no_timestamp);
    }
  };
  if (path.empty() || path == "-") {
    write(out);
  } else {
    std::ofstream f(path);
    if (!f) {
      err << "error: cannot write '" << path << "'\n";
      return 1;
    }
    write(f);
  }
  if (!o.plot_data.empty()) {
    std::ofstream f(o.plot_data);
    if (!f) {
      err << "error: cannot write '" << o.plot_data << "'\n";
      return 1;
    }
    emit_plot_data(report, f);
  }

  int failed = 0;
  for (const auto& c : report.checks) {
    if (!c.passed) {
      ++failed;
      err << "FAIL " << report.experiment << ' ' << c.name << ": " << format_number(c.value) << " not "
          << c.relation << ' ' << format_number(c.tolerance) << '\n';
    }
  }
  err << (failed ? "FAIL " : "PASS ") << report.experiment << " (" << report.checks.size() - failed << '/'
      << report.checks.size() << " checks)\n";
  return failed ? 1 : 0;
}

}  // namespace pgf::cli
