#include "pgf/json_io.hpp"

#include <cmath>
#include <stdexcept>

namespace pgf {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw std::invalid_argument("json: " + what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    malformed(std::string("field '") + key + "': " + e.what());
  }
}

std::string kind_of(const json& j) {
  if (!j.is_object()) malformed("expected an object");
  return get_or<std::string>(j, "kind", "");
}

}  // namespace

json to_json(const CoeffSeq& c) {
  json re = json::array();
  json im = json::array();
  for (const cplx& z : c.data()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return {{"bandwidth", c.bandwidth()}, {"re", re}, {"im", im}};
}

CoeffSeq coeffs_from_json(const json& j) {
  const int N = field(j, "bandwidth").get<int>();
  if (N < 0) malformed("negative bandwidth");
  const json& re = field(j, "re");
  const json im = j.contains("im") ? j.at("im") : json::array();
  const auto len = static_cast<std::size_t>(2 * N + 1);
  if (!re.is_array() || re.size() != len) malformed("'re' must hold 2N+1 numbers");
  if (!im.is_array() || (!im.empty() && im.size() != len)) malformed("'im' must hold 2N+1 numbers");
  std::vector<cplx> v(len);
  for (std::size_t i = 0; i < len; ++i) v[i] = {re[i].get<double>(), im.empty() ? 0.0 : im[i].get<double>()};
  return CoeffSeq(N, std::move(v));
}

DistributionSpectrum distribution_from_json(const json& j) {
  const std::string kind = kind_of(j);
  if (kind == "dirac") return DistributionSpectrum::dirac(get_or(j, "theta", 0.0));
  if (kind == "zero") return DistributionSpectrum::zero();
  if (kind == "basis") {
    const int k = field(j, "k").get<int>();
    return DistributionSpectrum::from_window(CoeffSeq::basis(k), "e_" + std::to_string(k));
  }
  if (kind == "window") return DistributionSpectrum::from_window(coeffs_from_json(field(j, "coeffs")));
  if (kind == "generator") {
    const std::string family = field(j, "family").get<std::string>();
    if (family == "polynomial") {
      const double p = get_or(j, "power", 0.0);
      const double s = get_or(j, "scale", 1.0);
      return DistributionSpectrum::from_generator(
          [p, s](std::int64_t n) {
            const double nn = static_cast<double>(n);
            return cplx{s * std::pow(1.0 + nn * nn, 0.5 * p), 0.0};
          },
          "polynomial");
    }
    if (family == "gaussian") {
      const double e = get_or(j, "eps", 0.5);
      if (!(e > 0.0)) malformed("gaussian family needs eps > 0");
      return DistributionSpectrum::from_generator([e](std::int64_t n) { return cplx{wrapped_gaussian_coefficient(e, n), 0.0}; },
                                                  "gaussian");
    }
    malformed("unknown generator family '" + family + "'");
  }
  malformed("unknown distribution kind '" + kind + "'");
}

Net named_net(const std::string& name, int wrap, double lambda_factor) {
  if (name == "wrapped_gaussian") return wrapped_gaussian_net(wrap);
  if (name == "residual") return residual_net(wrap, lambda_factor);
  if (name == "zero") return zero_net();
  if (name == "constant") return constant_net({1.0, 0.0});
  if (name == "coordinate") return coordinate_net();
  if (name == "mu_constant") return min_uncertainty_operator(constant_net({1.0, 0.0}), lambda_number(lambda_factor));
  throw std::invalid_argument("unknown net '" + name + "'");
}

Net net_from_json(const json& j) {
  const std::string kind = kind_of(j);
  const int wrap = get_or(j, "wrap", 6);
  const double lf = get_or(j, "lambda_factor", 2.0);
  if (kind == "wrapped_gaussian" || kind == "residual" || kind == "zero" || kind == "coordinate") {
    return named_net(kind, wrap, lf);
  }
  if (kind == "constant") return constant_net({get_or(j, "re", 1.0), get_or(j, "im", 0.0)});
  if (kind == "embedded") return embed_distribution(distribution_from_json(field(j, "distribution")));
  if (kind == "sum") return net_add(net_from_json(field(j, "left")), net_from_json(field(j, "right")));
  if (kind == "difference") return net_subtract(net_from_json(field(j, "left")), net_from_json(field(j, "right")));
  if (kind == "product") return net_multiply(net_from_json(field(j, "left")), net_from_json(field(j, "right")));
  if (kind == "derivative") return net_differentiate(net_from_json(field(j, "net")));
  if (kind == "scale") return net_scale(lambda_number(lf), net_from_json(field(j, "net")));
  if (kind == "min_uncertainty") return min_uncertainty_operator(net_from_json(field(j, "net")), lambda_number(lf));
  malformed("unknown net kind '" + kind + "'");
}

}  // namespace pgf
