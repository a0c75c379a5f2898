#pragma once

// JSON forms of coefficient sequences, distributions and net expressions.
//
//   CoeffSeq      {"bandwidth": N, "re": [...], "im": [...]}   (k = -N..N)
//   distribution  {"kind": "dirac", "theta": t}
//                 {"kind": "basis", "k": k}
//                 {"kind": "window", "coeffs": CoeffSeq}
//                 {"kind": "generator", "family": "polynomial", "power": p, "scale": c}
//                 {"kind": "generator", "family": "gaussian", "eps": e}
//                 {"kind": "zero"}
//   net           {"kind": "wrapped_gaussian", "wrap": K}
//                 {"kind": "residual", "wrap": K, "lambda_factor": f}
//                 {"kind": "embedded", "distribution": {...}}
//                 {"kind": "zero" | "coordinate"}
//                 {"kind": "constant", "re": a, "im": b}
//                 {"kind": "sum" | "difference" | "product", "left": net, "right": net}
//                 {"kind": "derivative", "net": net}
//                 {"kind": "scale", "lambda_factor": f, "net": net}          (f/ε · net)
//                 {"kind": "min_uncertainty", "lambda_factor": f, "net": net}

#include "json.hpp"

#include "pgf/colombeau.hpp"
#include "pgf/distributions.hpp"
#include "pgf/spectral.hpp"

namespace pgf {

using json = nlohmann::json;

json to_json(const CoeffSeq& c);
/// Throws std::invalid_argument on a malformed document.
CoeffSeq coeffs_from_json(const json& j);

DistributionSpectrum distribution_from_json(const json& j);
Net net_from_json(const json& j);

/// Named nets accepted on the command line: wrapped_gaussian, residual, zero,
/// constant, coordinate, mu_constant (the operator applied to the constant 1).
Net named_net(const std::string& name, int wrap, double lambda_factor);

}  // namespace pgf
