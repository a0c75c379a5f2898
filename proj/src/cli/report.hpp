#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "pgf/json_io.hpp"

namespace pgf::cli {

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  /// "<=" or ">="
  std::string relation = "<=";
  bool passed = false;
};

struct Curve {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

/// One experiment run: tabular records plus declared checks.
struct Report {
  std::string experiment;
  json input;
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  std::vector<Check> checks;
  std::vector<Curve> curves;
  json summary = json::object();
  double wall_seconds = 0.0;

  void add_check(std::string name, double value, double tolerance, std::string relation = "<=");
  bool passed() const;
};

/// Numbers are written with 17 significant digits so files round-trip.
std::string format_number(double x);

void write_csv(const Report& r, std::ostream& os, bool timestamp);
void write_json(const Report& r, std::ostream& os, bool timestamp);
/// Columns curve,x,y; an empty report yields the header alone.
void emit_plot_data(const Report& r, std::ostream& os);

}  // namespace pgf::cli
