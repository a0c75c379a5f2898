#include "cli/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>

namespace pgf::cli {

void Report::add_check(std::string name, double value, double tolerance, std::string relation) {
  const bool ok = relation == ">=" ? value >= tolerance : value <= tolerance;
  checks.push_back({std::move(name), value, tolerance, std::move(relation), ok && !std::isnan(value)});
}

bool Report::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string cell(const json& v) {
  if (v.is_number()) return format_number(v.get<double>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json checks_json(const Report& r) {
  json a = json::array();
  for (const auto& c : r.checks) {
    a.push_back({{"name", c.name}, {"value", c.value}, {"relation", c.relation}, {"tolerance", c.tolerance},
                 {"passed", c.passed}});
  }
  return a;
}

}  // namespace

void write_csv(const Report& r, std::ostream& os, bool timestamp) {
  const json schema = {{"experiment", r.experiment}, {"columns", r.columns}, {"input", r.input}};
  os << "# " << schema.dump() << '\n';
  if (timestamp) os << "# generated " << utc_now() << " wall_time_s=" << format_number(r.wall_seconds) << '\n';
  for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << r.columns[i];
  os << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell(row[i]);
    os << '\n';
  }
  for (const auto& c : r.checks) {
    os << "# check " << c.name << ' ' << format_number(c.value) << ' ' << c.relation << ' '
       << format_number(c.tolerance) << ' ' << (c.passed ? "PASS" : "FAIL") << '\n';
  }
  if (!r.summary.empty()) os << "# summary " << r.summary.dump() << '\n';
}

void write_json(const Report& r, std::ostream& os, bool timestamp) {
  json records = json::array();
  for (const auto& row : r.rows) {
    json rec = json::object();
    for (std::size_t i = 0; i < row.size() && i < r.columns.size(); ++i) rec[r.columns[i]] = row[i];
    records.push_back(rec);
  }
  json doc = {{"experiment", r.experiment}, {"input", r.input},      {"columns", r.columns},
              {"records", records},         {"checks", checks_json(r)}, {"summary", r.summary},
              {"passed", r.passed()}};
  if (timestamp) {
    doc["generated"] = utc_now();
    doc["wall_time_s"] = r.wall_seconds;
  }
  os << doc.dump(2) << '\n';
}

void emit_plot_data(const Report& r, std::ostream& os) {
  os << "curve,x,y\n";
  for (const auto& c : r.curves)
    for (const auto& [x, y] : c.points) os << c.name << ',' << format_number(x) << ',' << format_number(y) << '\n';
}

}  // namespace pgf::cli
