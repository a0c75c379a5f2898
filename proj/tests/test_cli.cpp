#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/report.hpp"
#include "cli/run.hpp"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using pgf::cli::run;

namespace {

struct Result {
  int status;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int s = run(args, out, err);
  return {s, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("pgf_cli_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit with status 2") {
    CHECK(call({}).status == 2);
    CHECK(call({"no-such-command"}).status == 2);
    CHECK(call({"weyl-check", "--bogus"}).status == 2);
    CHECK(call({"weyl-check", "--bandwidth", "-4"}).status == 2);
    CHECK(call({"classify-net", "--eps", "0.5,1.5,0.2,0.1"}).status == 2);
    CHECK(call({"weyl-check", "--format", "xml"}).status == 2);
  }

  TEST_CASE("weyl-check writes a CSV with a schema header") {
    const Result r = call({"weyl-check", "--n-max", "2", "--y-count", "3", "--bandwidth", "16", "--no-timestamp"});
    CHECK(r.status == 0);
    std::istringstream in(r.out);
    std::string first;
    std::getline(in, first);
    REQUIRE(first.rfind("# ", 0) == 0);
    const auto schema = nlohmann::json::parse(first.substr(2));
    CHECK(schema.contains("columns"));
    CHECK(r.out.find("# generated") == std::string::npos);
    CHECK(r.out.find("PASS") != std::string::npos);
  }

  TEST_CASE("a violated tolerance exits with status 1 and names the check") {
    const Result r = call({"weyl-check", "--n-max", "2", "--y-count", "3", "--bandwidth", "16", "--tol", "1e-30"});
    CHECK(r.status == 1);
    CHECK(r.err.find("FAIL") != std::string::npos);
  }

  TEST_CASE("classify-net reports the residual as negligible") {
    const Result r = call({"classify-net", "--net", "residual", "--eps", "0.8,0.6,0.5,0.4,0.3,0.25,0.2", "--qmax", "8",
                           "--format", "json", "--no-timestamp"});
    CHECK(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["summary"]["verdict"] == "Negligible");
    CHECK(j["passed"] == true);
    const Result c = call({"classify-net", "--net", "mu_constant", "--expect", "Moderate", "--no-timestamp"});
    CHECK(c.status == 0);
    const Result wrong = call({"classify-net", "--net", "mu_constant", "--expect", "Negligible", "--no-timestamp"});
    CHECK(wrong.status == 1);
  }

  TEST_CASE("config files supply defaults and flags win") {
    const fs::path d = scratch("config");
    {
      std::ofstream cfg(d / "cfg.json");
      cfg << R"({"subcommand": "weyl-check", "params": {"n-max": 2, "y-count": 2, "bandwidth": 8, "format": "json"}})";
    }
    const Result a = call({"weyl-check", "--config", (d / "cfg.json").string(), "--no-timestamp"});
    CHECK(a.status == 0);
    const auto ja = nlohmann::json::parse(a.out);
    CHECK(ja["records"].size() == 2 * 2 * 20);
    const Result b = call({"weyl-check", "--config", (d / "cfg.json").string(), "--n-max", "3", "--no-timestamp"});
    CHECK(nlohmann::json::parse(b.out)["records"].size() == 3 * 2 * 20);
    fs::remove_all(d);
  }

  TEST_CASE("output directory from the environment") {
    const fs::path d = scratch("env");
    ::setenv("PGF_OUTPUT_DIR", d.c_str(), 1);
    const Result r = call({"shift-check", "--no-timestamp"});
    ::unsetenv("PGF_OUTPUT_DIR");
    CHECK(r.status == 0);
    CHECK(fs::exists(d / "shift-check.json"));
    fs::remove_all(d);
  }

  TEST_CASE("plot data: curves, and a bare header for a curveless report") {
    const fs::path d = scratch("plot");
    CHECK(call({"weyl-check", "--n-max", "1", "--y-count", "2", "--bandwidth", "8", "--plot-data", (d / "w.csv").string(),
                "-o", (d / "w.out").string()})
              .status == 0);
    CHECK(slurp(d / "w.csv") == "curve,x,y\n");
    CHECK(call({"classify-net", "--net", "residual", "--plot-data", (d / "c.csv").string(), "-o", (d / "c.out").string()})
              .status == 0);
    const std::string plot = slurp(d / "c.csv");
    CHECK(plot.find("\nsup,") != std::string::npos);
    CHECK(plot.find("\nbound,") != std::string::npos);
    fs::remove_all(d);
  }

  TEST_CASE("identical seeds give identical files") {
    const fs::path d = scratch("det");
    for (const char* name : {"a.csv", "b.csv"}) {
      CHECK(call({"min-uncertainty", "--eps", "0.4,0.2", "--random-states", "5", "--seed", "11", "--no-timestamp", "-o",
                  (d / name).string()})
                .status == 0);
    }
    CHECK(slurp(d / "a.csv") == slurp(d / "b.csv"));
    call({"min-uncertainty", "--eps", "0.4,0.2", "--random-states", "5", "--seed", "12", "--no-timestamp", "-o",
          (d / "c.csv").string()});
    CHECK(slurp(d / "a.csv") != slurp(d / "c.csv"));
    fs::remove_all(d);
  }
}
