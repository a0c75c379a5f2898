#include <omp.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "pgf/kernels.hpp"

using namespace pgf::kernels;

namespace {

std::vector<cplx> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {d(rng), d(rng)};
  return v;
}

bool bitwise_equal(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0;
}

struct Threads {
  explicit Threads(int n) : saved(omp_get_max_threads()) { omp_set_num_threads(n); }
  ~Threads() { omp_set_num_threads(saved); }
  int saved;
};

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("parallel analysis is bit-identical to the serial reference") {
    Threads t(4);
    for (int N : {3, 64, 200}) {
      const auto s = random_vector(static_cast<std::size_t>(8 * N + 8), 11);
      std::vector<cplx> a(2 * N + 1), b(2 * N + 1);
      analyze_serial(s, N, a);
      analyze_parallel(s, N, b);
      CHECK(bitwise_equal(a, b));
      std::vector<cplx> c(2 * N + 1);
      analyze(s, N, c);
      CHECK(bitwise_equal(a, c));
    }
  }

  TEST_CASE("parallel grid synthesis is bit-identical to the serial reference") {
    Threads t(4);
    for (int N : {2, 100}) {
      const auto c = random_vector(static_cast<std::size_t>(2 * N + 1), 12);
      std::vector<cplx> a(1000), b(1000), d(1000);
      synthesize_grid_serial(c, a);
      synthesize_grid_parallel(c, b);
      synthesize_grid(c, d);
      CHECK(bitwise_equal(a, b));
      CHECK(bitwise_equal(a, d));
    }
  }

  TEST_CASE("parallel point synthesis is bit-identical to the serial reference") {
    Threads t(3);
    const auto c = random_vector(129, 13);
    std::vector<double> th(777);
    for (std::size_t i = 0; i < th.size(); ++i) th[i] = -3.1 + 6.2 * double(i) / double(th.size());
    std::vector<cplx> a(th.size()), b(th.size());
    synthesize_points_serial(c, th, a);
    synthesize_points_parallel(c, th, b);
    CHECK(bitwise_equal(a, b));
  }

  TEST_CASE("analysis inverts synthesis") {
    const auto c = random_vector(33, 14);
    std::vector<cplx> s(64), back(33);
    synthesize_grid(c, s);
    analyze(s, 16, back);
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(std::abs(back[i] - c[i]) < 1e-13);
  }

  TEST_CASE("sup_abs: serial and parallel agree, non-finite values give NaN") {
    Threads t(4);
    std::vector<double> th(1000);
    for (std::size_t i = 0; i < th.size(); ++i) th[i] = double(i) / 100.0;
    auto f = [](double x) { return cplx{std::sin(x), std::cos(3 * x)}; };
    CHECK(sup_abs_serial(f, th) == sup_abs_parallel(f, th));
    CHECK(sup_abs(f, th) == sup_abs_serial(f, th));
    auto bad = [](double x) { return x > 5.0 ? cplx{INFINITY, 0.0} : cplx{x, 0.0}; };
    CHECK(std::isnan(sup_abs_serial(bad, th)));
    CHECK(std::isnan(sup_abs_parallel(bad, th)));
  }
}
