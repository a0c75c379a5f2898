#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "pgf/colombeau.hpp"
#include "pgf/kernels.hpp"

namespace {

std::vector<pgf::cplx> random_vector(std::size_t n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> d;
  std::vector<pgf::cplx> v(n);
  for (auto& x : v) x = {d(rng), d(rng)};
  return v;
}

template <void (*Kernel)(std::span<const pgf::cplx>, int, std::span<pgf::cplx>)>
void BM_analyze(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto samples = random_vector(static_cast<std::size_t>(8 * N + 8));
  std::vector<pgf::cplx> out(static_cast<std::size_t>(2 * N + 1));
  for (auto _ : state) {
    Kernel(samples, N, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <void (*Kernel)(std::span<const pgf::cplx>, std::span<pgf::cplx>)>
void BM_synthesize(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto coeffs = random_vector(static_cast<std::size_t>(2 * N + 1));
  std::vector<pgf::cplx> out(static_cast<std::size_t>(8 * N + 8));
  for (auto _ : state) {
    Kernel(coeffs, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <double (*Kernel)(const std::function<pgf::cplx(double)>&, std::span<const double>)>
void BM_sup(benchmark::State& state) {
  const pgf::Net psi = pgf::wrapped_gaussian_net(6);
  const auto thetas = pgf::sup_samples(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Kernel([&](double t) { return psi.derivative(0.3, t, 2); }, thetas));
  }
}

}  // namespace

BENCHMARK(BM_analyze<pgf::kernels::analyze_serial>)->Arg(64)->Arg(256);
BENCHMARK(BM_analyze<pgf::kernels::analyze_parallel>)->Arg(64)->Arg(256);
BENCHMARK(BM_synthesize<pgf::kernels::synthesize_grid_serial>)->Arg(64)->Arg(256);
BENCHMARK(BM_synthesize<pgf::kernels::synthesize_grid_parallel>)->Arg(64)->Arg(256);
BENCHMARK(BM_sup<pgf::kernels::sup_abs_serial>)->Arg(500)->Arg(5000);
BENCHMARK(BM_sup<pgf::kernels::sup_abs_parallel>)->Arg(500)->Arg(5000);

BENCHMARK_MAIN();
