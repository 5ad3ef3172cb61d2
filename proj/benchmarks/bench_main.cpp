#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "viscostring/kernels.hpp"
#include "viscostring/linalg.hpp"
#include "viscostring/moments.hpp"
#include "viscostring/parallel.hpp"
#include "viscostring/volterra.hpp"

namespace vs = viscostring;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

vs::MemoryKernel reference() { return vs::MemoryKernel::exponential_sum({{0.4, 1.0}}); }

void BM_Convolve(benchmark::State& state) {
  const int steps = static_cast<int>(state.range(0));
  const vs::TimeGrid grid(kTwoPi, steps);
  std::vector<double> a(grid.size()), b(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    a[k] = std::exp(-grid.time(static_cast<int>(k)));
    b[k] = std::cos(grid.time(static_cast<int>(k)));
  }
  for (auto _ : state) benchmark::DoNotOptimize(vs::convolve(a, b, grid));
  state.SetComplexityN(steps);
}
BENCHMARK(BM_Convolve)->RangeMultiplier(2)->Range(512, 4096)->Complexity(benchmark::oNSquared);

void BM_DeriveKernels(benchmark::State& state) {
  const vs::TimeGrid grid(kTwoPi, static_cast<int>(state.range(0)));
  const auto kernel = reference();
  for (auto _ : state) benchmark::DoNotOptimize(vs::derive_kernels(kernel, grid));
}
BENCHMARK(BM_DeriveKernels)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_SolveModeZn(benchmark::State& state) {
  const vs::TimeGrid grid(kTwoPi, static_cast<int>(state.range(0)));
  const auto kernels = vs::derive_kernels(reference(), grid);
  for (auto _ : state) benchmark::DoNotOptimize(vs::solve_mode_zn(8, kernels));
}
BENCHMARK(BM_SolveModeZn)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_SolveModeZnOde(benchmark::State& state) {
  const vs::TimeGrid grid(kTwoPi, static_cast<int>(state.range(0)));
  const auto kernels = vs::derive_kernels(reference(), grid);
  for (auto _ : state) benchmark::DoNotOptimize(vs::solve_mode_Zn_ode(8, kernels));
}
BENCHMARK(BM_SolveModeZnOde)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_BuildFamily(benchmark::State& state) {
  vs::set_max_threads(1);
  const vs::TimeGrid grid(kTwoPi, 2048);
  const auto kernels = vs::derive_kernels(reference(), grid);
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(vs::build_family(kernels, n_max));
}
BENCHMARK(BM_BuildFamily)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_JacobiEigenvalues(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  vs::HermitianMatrix a(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const double re = 1.0 / (1.0 + i + j);
      const double im = i == j ? 0.0 : (i < j ? 0.1 : -0.1) / (1.0 + i + j);
      a(i, j) = {re + (i == j ? 1.0 : 0.0), im};
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(vs::jacobi_eigenvalues(a));
}
BENCHMARK(BM_JacobiEigenvalues)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
