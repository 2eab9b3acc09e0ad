#include <benchmark/benchmark.h>

#include "rbftune/rbftune.hpp"

using namespace rbftune;

namespace {

DataSet halton_f1(std::size_t n) { return sample_function(TestFunction::F1, halton_points(n, 2)); }

KernelFamily family_arg(int64_t k) { return static_cast<KernelFamily>(k); }

void BM_Assemble(benchmark::State& state) {
  const auto pts = halton_points(static_cast<std::size_t>(state.range(0)), 2);
  const RbfKernel k(family_arg(state.range(1)), 5.0);
  for (auto _ : state) benchmark::DoNotOptimize(assemble(k, pts));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Assemble)->ArgsProduct({{250, 500, 1000}, {0, 1, 2}})->Unit(benchmark::kMillisecond);

void BM_FitInterpolant(benchmark::State& state) {
  const auto ds = halton_f1(static_cast<std::size_t>(state.range(0)));
  const RbfKernel k(KernelFamily::Matern2, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(fit(k, ds));
}
BENCHMARK(BM_FitInterpolant)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_FitLeastSquares(benchmark::State& state) {
  const auto ds = halton_f1(1000);
  const auto centers = select_centers(ds.locations(), static_cast<double>(state.range(0)) / 100.0, 1);
  const RbfKernel k(KernelFamily::Gaussian, 6.0);
  for (auto _ : state) benchmark::DoNotOptimize(fit(k, ds, centers));
}
BENCHMARK(BM_FitLeastSquares)->Arg(20)->Arg(60)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_RippaErrors(benchmark::State& state) {
  const auto ds = halton_f1(static_cast<std::size_t>(state.range(0)));
  const RbfKernel k(family_arg(state.range(1)), 6.0);
  for (auto _ : state) benchmark::DoNotOptimize(rippa_errors(k, ds));
}
BENCHMARK(BM_RippaErrors)->ArgsProduct({{64, 250, 1000}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_GpFit(benchmark::State& state) {
  const auto n = state.range(0);
  Rng rng(7);
  Eigen::VectorXd x(n), y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x(i) = rng.uniform_left_open(0.0, 20.0);
    y(i) = -std::abs(x(i) - 6.0);
  }
  for (auto _ : state) benchmark::DoNotOptimize(GpSurrogate::fit(x, y));
}
BENCHMARK(BM_GpFit)->Arg(10)->Arg(30)->Unit(benchmark::kMicrosecond);

void BM_ProposeNext(benchmark::State& state) {
  Rng data_rng(3);
  Eigen::VectorXd x(30), y(30);
  for (Eigen::Index i = 0; i < 30; ++i) {
    x(i) = data_rng.uniform_left_open(0.0, 20.0);
    y(i) = -std::abs(x(i) - 6.0);
  }
  const auto gp = GpSurrogate::fit(x, y);
  BoConfig cfg;
  cfg.lo = 0.0;
  cfg.hi = 20.0;
  Rng rng(11);
  for (auto _ : state) benchmark::DoNotOptimize(propose_next(gp, y.maxCoeff(), cfg, rng));
}
BENCHMARK(BM_ProposeNext)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
