#include "goldstein/bisection.hpp"
#include "goldstein/direction.hpp"
#include "goldstein/geometry.hpp"
#include "goldstein/minnorm.hpp"
#include "goldstein/optimizer.hpp"
#include "goldstein/testfns.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace goldstein;

namespace {

void BM_MinNorm(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(0));
  const auto m = static_cast<Index>(state.range(1));
  std::mt19937_64 gen(1);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd w(n, m);
  for (Index j = 0; j < m; ++j) {
    for (Index i = 0; i < n; ++i) w(i, j) = normal(gen) + 0.5;
  }
  for (auto _ : state) benchmark::DoNotOptimize(min_norm_point(w));
}
BENCHMARK(BM_MinNorm)->Args({2, 4})->Args({10, 12})->Args({50, 60});

void BM_BisectImprovedCounterexample(benchmark::State& state) {
  const auto f = testfns::counterexample_oracle();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bisect_improved(f, Vector::Zero(1), 1.0, 0.5, 0.25, Vector::Ones(1)));
  }
}
BENCHMARK(BM_BisectImprovedCounterexample);

void BM_BisectLegacyExhaustion(benchmark::State& state) {
  const auto f = testfns::counterexample_oracle();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bisect_legacy(f, Vector::Zero(1), 1.0, 0.5, Vector::Ones(1)));
  }
}
BENCHMARK(BM_BisectLegacyExhaustion);

void BM_ConeApexDirection(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(0));
  const auto f = testfns::cone_oracle(n);
  const DescentParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(descent_direction(f, Vector::Zero(n), params));
  }
}
BENCHMARK(BM_ConeApexDirection)->Arg(2)->Arg(10)->Arg(100);

void BM_MinimizeMaxquad(benchmark::State& state) {
  const auto f = testfns::maxquad_oracle();
  const DescentParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        minimize_deterministic(f, Vector::Ones(f.dimension()), params));
  }
}
BENCHMARK(BM_MinimizeMaxquad)->Unit(benchmark::kMillisecond);

void BM_D2Fraction(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(geometry::d2_fraction(n));
}
BENCHMARK(BM_D2Fraction)->Arg(2)->Arg(100)->Arg(1000);

}  // namespace
BENCHMARK_MAIN();
