#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "weakgibbs/measure.hpp"
#include "weakgibbs/multifractal.hpp"
#include "weakgibbs/pressure.hpp"
#include "weakgibbs/psi.hpp"

using namespace weakgibbs;

namespace {

LocallyConstantPotential random_potential(const TransitionSystem& ts, int depth, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return LocallyConstantPotential::from_function(ts, depth, [&](std::span<const Symbol>) { return u(rng); });
}

TransitionSystem system_for(int k) { return k == 0 ? TransitionSystem::golden_mean() : TransitionSystem::full_shift(k); }

}  // namespace

// Transfer-operator DP: cost linear in n.
static void BM_PressureCylinder(benchmark::State& state) {
  const auto phi = random_potential(system_for(static_cast<int>(state.range(0))), static_cast<int>(state.range(1)), 1);
  const int n = static_cast<int>(state.range(2));
  for (auto _ : state) benchmark::DoNotOptimize(pressure_cylinder(phi, n));
}
BENCHMARK(BM_PressureCylinder)->ArgsProduct({{2, 3}, {1, 2, 3}, {10, 20, 40}});

static void BM_PressurePeriodicTrace(benchmark::State& state) {
  const AdditiveSequence seq(random_potential(system_for(static_cast<int>(state.range(0))), 2, 2));
  const int n = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(pressure_periodic(seq, n));
}
BENCHMARK(BM_PressurePeriodicTrace)->ArgsProduct({{0, 2, 3}, {8, 16, 32}});

static void BM_PressureSpectral(benchmark::State& state) {
  const auto phi = random_potential(TransitionSystem::full_shift(static_cast<int>(state.range(0))),
                                    static_cast<int>(state.range(1)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(pressure_spectral(phi));
}
BENCHMARK(BM_PressureSpectral)->ArgsProduct({{2, 3, 4}, {1, 2, 3}});

static void BM_PressureLimit(benchmark::State& state) {
  const auto phi = random_potential(TransitionSystem::full_shift(3), 2, 4);
  const auto method = state.range(0) == 0 ? PressureMethod::cylinder : PressureMethod::periodic;
  for (auto _ : state) benchmark::DoNotOptimize(pressure_limit(phi, method, 1, 20).extrapolated);
}
BENCHMARK(BM_PressureLimit)->Arg(0)->Arg(1);

static void BM_BuildRpf(benchmark::State& state) {
  const auto phi = random_potential(TransitionSystem::full_shift(2), static_cast<int>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(build_rpf(phi).gibbs_constant);
}
BENCHMARK(BM_BuildRpf)->DenseRange(1, 4);

// Exhaustive K*(n): exponential in n_max.
static void BM_CertifyWeakGibbs(benchmark::State& state) {
  const auto phi = random_potential(TransitionSystem::golden_mean(), 2, 6);
  const auto rpf = build_rpf(phi);
  const AdditiveSequence seq(phi);
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(certify_weak_gibbs(*rpf.measure, seq, rpf.pressure(), n_max, 0.1).constant);
}
BENCHMARK(BM_CertifyWeakGibbs)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_PsiPressureZero(benchmark::State& state) {
  const auto psi = build_psi(std::make_shared<MarkovMeasure>(MarkovMeasure::parry(TransitionSystem::golden_mean())));
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_pressure_zero(psi, n_max, 1e-3).estimate.extrapolated);
}
BENCHMARK(BM_PsiPressureZero)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_SpectrumCrosscheck(benchmark::State& state) {
  SearchSpec spec;
  spec.step = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spectrum_crosscheck(0.3, 2.0, 2.0, 50, spec).max_deviation);
}
BENCHMARK(BM_SpectrumCrosscheck)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
