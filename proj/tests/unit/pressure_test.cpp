#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "weakgibbs/errors.hpp"
#include "weakgibbs/measure.hpp"
#include "weakgibbs/numeric.hpp"
#include "weakgibbs/pressure.hpp"
#include "weakgibbs/psi.hpp"

using namespace weakgibbs;

namespace {

const double kGolden = std::log((1.0 + std::sqrt(5.0)) / 2.0);

std::vector<TransitionSystem> systems() {
  return {TransitionSystem::full_shift(2), TransitionSystem::full_shift(3), TransitionSystem::golden_mean(),
          TransitionSystem(3, {1, 1, 0, 0, 1, 1, 1, 0, 1})};
}

// Hides the generator so log_periodic_sum enumerates Fix(sigma^n).
ExplicitSequence enumerated(const LocallyConstantPotential& phi) {
  return ExplicitSequence(phi.system(), [d = phi.depth()](int n) { return n + d - 1; },
                          [phi](int n, std::span<const Symbol> w) { return birkhoff_sum(phi, w, n); });
}

}  // namespace

TEST(PressureCylinder, Examples) {
  for (int k = 2; k <= 5; ++k) {
    const auto zero = LocallyConstantPotential::constant(TransitionSystem::full_shift(k), 0.0);
    for (int n = 1; n <= 25; ++n) EXPECT_EQ(pressure_cylinder(zero, n), std::log(double(k))) << k << " " << n;
  }
  const auto golden = LocallyConstantPotential::constant(TransitionSystem::golden_mean(), 0.0);
  // Cylinder counts are Fibonacci numbers: 2, 3, 5, 8, ...
  double f0 = 1, f1 = 2;
  for (int n = 1; n <= 30; ++n) {
    EXPECT_NEAR(pressure_cylinder(golden, n), std::log(f1) / n, 1e-14);
    std::tie(f0, f1) = std::make_pair(f1, f0 + f1);
  }
  const auto est = pressure_limit(golden, PressureMethod::cylinder, 1, 30);
  EXPECT_NEAR(est.extrapolated, kGolden, 1e-6);

  for (double p : {0.3, 0.5, 0.9}) {
    const double v[2] = {std::log(p), std::log1p(-p)};
    const auto phi = LocallyConstantPotential::by_symbol(TransitionSystem::full_shift(2), v);
    for (int n = 1; n <= 25; ++n) EXPECT_NEAR(pressure_cylinder(phi, n), 0.0, 4e-16);
  }
}

TEST(PressureCylinder, MatchesBruteForce) {
  oracle::Rng rng(101);
  for (const auto& ts : systems()) {
    for (int depth = 1; depth <= 3; ++depth) {
      const auto phi = oracle::random_potential(ts, depth, rng, -2.0, 2.0);
      for (int n = 1; n <= 8; ++n) {
        if (std::pow(ts.alphabet_size(), n + depth - 1) > 2e4) break;
        EXPECT_NEAR(pressure_cylinder(phi, n), oracle::cylinder_pressure(phi, n), 1e-13)
            << "k=" << ts.alphabet_size() << " d=" << depth << " n=" << n;
        EXPECT_NEAR(log_cylinder_sum(phi, n), n * oracle::cylinder_pressure(phi, n), 1e-12);
      }
    }
  }
}

TEST(PressurePeriodic, Examples) {
  const AdditiveSequence zero2(LocallyConstantPotential::constant(TransitionSystem::full_shift(2), 0.0));
  for (int n = 1; n <= 20; ++n) EXPECT_EQ(pressure_periodic(zero2, n), std::log(2.0));
  const AdditiveSequence golden(LocallyConstantPotential::constant(TransitionSystem::golden_mean(), 0.0));
  EXPECT_NEAR(pressure_periodic(golden, 4), std::log(7.0) / 4, 1e-15);
  EXPECT_NEAR(pressure_periodic(golden, 4), 0.48648, 1e-5);
}

TEST(PressurePeriodic, TraceEqualsEnumerationAndBruteForce) {
  oracle::Rng rng(103);
  for (const auto& ts : systems()) {
    for (int depth = 1; depth <= 3; ++depth) {
      const auto phi = oracle::random_potential(ts, depth, rng, -2.0, 2.0);
      const AdditiveSequence trace(phi);
      const auto listed = enumerated(phi);
      for (int n = 1; n <= 8; ++n) {
        if (std::pow(ts.alphabet_size(), n) > 1e4) break;
        const double a = pressure_periodic(trace, n);
        EXPECT_NEAR(a, pressure_periodic(listed, n), 1e-13);
        EXPECT_NEAR(a, oracle::periodic_pressure(phi, n), 1e-13);
      }
    }
  }
}

TEST(PressurePeriodic, RefusesNonMixing) {
  const TransitionSystem cycle(2, {0, 1, 1, 0});
  const auto zero = LocallyConstantPotential::constant(cycle, 0.0);
  EXPECT_THROW(pressure_periodic(AdditiveSequence(zero), 3), NonMixing);
  EXPECT_THROW(pressure_spectral(zero), NonMixing);
  EXPECT_THROW(build_rpf(zero), NonMixing);
}

TEST(PressureSpectral, ExamplesAndEigenOracle) {
  for (int k = 2; k <= 4; ++k)
    EXPECT_NEAR(pressure_spectral(LocallyConstantPotential::constant(TransitionSystem::full_shift(k), 0.0)), std::log(double(k)), 1e-13);
  EXPECT_NEAR(pressure_spectral(LocallyConstantPotential::constant(TransitionSystem::golden_mean(), 0.0)), kGolden, 1e-13);
  const double v[2] = {std::log(0.3), std::log(0.7)};
  EXPECT_NEAR(pressure_spectral(LocallyConstantPotential::by_symbol(TransitionSystem::full_shift(2), v)), 0.0, 1e-13);

  oracle::Rng rng(107);
  for (const auto& ts : systems()) {
    for (int depth = 1; depth <= 4; ++depth) {
      const auto phi = oracle::random_potential(ts, depth, rng, -3.0, 3.0);
      EXPECT_NEAR(pressure_spectral(phi), oracle::spectral_pressure(phi), 1e-11);
    }
  }
}

TEST(PressureLimit, ConstantSequenceHasZeroErrorBar) {
  const auto zero = LocallyConstantPotential::constant(TransitionSystem::full_shift(2), 0.0);
  for (auto method : {PressureMethod::cylinder, PressureMethod::periodic}) {
    const auto est = pressure_limit(zero, method, 1, 12);
    EXPECT_EQ(est.extrapolated, std::log(2.0));
    EXPECT_EQ(est.error_bar, 0.0);
    EXPECT_EQ(est.finite_n_values.size(), 12u);
  }
  const auto spectral = pressure_limit(zero, PressureMethod::spectral, 1, 12);
  EXPECT_TRUE(spectral.finite_n_values.empty());
  EXPECT_EQ(spectral.error_bar, 0.0);
  EXPECT_THROW(pressure_limit(zero, PressureMethod::cylinder, 5, 5), InvalidInput);
}

TEST(PressureLimit, RandomDepthOneMatchesSpectral) {
  const auto f2 = TransitionSystem::full_shift(2);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    oracle::Rng rng(seed);
    const auto phi = oracle::random_potential(f2, 1, rng);
    const double p = pressure_spectral(phi);
    EXPECT_NEAR(pressure_limit(phi, PressureMethod::cylinder, 1, 20).extrapolated, p, 1e-8);
    EXPECT_NEAR(pressure_limit(phi, PressureMethod::periodic, 1, 20).extrapolated, p, 1e-8);
  }
}

TEST(PressureLimit, MethodsAgreeWithinErrorBar) {
  oracle::Rng rng(109);
  for (const auto& ts : systems()) {
    const int n_max = ts.alphabet_size() == 2 ? 20 : 14;
    for (int depth = 1; depth <= 2; ++depth) {
      for (int i = 0; i < 10; ++i) {
        const auto phi = oracle::random_potential(ts, depth, rng);
        const double p = oracle::spectral_pressure(phi);
        for (auto method : {PressureMethod::cylinder, PressureMethod::periodic}) {
          const auto est = pressure_limit(phi, method, 1, n_max);
          EXPECT_LE(std::abs(est.extrapolated - p), est.error_bar + 1e-6);
          EXPECT_GE(est.error_bar, 0.0);
        }
      }
    }
  }
}

TEST(Pressure, MonotoneInThePotential) {
  oracle::Rng rng(113);
  for (const auto& ts : systems()) {
    const auto phi = oracle::random_potential(ts, 2, rng);
    const auto bump = oracle::random_potential(ts, 3, rng, 0.0, 0.5);
    const auto larger = phi + bump;
    for (int n = 1; n <= 10; ++n) EXPECT_LE(pressure_cylinder(phi, n), pressure_cylinder(larger, n));
    EXPECT_LE(pressure_spectral(phi), pressure_spectral(larger));
  }
}

TEST(Pressure, TranslationByConstants) {
  oracle::Rng rng(127);
  for (const auto& ts : systems()) {
    for (int i = 0; i < 10; ++i) {
      const auto phi = oracle::random_potential(ts, 2, rng);
      const double c = rng.uniform(-5.0, 5.0);
      EXPECT_NEAR(pressure_spectral(phi.plus(c)), pressure_spectral(phi) + c, 1e-12);
    }
  }
}

TEST(LogSumExp, PermutationInvariantAndStable) {
  oracle::Rng rng(131);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(static_cast<std::size_t>(1 + rng.below(300)));
    for (double& x : v) x = rng.uniform(-700.0, 700.0);
    const double a = log_sum_exp(v);
    std::reverse(v.begin(), v.end());
    EXPECT_EQ(a, log_sum_exp(v));
    std::rotate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(v.size() / 3), v.end());
    EXPECT_NEAR(a, log_sum_exp(v), 1e-12);
  }
  const std::vector<double> big{1000.0, 1000.0};
  EXPECT_NEAR(log_sum_exp(big), 1000.0 + std::log(2.0), 1e-12);
  EXPECT_EQ(log_sum_exp(std::vector<double>{}), -INFINITY);
}

TEST(LemmaApprox, Examples) {
  oracle::Rng rng(137);
  const auto phi = oracle::random_potential(TransitionSystem::golden_mean(), 2, rng);

  AdditiveSequence additive(phi);
  additive.set_family([phi](int) { return phi; });
  const auto exact = lemma_approx_check(additive, 1, 16);
  EXPECT_TRUE(exact.holds);
  EXPECT_NEAR(exact.eps_bar, 0.0, 1e-15);
  EXPECT_LE(std::abs(exact.pressure_seq.extrapolated - exact.pressure_rho), exact.pressure_seq.error_bar + 1e-6);

  // Bernoulli log weights: P = 0, so rho = phi +- P coincide.
  const auto f2 = TransitionSystem::full_shift(2);
  const double p[2] = {0.3, 0.7};
  const double v[2] = {std::log(0.3), std::log(0.7)};
  const auto log_weights = LocallyConstantPotential::by_symbol(f2, v);
  auto psi = build_psi(std::make_shared<MarkovMeasure>(MarkovMeasure::bernoulli(f2, p)));
  psi.set_family([log_weights](int) { return log_weights; });
  const auto bern = lemma_approx_check(psi, 1, 14);
  EXPECT_TRUE(bern.holds);
  EXPECT_NEAR(bern.pressure_seq.extrapolated, 0.0, 1e-12);
  EXPECT_NEAR(bern.pressure_rho, 0.0, 1e-12);

  // S_n phi + sqrt(n): defect sqrt(n)/n, pressure unchanged in the limit.
  ExplicitSequence shifted(phi.system(), [](int n) { return n + 1; },
                           [phi](int n, std::span<const Symbol> w) { return birkhoff_sum(phi, w, n) + std::sqrt(n); });
  shifted.set_family([phi](int) { return phi; });
  const auto root = lemma_approx_check(shifted, 1, 16);
  EXPECT_TRUE(root.holds);
  EXPECT_NEAR(root.eps_bar, 1.0 / std::sqrt(8.0), 1e-12);
}

TEST(VariationalCheck, Examples) {
  const auto f2 = TransitionSystem::full_shift(2);
  const auto zero = LocallyConstantPotential::constant(f2, 0.0);
  const double half[2] = {0.5, 0.5}, p3[2] = {0.3, 0.7};
  const std::vector<MarkovMeasure> uniform{MarkovMeasure::bernoulli(f2, half)};
  const auto u = variational_check(zero, uniform);
  EXPECT_NEAR(u.best_gap, 0.0, 1e-14);
  EXPECT_TRUE(u.all_below);

  const std::vector<MarkovMeasure> skew{MarkovMeasure::bernoulli(f2, p3)};
  const auto s = variational_check(zero, skew);
  EXPECT_NEAR(s.entries[0].entropy, 0.6108643, 1e-7);
  EXPECT_GT(s.best_gap, 0.08);

  oracle::Rng rng(139);
  for (const auto& ts : systems()) {
    for (int depth = 1; depth <= 2; ++depth) {
      const auto phi = oracle::random_potential(ts, depth, rng);
      const auto rpf = build_rpf(phi);
      std::vector<MarkovMeasure> family{*rpf.measure, MarkovMeasure::parry(ts)};
      const auto rep = variational_check(phi, family);
      EXPECT_TRUE(rep.all_below);
      EXPECT_EQ(rep.best, 0u);
      EXPECT_LE(rep.best_gap, 1e-8);
    }
  }
  EXPECT_THROW(variational_check(zero, std::vector<MarkovMeasure>{}), InvalidInput);
}
