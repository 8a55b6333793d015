#pragma once

// Topological pressure by three routes: cylinder sums, periodic-point sums,
// and the Perron root of the block transfer matrix.
//
// On a shift space, distinct n-cylinders are (n, eps)-separated once eps is
// below the smallest distance between points with different first symbols,
// so the cylinder sum is the separated-set pressure at every small eps; no
// separate eps-parameterized estimator exists here.

#include <span>
#include <string>
#include <vector>

#include "weakgibbs/measure.hpp"
#include "weakgibbs/potential.hpp"
#include "weakgibbs/sequence.hpp"

namespace weakgibbs {

enum class PressureMethod { cylinder, periodic, spectral };
std::string to_string(PressureMethod m);

struct PressureEstimate {
  PressureMethod method = PressureMethod::spectral;
  std::vector<std::pair<int, double>> finite_n_values;  // (n, (1/n) log Z_n); empty for spectral
  double extrapolated = 0.0;
  double error_bar = 0.0;
  bool accelerated = false;
};

/// log sum over n-words C of exp(sup_C S_n phi). Exact; computed by a
/// log-domain transfer recursion on blocks, the sup taken over the
/// (depth-1)-symbol extensions of each word.
double log_cylinder_sum(const LocallyConstantPotential& phi, int n);
/// (1/n) log_cylinder_sum.
double pressure_cylinder(const LocallyConstantPotential& phi, int n);

/// log sum over omega in Fix(sigma^n) of exp(phi_n(omega)). Additive
/// sequences use log trace(M^n) of the block transfer matrix, which is the
/// same sum; other kinds enumerate the periodic points.
/// Throws NonMixing on non-mixing systems.
double log_periodic_sum(const PotentialSequence& seq, int n);
/// (1/n) log_periodic_sum.
double pressure_periodic(const PotentialSequence& seq, int n);

/// log of the Perron root of the block transfer matrix.
double pressure_spectral(const LocallyConstantPotential& phi, double tol = 1e-13, int max_iter = 1'000'000);

/// Finite-n values for n in [n_min, n_max] and an extrapolated limit.
///
/// (1/n) log Z_n converges only like 1/n, while the growth increments
/// log Z_n - log Z_{n-1} converge geometrically for locally constant data;
/// Aitken delta-squared is applied to the last three increments and the
/// error bar is their spread. Falls back to the last increment when the
/// Aitken denominator is below 1e-14.
PressureEstimate pressure_limit(const LocallyConstantPotential& phi, PressureMethod method, int n_min, int n_max);
/// Periodic-point route for a sequence.
PressureEstimate pressure_limit(const PotentialSequence& seq, int n_min, int n_max);

struct ApproxCheckReport {
  double eps_bar = 0.0;           // max asymptotic defect over n in [n_max/2, n_max]
  double pressure_rho = 0.0;      // spectral P(rho_k)
  PressureEstimate pressure_seq;  // periodic P(Phi)
  double lower = 0.0;             // P(rho) - 2 eps - error_bar
  double upper = 0.0;             // P(rho) + 2 eps + error_bar
  bool holds = false;
};

/// Two-sided bound P(rho_k) - 2 eps <= P(Phi) <= P(rho_k) + 2 eps, with eps the
/// observed tail defect and the periodic error bar as extra slack.
ApproxCheckReport lemma_approx_check(const PotentialSequence& seq, int k, int n_max);

struct VariationalEntry {
  double entropy = 0.0;
  double integral = 0.0;
  double free_energy = 0.0;  // entropy + integral
  double gap = 0.0;          // P - free_energy
};

struct VariationalReport {
  double pressure = 0.0;
  std::vector<VariationalEntry> entries;
  std::size_t best = 0;
  double best_gap = 0.0;
  bool all_below = false;  // every free energy <= P + 1e-10
};

/// h(mu) + integral phi dmu for each measure against the spectral pressure.
/// Rejects measures that are not shift-invariant to 1e-10 on words up to
/// length depth + 2.
VariationalReport variational_check(const LocallyConstantPotential& phi, std::span<const MarkovMeasure> family);

}  // namespace weakgibbs
