#pragma once

// Dimension spectra of pointwise dimensions for weak Gibbs measures on
// piecewise-linear expanding Markov maps: the conditional variational
// principle over Markov candidates, and a closed-form Legendre oracle for
// Bernoulli measures.
//
// The constraint for nu at level alpha_i is the limit of
// (1/n)-free quadratures sum_w nu(w) psi^i_n(w) / log D_n(w). When mu_i is
// Gibbs for a known potential phi_i with pressure P_i this limit is the
// quotient of integrals -(int phi_i dnu - P_i) / int gamma~ dnu. Both are
// reported; the quadrature is evaluated at the maximizer.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "weakgibbs/interval_map.hpp"
#include "weakgibbs/measure.hpp"

namespace weakgibbs {

enum class SpectrumMethod { variational, legendre };
std::string to_string(SpectrumMethod m);

struct SpectrumCurve {
  SpectrumMethod method = SpectrumMethod::legendre;
  std::vector<double> parameter;  // u for the Legendre curve, target alpha for the variational one
  std::vector<double> alpha;
  std::vector<std::optional<double>> f;  // empty where infeasible
  std::vector<bool> feasible;
};

/// alpha(u) = -(u log p + (1-u) log(1-p)) / (u log s1 + (1-u) log s2),
/// f(u) = H(u) / (u log s1 + (1-u) log s2), u = j / (points + 1), j = 1..points.
SpectrumCurve spectrum_legendre_bernoulli(double p, double s1, double s2, int points);
inline SpectrumCurve spectrum_legendre_bernoulli(double p, double s, int points) {
  return spectrum_legendre_bernoulli(p, s, s, points);
}
/// Same formulas at given u values (endpoints 0 and 1 allowed).
SpectrumCurve spectrum_legendre_bernoulli_at(double p, double s1, double s2, const std::vector<double>& u);

struct ConcavityReport {
  bool concave = true;
  double worst = 0.0;  // largest increase of consecutive divided differences
};
/// f as a function of alpha has nonincreasing divided differences within
/// `tol`. Curves whose alpha values coincide (p = 1/2, equal slopes) are
/// reported concave with worst = 0.
ConcavityReport check_concavity(const SpectrumCurve& curve, double tol = 1e-9);

struct SearchSpec {
  double step = 1e-3;      // simplex grid step, 1/step must be an integer
  double delta = 1e-3;     // feasibility tolerance per coordinate
  int quadrature_n = 12;   // depth of the quadrature at the maximizer
};

struct HypothesisCheck {
  bool invariant = false;
  bool weak_gibbs = false;
  bool atom_free = false;
  std::string verdict;
  std::optional<int> atom_free_witness;
};

struct VariationalResult {
  bool feasible = false;
  double f = 0.0;
  std::optional<MarkovMeasure> argmax;
  std::vector<double> argmax_parameters;     // Bernoulli weights or row-major Q
  std::vector<double> constraint_closed;     // quotient of integrals at argmax
  std::vector<double> constraint_quadrature; // integral of quotients at argmax, n = quadrature_n
  std::vector<double> quadrature_stability;  // |Q(n) - Q(n - 1)|
  bool disagreement = false;                 // closed vs quadrature beyond delta
  int candidates = 0;
  std::vector<HypothesisCheck> hypotheses;   // one per measure
};

/// Measures must expose a Gibbs potential (`gibbs_potential()`); without one
/// every candidate is evaluated by quadrature at depth quadrature_n.
/// Candidates: Bernoulli weights on the simplex grid for full shifts, one-step
/// Markov rows on per-row simplex grids otherwise.
VariationalResult spectrum_variational(const PiecewiseLinearMap& map,
                                       const std::vector<std::shared_ptr<const CylinderMeasureOracle>>& measures,
                                       const std::vector<double>& alpha, const SearchSpec& spec = {});

/// Candidate family for `map`, in enumeration order.
std::vector<MarkovMeasure> search_family(const TransitionSystem& ts, double step);

struct CrosscheckRow {
  double u = 0.0;
  double alpha = 0.0;
  double f_legendre = 0.0;
  std::optional<double> f_variational;
};

struct CrosscheckReport {
  std::vector<CrosscheckRow> rows;
  double max_deviation = 0.0;  // over feasible rows
};

/// Bernoulli(p, 1-p) on the full-branch map with slopes (s1, s2): the
/// variational value at each alpha of the Legendre grid against the
/// Legendre value.
CrosscheckReport spectrum_crosscheck(double p, double s1, double s2, int alpha_points, const SearchSpec& spec = {});

}  // namespace weakgibbs
