#pragma once

// Expanding Markov interval maps, their cylinder intervals, and the
// comparison of log D_n with Birkhoff sums of gamma = log|T'|.
//
// Sign convention, stated once: D_n(w) is the diameter of the cylinder
// interval I(w) and log D_n < 0. It is compared with S_n(-gamma), i.e.
// the residual is log D_n(w) + S_n gamma(w).

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weakgibbs/measure.hpp"
#include "weakgibbs/sft.hpp"

namespace weakgibbs {

struct Interval {
  double left = 0.0;
  double right = 0.0;
  double length() const { return right - left; }
};

/// Branch i maps domain(i) monotonically onto image(i). Markov property: the
/// image contains every domain j with t_ij = 1 and meets the interior of no
/// domain j with t_ij = 0.
class ExpandingMarkovMap {
 public:
  virtual ~ExpandingMarkovMap() = default;

  const TransitionSystem& system() const { return ts_; }
  const Interval& domain(Symbol i) const { return domains_[static_cast<std::size_t>(i - 1)]; }
  const Interval& image(Symbol i) const { return images_[static_cast<std::size_t>(i - 1)]; }
  bool increasing(Symbol i) const { return increasing_[static_cast<std::size_t>(i - 1)]; }

  virtual bool piecewise_linear() const = 0;
  virtual double apply(Symbol i, double x) const = 0;
  virtual double derivative(Symbol i, double x) const = 0;
  /// Inverse of branch i on image(i).
  virtual double inverse(Symbol i, double y) const = 0;

  /// Branch containing x; a point on a shared boundary goes to the smaller
  /// symbol. Throws InvalidInput if x lies in no domain.
  Symbol branch_of(double x) const;

 protected:
  ExpandingMarkovMap(TransitionSystem ts, std::vector<Interval> domains, std::vector<Interval> images,
                     std::vector<bool> increasing);
  void validate_markov() const;

  TransitionSystem ts_;
  std::vector<Interval> domains_;
  std::vector<Interval> images_;
  std::vector<bool> increasing_;
};

/// Affine branches; slope_i = |image_i| / |domain_i|, required > 1.
class PiecewiseLinearMap final : public ExpandingMarkovMap {
 public:
  PiecewiseLinearMap(TransitionSystem ts, std::vector<Interval> domains, std::vector<Interval> images,
                     std::vector<bool> increasing);

  /// Full-branch map on the full shift: domains laid out from 0 with
  /// lengths 1/s_i, every image [0, 1], increasing. Needs sum 1/s_i <= 1.
  static PiecewiseLinearMap full_branch(std::vector<double> slopes);
  /// Golden-mean Markov map: [0, g] -> [0, 1] and [g, 1] -> [0, g],
  /// g = (sqrt 5 - 1)/2, both slopes equal to the golden ratio.
  static PiecewiseLinearMap golden_mean();

  bool piecewise_linear() const override { return true; }
  double apply(Symbol i, double x) const override;
  double derivative(Symbol i, double) const override { return increasing(i) ? slope(i) : -slope(i); }
  double inverse(Symbol i, double y) const override;

  double slope(Symbol i) const { return slopes_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<double>& slopes() const { return slopes_; }

 private:
  std::vector<double> slopes_;
};

/// C^1 branches given as callables; inverses by bisection to full double
/// precision. Expansion |T'| >= 1 is checked on a grid only, so results on
/// this class are sampled and non-rigorous.
class GeneralMarkovMap final : public ExpandingMarkovMap {
 public:
  using BranchFn = std::function<double(Symbol, double)>;

  GeneralMarkovMap(TransitionSystem ts, std::vector<Interval> domains, std::vector<Interval> images,
                   std::vector<bool> increasing, BranchFn map, BranchFn derivative, std::string family,
                   double parameter);

  /// T_i(x) = q(2x - (i - 1)), q(u) = u + a u (1 - u), on [0, 1/2], [1/2, 1].
  /// Requires |a| < 1 (q increasing, |T'| >= 2(1 - |a|) > 1 for |a| < 1/2).
  static GeneralMarkovMap perturbed_doubling(double a);

  bool piecewise_linear() const override { return false; }
  double apply(Symbol i, double x) const override { return map_(i, x); }
  double derivative(Symbol i, double x) const override { return derivative_(i, x); }
  double inverse(Symbol i, double y) const override;

  const std::string& family() const { return family_; }
  double parameter() const { return parameter_; }
  /// Smallest |T'| seen on a grid of `points` per branch.
  double min_expansion_on_grid(int points) const;

 private:
  BranchFn map_;
  BranchFn derivative_;
  std::string family_;
  double parameter_;
};

struct CylinderInterval {
  Word word;
  Interval interval;
  double diameter = 0.0;
};

/// I(w) = T_{w_1}^{-1} ... T_{w_{n-1}}^{-1} (domain(w_n)).
CylinderInterval cylinder_interval(const ExpandingMarkovMap& map, std::span<const Symbol> word);

/// log D_n(w). Piecewise-linear maps use the product law
/// log|domain(w_n)| - sum_{j<n} log s_{w_j}, exact at any depth; general maps
/// take the log of the composed interval. Below 1e-3 its length is carried
/// by integrating 1/T' along the inverse branch, so it stays accurate after
/// the endpoints merge; ConvergenceFailure only once the length leaves the normal double range.
double log_diameter(const ExpandingMarkovMap& map, std::span<const Symbol> word);

/// pi(omega): the point coded by omega, as the limit of inverse branches
/// applied to a depth-`depth` cylinder (its left endpoint).
double project(const ExpandingMarkovMap& map, const SymbolicPoint& omega, int depth = 120);

/// gamma~ = log|T'| as a depth-1 potential; piecewise-linear maps only.
LocallyConstantPotential slope_potential(const PiecewiseLinearMap& map);

struct UjrReport {
  std::vector<std::pair<int, double>> m;  // (n, M(n))
  bool exact = false;                      // piecewise linear: closed form over all words
  int samples = 0;                         // general maps: number of sampled points
  double spread = 0.0;                     // general maps: max - min residual at n_max over samples
  bool nonincreasing_tail = false;         // M nonincreasing on [n_max/3, n_max]
};

/// M(n) = (1/n) max_w |log D_n(w) + S_n gamma(w)|, n = 1..n_max.
///
/// For affine branches the residual telescopes to log|image(w_n)|, which is
/// 0 for full-branch maps and log|image| otherwise, so M(n) is evaluated in
/// that closed form over the reachable last symbols. General maps sample
/// every periodic orbit of period <= 4 plus `random_points` seeded points;
/// gamma is evaluated at pi(sigma^j omega).
UjrReport check_ujr(const ExpandingMarkovMap& map, int n_max, int random_points = 64, std::uint64_t seed = 1);

struct PointwiseDimensionReport {
  std::vector<std::pair<int, double>> values;  // (n, log mu(w_n) / log D_n(w_n))
  double last = 0.0;
  double tail_spread = 0.0;  // max - min over the final quarter
};

/// Finite-n pointwise-dimension quotients at omega. The quotient of two
/// negative logs is the positive dimension. Throws InvalidInput when
/// D_n = 1 (log D_n = 0).
PointwiseDimensionReport pointwise_dimension_estimates(const ExpandingMarkovMap& map,
                                                       const CylinderMeasureOracle& mu,
                                                       const SymbolicPoint& omega, int n_max);

}  // namespace weakgibbs
