#include "weakgibbs/interval_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "weakgibbs/errors.hpp"

namespace weakgibbs {
namespace {

std::vector<bool> all_increasing(std::size_t k) { return std::vector<bool>(k, true); }

void require_size(const TransitionSystem& ts, std::size_t n, const char* what) {
  if (n != static_cast<std::size_t>(ts.alphabet_size())) {
    throw InvalidInput(std::string("need one ") + what + " per symbol");
  }
}

}  // namespace

// ---------------------------------------------------------------- base

ExpandingMarkovMap::ExpandingMarkovMap(TransitionSystem ts, std::vector<Interval> domains,
                                       std::vector<Interval> images, std::vector<bool> increasing)
    : ts_(std::move(ts)), domains_(std::move(domains)), images_(std::move(images)), increasing_(std::move(increasing)) {
  require_size(ts_, domains_.size(), "domain");
  require_size(ts_, images_.size(), "image");
  require_size(ts_, increasing_.size(), "orientation");
  if (!ts_.is_mixing()) throw NonMixing("the coding of an expanding Markov map must be mixing");
  for (const auto* list : {&domains_, &images_}) {
    for (const Interval& iv : *list) {
      if (!(iv.left >= 0.0 && iv.right <= 1.0 && iv.left < iv.right)) {
        throw InvalidInput("intervals must be nondegenerate subintervals of [0, 1]");
      }
    }
  }
  for (std::size_t i = 0; i < domains_.size(); ++i) {
    for (std::size_t j = i + 1; j < domains_.size(); ++j) {
      const double lo = std::max(domains_[i].left, domains_[j].left);
      const double hi = std::min(domains_[i].right, domains_[j].right);
      if (lo < hi) throw InvalidInput("branch domains overlap");
    }
  }
  validate_markov();
}

void ExpandingMarkovMap::validate_markov() const {
  const int k = ts_.alphabet_size();
  for (Symbol i = 1; i <= k; ++i) {
    const Interval& im = image(i);
    for (Symbol j = 1; j <= k; ++j) {
      const Interval& dj = domain(j);
      if (ts_.allowed(i, j)) {
        if (dj.left < im.left || dj.right > im.right) {
          throw InvalidInput("image of branch " + std::to_string(i) + " misses domain " + std::to_string(j));
        }
      } else if (std::max(dj.left, im.left) < std::min(dj.right, im.right)) {
        throw InvalidInput("image of branch " + std::to_string(i) + " meets forbidden domain " + std::to_string(j));
      }
    }
  }
}

Symbol ExpandingMarkovMap::branch_of(double x) const {
  for (Symbol i = 1; i <= ts_.alphabet_size(); ++i) {
    // Smallest symbol first, so shared boundary points go to it.
    if (x >= domain(i).left && x <= domain(i).right) {
      Symbol best = i;
      for (Symbol j = i + 1; j <= ts_.alphabet_size(); ++j) {
        if (x >= domain(j).left && x <= domain(j).right) best = std::min(best, j);
      }
      return best;
    }
  }
  throw InvalidInput("point lies in no branch domain");
}

// ---------------------------------------------------------------- affine

PiecewiseLinearMap::PiecewiseLinearMap(TransitionSystem ts, std::vector<Interval> domains, std::vector<Interval> images,
                                       std::vector<bool> increasing)
    : ExpandingMarkovMap(std::move(ts), std::move(domains), std::move(images), std::move(increasing)) {
  for (std::size_t i = 0; i < domains_.size(); ++i) {
    const double s = images_[i].length() / domains_[i].length();
    if (!(s > 1.0)) throw InvalidInput("piecewise-linear branches need slopes > 1");
    slopes_.push_back(s);
  }
}

PiecewiseLinearMap PiecewiseLinearMap::full_branch(std::vector<double> slopes) {
  if (slopes.empty()) throw InvalidInput("no slopes");
  double total = 0.0;
  for (double s : slopes) {
    if (!(s > 1.0)) throw InvalidInput("slopes must exceed 1");
    total += 1.0 / s;
  }
  if (total > 1.0 + 1e-15) throw InvalidInput("domains of lengths 1/s_i do not fit in [0, 1]");
  std::vector<Interval> domains;
  double left = 0.0;
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    const double right = (i + 1 == slopes.size() && total >= 1.0) ? 1.0 : std::min(1.0, left + 1.0 / slopes[i]);
    domains.push_back({left, right});
    left = right;
  }
  const auto k = slopes.size();
  return PiecewiseLinearMap(TransitionSystem::full_shift(static_cast<int>(k)), std::move(domains),
                            std::vector<Interval>(k, Interval{0.0, 1.0}), all_increasing(k));
}

PiecewiseLinearMap PiecewiseLinearMap::golden_mean() {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  return PiecewiseLinearMap(TransitionSystem::golden_mean(), {{0.0, g}, {g, 1.0}}, {{0.0, 1.0}, {0.0, g}},
                            all_increasing(2));
}

double PiecewiseLinearMap::apply(Symbol i, double x) const {
  const Interval& d = domain(i);
  const Interval& im = image(i);
  return increasing(i) ? im.left + slope(i) * (x - d.left) : im.right - slope(i) * (x - d.left);
}

double PiecewiseLinearMap::inverse(Symbol i, double y) const {
  const Interval& d = domain(i);
  const Interval& im = image(i);
  return increasing(i) ? d.left + (y - im.left) / slope(i) : d.left + (im.right - y) / slope(i);
}

// ---------------------------------------------------------------- general

GeneralMarkovMap::GeneralMarkovMap(TransitionSystem ts, std::vector<Interval> domains, std::vector<Interval> images,
                                   std::vector<bool> increasing, BranchFn map, BranchFn derivative, std::string family,
                                   double parameter)
    : ExpandingMarkovMap(std::move(ts), std::move(domains), std::move(images), std::move(increasing)),
      map_(std::move(map)),
      derivative_(std::move(derivative)),
      family_(std::move(family)),
      parameter_(parameter) {
  if (min_expansion_on_grid(1001) < 1.0) throw InvalidInput("|T'| < 1 somewhere on the sample grid");
}

GeneralMarkovMap GeneralMarkovMap::perturbed_doubling(double a) {
  if (!(std::abs(a) < 0.5)) throw InvalidInput("perturbed_doubling needs |a| < 1/2");
  auto map = [a](Symbol i, double x) {
    const double u = 2.0 * x - (i - 1);
    return u + a * u * (1.0 - u);
  };
  auto derivative = [a](Symbol i, double x) {
    const double u = 2.0 * x - (i - 1);
    return 2.0 * (1.0 + a - 2.0 * a * u);
  };
  return GeneralMarkovMap(TransitionSystem::full_shift(2), {{0.0, 0.5}, {0.5, 1.0}}, {{0.0, 1.0}, {0.0, 1.0}},
                          all_increasing(2), map, derivative, "perturbed_doubling", a);
}

double GeneralMarkovMap::inverse(Symbol i, double y) const {
  const Interval& d = domain(i);
  double lo = d.left;
  double hi = d.right;
  const bool inc = increasing(i);
  // Bisection until the bracket cannot shrink; monotonicity guarantees it.
  for (int it = 0; it < 2000; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) return std::abs(map_(i, lo) - y) <= std::abs(map_(i, hi) - y) ? lo : hi;
    const double v = map_(i, mid);
    if ((v < y) == inc) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw ConvergenceFailure("inverse branch bisection did not converge");
}

double GeneralMarkovMap::min_expansion_on_grid(int points) const {
  double best = std::numeric_limits<double>::infinity();
  for (Symbol i = 1; i <= ts_.alphabet_size(); ++i) {
    const Interval& d = domain(i);
    for (int j = 0; j < points; ++j) {
      const double x = d.left + d.length() * j / (points - 1);
      best = std::min(best, std::abs(derivative_(i, x)));
    }
  }
  return best;
}

// ---------------------------------------------------------------- cylinders

CylinderInterval cylinder_interval(const ExpandingMarkovMap& map, std::span<const Symbol> word) {
  if (word.empty()) throw InvalidInput("empty word");
  require_admissible(map.system(), word);
  const auto* affine = dynamic_cast<const PiecewiseLinearMap*>(&map);
  Interval iv = map.domain(word.back());
  double length = iv.length();
  for (std::size_t j = word.size() - 1; j-- > 0;) {
    const Symbol s = word[j];
    const double a = map.inverse(s, iv.left);
    const double b = map.inverse(s, iv.left + length);
    if (affine) {
      length /= affine->slope(s);
    } else if (length > 1e-3) {
      length = std::abs(b - a);
    } else {
      // The endpoint difference loses digits on short intervals; integrate
      // (T^{-1})' = 1 / T'(T^{-1} y) by Simpson's rule instead.
      const double m = map.inverse(s, iv.left + 0.5 * length);
      const double fa = 1.0 / std::abs(map.derivative(s, a));
      const double fm = 1.0 / std::abs(map.derivative(s, m));
      const double fb = 1.0 / std::abs(map.derivative(s, b));
      length = length * (fa + 4.0 * fm + fb) / 6.0;
    }
    iv.left = std::min(a, b);
    iv.right = iv.left + length;
    // Subnormal lengths have lost precision (and the smallest one is a fixed point of rounding).
    if (!(length >= std::numeric_limits<double>::min()))
      throw ConvergenceFailure("cylinder interval length underflowed");
  }
  return {Word(word.begin(), word.end()), iv, length};
}

double log_diameter(const ExpandingMarkovMap& map, std::span<const Symbol> word) {
  if (word.empty()) throw InvalidInput("empty word");
  if (const auto* affine = dynamic_cast<const PiecewiseLinearMap*>(&map)) {
    require_admissible(map.system(), word);
    double sum = std::log(map.domain(word.back()).length());
    for (std::size_t j = 0; j + 1 < word.size(); ++j) sum -= std::log(affine->slope(word[j]));
    return sum;
  }
  return std::log(cylinder_interval(map, word).diameter);
}

double project(const ExpandingMarkovMap& map, const SymbolicPoint& omega, int depth) {
  const Word w = omega.first(static_cast<std::size_t>(depth));
  double x = map.domain(w.back()).left;
  for (std::size_t j = w.size() - 1; j-- > 0;) x = map.inverse(w[j], x);
  return x;
}

LocallyConstantPotential slope_potential(const PiecewiseLinearMap& map) {
  std::vector<double> logs;
  for (double s : map.slopes()) logs.push_back(std::log(s));
  return LocallyConstantPotential::by_symbol(map.system(), logs);
}

// ---------------------------------------------------------------- UJR

UjrReport check_ujr(const ExpandingMarkovMap& map, int n_max, int random_points, std::uint64_t seed) {
  if (n_max < 3) throw InvalidInput("n_max must be at least 3");
  const auto& ts = map.system();
  UjrReport report;

  if (map.piecewise_linear()) {
    report.exact = true;
    // Last symbols that end some admissible n-word: every symbol with an
    // incoming edge, which is all of them (no dead columns).
    double worst = 0.0;
    for (Symbol s = 1; s <= ts.alphabet_size(); ++s) worst = std::max(worst, std::abs(std::log(map.image(s).length())));
    for (int n = 1; n <= n_max; ++n) report.m.emplace_back(n, worst / n);
  } else {
    std::vector<SymbolicPoint> points;
    for (int p = 1; p <= 4; ++p) {
      for_each_periodic(ts, p, [&](std::span<const Symbol> c) { points.push_back(SymbolicPoint::periodic(ts, Word(c.begin(), c.end()))); });
    }
    std::mt19937_64 rng(seed);
    for (int r = 0; r < random_points; ++r) {
      Word w{static_cast<Symbol>(rng() % static_cast<std::uint64_t>(ts.alphabet_size())) + 1};
      while (w.size() < static_cast<std::size_t>(n_max + 8)) {
        std::vector<Symbol> next;
        for (Symbol s = 1; s <= ts.alphabet_size(); ++s) {
          if (ts.allowed(w.back(), s)) next.push_back(s);
        }
        w.push_back(next[rng() % next.size()]);
      }
      points.push_back(SymbolicPoint::in_cylinder(ts, w));
    }
    report.samples = static_cast<int>(points.size());

    std::vector<double> worst(static_cast<std::size_t>(n_max), 0.0);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& omega : points) {
      double birkhoff = 0.0;
      const Word w = omega.first(static_cast<std::size_t>(n_max));
      for (int n = 1; n <= n_max; ++n) {
        const Symbol s = w[static_cast<std::size_t>(n - 1)];
        const double x = project(map, omega.shifted(static_cast<std::size_t>(n - 1)));
        birkhoff += std::log(std::abs(map.derivative(s, x)));
        const double residual = log_diameter(map, std::span<const Symbol>(w).first(static_cast<std::size_t>(n))) + birkhoff;
        worst[static_cast<std::size_t>(n - 1)] = std::max(worst[static_cast<std::size_t>(n - 1)], std::abs(residual));
        if (n == n_max) {
          lo = std::min(lo, residual);
          hi = std::max(hi, residual);
        }
      }
    }
    for (int n = 1; n <= n_max; ++n) report.m.emplace_back(n, worst[static_cast<std::size_t>(n - 1)] / n);
    report.spread = hi - lo;
  }

  report.nonincreasing_tail = true;
  for (int n = std::max(2, n_max / 3) + 1; n <= n_max; ++n) {
    report.nonincreasing_tail =
        report.nonincreasing_tail && report.m[static_cast<std::size_t>(n - 1)].second <= report.m[static_cast<std::size_t>(n - 2)].second;
  }
  return report;
}

PointwiseDimensionReport pointwise_dimension_estimates(const ExpandingMarkovMap& map, const CylinderMeasureOracle& mu,
                                                       const SymbolicPoint& omega, int n_max) {
  if (!(mu.system() == map.system())) throw InvalidInput("measure and map use different codings");
  if (n_max < 1) throw InvalidInput("n_max must be positive");
  PointwiseDimensionReport report;
  const Word w = omega.first(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    const auto prefix = std::span<const Symbol>(w).first(static_cast<std::size_t>(n));
    const double ld = log_diameter(map, prefix);
    if (ld == 0.0) throw InvalidInput("D_n = 1: pointwise-dimension quotient undefined at n = " + std::to_string(n));
    const double m = mu.mass(prefix);
    if (!(m > 0.0)) throw ZeroMass("measure vanishes on a cylinder of the point");
    report.values.emplace_back(n, std::log(m) / ld);
  }
  report.last = report.values.back().second;
  const std::size_t start = report.values.size() - std::max<std::size_t>(1, report.values.size() / 4);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = start; i < report.values.size(); ++i) {
    lo = std::min(lo, report.values[i].second);
    hi = std::max(hi, report.values[i].second);
  }
  report.tail_spread = hi - lo;
  return report;
}

}  // namespace weakgibbs
