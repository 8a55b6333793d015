#include "weakgibbs/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "weakgibbs/errors.hpp"
#include "weakgibbs/numeric.hpp"

namespace weakgibbs {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Log-domain matrix product: C_ij = LSE_l (A_il + B_lj).
std::vector<double> log_multiply(const std::vector<double>& a, const std::vector<double>& b, std::size_t m) {
  std::vector<double> c(m * m, kNegInf);
  std::vector<double> terms(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t l = 0; l < m; ++l) terms[l] = a[i * m + l] + b[l * m + j];
      c[i * m + j] = log_sum_exp(terms);
    }
  }
  return c;
}

// log Z_n kept as growth terms whose sum is log Z_n. When every term is the
// same double (phi = 0 on a full shift), means and differences taken
// relative to the first term are exact.
using Growth = std::vector<double>;

double total(const Growth& g) {
  double s = 0.0;
  for (double r : g) s += r;
  return s;
}

double residual(const Growth& g) {
  double rest = 0.0;
  for (std::size_t j = 1; j < g.size(); ++j) rest += g[j] - g[0];
  return rest;
}

double mean(const Growth& g, int n) {
  const double count = static_cast<double>(g.size());
  if (count == n) return g[0] + residual(g) / n;
  return (g[0] * count + residual(g)) / n;
}

// log Z_b - log Z_a.
double increment(const Growth& a, const Growth& b) {
  if (a.empty() || b.empty() || a[0] != b[0]) return total(b) - total(a);
  const double extra = static_cast<double>(b.size()) - static_cast<double>(a.size());
  return extra * a[0] + (residual(b) - residual(a));
}

// trace(M^n) by repeated products, each renormalized by its largest entry.
// Terms: that entry per product, with the first merged into the final
// log of the normalized trace, so there are exactly n of them.
Growth trace_growth(const BlockRecoding& rec, int n) {
  const std::size_t m = rec.size();
  std::vector<double> power = rec.log_weight;
  Growth g;
  auto normalize = [&] {
    const double top = *std::max_element(power.begin(), power.end());
    for (double& x : power) x -= top;
    g.push_back(top);
  };
  normalize();
  for (int step = 1; step < n; ++step) {
    power = log_multiply(power, rec.log_weight, m);
    normalize();
  }
  std::vector<double> diag(m);
  for (std::size_t i = 0; i < m; ++i) diag[i] = power[i * m + i];
  g[0] += log_sum_exp(diag);
  return g;
}

// Aitken assumes the error of the increments is one real geometric mode.
// Complex subdominant eigenvalues make it rotate instead, and then Aitken
// can amplify it by orders of magnitude. Accept acceleration only when the
// last two ratios of successive differences agree to 10%.
bool geometric_tail(std::span<const double> x) {
  if (x.size() < 4) return true;
  const std::size_t n = x.size() - 1;
  const double d1 = x[n - 2] - x[n - 3], d2 = x[n - 1] - x[n - 2], d3 = x[n] - x[n - 1];
  if (d1 == 0.0 || d2 == 0.0) return false;
  const double q_prev = d2 / d1, q = d3 / d2;
  return std::abs(q) < 1.0 && std::abs(q - q_prev) <= 0.1 * std::abs(q);
}

PressureEstimate extrapolate(PressureMethod method, const std::vector<std::pair<int, Growth>>& sums) {
  PressureEstimate est;
  est.method = method;
  for (const auto& [n, g] : sums) est.finite_n_values.emplace_back(n, mean(g, n));
  std::vector<double> increments;
  for (std::size_t i = 1; i < sums.size(); ++i) increments.push_back(increment(sums[i - 1].second, sums[i].second));
  if (increments.empty()) {
    est.extrapolated = est.finite_n_values.back().second;
    est.error_bar = 0.0;
    return est;
  }
  const auto tail = std::span<const double>(increments).last(std::min<std::size_t>(3, increments.size()));
  const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
  est.error_bar = *hi - *lo;
  AitkenResult acc = aitken_tail(increments);
  if (acc.accelerated && !geometric_tail(increments)) acc = {increments.back(), false};
  est.extrapolated = acc.value;
  est.accelerated = acc.accelerated;
  return est;
}

}  // namespace

std::string to_string(PressureMethod m) {
  switch (m) {
    case PressureMethod::cylinder:
      return "cylinder";
    case PressureMethod::periodic:
      return "periodic";
    case PressureMethod::spectral:
      return "spectral";
  }
  return "unknown";
}

namespace {

// The cylinder sum as growth terms r_0, ..., r_{n-b}: the DP vector is
// renormalized every step and r_j is the log of the removed mass, so that
// log Z_n = sum r_j. Keeping the terms separate lets pressure_cylinder
// average them exactly when they all coincide (phi = 0 on a full shift).
std::vector<double> cylinder_growth_terms(const LocallyConstantPotential& phi, int n) {
  if (n < 1) throw InvalidInput("n must be at least 1");
  const auto& ts = phi.system();
  const int d = phi.depth();
  const int b = std::max(1, d - 1);

  if (n < b) {
    // Short words: brute force over all extensions.
    std::vector<double> terms;
    for_each_cylinder(ts, n, [&](std::span<const Symbol> w) {
      double best = kNegInf;
      for_each_extension(ts, w, n + d - 1, [&](std::span<const Symbol> e) { best = std::max(best, birkhoff_sum(phi, e, n)); });
      terms.push_back(best);
    });
    return {log_sum_exp(terms)};
  }

  const BlockRecoding rec = recode(phi);
  const std::size_t m = rec.size();
  // Terminal weight: the last (d - 1) windows of S_n phi start inside the
  // final block and are maximized over the extension.
  std::vector<double> x(m, 0.0);
  if (d >= 2) {
    for (std::size_t u = 0; u < m; ++u) {
      double best = kNegInf;
      for_each_extension(ts, rec.blocks[u], b + d - 1, [&](std::span<const Symbol> e) {
        best = std::max(best, birkhoff_sum(phi, e, b));
      });
      x[u] = best;
    }
  } else {
    // depth 1: blocks are symbols and the final window is the last symbol.
    for (std::size_t u = 0; u < m; ++u) x[u] = phi(rec.blocks[u]);
  }
  std::vector<double> growth;
  growth.reserve(static_cast<std::size_t>(n - b + 1));
  auto normalize = [&] {
    const double r = log_sum_exp(x);
    for (double& v : x) v -= r;
    growth.push_back(r);
  };
  normalize();
  std::vector<double> terms(m);
  for (int step = 0; step < n - b; ++step) {
    std::vector<double> next(m, kNegInf);
    for (std::size_t u = 0; u < m; ++u) {
      for (std::size_t v = 0; v < m; ++v) terms[v] = rec.edge(u, v) + x[v];
      next[u] = log_sum_exp(terms);
    }
    x = std::move(next);
    normalize();
  }
  return growth;
}

}  // namespace

double log_cylinder_sum(const LocallyConstantPotential& phi, int n) { return total(cylinder_growth_terms(phi, n)); }

double pressure_cylinder(const LocallyConstantPotential& phi, int n) { return mean(cylinder_growth_terms(phi, n), n); }

namespace {

Growth periodic_growth(const PotentialSequence& seq, int n) {
  if (n < 1) throw InvalidInput("n must be at least 1");
  if (!seq.system().is_mixing()) throw NonMixing("periodic-point pressure needs a mixing system");
  if (const auto* phi = seq.generator()) return trace_growth(recode(*phi), n);

  const int dep = exact_length(seq, n);
  std::vector<double> terms;
  Word unrolled;
  for_each_periodic(seq.system(), n, [&](std::span<const Symbol> cycle) {
    unrolled.resize(static_cast<std::size_t>(std::max(dep, n)));
    for (std::size_t i = 0; i < unrolled.size(); ++i) unrolled[i] = cycle[i % cycle.size()];
    terms.push_back(seq.on_word(n, unrolled));
  });
  return {log_sum_exp(terms)};
}

}  // namespace

double log_periodic_sum(const PotentialSequence& seq, int n) { return total(periodic_growth(seq, n)); }

double pressure_periodic(const PotentialSequence& seq, int n) { return mean(periodic_growth(seq, n), n); }

double pressure_spectral(const LocallyConstantPotential& phi, double tol, int max_iter) {
  if (!phi.system().is_mixing()) throw NonMixing("spectral pressure needs a mixing system");
  const BlockRecoding rec = recode(phi);
  const std::size_t m = rec.size();
  double shift = kNegInf;
  for (double w : rec.log_weight) shift = std::max(shift, w);
  DenseMatrix mat(m);
  for (std::size_t u = 0; u < m; ++u) {
    for (std::size_t v = 0; v < m; ++v) mat(u, v) = rec.has_edge(u, v) ? std::exp(rec.edge(u, v) - shift) : 0.0;
  }
  return std::log(perron(mat, tol, max_iter).root) + shift;
}

PressureEstimate pressure_limit(const LocallyConstantPotential& phi, PressureMethod method, int n_min, int n_max) {
  if (method == PressureMethod::spectral) {
    PressureEstimate est;
    est.method = method;
    est.extrapolated = pressure_spectral(phi);
    return est;
  }
  if (n_min < 1 || n_max <= n_min) throw InvalidInput("need n_max > n_min >= 1");
  if (method == PressureMethod::cylinder) {
    std::vector<std::pair<int, Growth>> sums;
    for (int n = n_min; n <= n_max; ++n) sums.emplace_back(n, cylinder_growth_terms(phi, n));
    return extrapolate(method, sums);
  }
  return pressure_limit(AdditiveSequence(phi), n_min, n_max);
}

PressureEstimate pressure_limit(const PotentialSequence& seq, int n_min, int n_max) {
  if (n_min < 1 || n_max <= n_min) throw InvalidInput("need n_max > n_min >= 1");
  std::vector<std::pair<int, Growth>> sums;
  for (int n = n_min; n <= n_max; ++n) sums.emplace_back(n, periodic_growth(seq, n));
  return extrapolate(PressureMethod::periodic, sums);
}

ApproxCheckReport lemma_approx_check(const PotentialSequence& seq, int k, int n_max) {
  const auto* family = seq.family();
  if (!family) throw InvalidInput("sequence has no approximating family");
  if (n_max < 4) throw InvalidInput("n_max must be at least 4");
  const LocallyConstantPotential rho = (*family)(k);

  ApproxCheckReport report;
  for (int n = n_max / 2; n <= n_max; ++n) report.eps_bar = std::max(report.eps_bar, asymptotic_defect(seq, rho, n));
  report.pressure_rho = pressure_spectral(rho);
  report.pressure_seq = pressure_limit(seq, 1, n_max);
  const double slack = 2.0 * report.eps_bar + report.pressure_seq.error_bar;
  report.lower = report.pressure_rho - slack;
  report.upper = report.pressure_rho + slack;
  const double p = report.pressure_seq.extrapolated;
  // 1e-12 absorbs rounding when eps_bar and the error bar both vanish.
  report.holds = p >= report.lower - 1e-12 && p <= report.upper + 1e-12;
  return report;
}

VariationalReport variational_check(const LocallyConstantPotential& phi, std::span<const MarkovMeasure> family) {
  if (family.empty()) throw InvalidInput("empty measure family");
  VariationalReport report;
  report.pressure = pressure_spectral(phi);
  report.all_below = true;
  report.best_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& mu = family[i];
    if (!(mu.system() == phi.system())) throw InvalidInput("measure lives on a different system");
    const auto consistency = check_consistency(mu, phi.depth() + 2);
    if (consistency.invariance_defect > 1e-10) throw InvalidInput("measure is not shift-invariant");
    VariationalEntry e;
    e.entropy = entropy(mu);
    e.integral = integrate(phi, mu);
    e.free_energy = e.entropy + e.integral;
    e.gap = report.pressure - e.free_energy;
    report.all_below = report.all_below && e.free_energy <= report.pressure + 1e-10;
    if (e.gap < report.best_gap) {
      report.best_gap = e.gap;
      report.best = i;
    }
    report.entries.push_back(e);
  }
  return report;
}

}  // namespace weakgibbs
