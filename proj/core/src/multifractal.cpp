#include "weakgibbs/multifractal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "weakgibbs/errors.hpp"
#include "weakgibbs/pressure.hpp"

namespace weakgibbs {
namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

int grid_divisions(double step) {
  const double inv = 1.0 / step;
  const long r = std::lround(inv);
  if (!(step > 0.0) || r < 1 || std::abs(inv - static_cast<double>(r)) > 1e-6 * inv) {
    throw InvalidInput("simplex grid step must be 1/N for a positive integer N");
  }
  return static_cast<int>(r);
}

// All compositions of `total` into `parts` nonnegative integers, lexicographic.
void compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int a = 0; a <= total; ++a) {
    cur.push_back(a);
    compositions(total - a, parts - 1, cur, out);
    cur.pop_back();
  }
}

struct CandidateStats {
  double entropy = 0.0;
  double lyapunov = 0.0;           // int gamma~ dnu
  std::vector<double> constraint;  // closed form, or quadrature when no Gibbs potential
};

struct Prepared {
  std::vector<MarkovMeasure> family;
  std::vector<CandidateStats> stats;
  bool closed_form = true;
};

double quadrature(const PiecewiseLinearMap& map, const CylinderMeasureOracle& mu, const CylinderMeasureOracle& nu,
                  int n) {
  double sum = 0.0;
  for_each_cylinder(map.system(), n, [&](std::span<const Symbol> w) {
    const double v = nu.mass(w);
    if (v == 0.0) return;
    const double m = mu.mass(w);
    if (!(m > 0.0)) throw ZeroMass("measure vanishes on an admissible cylinder");
    sum += v * std::log(m) / log_diameter(map, w);
  });
  return sum;
}

Prepared prepare(const PiecewiseLinearMap& map, const std::vector<std::shared_ptr<const CylinderMeasureOracle>>& measures,
                 const SearchSpec& spec) {
  if (measures.empty()) throw InvalidInput("need at least one measure");
  for (const auto& mu : measures) {
    if (!mu || !(mu->system() == map.system())) throw InvalidInput("measures must live on the coding of the map");
  }
  Prepared prep;
  prep.family = search_family(map.system(), spec.step);
  std::vector<std::optional<GibbsPotential>> gibbs;
  for (const auto& mu : measures) {
    gibbs.push_back(mu->gibbs_potential());
    prep.closed_form = prep.closed_form && gibbs.back().has_value();
  }
  const LocallyConstantPotential gamma = slope_potential(map);
  for (const auto& nu : prep.family) {
    CandidateStats s;
    s.entropy = entropy(nu);
    s.lyapunov = integrate(gamma, nu);
    for (std::size_t i = 0; i < measures.size(); ++i) {
      if (prep.closed_form) {
        s.constraint.push_back(-(integrate(gibbs[i]->potential, nu) - gibbs[i]->pressure) / s.lyapunov);
      } else {
        s.constraint.push_back(quadrature(map, *measures[i], nu, spec.quadrature_n));
      }
    }
    prep.stats.push_back(std::move(s));
  }
  return prep;
}

std::optional<std::size_t> best_feasible(const Prepared& prep, const std::vector<double>& alpha, double delta) {
  std::optional<std::size_t> best;
  double best_f = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < prep.stats.size(); ++c) {
    const auto& s = prep.stats[c];
    bool ok = true;
    for (std::size_t i = 0; i < alpha.size() && ok; ++i) ok = std::abs(s.constraint[i] - alpha[i]) <= delta;
    if (!ok) continue;
    const double f = s.entropy / s.lyapunov;
    if (f > best_f) {  // strict: ties keep the first candidate in enumeration order
      best_f = f;
      best = c;
    }
  }
  return best;
}

std::vector<double> parameters_of(const MarkovMeasure& nu, bool bernoulli) {
  if (bernoulli) return nu.pi();
  return nu.q().a;
}

std::vector<HypothesisCheck> hypotheses(const std::vector<std::shared_ptr<const CylinderMeasureOracle>>& measures) {
  std::vector<HypothesisCheck> out;
  for (const auto& mu : measures) {
    HypothesisCheck h;
    h.invariant = check_consistency(*mu, 6).invariance_defect <= 1e-10;
    if (auto gp = mu->gibbs_potential()) {
      const auto cert = certify_weak_gibbs(*mu, AdditiveSequence(gp->potential), gp->pressure, 8, 0.1);
      h.verdict = to_string(cert.verdict);
      h.weak_gibbs = cert.verdict != Verdict::rejected;
      h.atom_free_witness = atomfree_check(gp->potential, 8);
      h.atom_free = h.atom_free_witness.has_value();
    } else {
      h.verdict = "unavailable";
    }
    out.push_back(h);
  }
  return out;
}

}  // namespace

std::string to_string(SpectrumMethod m) { return m == SpectrumMethod::variational ? "variational" : "legendre"; }

SpectrumCurve spectrum_legendre_bernoulli_at(double p, double s1, double s2, const std::vector<double>& u) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidInput("p must lie in (0, 1)");
  if (!(s1 > 1.0 && s2 > 1.0)) throw InvalidInput("slopes must exceed 1");
  SpectrumCurve c;
  c.method = SpectrumMethod::legendre;
  for (double x : u) {
    if (!(x >= 0.0 && x <= 1.0)) throw InvalidInput("u must lie in [0, 1]");
    const double lyap = x * std::log(s1) + (1.0 - x) * std::log(s2);
    c.parameter.push_back(x);
    c.alpha.push_back(-(x * std::log(p) + (1.0 - x) * std::log(1.0 - p)) / lyap);
    c.f.emplace_back(-(xlogx(x) + xlogx(1.0 - x)) / lyap);
    c.feasible.push_back(true);
  }
  return c;
}

SpectrumCurve spectrum_legendre_bernoulli(double p, double s1, double s2, int points) {
  if (points < 1) throw InvalidInput("need at least one grid point");
  std::vector<double> u;
  for (int j = 1; j <= points; ++j) u.push_back(static_cast<double>(j) / (points + 1));
  return spectrum_legendre_bernoulli_at(p, s1, s2, u);
}

ConcavityReport check_concavity(const SpectrumCurve& curve, double tol) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < curve.alpha.size(); ++i) {
    if (curve.f[i]) pts.emplace_back(curve.alpha[i], *curve.f[i]);
  }
  std::sort(pts.begin(), pts.end());
  ConcavityReport report;
  std::vector<double> slopes;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double da = pts[i].first - pts[i - 1].first;
    if (da <= 1e-12) continue;  // coincident alpha (degenerate curve)
    slopes.push_back((pts[i].second - pts[i - 1].second) / da);
  }
  for (std::size_t i = 1; i < slopes.size(); ++i) report.worst = std::max(report.worst, slopes[i] - slopes[i - 1]);
  report.concave = report.worst <= tol;
  return report;
}

std::vector<MarkovMeasure> search_family(const TransitionSystem& ts, double step) {
  const int total = grid_divisions(step);
  const int k = ts.alphabet_size();
  const bool full = std::all_of(ts.matrix().begin(), ts.matrix().end(), [](auto x) { return x != 0; });
  std::vector<MarkovMeasure> family;
  if (full) {
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    compositions(total, k, cur, comps);
    for (const auto& c : comps) {
      std::vector<double> p;
      for (int a : c) p.push_back(static_cast<double>(a) / total);
      family.push_back(MarkovMeasure::bernoulli(ts, p));
    }
    return family;
  }

  std::vector<std::vector<std::vector<int>>> rows(static_cast<std::size_t>(k));
  double count = 1.0;
  for (Symbol i = 1; i <= k; ++i) {
    int out_degree = 0;
    for (Symbol j = 1; j <= k; ++j) out_degree += ts.allowed(i, j) ? 1 : 0;
    std::vector<int> cur;
    compositions(total, out_degree, cur, rows[static_cast<std::size_t>(i - 1)]);
    count *= static_cast<double>(rows[static_cast<std::size_t>(i - 1)].size());
  }
  if (count > 5e6) throw InvalidInput("Markov search grid too large; use a coarser step");
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  while (true) {
    DenseMatrix q(static_cast<std::size_t>(k));
    for (Symbol i = 1; i <= k; ++i) {
      const auto& comp = rows[static_cast<std::size_t>(i - 1)][idx[static_cast<std::size_t>(i - 1)]];
      std::size_t c = 0;
      for (Symbol j = 1; j <= k; ++j) {
        if (ts.allowed(i, j)) q(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) = static_cast<double>(comp[c++]) / total;
      }
    }
    try {
      family.emplace_back(ts, std::move(q));
    } catch (const Error&) {
      // Rows with several closed classes have no unique stationary vector.
    }
    std::size_t r = static_cast<std::size_t>(k);
    while (r > 0) {
      --r;
      if (++idx[r] < rows[r].size()) break;
      idx[r] = 0;
      if (r == 0) return family;
    }
  }
}

VariationalResult spectrum_variational(const PiecewiseLinearMap& map,
                                       const std::vector<std::shared_ptr<const CylinderMeasureOracle>>& measures,
                                       const std::vector<double>& alpha, const SearchSpec& spec) {
  if (alpha.size() != measures.size()) throw InvalidInput("one alpha per measure");
  if (!(spec.delta > 0.0)) throw InvalidInput("delta must be positive");
  const Prepared prep = prepare(map, measures, spec);
  VariationalResult result;
  result.candidates = static_cast<int>(prep.family.size());
  result.hypotheses = hypotheses(measures);
  const auto best = best_feasible(prep, alpha, spec.delta);
  if (!best) return result;

  const auto& nu = prep.family[*best];
  const auto& s = prep.stats[*best];
  const bool full = std::all_of(map.system().matrix().begin(), map.system().matrix().end(), [](auto x) { return x != 0; });
  result.feasible = true;
  result.f = s.entropy / s.lyapunov;
  result.argmax = nu;
  result.argmax_parameters = parameters_of(nu, full);
  for (std::size_t i = 0; i < measures.size(); ++i) {
    const double qn = quadrature(map, *measures[i], nu, spec.quadrature_n);
    const double qprev = quadrature(map, *measures[i], nu, spec.quadrature_n - 1);
    result.constraint_quadrature.push_back(qn);
    result.quadrature_stability.push_back(std::abs(qn - qprev));
    if (prep.closed_form) {
      result.constraint_closed.push_back(s.constraint[i]);
      result.disagreement = result.disagreement || std::abs(qn - s.constraint[i]) > spec.delta;
    }
  }
  return result;
}

CrosscheckReport spectrum_crosscheck(double p, double s1, double s2, int alpha_points, const SearchSpec& spec) {
  const PiecewiseLinearMap map = PiecewiseLinearMap::full_branch({s1, s2});
  const std::vector<double> weights{p, 1.0 - p};
  const std::vector<std::shared_ptr<const CylinderMeasureOracle>> measures{
      std::make_shared<MarkovMeasure>(MarkovMeasure::bernoulli(map.system(), weights))};
  const Prepared prep = prepare(map, measures, spec);
  const SpectrumCurve legendre = spectrum_legendre_bernoulli(p, s1, s2, alpha_points);

  CrosscheckReport report;
  for (std::size_t j = 0; j < legendre.alpha.size(); ++j) {
    CrosscheckRow row;
    row.u = legendre.parameter[j];
    row.alpha = legendre.alpha[j];
    row.f_legendre = *legendre.f[j];
    if (const auto best = best_feasible(prep, {row.alpha}, spec.delta)) {
      const auto& s = prep.stats[*best];
      row.f_variational = s.entropy / s.lyapunov;
      report.max_deviation = std::max(report.max_deviation, std::abs(*row.f_variational - row.f_legendre));
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace weakgibbs
