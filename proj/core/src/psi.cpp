#include "weakgibbs/psi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "weakgibbs/errors.hpp"

namespace weakgibbs {
namespace {

double log_mass(const CylinderMeasureOracle& mu, std::span<const Symbol> word) {
  const double m = mu.mass(word);
  if (!(m > 0.0)) {
    std::string s;
    for (Symbol x : word) s += (s.empty() ? "" : " ") + std::to_string(x);
    throw ZeroMass("measure vanishes on admissible word " + s);
  }
  return std::log(m);
}

}  // namespace

PsiSequence::PsiSequence(std::shared_ptr<const CylinderMeasureOracle> mu) : mu_(std::move(mu)) {
  if (!mu_) throw InvalidInput("null measure");
  for (Symbol s = 1; s <= system().alphabet_size(); ++s) log_mass(*mu_, std::span<const Symbol>(&s, 1));
}

double PsiSequence::on_word(int n, std::span<const Symbol> word) const {
  if (n < 1 || word.size() < static_cast<std::size_t>(n)) throw InvalidInput("psi_n needs a word of length >= n");
  return log_mass(*mu_, word.first(static_cast<std::size_t>(n)));
}

PsiSequence build_psi(std::shared_ptr<const CylinderMeasureOracle> mu) { return PsiSequence(std::move(mu)); }

SandwichReport check_sandwich(const PsiSequence& psi, const PotentialSequence& phi, double pressure,
                              const std::function<double(int)>& k, int n_max) {
  SandwichReport report;
  report.pressure = pressure;
  for (int n = 1; n <= n_max; ++n) {
    const double log_k = std::log(k(n));
    const int length = std::max(n, exact_length(phi, n));
    double worst = 0.0;
    for_each_cylinder(psi.system(), length, [&](std::span<const Symbol> w) {
      const double d = psi.on_word(n, w) - phi.on_word(n, w) + n * pressure;
      worst = std::max(worst, std::abs(d));
      // 1e-12: K(n) usually arrives as exp(log K), which can lose an ulp.
      if (!report.violation && std::abs(d) > log_k + 1e-12) report.violation = Witness{n, Word(w.begin(), w.end()), d};
    });
    report.slack.emplace_back(n, log_k - worst);
  }
  report.holds = !report.violation;
  return report;
}

PressureZeroReport check_pressure_zero(const PsiSequence& psi, int n_max, double tau) {
  PressureZeroReport report;
  report.tau = tau;
  report.estimate = pressure_limit(psi, 1, n_max);
  for (const auto& [n, v] : report.estimate.finite_n_values) {
    report.all_nonpositive = report.all_nonpositive && v <= 1e-12;
  }
  report.holds = std::abs(report.estimate.extrapolated) <= report.estimate.error_bar + tau;
  return report;
}

GibbsOneReport check_gibbs_one(const PsiSequence& psi, const CylinderMeasureOracle& mu, int n_max, double tol) {
  GibbsOneReport report;
  for (int n = 1; n <= n_max; ++n) {
    for_each_cylinder(psi.system(), n, [&](std::span<const Symbol> w) {
      const double ratio = mu.mass(w) / std::exp(psi.on_word(n, w));
      const double err = std::abs(ratio - 1.0);
      ++report.words_checked;
      report.max_relative_error = std::max(report.max_relative_error, err);
      if (!report.mismatch && !(err <= tol)) report.mismatch = Witness{n, Word(w.begin(), w.end()), ratio};
    });
  }
  report.holds = !report.mismatch;
  return report;
}

AsymptoticAdditivityReport check_asymptotic_additivity_psi(const PsiSequence& psi, const PotentialSequence& phi,
                                                           double pressure, int k, int n_max) {
  const auto* family = phi.family();
  if (!family) throw InvalidInput("sequence has no approximating family");
  AsymptoticAdditivityReport report;
  report.pressure = pressure;
  report.k = k;
  // psi_n ~ phi_n - nP, so the approximant of Psi is rho_k - P.
  const LocallyConstantPotential rho = (*family)(k).plus(-pressure);
  for (int n = 1; n <= n_max; ++n) {
    const int length = std::max(n, exact_length(phi, n));
    double log_k = 0.0;
    for_each_cylinder(psi.system(), length, [&](std::span<const Symbol> w) {
      log_k = std::max(log_k, std::abs(psi.on_word(n, w) - phi.on_word(n, w) + n * pressure));
    });
    const double defect = asymptotic_defect(psi, rho, n);
    const double bound = 1.0 / k + log_k / n;
    report.defect.emplace_back(n, defect);
    report.bound.emplace_back(n, bound);
    // Only the tail half is held to the bound: the accuracy 1/k of rho_k is
    // a limsup statement.
    if (n > n_max / 2 && defect > bound + 1e-12 && !report.first_failure) report.first_failure = n;
  }
  report.holds = !report.first_failure;
  return report;
}

AlmostAdditiveReport check_almost_additive_psi(const PsiSequence& psi, double gibbs_constant, int max_total) {
  AlmostAdditiveReport report;
  report.bound = 3.0 * std::log(gibbs_constant);
  for (int total = 2; total <= max_total; ++total) {
    for_each_cylinder(psi.system(), total, [&](std::span<const Symbol> w) {
      const double whole = psi.on_word(total, w);
      for (int n = 1; n < total; ++n) {
        const int m = total - n;
        const double d = std::abs(whole - psi.on_word(n, w) - psi.on_word(m, w.subspan(static_cast<std::size_t>(n))));
        report.max_defect = std::max(report.max_defect, d);
        // 1e-12 absorbs rounding of the logs when C = 1.
        if (!report.violation && d > report.bound + 1e-12) {
          report.violation = Witness{n, Word(w.begin(), w.end()), d};
          report.violation_m = m;
        }
      }
    });
  }
  report.holds = !report.violation;
  return report;
}

}  // namespace weakgibbs
