#pragma once

// psi_n(w) = log mu(C_w): every weak Gibbs measure is an exact Gibbs
// measure (constant 1, pressure 0) for this sequence. The checks below
// verify each part of that statement on a concrete oracle. They return
// reports and never throw on a failed inequality.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "weakgibbs/measure.hpp"
#include "weakgibbs/pressure.hpp"
#include "weakgibbs/sequence.hpp"

namespace weakgibbs {

class PsiSequence final : public PotentialSequence {
 public:
  /// Throws ZeroMass if mu vanishes on an admissible word (checked lazily on
  /// evaluation and eagerly on the one-symbol words).
  explicit PsiSequence(std::shared_ptr<const CylinderMeasureOracle> mu);

  SequenceKind kind() const override { return SequenceKind::measure_derived; }
  const TransitionSystem& system() const override { return mu_->system(); }
  std::optional<int> dependence_length(int n) const override { return n; }
  double on_word(int n, std::span<const Symbol> word) const override;

  const CylinderMeasureOracle& measure() const { return *mu_; }

 private:
  std::shared_ptr<const CylinderMeasureOracle> mu_;
};

PsiSequence build_psi(std::shared_ptr<const CylinderMeasureOracle> mu);

struct Witness {
  int n = 0;
  Word word;
  double value = 0.0;
};

struct SandwichReport {
  bool holds = true;
  double pressure = 0.0;
  std::vector<std::pair<int, double>> slack;  // (n, log K(n) - max |psi_n - phi_n + nP|)
  std::optional<Witness> violation;           // first violating (n, word)
};

/// -log K(n) <= psi_n - phi_n + nP <= log K(n) over all words of length
/// max(n, dep(n)), n <= n_max, tested in the log domain with 1e-12 slack.
SandwichReport check_sandwich(const PsiSequence& psi, const PotentialSequence& phi, double pressure,
                              const std::function<double(int)>& k, int n_max);

struct PressureZeroReport {
  bool holds = false;
  PressureEstimate estimate;
  double tau = 0.0;
  bool all_nonpositive = true;  // every finite-n estimate <= 0 (up to 1e-12)
};

/// Periodic-point pressure of Psi; passes when |extrapolated| <= error_bar + tau.
PressureZeroReport check_pressure_zero(const PsiSequence& psi, int n_max, double tau);

struct GibbsOneReport {
  bool holds = true;
  double max_relative_error = 0.0;
  int words_checked = 0;
  std::optional<Witness> mismatch;
};

/// mu(w) / exp(psi_n(w)) = 1 to relative error `tol` on every admissible
/// word of length <= n_max.
GibbsOneReport check_gibbs_one(const PsiSequence& psi, const CylinderMeasureOracle& mu, int n_max,
                               double tol = 1e-14);

struct AsymptoticAdditivityReport {
  bool holds = true;
  double pressure = 0.0;
  int k = 0;
  std::vector<std::pair<int, double>> defect;  // (n, asymptotic defect vs rho_k - P)
  std::vector<std::pair<int, double>> bound;   // (n, 1/k + log K(n)/n)
  std::optional<int> first_failure;
};

/// Compares Psi with rho_k - P (psi_n ~ phi_n - nP), n <= n_max, against
/// 1/k + log K(n)/n, where K(n) is the certified optimal constant of mu for
/// Phi at pressure P.
AsymptoticAdditivityReport check_asymptotic_additivity_psi(const PsiSequence& psi, const PotentialSequence& phi,
                                                           double pressure, int k, int n_max);

struct AlmostAdditiveReport {
  bool holds = true;
  double bound = 0.0;        // 3 log C
  double max_defect = 0.0;
  std::optional<Witness> violation;  // word of length n + m, value = defect, n stored
  int violation_m = 0;
};

/// |psi_{n+m}(w) - psi_n(w) - psi_m(sigma^n w)| <= 3 log C for all n, m >= 1
/// with n + m <= max_total, over every admissible (n+m)-word.
AlmostAdditiveReport check_almost_additive_psi(const PsiSequence& psi, double gibbs_constant, int max_total);

}  // namespace weakgibbs
