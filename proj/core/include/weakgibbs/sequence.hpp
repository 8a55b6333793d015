#pragma once

// Potential sequences Phi = (phi_n) and the diagnostics that go with them:
// variation gamma_n, tempered variation, almost and asymptotic additivity.

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weakgibbs/potential.hpp"
#include "weakgibbs/sft.hpp"

namespace weakgibbs {

enum class SequenceKind { additive, explicit_table, measure_derived };

std::string to_string(SequenceKind kind);

/// rho_k, interpreted as an approximation of accuracy 1/k:
/// limsup (1/n) || phi_n - S_n rho_k || < 1/k.
using ApproximatingFamily = std::function<LocallyConstantPotential(int k)>;

/// Contract for evaluating phi_n. When `dependence_length(n)` is set,
/// phi_n is constant on cylinders of that length and `on_word` evaluates it
/// from exactly that many symbols, which is what makes suprema exact.
class PotentialSequence {
 public:
  virtual ~PotentialSequence() = default;

  virtual SequenceKind kind() const = 0;
  virtual const TransitionSystem& system() const = 0;
  virtual std::optional<int> dependence_length(int n) const = 0;
  /// phi_n on a word of length >= dependence_length(n). Throws
  /// InexactSequence for sequences without a dependence length.
  virtual double on_word(int n, std::span<const Symbol> word) const = 0;
  /// phi_n at a point.
  virtual double value(int n, const SymbolicPoint& point) const;

  /// Additive sequences expose their generating potential.
  virtual const LocallyConstantPotential* generator() const { return nullptr; }

  const ApproximatingFamily* family() const { return family_ ? &*family_ : nullptr; }
  void set_family(ApproximatingFamily family) { family_ = std::move(family); }

 private:
  std::optional<ApproximatingFamily> family_;
};

/// phi_n = S_n phi; dependence length n + depth - 1.
class AdditiveSequence final : public PotentialSequence {
 public:
  explicit AdditiveSequence(LocallyConstantPotential phi);

  SequenceKind kind() const override { return SequenceKind::additive; }
  const TransitionSystem& system() const override { return phi_.system(); }
  std::optional<int> dependence_length(int n) const override { return n + phi_.depth() - 1; }
  double on_word(int n, std::span<const Symbol> word) const override;
  const LocallyConstantPotential* generator() const override { return &phi_; }

 private:
  LocallyConstantPotential phi_;
};

/// User-defined phi_n. With a dependence length the callback receives the
/// word of exactly that length; without one it receives points and exact
/// suprema are refused.
class ExplicitSequence final : public PotentialSequence {
 public:
  using WordFn = std::function<double(int n, std::span<const Symbol> word)>;
  using PointFn = std::function<double(int n, const SymbolicPoint& point)>;
  using DepFn = std::function<int(int n)>;

  ExplicitSequence(TransitionSystem ts, DepFn dependence, WordFn fn);
  ExplicitSequence(TransitionSystem ts, PointFn fn);

  SequenceKind kind() const override { return SequenceKind::explicit_table; }
  const TransitionSystem& system() const override { return ts_; }
  std::optional<int> dependence_length(int n) const override;
  double on_word(int n, std::span<const Symbol> word) const override;
  double value(int n, const SymbolicPoint& point) const override;

 private:
  TransitionSystem ts_;
  DepFn dependence_;
  WordFn word_fn_;
  PointFn point_fn_;
};

/// Declared dependence length of phi_n; throws InexactSequence if absent.
int exact_length(const PotentialSequence& seq, int n);

/// gamma_n(Phi) = var_n phi_n, exact.
double gamma(const PotentialSequence& seq, int n);

struct TemperedVariationReport {
  std::vector<std::pair<int, double>> ratios;  // (n, gamma_n / n)
  double slope = 0.0;  // least-squares slope of log(ratio) against log(n); 0 if any ratio vanishes
  double threshold = 0.0;
  bool consistent = false;  // tail nonincreasing and final ratio < threshold
};

TemperedVariationReport tempered_variation_report(const PotentialSequence& seq, int n_max, double threshold);

/// How points are drawn for a defect maximum.
struct SamplePolicy {
  bool exhaustive = true;
  int samples = 0;
  std::uint64_t seed = 0;

  static SamplePolicy exhaustive_policy() { return {}; }
  static SamplePolicy sampled(int samples, std::uint64_t seed) { return {false, samples, seed}; }
};

/// max |phi_{n+m}(w) - phi_n(w) - phi_m(sigma^n w)| over the policy's points.
double almost_additivity_defect(const PotentialSequence& seq, int n, int m,
                                const SamplePolicy& policy = SamplePolicy::exhaustive_policy());

/// (1/n) max |phi_n - S_n rho| over cylinder representatives, exact.
double asymptotic_defect(const PotentialSequence& seq, const LocallyConstantPotential& rho, int n);

}  // namespace weakgibbs
