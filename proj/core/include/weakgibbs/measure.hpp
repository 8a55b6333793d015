#pragma once

// Cylinder-measure oracles and the certificates built on them.

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weakgibbs/numeric.hpp"
#include "weakgibbs/potential.hpp"
#include "weakgibbs/sequence.hpp"
#include "weakgibbs/sft.hpp"

namespace weakgibbs {

/// A potential for which an oracle is known to be Gibbs with pressure
/// `pressure`; lets callers use closed-form ergodic averages.
struct GibbsPotential {
  LocallyConstantPotential potential;
  double pressure = 0.0;
};

/// Answers mu(C_w) for admissible words w.
///
/// Contract: mass of the empty word is 1; mass(w) equals the sum of the
/// masses of the admissible one-symbol extensions of w; mass(w) > 0 on
/// admissible w for oracles used as Gibbs candidates.
class CylinderMeasureOracle {
 public:
  virtual ~CylinderMeasureOracle() = default;
  virtual const TransitionSystem& system() const = 0;
  virtual double mass(std::span<const Symbol> word) const = 0;
  virtual std::string kind() const = 0;
  virtual std::optional<GibbsPotential> gibbs_potential() const { return std::nullopt; }
  /// Longest word the oracle can answer; unbounded by default.
  virtual std::optional<int> max_length() const { return std::nullopt; }
};

/// Stationary Markov chain on the admissible b-blocks of a symbol system;
/// b = 1 is the ordinary one-step Markov measure on symbols.
///
/// mu(w) = pi(B_0) prod Q(B_j, B_{j+1}) over the consecutive b-blocks of w,
/// and words shorter than b sum over their block extensions.
class MarkovMeasure final : public CylinderMeasureOracle {
 public:
  /// One-step chain; `pi` defaults to the stationary vector of `q`.
  MarkovMeasure(TransitionSystem ts, DenseMatrix q, std::optional<std::vector<double>> pi = std::nullopt);
  /// Chain on b-blocks, `q` indexed by the lexicographic block order.
  MarkovMeasure(TransitionSystem ts, int block_length, DenseMatrix q, std::optional<std::vector<double>> pi);

  static MarkovMeasure bernoulli(TransitionSystem ts, std::span<const double> p);
  /// Maximal-entropy measure built from the Perron data of t.
  static MarkovMeasure parry(const TransitionSystem& ts);

  const TransitionSystem& system() const override { return ts_; }
  double mass(std::span<const Symbol> word) const override;
  std::string kind() const override { return block_length_ == 1 ? "markov" : "block_markov"; }
  std::optional<GibbsPotential> gibbs_potential() const override;

  int block_length() const { return block_length_; }
  const std::vector<Word>& blocks() const { return blocks_; }
  const DenseMatrix& q() const { return q_; }
  const std::vector<double>& pi() const { return pi_; }
  /// Position of an admissible b-block in `blocks()`.
  std::size_t block_index(std::span<const Symbol> block) const;

 private:
  void validate() const;
  std::size_t code(std::span<const Symbol> block) const;

  TransitionSystem ts_;
  int block_length_;
  std::vector<Word> blocks_;
  std::vector<int> code_to_block_;
  DenseMatrix q_;
  std::vector<double> pi_;
};

/// Masses listed word by word up to a fixed length; additivity, total mass
/// and positivity are verified at construction.
class TableMeasure final : public CylinderMeasureOracle {
 public:
  TableMeasure(TransitionSystem ts, int length, std::map<Word, double> masses);

  const TransitionSystem& system() const override { return ts_; }
  double mass(std::span<const Symbol> word) const override;
  std::string kind() const override { return "table"; }
  std::optional<int> max_length() const override { return length_; }
  int length() const { return length_; }
  const std::map<Word, double>& masses() const { return masses_; }

 private:
  TransitionSystem ts_;
  int length_;
  std::map<Word, double> masses_;
};

/// Perron data of the block transfer matrix of a locally constant potential
/// and the equilibrium (Gibbs) measure it induces.
struct RpfGibbsData {
  LocallyConstantPotential potential;
  BlockRecoding recoding;
  double lambda = 0.0;
  std::vector<double> right;  // h
  std::vector<double> left;   // nu, nu . h = 1
  std::shared_ptr<const MarkovMeasure> measure;  // Q_uv = M_uv h_v / (lambda h_u), pi = nu h
  double gibbs_constant = 1.0;                   // C >= 1

  double pressure() const;
};

RpfGibbsData build_rpf(const LocallyConstantPotential& phi, double tol = 1e-13);

double markov_cylinder_mass(const MarkovMeasure& mu, std::span<const Symbol> word);

/// Shannon entropy rate -sum pi_u Q_uv log Q_uv of the chain, 0 log 0 = 0.
double entropy(const MarkovMeasure& mu);

/// sum over admissible depth-words w of mu(w) phi(w).
double integrate(const LocallyConstantPotential& phi, const CylinderMeasureOracle& mu);

/// Largest deviation of mu(w) from sum_s mu(w s), and of mu(w) from
/// sum_s mu(s w), over all admissible words up to `max_length`.
struct ConsistencyReport {
  double additivity_defect = 0.0;
  double invariance_defect = 0.0;
  double total_mass_defect = 0.0;
  Word worst_additivity_word;
};
ConsistencyReport check_consistency(const CylinderMeasureOracle& mu, int max_length);

enum class Verdict { gibbs, consistent_weak_gibbs, rejected };
std::string to_string(Verdict v);

struct WeakGibbsCertificate {
  double pressure_used = 0.0;
  std::vector<std::pair<int, double>> kstar;  // (n, K*(n)), K*(n) >= 1
  double rate = 0.0;           // log K*(n_max) / n_max
  double tail_slope = 0.0;     // fitted slope of log K*(n) over the tail half
  Verdict verdict = Verdict::rejected;
  double constant = 0.0;       // C = max K*(n) when verdict == gibbs
  double threshold = 0.0;      // tau

  /// K*(n) as a function, for callers that need K(n) >= 1.
  double k_at(int n) const;
};

/// Exact optimal K*(n) = max over words w of length max(n, dep(n)) of
/// max(r, 1/r), r = mu(w_1..w_n) / exp(phi_n(w) - n P).
///
/// Verdict gibbs(C) when log K*(n) is flat (fitted slope within 1e-9) over
/// the tail half; consistent-weak-gibbs(tau) when the tail of
/// log K*(n)/n is nonincreasing and its final value is below tau, which is
/// not a proof of sub-exponential growth; rejected otherwise.
WeakGibbsCertificate certify_weak_gibbs(const CylinderMeasureOracle& mu, const PotentialSequence& phi,
                                        double pressure, int n_max, double tau);

/// Kessebohmer's choice K(n) = exp(eta_phi(n)).
double kessebohmer_bound(const LocallyConstantPotential& phi, int n);

/// Smallest n <= n_max with max over (n + depth - 1)-words of S_n phi / n
/// below P(phi) - 1e-12, where P is the spectral pressure. Such an n makes
/// the weak Gibbs measure of phi atom free. Witnesses can exist for some
/// n > 1 while failing at n = 1.
std::optional<int> atomfree_check(const LocallyConstantPotential& phi, int n_max);

}  // namespace weakgibbs
