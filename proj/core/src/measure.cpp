#include "weakgibbs/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "weakgibbs/errors.hpp"
#include "weakgibbs/pressure.hpp"

namespace weakgibbs {
namespace {

std::string word_string(std::span<const Symbol> w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? " " : "") << w[i];
  return os.str();
}

// log of the largest max(r, 1/r) with r = mu(w_1..w_n) exp(-(phi_n(w) - nP)).
double log_kstar(const CylinderMeasureOracle& mu, const PotentialSequence& phi, double pressure, int n) {
  const int length = std::max(n, exact_length(phi, n));
  if (auto cap = mu.max_length(); cap && n > *cap) {
    throw InvalidInput("measure table is too short for n = " + std::to_string(n));
  }
  double worst = 0.0;
  Word last_prefix;
  double last_log_mass = 0.0;
  for_each_cylinder(phi.system(), length, [&](std::span<const Symbol> w) {
    const auto prefix = w.first(static_cast<std::size_t>(n));
    if (last_prefix.empty() || !std::equal(prefix.begin(), prefix.end(), last_prefix.begin())) {
      const double m = mu.mass(prefix);
      if (!(m > 0.0)) throw ZeroMass("measure vanishes on admissible word " + word_string(prefix));
      last_prefix.assign(prefix.begin(), prefix.end());
      last_log_mass = std::log(m);
    }
    const double log_ratio = last_log_mass - (phi.on_word(n, w) - n * pressure);
    worst = std::max(worst, std::abs(log_ratio));
  });
  return worst;
}

}  // namespace

// ---------------------------------------------------------------- Markov

MarkovMeasure::MarkovMeasure(TransitionSystem ts, DenseMatrix q, std::optional<std::vector<double>> pi)
    : MarkovMeasure(std::move(ts), 1, std::move(q), std::move(pi)) {}

MarkovMeasure::MarkovMeasure(TransitionSystem ts, int block_length, DenseMatrix q,
                             std::optional<std::vector<double>> pi)
    : ts_(std::move(ts)), block_length_(block_length), q_(std::move(q)) {
  if (block_length < 1) throw InvalidInput("block length must be positive");
  blocks_ = enumerate_cylinders(ts_, block_length_);
  std::size_t codes = 1;
  for (int i = 0; i < block_length_; ++i) codes *= static_cast<std::size_t>(ts_.alphabet_size());
  code_to_block_.assign(codes, -1);
  for (std::size_t u = 0; u < blocks_.size(); ++u) code_to_block_[code(blocks_[u])] = static_cast<int>(u);
  if (q_.n != blocks_.size()) throw InvalidInput("Q must be indexed by the admissible blocks");
  pi_ = pi ? std::move(*pi) : stationary_vector(q_);
  validate();
}

void MarkovMeasure::validate() const {
  const std::size_t m = blocks_.size();
  if (pi_.size() != m) throw InvalidInput("pi has the wrong length");
  const auto b = static_cast<std::size_t>(block_length_);
  for (std::size_t u = 0; u < m; ++u) {
    double row = 0.0;
    for (std::size_t v = 0; v < m; ++v) {
      const double x = q_(u, v);
      if (!(x >= 0.0)) throw InvalidInput("Q entries must be nonnegative");
      const bool overlap = std::equal(blocks_[u].begin() + 1, blocks_[u].end(), blocks_[v].begin(),
                                      blocks_[v].begin() + static_cast<std::ptrdiff_t>(b - 1));
      const bool edge = overlap && ts_.allowed(blocks_[u].back(), blocks_[v].back());
      if (x > 0.0 && !edge) throw InvalidInput("Q is positive on a forbidden transition");
      row += x;
    }
    if (std::abs(row - 1.0) > 1e-12) throw InvalidInput("Q rows must sum to 1");
  }
  double total = 0.0;
  for (double p : pi_) {
    if (!(p >= 0.0)) throw InvalidInput("pi entries must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidInput("pi must sum to 1");
  for (std::size_t v = 0; v < m; ++v) {
    double s = 0.0;
    for (std::size_t u = 0; u < m; ++u) s += pi_[u] * q_(u, v);
    if (std::abs(s - pi_[v]) > 1e-10) throw InvalidInput("pi is not stationary for Q");
  }
}

MarkovMeasure MarkovMeasure::bernoulli(TransitionSystem ts, std::span<const double> p) {
  const int k = ts.alphabet_size();
  if (static_cast<int>(p.size()) != k) throw InvalidInput("need one probability per symbol");
  if (!std::all_of(ts.matrix().begin(), ts.matrix().end(), [](auto v) { return v != 0; })) {
    throw InvalidInput("Bernoulli measures need a full shift");
  }
  DenseMatrix q(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) q(i, j) = p[j];
  }
  return MarkovMeasure(std::move(ts), 1, std::move(q), std::vector<double>(p.begin(), p.end()));
}

MarkovMeasure MarkovMeasure::parry(const TransitionSystem& ts) {
  return *build_rpf(LocallyConstantPotential::constant(ts, 0.0)).measure;
}

std::size_t MarkovMeasure::code(std::span<const Symbol> block) const {
  std::size_t c = 0;
  for (Symbol s : block) c = c * static_cast<std::size_t>(ts_.alphabet_size()) + static_cast<std::size_t>(s - 1);
  return c;
}

std::size_t MarkovMeasure::block_index(std::span<const Symbol> block) const {
  const int u = code_to_block_[code(block)];
  if (u < 0) throw InvalidInput("not an admissible block");
  return static_cast<std::size_t>(u);
}

double MarkovMeasure::mass(std::span<const Symbol> word) const {
  return markov_cylinder_mass(*this, word);
}

std::optional<GibbsPotential> MarkovMeasure::gibbs_potential() const {
  const std::size_t m = blocks_.size();
  bool rows_equal = block_length_ == 1;
  for (std::size_t u = 1; u < m && rows_equal; ++u) {
    for (std::size_t v = 0; v < m && rows_equal; ++v) rows_equal = q_(u, v) == q_(0, v);
  }
  if (rows_equal) {
    if (std::any_of(pi_.begin(), pi_.end(), [](double p) { return !(p > 0.0); })) return std::nullopt;
    std::vector<double> logs(pi_.size());
    for (std::size_t i = 0; i < pi_.size(); ++i) logs[i] = std::log(q_(0, i));
    return GibbsPotential{LocallyConstantPotential::by_symbol(ts_, logs), 0.0};
  }
  bool positive = true;
  auto phi = LocallyConstantPotential::from_function(ts_, block_length_ + 1, [&](std::span<const Symbol> w) {
    const auto b = static_cast<std::size_t>(block_length_);
    const std::size_t u = block_index(w.first(b));
    const std::size_t v = block_index(w.subspan(1, b));
    const double x = q_(u, v);
    positive = positive && x > 0.0;
    return x > 0.0 ? std::log(x) : 0.0;
  });
  if (!positive) return std::nullopt;
  return GibbsPotential{std::move(phi), 0.0};
}

double markov_cylinder_mass(const MarkovMeasure& mu, std::span<const Symbol> word) {
  require_admissible(mu.system(), word);
  const int b = mu.block_length();
  const auto& blocks = mu.blocks();
  if (static_cast<int>(word.size()) < b) {
    if (word.empty()) return 1.0;
    double total = 0.0;
    for (std::size_t u = 0; u < blocks.size(); ++u) {
      if (std::equal(word.begin(), word.end(), blocks[u].begin())) total += mu.pi()[u];
    }
    return total;
  }
  auto block_index = [&](std::size_t start) {
    return mu.block_index(word.subspan(start, static_cast<std::size_t>(b)));
  };
  std::size_t u = block_index(0);
  double m = mu.pi()[u];
  const std::size_t steps = word.size() - static_cast<std::size_t>(b);
  for (std::size_t j = 1; j <= steps; ++j) {
    const std::size_t v = b == 1 ? static_cast<std::size_t>(word[j] - 1) : block_index(j);
    m *= mu.q()(u, v);
    u = v;
  }
  return m;
}

double entropy(const MarkovMeasure& mu) {
  double h = 0.0;
  const std::size_t m = mu.blocks().size();
  for (std::size_t u = 0; u < m; ++u) {
    double row = 0.0;
    for (std::size_t v = 0; v < m; ++v) {
      const double q = mu.q()(u, v);
      if (q > 0.0) row -= q * std::log(q);
    }
    h += mu.pi()[u] * row;
  }
  return h;
}

double integrate(const LocallyConstantPotential& phi, const CylinderMeasureOracle& mu) {
  if (!(phi.system() == mu.system())) throw InvalidInput("potential and measure live on different systems");
  std::vector<double> terms;
  for_each_cylinder(phi.system(), phi.depth(), [&](std::span<const Symbol> w) { terms.push_back(mu.mass(w) * phi(w)); });
  double s = 0.0;
  for (double t : terms) s += t;
  return s;
}

// ---------------------------------------------------------------- table

TableMeasure::TableMeasure(TransitionSystem ts, int length, std::map<Word, double> masses)
    : ts_(std::move(ts)), length_(length), masses_(std::move(masses)) {
  if (length < 1) throw InvalidInput("table length must be positive");
  for (const auto& [w, m] : masses_) {
    if (w.empty() || static_cast<int>(w.size()) > length_) throw InvalidInput("table word has bad length");
    if (!is_admissible(ts_, w)) throw InvalidInput("table lists inadmissible word " + word_string(w));
    if (!(m > 0.0) || !std::isfinite(m)) throw InvalidInput("table mass must be positive: " + word_string(w));
  }
  for (int n = 1; n <= length_; ++n) {
    for_each_cylinder(ts_, n, [&](std::span<const Symbol> w) {
      if (!masses_.count(Word(w.begin(), w.end()))) throw InvalidInput("table misses word " + word_string(w));
    });
  }
  const auto report = check_consistency(*this, length_);
  if (report.total_mass_defect > 1e-12) throw InvalidInput("table masses of length-1 words do not sum to 1");
  if (report.additivity_defect > 1e-12) {
    throw InvalidInput("additivity violation at word [" + word_string(report.worst_additivity_word) +
                       "]: defect " + std::to_string(report.additivity_defect));
  }
}

double TableMeasure::mass(std::span<const Symbol> word) const {
  if (word.empty()) return 1.0;
  if (static_cast<int>(word.size()) > length_) throw InvalidInput("word longer than the measure table");
  auto it = masses_.find(Word(word.begin(), word.end()));
  if (it == masses_.end()) throw InvalidInput("inadmissible word " + word_string(word));
  return it->second;
}

// ---------------------------------------------------------------- checks

ConsistencyReport check_consistency(const CylinderMeasureOracle& mu, int max_length) {
  ConsistencyReport report;
  const auto& ts = mu.system();
  const int k = ts.alphabet_size();
  double top = 0.0;
  for (Symbol s = 1; s <= k; ++s) {
    const Word w{s};
    top += mu.mass(w);
  }
  report.total_mass_defect = std::abs(top - 1.0);
  for (int n = 1; n < max_length; ++n) {
    for_each_cylinder(ts, n, [&](std::span<const Symbol> w) {
      const double m = mu.mass(w);
      Word ext(w.begin(), w.end());
      ext.push_back(0);
      double right = 0.0;
      for (Symbol s = 1; s <= k; ++s) {
        if (!ts.allowed(w.back(), s)) continue;
        ext.back() = s;
        right += mu.mass(ext);
      }
      const double add = std::abs(m - right);
      if (add > report.additivity_defect) {
        report.additivity_defect = add;
        report.worst_additivity_word.assign(w.begin(), w.end());
      }
      Word pre(w.size() + 1);
      std::copy(w.begin(), w.end(), pre.begin() + 1);
      double left = 0.0;
      for (Symbol s = 1; s <= k; ++s) {
        if (!ts.allowed(s, w.front())) continue;
        pre[0] = s;
        left += mu.mass(pre);
      }
      report.invariance_defect = std::max(report.invariance_defect, std::abs(m - left));
    });
  }
  return report;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::gibbs:
      return "gibbs";
    case Verdict::consistent_weak_gibbs:
      return "consistent-weak-gibbs";
    case Verdict::rejected:
      return "rejected";
  }
  return "unknown";
}

double WeakGibbsCertificate::k_at(int n) const {
  for (const auto& [m, k] : kstar) {
    if (m == n) return k;
  }
  throw InvalidInput("certificate does not cover n = " + std::to_string(n));
}

WeakGibbsCertificate certify_weak_gibbs(const CylinderMeasureOracle& mu, const PotentialSequence& phi,
                                        double pressure, int n_max, double tau) {
  if (n_max < 4) throw InvalidInput("n_max must be at least 4");
  if (!(mu.system() == phi.system())) throw InvalidInput("measure and sequence live on different systems");
  exact_length(phi, 1);

  WeakGibbsCertificate cert;
  cert.pressure_used = pressure;
  cert.threshold = tau;
  std::vector<double> logs;
  for (int n = 1; n <= n_max; ++n) {
    const double lk = log_kstar(mu, phi, pressure, n);
    logs.push_back(lk);
    cert.kstar.emplace_back(n, std::exp(lk));
  }
  cert.rate = logs.back() / n_max;

  const int tail_start = n_max / 2;  // 0-based index of the first tail entry
  std::vector<double> xs;
  std::vector<double> ys;
  for (int i = tail_start; i < n_max; ++i) {
    xs.push_back(i + 1.0);
    ys.push_back(logs[static_cast<std::size_t>(i)]);
  }
  cert.tail_slope = fitted_slope(xs, ys);

  bool rate_nonincreasing = true;
  for (int i = tail_start + 1; i < n_max; ++i) {
    rate_nonincreasing = rate_nonincreasing && logs[i] / (i + 1) <= logs[i - 1] / i + 1e-15;
  }

  if (std::abs(cert.tail_slope) <= 1e-9) {
    cert.verdict = Verdict::gibbs;
    cert.constant = std::exp(*std::max_element(logs.begin(), logs.end()));
  } else if (rate_nonincreasing && cert.rate < tau) {
    cert.verdict = Verdict::consistent_weak_gibbs;
  } else {
    cert.verdict = Verdict::rejected;
  }
  return cert;
}

double kessebohmer_bound(const LocallyConstantPotential& phi, int n) { return std::exp(eta(phi, n)); }

std::optional<int> atomfree_check(const LocallyConstantPotential& phi, int n_max) {
  const double p = pressure_spectral(phi);
  for (int n = 1; n <= n_max; ++n) {
    double best = -std::numeric_limits<double>::infinity();
    for_each_cylinder(phi.system(), n + phi.depth() - 1,
                      [&](std::span<const Symbol> w) { best = std::max(best, birkhoff_sum(phi, w, n)); });
    if (best / n < p - 1e-12) return n;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- RPF

double RpfGibbsData::pressure() const { return std::log(lambda); }

RpfGibbsData build_rpf(const LocallyConstantPotential& phi, double tol) {
  if (!phi.system().is_mixing()) throw NonMixing("RPF construction needs a mixing system");
  RpfGibbsData data{phi, recode(phi), 0.0, {}, {}, nullptr, 1.0};
  const auto& rec = data.recoding;
  const std::size_t m = rec.size();
  double shift = -std::numeric_limits<double>::infinity();
  for (double x : rec.log_weight) shift = std::max(shift, x);
  DenseMatrix mat(m);
  for (std::size_t u = 0; u < m; ++u) {
    for (std::size_t v = 0; v < m; ++v) mat(u, v) = rec.has_edge(u, v) ? std::exp(rec.edge(u, v) - shift) : 0.0;
  }
  const PerronData pd = perron(mat, tol);
  data.lambda = pd.root * std::exp(shift);
  data.right = pd.right;
  data.left = pd.left;

  DenseMatrix q(m);
  std::vector<double> pi(m);
  for (std::size_t u = 0; u < m; ++u) {
    double row = 0.0;
    for (std::size_t v = 0; v < m; ++v) {
      q(u, v) = mat(u, v) * pd.right[v] / (pd.root * pd.right[u]);
      row += q(u, v);
    }
    for (std::size_t v = 0; v < m; ++v) q(u, v) /= row;  // remove eigen-residual drift
    pi[u] = pd.left[u] * pd.right[u];
  }
  const double total = std::accumulate(pi.begin(), pi.end(), 0.0);
  for (double& x : pi) x /= total;
  data.measure = std::make_shared<const MarkovMeasure>(phi.system(), rec.block_length, std::move(q), std::move(pi));

  // Empirical Gibbs constant over n <= 12, doubled on the log scale.
  AdditiveSequence seq(phi);
  double worst = 0.0;
  for (int n = 1; n <= 12; ++n) worst = std::max(worst, log_kstar(*data.measure, seq, data.pressure(), n));
  data.gibbs_constant = std::exp(2.0 * worst);
  return data;
}

}  // namespace weakgibbs
