#include "weakgibbs/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "weakgibbs/errors.hpp"

namespace weakgibbs {
namespace {

Word random_word(const TransitionSystem& ts, int length, std::mt19937_64& rng) {
  const int k = ts.alphabet_size();
  Word w;
  w.reserve(static_cast<std::size_t>(length));
  std::uniform_int_distribution<int> first(1, k);
  w.push_back(first(rng));
  std::vector<Symbol> next;
  while (static_cast<int>(w.size()) < length) {
    next.clear();
    for (Symbol s = 1; s <= k; ++s) {
      if (ts.allowed(w.back(), s)) next.push_back(s);
    }
    std::uniform_int_distribution<std::size_t> pick(0, next.size() - 1);
    w.push_back(next[pick(rng)]);
  }
  return w;
}

}  // namespace

std::string to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::additive:
      return "additive";
    case SequenceKind::explicit_table:
      return "explicit_table";
    case SequenceKind::measure_derived:
      return "measure_derived";
  }
  return "unknown";
}

double PotentialSequence::value(int n, const SymbolicPoint& point) const {
  const auto dep = dependence_length(n);
  if (!dep) throw InexactSequence("sequence has no dependence length");
  return on_word(n, point.first(static_cast<std::size_t>(*dep)));
}

AdditiveSequence::AdditiveSequence(LocallyConstantPotential phi) : phi_(std::move(phi)) {}

double AdditiveSequence::on_word(int n, std::span<const Symbol> word) const { return birkhoff_sum(phi_, word, n); }

ExplicitSequence::ExplicitSequence(TransitionSystem ts, DepFn dependence, WordFn fn)
    : ts_(std::move(ts)), dependence_(std::move(dependence)), word_fn_(std::move(fn)) {}

ExplicitSequence::ExplicitSequence(TransitionSystem ts, PointFn fn) : ts_(std::move(ts)), point_fn_(std::move(fn)) {}

std::optional<int> ExplicitSequence::dependence_length(int n) const {
  if (!dependence_) return std::nullopt;
  return dependence_(n);
}

double ExplicitSequence::on_word(int n, std::span<const Symbol> word) const {
  if (!word_fn_) throw InexactSequence("explicit sequence was given without a dependence length");
  const int dep = dependence_(n);
  if (static_cast<int>(word.size()) < dep) throw InvalidInput("word shorter than dependence length");
  return word_fn_(n, word.first(static_cast<std::size_t>(dep)));
}

double ExplicitSequence::value(int n, const SymbolicPoint& point) const {
  if (point_fn_) return point_fn_(n, point);
  return PotentialSequence::value(n, point);
}

int exact_length(const PotentialSequence& seq, int n) {
  const auto dep = seq.dependence_length(n);
  if (!dep) throw InexactSequence("exact suprema need a declared dependence length");
  return *dep;
}

double gamma(const PotentialSequence& seq, int n) {
  if (n < 1) throw InvalidInput("n must be at least 1");
  const int dep = exact_length(seq, n);
  if (dep <= n) return 0.0;
  double best = 0.0;
  for_each_cylinder(seq.system(), n, [&](std::span<const Symbol> prefix) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for_each_extension(seq.system(), prefix, dep, [&](std::span<const Symbol> w) {
      const double v = seq.on_word(n, w);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    });
    best = std::max(best, hi - lo);
  });
  return best;
}

TemperedVariationReport tempered_variation_report(const PotentialSequence& seq, int n_max, double threshold) {
  if (n_max < 4) throw InvalidInput("n_max must be at least 4");
  TemperedVariationReport report;
  report.threshold = threshold;
  for (int n = 1; n <= n_max; ++n) report.ratios.emplace_back(n, gamma(seq, n) / n);

  bool any_zero = false;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [n, r] : report.ratios) {
    if (r <= 0.0) {
      any_zero = true;
      break;
    }
    const double x = std::log(static_cast<double>(n));
    const double y = std::log(r);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double count = n_max;
  report.slope = any_zero ? 0.0 : (count * sxy - sx * sy) / (count * sxx - sx * sx);

  bool nonincreasing = true;
  for (int n = std::max(2, n_max / 2 + 1); n <= n_max; ++n) {
    nonincreasing = nonincreasing && report.ratios[n - 1].second <= report.ratios[n - 2].second;
  }
  report.consistent = nonincreasing && report.ratios.back().second < threshold;
  return report;
}

double almost_additivity_defect(const PotentialSequence& seq, int n, int m, const SamplePolicy& policy) {
  if (n < 1 || m < 1) throw InvalidInput("n and m must be at least 1");
  const auto dep_nm = seq.dependence_length(n + m);
  const auto dep_n = seq.dependence_length(n);
  const auto dep_m = seq.dependence_length(m);
  const bool exact = dep_nm && dep_n && dep_m;

  if (policy.exhaustive) {
    if (!exact) throw InexactSequence("exhaustive defect needs declared dependence lengths");
    const int length = std::max({*dep_nm, *dep_n, n + *dep_m});
    double best = 0.0;
    for_each_cylinder(seq.system(), length, [&](std::span<const Symbol> w) {
      const double d = seq.on_word(n + m, w) - seq.on_word(n, w) - seq.on_word(m, w.subspan(static_cast<std::size_t>(n)));
      best = std::max(best, std::abs(d));
    });
    return best;
  }

  if (policy.samples < 1) throw InvalidInput("sampled policy needs at least one sample");
  std::mt19937_64 rng(policy.seed);
  double best = 0.0;
  const int length = exact ? std::max({*dep_nm, *dep_n, n + *dep_m}) : n + m;
  for (int i = 0; i < policy.samples; ++i) {
    const Word w = random_word(seq.system(), length, rng);
    const SymbolicPoint p = SymbolicPoint::in_cylinder(seq.system(), w);
    const double d = seq.value(n + m, p) - seq.value(n, p) - seq.value(m, p.shifted(static_cast<std::size_t>(n)));
    best = std::max(best, std::abs(d));
  }
  return best;
}

double asymptotic_defect(const PotentialSequence& seq, const LocallyConstantPotential& rho, int n) {
  if (n < 1) throw InvalidInput("n must be at least 1");
  if (!(seq.system() == rho.system())) throw InvalidInput("rho lives on a different system");
  const int length = std::max(exact_length(seq, n), n + rho.depth() - 1);
  double best = 0.0;
  for_each_cylinder(seq.system(), length, [&](std::span<const Symbol> w) {
    best = std::max(best, std::abs(seq.on_word(n, w) - birkhoff_sum(rho, w, n)));
  });
  return best / n;
}

}  // namespace weakgibbs
