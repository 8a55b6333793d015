#include "weakgibbs/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "weakgibbs/errors.hpp"

namespace weakgibbs {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kMaxTable = std::size_t{1} << 24;

std::size_t dense_size(int k, int depth) {
  std::size_t size = 1;
  for (int i = 0; i < depth; ++i) {
    size *= static_cast<std::size_t>(k);
    if (size > kMaxTable) throw InvalidInput("potential table too large");
  }
  return size;
}

// Largest (max - min) of f over the extensions of each prefix-group, where
// words of length `total` are grouped by their first `group` symbols.
template <class F>
double grouped_spread(const TransitionSystem& ts, int group, int total, F&& f) {
  double best = 0.0;
  Word current;
  double lo = 0.0;
  double hi = 0.0;
  bool open = false;
  for_each_cylinder(ts, total, [&](std::span<const Symbol> w) {
    const double v = f(w);
    if (open && std::equal(current.begin(), current.end(), w.begin())) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      return;
    }
    if (open) best = std::max(best, hi - lo);
    current.assign(w.begin(), w.begin() + group);
    lo = hi = v;
    open = true;
  });
  if (open) best = std::max(best, hi - lo);
  return best;
}

}  // namespace

LocallyConstantPotential::LocallyConstantPotential(TransitionSystem ts, int depth, const Table& table)
    : ts_(std::move(ts)), depth_(depth) {
  if (depth < 1) throw InvalidInput("potential depth must be positive");
  values_.assign(dense_size(ts_.alphabet_size(), depth), kNaN);
  for (const auto& [word, value] : table) {
    if (static_cast<int>(word.size()) != depth) throw InvalidInput("table word has wrong length");
    if (!is_admissible(ts_, word)) throw InvalidInput("table contains an inadmissible word");
    if (!std::isfinite(value)) throw InvalidInput("potential values must be finite");
    values_[index(word)] = value;
  }
  for_each_cylinder(ts_, depth, [&](std::span<const Symbol> w) {
    if (std::isnan(values_[index(w)])) throw InvalidInput("table misses an admissible word");
  });
}

LocallyConstantPotential LocallyConstantPotential::from_function(
    TransitionSystem ts, int depth, const std::function<double(std::span<const Symbol>)>& value) {
  Table table;
  for_each_cylinder(ts, depth, [&](std::span<const Symbol> w) { table[Word(w.begin(), w.end())] = value(w); });
  return LocallyConstantPotential(std::move(ts), depth, table);
}

LocallyConstantPotential LocallyConstantPotential::constant(TransitionSystem ts, double c) {
  return from_function(std::move(ts), 1, [c](std::span<const Symbol>) { return c; });
}

LocallyConstantPotential LocallyConstantPotential::by_symbol(TransitionSystem ts, std::span<const double> values) {
  if (static_cast<int>(values.size()) != ts.alphabet_size()) {
    throw InvalidInput("need one value per symbol");
  }
  std::vector<double> copy(values.begin(), values.end());
  return from_function(std::move(ts), 1, [copy](std::span<const Symbol> w) { return copy[w[0] - 1]; });
}

std::size_t LocallyConstantPotential::index(std::span<const Symbol> word) const {
  std::size_t code = 0;
  const auto k = static_cast<std::size_t>(ts_.alphabet_size());
  for (int i = 0; i < depth_; ++i) code = code * k + static_cast<std::size_t>(word[i] - 1);
  return code;
}

double LocallyConstantPotential::operator()(std::span<const Symbol> word) const {
  if (static_cast<int>(word.size()) < depth_) throw InvalidInput("word shorter than potential depth");
  const double v = values_[index(word)];
  if (std::isnan(v)) throw InvalidInput("potential evaluated on an inadmissible word");
  return v;
}

double LocallyConstantPotential::at(const SymbolicPoint& point) const {
  return (*this)(point.first(static_cast<std::size_t>(depth_)));
}

LocallyConstantPotential LocallyConstantPotential::lifted(int depth) const {
  if (depth < depth_) throw InvalidInput("cannot lift to a smaller depth");
  return from_function(ts_, depth, [this](std::span<const Symbol> w) { return (*this)(w); });
}

LocallyConstantPotential LocallyConstantPotential::plus(double c) const {
  return from_function(ts_, depth_, [this, c](std::span<const Symbol> w) { return (*this)(w) + c; });
}

LocallyConstantPotential LocallyConstantPotential::scaled(double factor) const {
  return from_function(ts_, depth_, [this, factor](std::span<const Symbol> w) { return factor * (*this)(w); });
}

LocallyConstantPotential operator+(const LocallyConstantPotential& a, const LocallyConstantPotential& b) {
  if (!(a.system() == b.system())) throw InvalidInput("potentials live on different systems");
  const int depth = std::max(a.depth(), b.depth());
  return LocallyConstantPotential::from_function(a.system(), depth,
                                                 [&](std::span<const Symbol> w) { return a(w) + b(w); });
}

LocallyConstantPotential::Table LocallyConstantPotential::table() const {
  Table out;
  for_each_cylinder(ts_, depth_, [&](std::span<const Symbol> w) { out[Word(w.begin(), w.end())] = (*this)(w); });
  return out;
}

double LocallyConstantPotential::max_value() const {
  double best = -std::numeric_limits<double>::infinity();
  for (double v : values_) {
    if (!std::isnan(v)) best = std::max(best, v);
  }
  return best;
}

double LocallyConstantPotential::min_value() const {
  double best = std::numeric_limits<double>::infinity();
  for (double v : values_) {
    if (!std::isnan(v)) best = std::min(best, v);
  }
  return best;
}

double birkhoff_sum(const LocallyConstantPotential& phi, std::span<const Symbol> word, int n) {
  if (n < 1) throw InvalidInput("n must be at least 1");
  if (static_cast<int>(word.size()) < n + phi.depth() - 1) {
    throw InvalidInput("word too short for the Birkhoff sum");
  }
  double sum = 0.0;
  for (int j = 0; j < n; ++j) sum += phi(word.subspan(static_cast<std::size_t>(j)));
  return sum;
}

double birkhoff_sum(const LocallyConstantPotential& phi, const SymbolicPoint& point, int n) {
  const Word w = point.first(static_cast<std::size_t>(n + phi.depth() - 1));
  return birkhoff_sum(phi, w, n);
}

double variation(const LocallyConstantPotential& phi, int n) {
  if (n < 1) throw InvalidInput("n must be at least 1");
  if (n >= phi.depth()) return 0.0;
  return grouped_spread(phi.system(), n, phi.depth(), [&](std::span<const Symbol> w) { return phi(w); });
}

double eta(const LocallyConstantPotential& phi, int n) {
  if (n < 1) throw InvalidInput("n must be at least 1");
  if (phi.depth() == 1) return 0.0;
  return grouped_spread(phi.system(), n, n + phi.depth() - 1,
                        [&](std::span<const Symbol> w) { return birkhoff_sum(phi, w, n); });
}

std::size_t BlockRecoding::index_of(std::span<const Symbol> block) const {
  auto it = std::lower_bound(blocks.begin(), blocks.end(), block,
                             [](const Word& a, std::span<const Symbol> b) {
                               return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
                             });
  if (it == blocks.end() || !std::equal(it->begin(), it->end(), block.begin(), block.end())) {
    throw InvalidInput("not an admissible block");
  }
  return static_cast<std::size_t>(it - blocks.begin());
}

bool BlockRecoding::has_edge(std::size_t u, std::size_t v) const {
  return edge(u, v) != -std::numeric_limits<double>::infinity();
}

BlockRecoding recode(const LocallyConstantPotential& phi) {
  BlockRecoding r;
  r.block_length = std::max(1, phi.depth() - 1);
  r.blocks = enumerate_cylinders(phi.system(), r.block_length);
  const std::size_t m = r.blocks.size();
  r.log_weight.assign(m * m, -std::numeric_limits<double>::infinity());
  const auto b = static_cast<std::size_t>(r.block_length);
  for_each_cylinder(phi.system(), r.block_length + 1, [&](std::span<const Symbol> w) {
    const std::size_t u = r.index_of(w.first(b));
    const std::size_t v = r.index_of(w.subspan(1, b));
    r.log_weight[u * m + v] = phi(w);
  });
  return r;
}

}  // namespace weakgibbs
