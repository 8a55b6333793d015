#pragma once

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "weakgibbs/sft.hpp"

namespace weakgibbs {

/// A potential depending only on the first `depth` coordinates: a table
/// over the admissible words of length `depth`.
class LocallyConstantPotential {
 public:
  using Table = std::map<Word, double>;

  /// `table` must contain every admissible depth-word and nothing else.
  LocallyConstantPotential(TransitionSystem ts, int depth, const Table& table);

  /// Table filled by evaluating `value` on every admissible depth-word.
  static LocallyConstantPotential from_function(TransitionSystem ts, int depth,
                                                const std::function<double(std::span<const Symbol>)>& value);
  static LocallyConstantPotential constant(TransitionSystem ts, double c);
  /// phi(w) = values[w_1 - 1].
  static LocallyConstantPotential by_symbol(TransitionSystem ts, std::span<const double> values);

  const TransitionSystem& system() const { return ts_; }
  int depth() const { return depth_; }

  /// Value on a word of length >= depth (reads the first `depth` symbols).
  double operator()(std::span<const Symbol> word) const;
  double at(const SymbolicPoint& point) const;

  /// Same function, tabulated at a larger depth.
  LocallyConstantPotential lifted(int depth) const;
  LocallyConstantPotential plus(double c) const;
  LocallyConstantPotential scaled(double factor) const;
  /// Pointwise sum (depths may differ).
  friend LocallyConstantPotential operator+(const LocallyConstantPotential& a,
                                            const LocallyConstantPotential& b);

  /// Admissible depth-words with their values, lexicographic.
  Table table() const;

  double max_value() const;
  double min_value() const;

 private:
  std::size_t index(std::span<const Symbol> word) const;

  TransitionSystem ts_;
  int depth_;
  std::vector<double> values_;  // dense over k^depth codes; NaN off the language
};

/// S_n phi along the word: sum of phi over the windows starting at positions
/// 0..n-1. `word` must have length >= n + depth - 1.
double birkhoff_sum(const LocallyConstantPotential& phi, std::span<const Symbol> word, int n);
double birkhoff_sum(const LocallyConstantPotential& phi, const SymbolicPoint& point, int n);

/// var_n(phi): largest spread of phi inside an n-cylinder. Exact.
double variation(const LocallyConstantPotential& phi, int n);

/// eta_phi(n) = var_n(S_n phi). Exact, by enumeration of the admissible
/// (depth-1)-symbol extensions of each n-word.
double eta(const LocallyConstantPotential& phi, int n);

/// Recoding of a potential onto the shift of admissible b-blocks,
/// b = max(1, depth - 1). Block u may be followed by block v when v is u
/// shifted by one symbol; the edge weight is phi on the (b+1)-word
/// u . last(v), which is a window of length >= depth.
struct BlockRecoding {
  int block_length = 1;
  std::vector<Word> blocks;           // lexicographic
  std::vector<double> log_weight;     // row-major blocks x blocks; -inf where no edge
  std::size_t size() const { return blocks.size(); }
  std::size_t index_of(std::span<const Symbol> block) const;
  double edge(std::size_t u, std::size_t v) const { return log_weight[u * blocks.size() + v]; }
  bool has_edge(std::size_t u, std::size_t v) const;
};

BlockRecoding recode(const LocallyConstantPotential& phi);

}  // namespace weakgibbs
