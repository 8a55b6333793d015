#pragma once

// One-sided subshifts of finite type over the alphabet {1, ..., k}.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace weakgibbs {

using Symbol = int;
using Word = std::vector<Symbol>;

/// Alphabet size plus 0/1 transition matrix. Immutable after construction.
///
/// Construction rejects dead rows and dead columns. The mixing exponent (the
/// least l with every entry of t^l positive) is computed once, searching up to
/// Wielandt's bound (k-1)^2 + 1, beyond which no primitive matrix can first
/// become positive.
class TransitionSystem {
 public:
  /// `matrix` is row-major k*k, entries 0 or 1.
  TransitionSystem(int k, std::vector<std::uint8_t> matrix);

  static TransitionSystem full_shift(int k);
  /// t = [[1,1],[1,0]]: the pair (2,2) is forbidden.
  static TransitionSystem golden_mean();

  int alphabet_size() const { return k_; }
  bool allowed(Symbol from, Symbol to) const {
    return t_[static_cast<std::size_t>((from - 1) * k_ + (to - 1))] != 0;
  }
  const std::vector<std::uint8_t>& matrix() const { return t_; }
  std::optional<int> mixing_exponent() const { return mixing_exponent_; }
  bool is_mixing() const { return mixing_exponent_.has_value(); }

  bool operator==(const TransitionSystem&) const = default;

 private:
  int k_;
  std::vector<std::uint8_t> t_;
  std::optional<int> mixing_exponent_;
};

bool is_admissible(const TransitionSystem& ts, std::span<const Symbol> word);
/// Throws InvalidInput naming the first bad position.
void require_admissible(const TransitionSystem& ts, std::span<const Symbol> word);

/// Smallest l <= l_max with t^l entrywise positive. Boolean powers.
std::optional<int> find_mixing_exponent(const TransitionSystem& ts, int l_max);

/// Sum of the entries of t^(n-1); throws Error on 64-bit overflow.
std::uint64_t count_cylinders(const TransitionSystem& ts, int n);
/// trace(t^n); throws Error on 64-bit overflow.
std::uint64_t count_periodic(const TransitionSystem& ts, int n);

using WordVisitor = std::function<void(std::span<const Symbol>)>;

/// Visits every admissible word of length `length` that starts with `prefix`,
/// in lexicographic order. `prefix` must itself be admissible. An empty prefix
/// enumerates all words; a one-symbol prefix selects one lexicographic range,
/// which is how callers split enumeration across threads.
void for_each_extension(const TransitionSystem& ts, std::span<const Symbol> prefix,
                        int length, const WordVisitor& visit);

/// Every admissible word of length n, lexicographic.
void for_each_cylinder(const TransitionSystem& ts, int n, const WordVisitor& visit);
std::vector<Word> enumerate_cylinders(const TransitionSystem& ts, int n);

/// Every cycle w of length n with w admissible and t[w_n, w_1] = 1, i.e. the
/// period words of Fix(sigma^n), non-primitive cycles included.
void for_each_periodic(const TransitionSystem& ts, int n, const WordVisitor& visit);

/// Eventually periodic point prefix . cycle . cycle . ...
class SymbolicPoint {
 public:
  /// Validates admissibility of the whole infinite sequence against `ts`.
  SymbolicPoint(const TransitionSystem& ts, Word prefix, Word cycle);

  static SymbolicPoint periodic(const TransitionSystem& ts, Word cycle);
  /// Some point of the cylinder [word]: the word followed by the
  /// lexicographically-least-successor orbit of its last symbol.
  static SymbolicPoint in_cylinder(const TransitionSystem& ts, std::span<const Symbol> word);

  const Word& prefix() const { return prefix_; }
  const Word& cycle() const { return cycle_; }

  /// 1-based coordinate; total on i >= 1.
  Symbol at(std::size_t i) const;
  /// First n coordinates.
  Word first(std::size_t n) const;
  /// sigma^n of this point.
  SymbolicPoint shifted(std::size_t n) const;

  /// Equality of the underlying infinite sequences.
  friend bool operator==(const SymbolicPoint& a, const SymbolicPoint& b);

  std::string to_string() const;

 private:
  SymbolicPoint(Word prefix, Word cycle) : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {}
  std::pair<Word, Word> canonical() const;

  Word prefix_;
  Word cycle_;
};

std::vector<SymbolicPoint> enumerate_periodic(const TransitionSystem& ts, int n);

/// sum_i |w_i - k_i| / 2^i, truncated once the omitted tail is below tol. Returns exactly
/// zero iff the points are equal; if they agree up to the truncation index but
/// differ later, summation continues to the first difference.
double metric_distance(const TransitionSystem& ts, const SymbolicPoint& a, const SymbolicPoint& b,
                       double tol);

}  // namespace weakgibbs
