#include "weakgibbs/sft.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "weakgibbs/errors.hpp"

namespace weakgibbs {
namespace {

using BoolMatrix = std::vector<std::uint8_t>;

BoolMatrix bool_multiply(const BoolMatrix& a, const BoolMatrix& b, int k) {
  BoolMatrix c(a.size(), 0);
  for (int i = 0; i < k; ++i) {
    for (int l = 0; l < k; ++l) {
      if (!a[i * k + l]) continue;
      for (int j = 0; j < k; ++j) c[i * k + j] |= b[l * k + j];
    }
  }
  return c;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw Error("count overflows 64 bits");
  return r;
}

std::vector<std::uint64_t> int_power(const TransitionSystem& ts, int e) {
  const int k = ts.alphabet_size();
  std::vector<std::uint64_t> result(static_cast<std::size_t>(k * k), 0);
  for (int i = 0; i < k; ++i) result[i * k + i] = 1;
  for (int step = 0; step < e; ++step) {
    std::vector<std::uint64_t> next(result.size(), 0);
    for (int i = 0; i < k; ++i) {
      for (int l = 0; l < k; ++l) {
        if (result[i * k + l] == 0) continue;
        for (int j = 0; j < k; ++j) {
          if (ts.allowed(l + 1, j + 1)) {
            next[i * k + j] = checked_add(next[i * k + j], result[i * k + l]);
          }
        }
      }
    }
    result = std::move(next);
  }
  return result;
}

int gcd_len(std::size_t a, std::size_t b) { return static_cast<int>(std::gcd(a, b)); }

}  // namespace

TransitionSystem::TransitionSystem(int k, std::vector<std::uint8_t> matrix)
    : k_(k), t_(std::move(matrix)) {
  if (k < 1) throw InvalidInput("alphabet size must be positive");
  if (t_.size() != static_cast<std::size_t>(k) * static_cast<std::size_t>(k)) {
    throw InvalidInput("transition matrix must have k*k entries");
  }
  for (auto& v : t_) {
    if (v > 1) throw InvalidInput("transition matrix entries must be 0 or 1");
  }
  for (int i = 0; i < k; ++i) {
    bool row = false;
    bool col = false;
    for (int j = 0; j < k; ++j) {
      row = row || t_[i * k + j];
      col = col || t_[j * k + i];
    }
    if (!row) throw InvalidInput("dead row for symbol " + std::to_string(i + 1));
    if (!col) throw InvalidInput("dead column for symbol " + std::to_string(i + 1));
  }
  mixing_exponent_ = find_mixing_exponent(*this, (k - 1) * (k - 1) + 1);
}

TransitionSystem TransitionSystem::full_shift(int k) {
  return TransitionSystem(k, std::vector<std::uint8_t>(static_cast<std::size_t>(k * k), 1));
}

TransitionSystem TransitionSystem::golden_mean() { return TransitionSystem(2, {1, 1, 1, 0}); }

bool is_admissible(const TransitionSystem& ts, std::span<const Symbol> word) {
  const int k = ts.alphabet_size();
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] < 1 || word[i] > k) return false;
    if (i > 0 && !ts.allowed(word[i - 1], word[i])) return false;
  }
  return true;
}

void require_admissible(const TransitionSystem& ts, std::span<const Symbol> word) {
  const int k = ts.alphabet_size();
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] < 1 || word[i] > k) {
      throw InvalidInput("symbol out of range at position " + std::to_string(i + 1));
    }
    if (i > 0 && !ts.allowed(word[i - 1], word[i])) {
      throw InvalidInput("forbidden transition at position " + std::to_string(i));
    }
  }
}

std::optional<int> find_mixing_exponent(const TransitionSystem& ts, int l_max) {
  if (l_max < 1) throw InvalidInput("l_max must be at least 1");
  const int k = ts.alphabet_size();
  BoolMatrix power = ts.matrix();
  for (int l = 1; l <= l_max; ++l) {
    if (std::all_of(power.begin(), power.end(), [](std::uint8_t v) { return v != 0; })) return l;
    power = bool_multiply(power, ts.matrix(), k);
  }
  return std::nullopt;
}

std::uint64_t count_cylinders(const TransitionSystem& ts, int n) {
  if (n < 1) throw InvalidInput("n must be at least 1");
  std::uint64_t total = 0;
  for (auto v : int_power(ts, n - 1)) total = checked_add(total, v);
  return total;
}

std::uint64_t count_periodic(const TransitionSystem& ts, int n) {
  if (n < 1) throw InvalidInput("n must be at least 1");
  const int k = ts.alphabet_size();
  const auto p = int_power(ts, n);
  std::uint64_t total = 0;
  for (int i = 0; i < k; ++i) total = checked_add(total, p[i * k + i]);
  return total;
}

void for_each_extension(const TransitionSystem& ts, std::span<const Symbol> prefix, int length,
                        const WordVisitor& visit) {
  if (length < 0) throw InvalidInput("length must be nonnegative");
  require_admissible(ts, prefix);
  const auto fixed = static_cast<int>(prefix.size());
  if (fixed > length) throw InvalidInput("prefix longer than requested length");
  const int k = ts.alphabet_size();
  Word w(prefix.begin(), prefix.end());
  w.resize(static_cast<std::size_t>(length), 0);
  if (fixed == length) {
    visit(w);
    return;
  }
  // Odometer over positions fixed..length-1; w[pos] == 0 marks "not yet tried".
  int pos = fixed;
  while (pos >= fixed) {
    if (pos == length) {
      visit(w);
      --pos;
      continue;
    }
    Symbol s = w[pos] + 1;
    while (s <= k && pos > 0 && !ts.allowed(w[pos - 1], s)) ++s;
    if (s > k) {
      w[pos] = 0;
      --pos;
      continue;
    }
    w[pos] = s;
    ++pos;
  }
}

void for_each_cylinder(const TransitionSystem& ts, int n, const WordVisitor& visit) {
  if (n < 1) throw InvalidInput("n must be at least 1");
  for_each_extension(ts, {}, n, visit);
}

std::vector<Word> enumerate_cylinders(const TransitionSystem& ts, int n) {
  std::vector<Word> out;
  for_each_cylinder(ts, n, [&](std::span<const Symbol> w) { out.emplace_back(w.begin(), w.end()); });
  return out;
}

void for_each_periodic(const TransitionSystem& ts, int n, const WordVisitor& visit) {
  for_each_cylinder(ts, n, [&](std::span<const Symbol> w) {
    if (ts.allowed(w.back(), w.front())) visit(w);
  });
}

std::vector<SymbolicPoint> enumerate_periodic(const TransitionSystem& ts, int n) {
  std::vector<SymbolicPoint> out;
  for_each_periodic(ts, n, [&](std::span<const Symbol> w) {
    out.push_back(SymbolicPoint::periodic(ts, Word(w.begin(), w.end())));
  });
  return out;
}

SymbolicPoint::SymbolicPoint(const TransitionSystem& ts, Word prefix, Word cycle)
    : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
  if (cycle_.empty()) throw InvalidInput("cycle must be nonempty");
  require_admissible(ts, prefix_);
  require_admissible(ts, cycle_);
  if (!ts.allowed(cycle_.back(), cycle_.front())) {
    throw InvalidInput("cycle does not close: last symbol cannot precede first");
  }
  if (!prefix_.empty() && !ts.allowed(prefix_.back(), cycle_.front())) {
    throw InvalidInput("prefix cannot be followed by cycle");
  }
}

SymbolicPoint SymbolicPoint::periodic(const TransitionSystem& ts, Word cycle) {
  return SymbolicPoint(ts, {}, std::move(cycle));
}

SymbolicPoint SymbolicPoint::in_cylinder(const TransitionSystem& ts, std::span<const Symbol> word) {
  if (word.empty()) throw InvalidInput("cylinder word must be nonempty");
  require_admissible(ts, word);
  // Follow least successors from the last symbol until a symbol repeats.
  const int k = ts.alphabet_size();
  Word orbit{word.back()};
  std::vector<int> seen(static_cast<std::size_t>(k + 1), -1);
  seen[word.back()] = 0;
  for (;;) {
    Symbol cur = orbit.back();
    Symbol next = 1;
    while (!ts.allowed(cur, next)) ++next;
    if (seen[next] >= 0) {
      const auto start = static_cast<std::size_t>(seen[next]);
      Word prefix(word.begin(), word.end() - 1);
      prefix.insert(prefix.end(), orbit.begin(), orbit.begin() + static_cast<std::ptrdiff_t>(start));
      Word cycle(orbit.begin() + static_cast<std::ptrdiff_t>(start), orbit.end());
      return SymbolicPoint(ts, std::move(prefix), std::move(cycle));
    }
    seen[next] = static_cast<int>(orbit.size());
    orbit.push_back(next);
  }
}

Symbol SymbolicPoint::at(std::size_t i) const {
  if (i < 1) throw InvalidInput("coordinates are 1-based");
  if (i <= prefix_.size()) return prefix_[i - 1];
  return cycle_[(i - 1 - prefix_.size()) % cycle_.size()];
}

Word SymbolicPoint::first(std::size_t n) const {
  Word out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = at(i + 1);
  return out;
}

SymbolicPoint SymbolicPoint::shifted(std::size_t n) const {
  if (n <= prefix_.size()) {
    return SymbolicPoint(Word(prefix_.begin() + static_cast<std::ptrdiff_t>(n), prefix_.end()), cycle_);
  }
  const std::size_t r = (n - prefix_.size()) % cycle_.size();
  Word rotated(cycle_.begin() + static_cast<std::ptrdiff_t>(r), cycle_.end());
  rotated.insert(rotated.end(), cycle_.begin(), cycle_.begin() + static_cast<std::ptrdiff_t>(r));
  return SymbolicPoint(Word{}, std::move(rotated));
}

std::pair<Word, Word> SymbolicPoint::canonical() const {
  // Primitive root of the cycle.
  Word cycle = cycle_;
  const std::size_t len = cycle.size();
  for (std::size_t d = 1; d <= len; ++d) {
    if (len % d != 0) continue;
    bool repeats = true;
    for (std::size_t i = d; i < len && repeats; ++i) repeats = cycle[i] == cycle[i - d];
    if (repeats) {
      cycle.resize(d);
      break;
    }
  }
  // Absorb prefix tail into the cycle.
  Word prefix = prefix_;
  while (!prefix.empty() && prefix.back() == cycle.back()) {
    prefix.pop_back();
    std::rotate(cycle.rbegin(), cycle.rbegin() + 1, cycle.rend());
  }
  return {std::move(prefix), std::move(cycle)};
}

bool operator==(const SymbolicPoint& a, const SymbolicPoint& b) { return a.canonical() == b.canonical(); }

std::string SymbolicPoint::to_string() const {
  std::ostringstream os;
  for (auto s : prefix_) os << s << ' ';
  os << '(';
  for (std::size_t i = 0; i < cycle_.size(); ++i) os << (i ? " " : "") << cycle_[i];
  os << ")^inf";
  return os.str();
}

double metric_distance(const TransitionSystem& ts, const SymbolicPoint& a, const SymbolicPoint& b,
                       double tol) {
  if (!(tol > 0.0)) throw InvalidInput("tol must be positive");
  if (a == b) return 0.0;
  const double spread = std::max(1, ts.alphabet_size() - 1);
  double sum = 0.0;
  double weight = 0.5;
  std::size_t i = 1;
  // The omitted tail from index i on is at most 2 * spread * weight.
  for (; 2.0 * spread * weight >= tol; ++i, weight *= 0.5) {
    sum += std::abs(a.at(i) - b.at(i)) * weight;
  }
  if (sum == 0.0) {
    // Unequal points agree beyond the truncation: the first difference lies
    // within max prefix + lcm of cycle lengths.
    const std::size_t bound = std::max(a.prefix().size(), b.prefix().size()) +
                              a.cycle().size() / static_cast<std::size_t>(gcd_len(a.cycle().size(), b.cycle().size())) *
                                  b.cycle().size() + 1;
    for (; i <= bound; ++i, weight *= 0.5) {
      if (a.at(i) != b.at(i)) return std::abs(a.at(i) - b.at(i)) * weight;
    }
  }
  return sum;
}

}  // namespace weakgibbs
