#include "weakgibbs/text_format.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "weakgibbs/errors.hpp"

namespace weakgibbs {
namespace {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    for (std::string tok; ls >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void fail(const Line& line, const std::string& what) {
  throw InvalidInput("line " + std::to_string(line.number) + ": " + what);
}

double parse_real(const Line& line, const std::string& tok) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  // ERANGE also flags subnormal results, which are exact and must round-trip.
  if (end == tok.c_str() || *end != '\0' || (errno == ERANGE && std::isinf(v))) fail(line, "bad number '" + tok + "'");
  return v;
}

int parse_int(const Line& line, const std::string& tok) {
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(tok.c_str(), &end, 10);
  if (end == tok.c_str() || *end != '\0' || errno == ERANGE || v < -1000000 || v > 1000000) {
    fail(line, "bad integer '" + tok + "'");
  }
  return static_cast<int>(v);
}

class Reader {
 public:
  Reader(const std::string& text, const std::string& kind) : lines_(tokenize(text)) {
    if (lines_.empty()) throw InvalidInput("empty " + kind + " document");
    const Line& head = lines_.front();
    if (head.tokens.size() != 2 || head.tokens[0] != kind) fail(head, "expected header '" + kind + " 1'");
    if (head.tokens[1] != "1") fail(head, "unsupported " + kind + " format version " + head.tokens[1]);
    pos_ = 1;
  }

  bool done() const { return pos_ >= lines_.size(); }
  const Line& peek() const {
    if (done()) throw InvalidInput("unexpected end of document");
    return lines_[pos_];
  }
  const Line& next() {
    const Line& l = peek();
    ++pos_;
    return l;
  }
  /// Next line must be "<key> <values...>" with `arity` values (-1: any).
  const Line& expect(const std::string& key, int arity) {
    const Line& l = next();
    if (l.tokens[0] != key) fail(l, "expected '" + key + "', found '" + l.tokens[0] + "'");
    if (arity >= 0 && static_cast<int>(l.tokens.size()) != arity + 1) {
      fail(l, "'" + key + "' takes " + std::to_string(arity) + " value(s)");
    }
    return l;
  }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

std::string join_word(std::span<const Symbol> w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + std::to_string(w[i]);
  return s;
}

// "<s_1> ... <s_n> <value>" lines until the end of the document.
std::map<Word, double> read_word_values(Reader& r, int length) {
  std::map<Word, double> out;
  while (!r.done()) {
    const Line& l = r.next();
    if (length > 0 && static_cast<int>(l.tokens.size()) != length + 1) fail(l, "expected a word and a value");
    if (l.tokens.size() < 2) fail(l, "expected a word and a value");
    Word w;
    for (std::size_t i = 0; i + 1 < l.tokens.size(); ++i) w.push_back(parse_int(l, l.tokens[i]));
    if (!out.emplace(w, parse_real(l, l.tokens.back())).second) fail(l, "duplicate word " + join_word(w));
  }
  return out;
}

std::vector<std::uint8_t> read_rows(Reader& r, int k) {
  std::vector<std::uint8_t> t;
  for (int i = 0; i < k; ++i) {
    const Line& l = r.expect("row", k);
    for (int j = 1; j <= k; ++j) {
      const int v = parse_int(l, l.tokens[static_cast<std::size_t>(j)]);
      if (v != 0 && v != 1) fail(l, "transition entries must be 0 or 1");
      t.push_back(static_cast<std::uint8_t>(v));
    }
  }
  return t;
}

void write_rows(std::ostringstream& os, const TransitionSystem& ts) {
  const int k = ts.alphabet_size();
  for (int i = 0; i < k; ++i) {
    os << "row";
    for (int j = 0; j < k; ++j) os << ' ' << static_cast<int>(ts.matrix()[static_cast<std::size_t>(i * k + j)]);
    os << '\n';
  }
}

}  // namespace

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string write_system(const TransitionSystem& ts) {
  std::ostringstream os;
  os << "sft 1\nalphabet " << ts.alphabet_size() << '\n';
  write_rows(os, ts);
  return os.str();
}

TransitionSystem read_system(const std::string& text) {
  Reader r(text, "sft");
  const Line& a = r.expect("alphabet", 1);
  const int k = parse_int(a, a.tokens[1]);
  if (k < 1) fail(a, "alphabet size must be positive");
  auto rows = read_rows(r, k);
  if (!r.done()) fail(r.peek(), "trailing content");
  return TransitionSystem(k, std::move(rows));
}

std::string write_potential(const LocallyConstantPotential& phi) {
  std::ostringstream os;
  os << "potential 1\ndepth " << phi.depth() << "\nprecision 17\n";
  for (const auto& [w, v] : phi.table()) os << join_word(w) << ' ' << format_real(v) << '\n';
  return os.str();
}

LocallyConstantPotential read_potential(const TransitionSystem& ts, const std::string& text) {
  Reader r(text, "potential");
  const Line& d = r.expect("depth", 1);
  const int depth = parse_int(d, d.tokens[1]);
  if (depth < 1) fail(d, "depth must be positive");
  if (!r.done() && r.peek().tokens[0] == "precision") {
    const Line& p = r.expect("precision", 1);
    const int digits = parse_int(p, p.tokens[1]);
    if (digits < 1 || digits > 17) fail(p, "precision must be between 1 and 17");
  }
  return LocallyConstantPotential(ts, depth, read_word_values(r, depth));
}

std::string write_measure(const MarkovMeasure& mu) {
  if (mu.block_length() != 1) throw InvalidInput("only one-step Markov measures have a text form");
  std::ostringstream os;
  os << "measure 1\ntype markov\n";
  const std::size_t k = mu.q().n;
  for (std::size_t i = 0; i < k; ++i) {
    os << 'q';
    for (std::size_t j = 0; j < k; ++j) os << ' ' << format_real(mu.q()(i, j));
    os << '\n';
  }
  os << "pi";
  for (double p : mu.pi()) os << ' ' << format_real(p);
  os << '\n';
  return os.str();
}

std::string write_measure(const TableMeasure& mu) {
  std::ostringstream os;
  os << "measure 1\ntype table\nlength " << mu.length() << '\n';
  for (const auto& [w, m] : mu.masses()) os << join_word(w) << ' ' << format_real(m) << '\n';
  return os.str();
}

std::shared_ptr<const CylinderMeasureOracle> read_measure(const TransitionSystem& ts, const std::string& text) {
  Reader r(text, "measure");
  const Line& t = r.expect("type", 1);
  const std::string& type = t.tokens[1];
  const int k = ts.alphabet_size();
  if (type == "bernoulli") {
    const Line& l = r.expect("p", k);
    std::vector<double> p;
    for (int i = 1; i <= k; ++i) p.push_back(parse_real(l, l.tokens[static_cast<std::size_t>(i)]));
    if (!r.done()) fail(r.peek(), "trailing content");
    return std::make_shared<MarkovMeasure>(MarkovMeasure::bernoulli(ts, p));
  }
  if (type == "markov") {
    DenseMatrix q(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      const Line& l = r.expect("q", k);
      for (int j = 0; j < k; ++j) q(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = parse_real(l, l.tokens[static_cast<std::size_t>(j + 1)]);
    }
    std::optional<std::vector<double>> pi;
    if (!r.done()) {
      const Line& l = r.expect("pi", k);
      pi.emplace();
      for (int i = 1; i <= k; ++i) pi->push_back(parse_real(l, l.tokens[static_cast<std::size_t>(i)]));
    }
    if (!r.done()) fail(r.peek(), "trailing content");
    return std::make_shared<MarkovMeasure>(ts, std::move(q), std::move(pi));
  }
  if (type == "rpf") {
    const Line& d = r.expect("depth", 1);
    const int depth = parse_int(d, d.tokens[1]);
    if (depth < 1) fail(d, "depth must be positive");
    const LocallyConstantPotential phi(ts, depth, read_word_values(r, depth));
    return build_rpf(phi).measure;
  }
  if (type == "table") {
    const Line& l = r.expect("length", 1);
    const int length = parse_int(l, l.tokens[1]);
    return std::make_shared<TableMeasure>(ts, length, read_word_values(r, 0));
  }
  fail(t, "unknown measure type '" + type + "'");
}

std::string write_map(const ExpandingMarkovMap& map) {
  std::ostringstream os;
  os << "map 1\ntype " << (map.piecewise_linear() ? "piecewise_linear" : "general") << '\n';
  os << "alphabet " << map.system().alphabet_size() << '\n';
  write_rows(os, map.system());
  if (const auto* g = dynamic_cast<const GeneralMarkovMap*>(&map)) {
    os << "family " << g->family() << "\nparameter " << format_real(g->parameter()) << '\n';
    return os.str();
  }
  for (Symbol i = 1; i <= map.system().alphabet_size(); ++i) {
    os << "branch " << format_real(map.domain(i).left) << ' ' << format_real(map.domain(i).right) << ' '
       << format_real(map.image(i).left) << ' ' << format_real(map.image(i).right) << ' '
       << (map.increasing(i) ? '+' : '-') << '\n';
  }
  return os.str();
}

std::unique_ptr<ExpandingMarkovMap> read_map(const std::string& text) {
  Reader r(text, "map");
  const Line& t = r.expect("type", 1);
  const std::string type = t.tokens[1];
  const Line& a = r.expect("alphabet", 1);
  const int k = parse_int(a, a.tokens[1]);
  if (k < 1) fail(a, "alphabet size must be positive");
  TransitionSystem ts(k, read_rows(r, k));
  if (type == "general") {
    const Line& f = r.expect("family", 1);
    const Line& p = r.expect("parameter", 1);
    if (!r.done()) fail(r.peek(), "trailing content");
    if (f.tokens[1] != "perturbed_doubling") fail(f, "unknown map family '" + f.tokens[1] + "'");
    auto map = std::make_unique<GeneralMarkovMap>(GeneralMarkovMap::perturbed_doubling(parse_real(p, p.tokens[1])));
    if (!(map->system() == ts)) fail(f, "perturbed_doubling is coded by the full 2-shift");
    return map;
  }
  if (type != "piecewise_linear") fail(t, "unknown map type '" + type + "'");
  std::vector<Interval> domains;
  std::vector<Interval> images;
  std::vector<bool> increasing;
  for (int i = 0; i < k; ++i) {
    const Line& b = r.expect("branch", 5);
    domains.push_back({parse_real(b, b.tokens[1]), parse_real(b, b.tokens[2])});
    images.push_back({parse_real(b, b.tokens[3]), parse_real(b, b.tokens[4])});
    if (b.tokens[5] != "+" && b.tokens[5] != "-") fail(b, "orientation must be + or -");
    increasing.push_back(b.tokens[5] == "+");
  }
  if (!r.done()) fail(r.peek(), "trailing content");
  return std::make_unique<PiecewiseLinearMap>(std::move(ts), std::move(domains), std::move(images), std::move(increasing));
}

}  // namespace weakgibbs
