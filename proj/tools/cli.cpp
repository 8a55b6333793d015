#include "cli.hpp"

#include <cmath>
#include <deque>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

#include "weakgibbs/errors.hpp"
#include "weakgibbs/interval_map.hpp"
#include "weakgibbs/measure.hpp"
#include "weakgibbs/multifractal.hpp"
#include "weakgibbs/pressure.hpp"
#include "weakgibbs/psi.hpp"
#include "weakgibbs/text_format.hpp"

namespace weakgibbs::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct Csv {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

std::string cell(double x) { return format_real(x); }
std::string cell(int x) { return std::to_string(x); }
std::string cell(std::uint64_t x) { return std::to_string(x); }

std::string join(const std::vector<double>& v, char sep = ';') {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? std::string(1, sep) : "") + format_real(v[i]);
  return s;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string hex64(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

const std::set<std::string> kCommon{"schema", "n_max", "tol", "seed", "threads"};

const std::map<std::string, std::set<std::string>>& command_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"sft-check", {"system"}},
      {"pressure", {"system", "potential", "n_min", "methods"}},
      {"gibbs-build", {"system", "potential"}},
      {"weakgibbs-certify", {"system", "measure", "potential", "pressure", "tau"}},
      {"psi-verify",
       {"system", "measure", "potential", "pressure", "tau", "k", "pressure_n_max", "almost_additive_n_max"}},
      {"map-check", {"map", "random_points", "measure", "points"}},
      {"spectrum", {"map", "measures", "alpha", "alpha_grid", "step", "delta", "quadrature_n"}},
  };
  return keys;
}

// Configuration plus everything the run accumulates.
class Run {
 public:
  Run(std::string command, const Options& opts) : command_(std::move(command)), opts_(opts) {
    const std::string text = read_file(opts.config);
    hash_ = fnv1a(text);
    try {
      cfg_ = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw InvalidInput(std::string("config ") + opts.config.string() + ": " + e.what());
    }
    if (!cfg_.is_object()) throw InvalidInput("config: top level must be an object");
    base_ = opts.config.parent_path();
    const auto& extra = command_keys().at(command_);
    for (const auto& [key, _] : cfg_.items()) {
      if (!kCommon.count(key) && !extra.count(key)) throw InvalidInput("config: unknown key '" + key + "'");
    }
    if (!cfg_.contains("schema")) throw InvalidInput("config: missing field 'schema'");
    if (get<int>("schema", 0) != 1) throw InvalidInput("config field 'schema': only version 1 is supported");
    threads_ = opts.threads ? *opts.threads : get<int>("threads", 1);
    if (threads_ < 1) throw InvalidInput("threads must be at least 1");
  }

  template <class T>
  T get(const std::string& key, T fallback) const {
    if (!cfg_.contains(key)) return fallback;
    try {
      return cfg_.at(key).get<T>();
    } catch (const Json::exception&) {
      throw InvalidInput("config field '" + key + "': wrong type");
    }
  }
  bool has(const std::string& key) const { return cfg_.contains(key); }
  const Json& raw(const std::string& key) const {
    if (!cfg_.contains(key)) throw InvalidInput("config: missing field '" + key + "'");
    return cfg_.at(key);
  }

  int n_max(int fallback) const {
    const int n = opts_.n_max ? *opts_.n_max : get<int>("n_max", fallback);
    if (n < 1) throw InvalidInput("n_max must be positive");
    return n;
  }
  double tol(double fallback) const {
    const double t = opts_.tol ? *opts_.tol : get<double>("tol", fallback);
    if (!(t > 0.0)) throw InvalidInput("tol must be positive");
    return t;
  }
  std::uint64_t seed(std::uint64_t fallback) const { return opts_.seed ? *opts_.seed : get<std::uint64_t>("seed", fallback); }

  /// Reads a referenced document (path relative to the config file).
  std::string document(const std::string& key) { return document_at(get<std::string>(key, ""), key); }
  std::string document_at(const std::string& rel, const std::string& key) {
    if (rel.empty()) throw InvalidInput("config: missing document reference '" + key + "'");
    fs::path p(rel);
    if (p.is_relative()) p = base_ / p;
    const std::string text = read_file(p);
    hash_ = fnv1a(text, hash_);
    return text;
  }

  TransitionSystem system() { return read_system(document("system")); }

  Json& result() { return result_; }
  Csv& table(const std::string& name, std::vector<std::string> header) {
    tables_.push_back({name, std::move(header), {}});
    return tables_.back();
  }

  void write(bool pass) {
    Json out;
    out["command"] = command_;
    out["schema"] = 1;
    out["input_hash"] = hex64(hash_);
    out["status"] = pass ? "pass" : "fail";
    for (auto& [k, v] : result_.items()) out[k] = v;

    Csv summary{"summary.csv", {"key", "value"}, {}};
    flatten(out, "", summary);
    std::vector<std::string> names;
    for (const auto& t : tables_) names.push_back(t.name);
    names.push_back(summary.name);
    out["tables"] = names;

    fs::create_directories(opts_.out);
    std::ofstream(opts_.out / "result.json", std::ios::binary) << out.dump(2) << '\n';
    for (const auto& t : tables_) write_csv(t);
    write_csv(summary);
  }

 private:
  static void flatten(const Json& j, const std::string& path, Csv& csv) {
    if (j.is_object()) {
      for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, csv);
    } else if (j.is_array()) {
      for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", csv);
    } else if (j.is_number_float()) {
      csv.add({path, format_real(j.get<double>())});
    } else if (j.is_number()) {
      csv.add({path, j.dump()});
    }
  }

  void write_csv(const Csv& t) const {
    std::ofstream out(opts_.out / t.name, std::ios::binary);
    for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << t.header[i];
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
      out << '\n';
    }
  }

  std::string command_;
  Options opts_;
  Json cfg_;
  fs::path base_;
  std::uint64_t hash_ = 0;
  int threads_ = 1;
  Json result_ = Json::object();
  std::deque<Csv> tables_;  // table() hands out references that must survive later insertions
};

Json estimate_json(const PressureEstimate& e) {
  return Json{{"method", to_string(e.method)},
              {"extrapolated", e.extrapolated},
              {"error_bar", e.error_bar},
              {"accelerated", e.accelerated}};
}

// ---------------------------------------------------------------- commands

bool sft_check(Run& run) {
  const TransitionSystem ts = run.system();
  const int n_max = run.n_max(10);
  auto& csv = run.table("counts.csv", {"n", "cylinders", "periodic"});
  for (int n = 1; n <= n_max; ++n) csv.add({cell(n), cell(count_cylinders(ts, n)), cell(count_periodic(ts, n))});
  auto& r = run.result();
  r["alphabet"] = ts.alphabet_size();
  r["mixing"] = ts.is_mixing();
  r["mixing_exponent"] = ts.mixing_exponent() ? Json(*ts.mixing_exponent()) : Json(nullptr);
  return ts.is_mixing();
}

bool pressure_cmd(Run& run) {
  const TransitionSystem ts = run.system();
  const auto phi = read_potential(ts, run.document("potential"));
  const int n_min = run.get<int>("n_min", 1);
  const int n_max = run.n_max(20);
  const double tol = run.tol(1e-6);
  const auto methods = run.get<std::vector<std::string>>("methods", {"cylinder", "periodic", "spectral"});

  auto& csv = run.table("pressure.csv", {"n", "method", "estimate"});
  auto& r = run.result();
  const double spectral = pressure_spectral(phi);
  r["spectral"] = spectral;
  r["tol"] = tol;
  Json estimates = Json::array();
  bool pass = true;
  for (const auto& name : methods) {
    PressureMethod m;
    if (name == "cylinder") {
      m = PressureMethod::cylinder;
    } else if (name == "periodic") {
      m = PressureMethod::periodic;
    } else if (name == "spectral") {
      continue;
    } else {
      throw InvalidInput("config field 'methods': unknown method '" + name + "'");
    }
    const auto e = pressure_limit(phi, m, n_min, n_max);
    for (const auto& [n, v] : e.finite_n_values) csv.add({cell(n), name, cell(v)});
    Json ej = estimate_json(e);
    const double deviation = std::abs(e.extrapolated - spectral);
    ej["deviation_from_spectral"] = deviation;
    ej["agrees"] = deviation <= e.error_bar + tol;
    pass = pass && deviation <= e.error_bar + tol;
    estimates.push_back(ej);
  }
  auto& spec_csv = run.table("pressure_summary.csv", {"method", "extrapolated", "error_bar"});
  for (const auto& e : estimates) spec_csv.add({e["method"].get<std::string>(), cell(e["extrapolated"].get<double>()), cell(e["error_bar"].get<double>())});
  spec_csv.add({"spectral", cell(spectral), cell(0.0)});
  r["estimates"] = estimates;
  return pass;
}

bool gibbs_build(Run& run) {
  const TransitionSystem ts = run.system();
  const auto phi = read_potential(ts, run.document("potential"));
  const int n_max = run.n_max(8);
  const auto data = build_rpf(phi);
  const auto& mu = *data.measure;
  auto& vec = run.table("rpf_vectors.csv", {"block", "h", "nu", "pi"});
  for (std::size_t u = 0; u < data.recoding.size(); ++u) {
    std::string block;
    for (Symbol s : data.recoding.blocks[u]) block += std::to_string(s);
    vec.add({block, cell(data.right[u]), cell(data.left[u]), cell(mu.pi()[u])});
  }
  auto& q = run.table("rpf_q.csv", {"from", "to", "q"});
  for (std::size_t u = 0; u < mu.q().n; ++u) {
    for (std::size_t v = 0; v < mu.q().n; ++v) {
      if (mu.q()(u, v) > 0.0) q.add({cell(static_cast<int>(u)), cell(static_cast<int>(v)), cell(mu.q()(u, v))});
    }
  }
  const auto consistency = check_consistency(mu, n_max);
  auto& r = run.result();
  r["lambda"] = data.lambda;
  r["pressure"] = data.pressure();
  r["gibbs_constant"] = data.gibbs_constant;
  r["block_length"] = mu.block_length();
  r["additivity_defect"] = consistency.additivity_defect;
  r["invariance_defect"] = consistency.invariance_defect;
  return consistency.additivity_defect <= 1e-12 && consistency.invariance_defect <= 1e-10;
}

struct MeasureAndPotential {
  std::shared_ptr<const CylinderMeasureOracle> mu;
  std::optional<LocallyConstantPotential> phi;
  double pressure = 0.0;
  std::string pressure_source;
};

MeasureAndPotential load_measure_and_potential(Run& run, const TransitionSystem& ts, bool potential_required) {
  MeasureAndPotential out;
  out.mu = read_measure(ts, run.document("measure"));
  if (run.has("potential")) {
    out.phi = read_potential(ts, run.document("potential"));
  } else if (auto gp = out.mu->gibbs_potential(); gp && !potential_required) {
    out.phi = gp->potential;
    out.pressure = gp->pressure;
    out.pressure_source = "measure";
  } else {
    throw InvalidInput("config: missing document reference 'potential'");
  }
  if (run.has("pressure")) {
    out.pressure = run.get<double>("pressure", 0.0);
    out.pressure_source = "config";
  } else if (out.pressure_source.empty()) {
    out.pressure = pressure_spectral(*out.phi);
    out.pressure_source = "spectral";
  }
  return out;
}

Json certificate_json(const WeakGibbsCertificate& cert) {
  return Json{{"verdict", to_string(cert.verdict)}, {"constant", cert.constant},   {"rate", cert.rate},
              {"tail_slope", cert.tail_slope},      {"threshold", cert.threshold}, {"pressure_used", cert.pressure_used}};
}

void certificate_table(Run& run, const WeakGibbsCertificate& cert) {
  auto& csv = run.table("certify.csv", {"n", "kstar", "log_kstar_over_n"});
  for (const auto& [n, k] : cert.kstar) csv.add({cell(n), cell(k), cell(std::log(k) / n)});
}

bool certify_cmd(Run& run) {
  const TransitionSystem ts = run.system();
  const auto in = load_measure_and_potential(run, ts, true);
  const int n_max = run.n_max(10);
  const double tau = run.get<double>("tau", 0.1);
  if (!(tau > 0.0)) throw InvalidInput("tau must be positive");
  const auto cert = certify_weak_gibbs(*in.mu, AdditiveSequence(*in.phi), in.pressure, n_max, tau);
  certificate_table(run, cert);
  auto& r = run.result();
  r["pressure_source"] = in.pressure_source;
  r["certificate"] = certificate_json(cert);
  return cert.verdict != Verdict::rejected;
}

bool psi_verify(Run& run) {
  const TransitionSystem ts = run.system();
  const auto in = load_measure_and_potential(run, ts, false);
  const int n_max = run.n_max(12);
  const int pressure_n_max = run.get<int>("pressure_n_max", 20);
  const int aa_n_max = run.get<int>("almost_additive_n_max", 14);
  const int k = run.get<int>("k", 1000);
  const double tau = run.get<double>("tau", 0.1);
  const double tol = run.tol(1e-3);
  if (pressure_n_max < 4 || aa_n_max < 2 || k < 1 || !(tau > 0.0)) throw InvalidInput("psi-verify parameters out of range");

  AdditiveSequence phi(*in.phi);
  const LocallyConstantPotential generator = *in.phi;
  phi.set_family([generator](int) { return generator; });
  const auto cert = certify_weak_gibbs(*in.mu, phi, in.pressure, std::max(n_max, 4), tau);
  certificate_table(run, cert);
  const PsiSequence psi = build_psi(in.mu);

  auto& r = run.result();
  r["pressure"] = in.pressure;
  r["pressure_source"] = in.pressure_source;
  r["certificate"] = certificate_json(cert);
  Json checks = Json::object();

  const auto one = check_gibbs_one(psi, *in.mu, n_max);
  checks["gibbs_one"] = {{"holds", one.holds}, {"max_relative_error", one.max_relative_error}, {"words_checked", one.words_checked}};

  const auto zero = check_pressure_zero(psi, pressure_n_max, tol);
  auto& pz = run.table("psi_pressure.csv", {"n", "estimate"});
  for (const auto& [n, v] : zero.estimate.finite_n_values) pz.add({cell(n), cell(v)});
  checks["pressure_zero"] = {{"holds", zero.holds},
                             {"extrapolated", zero.estimate.extrapolated},
                             {"error_bar", zero.estimate.error_bar},
                             {"tau", tol},
                             {"all_nonpositive", zero.all_nonpositive}};

  const auto sandwich = check_sandwich(psi, phi, in.pressure, [&](int n) { return cert.k_at(n); }, n_max);
  auto& sw = run.table("psi_sandwich.csv", {"n", "slack"});
  for (const auto& [n, v] : sandwich.slack) sw.add({cell(n), cell(v)});
  Json sj{{"holds", sandwich.holds}};
  if (sandwich.violation) sj["violation"] = {{"n", sandwich.violation->n}, {"word", sandwich.violation->word}, {"value", sandwich.violation->value}};
  checks["sandwich"] = sj;

  const auto asym = check_asymptotic_additivity_psi(psi, phi, in.pressure, k, n_max);
  auto& as = run.table("psi_asymptotic.csv", {"n", "defect", "bound"});
  for (std::size_t i = 0; i < asym.defect.size(); ++i) {
    as.add({cell(asym.defect[i].first), cell(asym.defect[i].second), cell(asym.bound[i].second)});
  }
  checks["asymptotic_additivity"] = {{"holds", asym.holds}, {"k", k}};

  bool almost_ok = true;
  if (cert.verdict == Verdict::gibbs) {
    const auto aa = check_almost_additive_psi(psi, cert.constant, aa_n_max);
    Json aj{{"holds", aa.holds}, {"bound", aa.bound}, {"max_defect", aa.max_defect}};
    if (aa.violation) aj["violation"] = {{"n", aa.violation->n}, {"m", aa.violation_m}, {"word", aa.violation->word}};
    checks["almost_additive"] = aj;
    auto& t = run.table("psi_almost_additive.csv", {"bound", "max_defect"});
    t.add({cell(aa.bound), cell(aa.max_defect)});
    almost_ok = aa.holds;
  } else {
    checks["almost_additive"] = {{"holds", nullptr}, {"skipped", "measure not certified Gibbs"}};
  }
  r["checks"] = checks;
  return one.holds && zero.holds && sandwich.holds && asym.holds && almost_ok;
}

bool map_check(Run& run) {
  const auto map = read_map(run.document("map"));
  const int n_max = run.n_max(30);
  const int random_points = run.get<int>("random_points", 64);
  if (random_points < 0) throw InvalidInput("random_points must be nonnegative");
  const auto report = check_ujr(*map, n_max, random_points, run.seed(1));
  auto& csv = run.table("ujr.csv", {"n", "M"});
  for (const auto& [n, m] : report.m) csv.add({cell(n), cell(m)});
  auto& r = run.result();
  r["piecewise_linear"] = map->piecewise_linear();
  r["exact"] = report.exact;
  r["samples"] = report.samples;
  r["spread"] = report.spread;
  r["nonincreasing_tail"] = report.nonincreasing_tail;

  if (run.has("measure")) {
    const auto mu = read_measure(map->system(), run.document("measure"));
    auto& pw = run.table("pointwise.csv", {"point", "n", "quotient"});
    Json points = Json::array();
    const Json& list = run.raw("points");
    if (!list.is_array()) throw InvalidInput("config field 'points': expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      Word prefix;
      Word cycle;
      try {
        prefix = list[i].value("prefix", Word{});
        cycle = list[i].at("cycle").get<Word>();
      } catch (const Json::exception&) {
        throw InvalidInput("config field 'points[" + std::to_string(i) + "]': expected {prefix, cycle}");
      }
      const SymbolicPoint omega(map->system(), prefix, cycle);
      const auto est = pointwise_dimension_estimates(*map, *mu, omega, n_max);
      for (const auto& [n, v] : est.values) pw.add({omega.to_string(), cell(n), cell(v)});
      points.push_back({{"point", omega.to_string()}, {"last", est.last}, {"tail_spread", est.tail_spread}});
    }
    r["pointwise_dimension"] = points;
  } else if (run.has("points")) {
    throw InvalidInput("config field 'points' needs 'measure'");
  }
  return report.nonincreasing_tail;
}

// u with alpha(u) = alpha on the Bernoulli/two-slope Legendre curve.
std::optional<double> legendre_u(double p, double s1, double s2, double alpha) {
  const double lp = std::log(p);
  const double lq = std::log(1.0 - p);
  const double denom = alpha * (std::log(s1) - std::log(s2)) + lp - lq;
  if (std::abs(denom) < 1e-15) return std::nullopt;
  const double u = (-lq - alpha * std::log(s2)) / denom;
  if (!(u >= 0.0 && u <= 1.0)) return std::nullopt;
  return u;
}

bool spectrum_cmd(Run& run) {
  const auto map_ptr = read_map(run.document("map"));
  const auto* map = dynamic_cast<const PiecewiseLinearMap*>(map_ptr.get());
  if (!map) throw InvalidInput("spectrum needs a piecewise_linear map");
  const Json& refs = run.raw("measures");
  if (!refs.is_array() || refs.empty()) throw InvalidInput("config field 'measures': expected a nonempty array");
  std::vector<std::shared_ptr<const CylinderMeasureOracle>> measures;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (!refs[i].is_string()) throw InvalidInput("config field 'measures': expected paths");
    measures.push_back(read_measure(map->system(), run.document_at(refs[i].get<std::string>(), "measures")));
  }
  const std::size_t r_count = measures.size();

  std::vector<std::vector<double>> alphas;
  if (run.has("alpha") == run.has("alpha_grid")) throw InvalidInput("config: give exactly one of 'alpha' and 'alpha_grid'");
  if (run.has("alpha")) {
    alphas = run.get<std::vector<std::vector<double>>>("alpha", {});
    for (const auto& a : alphas) {
      if (a.size() != r_count) throw InvalidInput("config field 'alpha': each entry needs one value per measure");
    }
  } else {
    const Json& g = run.raw("alpha_grid");
    double from = 0;
    double to = 0;
    int points = 0;
    try {
      from = g.at("from").get<double>();
      to = g.at("to").get<double>();
      points = g.at("points").get<int>();
    } catch (const Json::exception&) {
      throw InvalidInput("config field 'alpha_grid': expected {from, to, points}");
    }
    if (r_count != 1 || points < 2 || !(to > from)) throw InvalidInput("config field 'alpha_grid': needs one measure, points >= 2, to > from");
    for (int j = 0; j < points; ++j) alphas.push_back({from + (to - from) * j / (points - 1)});
  }
  if (alphas.empty()) throw InvalidInput("no alpha values");

  SearchSpec spec;
  spec.step = run.get<double>("step", 1e-3);
  spec.delta = run.get<double>("delta", 1e-3);
  spec.quadrature_n = run.get<int>("quadrature_n", 12);
  if (!(spec.delta > 0.0) || spec.quadrature_n < 2) throw InvalidInput("spectrum parameters out of range");

  // Legendre oracle rows: one Bernoulli measure on a two-branch full-branch map.
  std::optional<double> bernoulli_p;
  const bool full_branch = map->system() == TransitionSystem::full_shift(2) && map->image(1).length() == 1.0 &&
                           map->image(2).length() == 1.0;
  if (r_count == 1 && full_branch) {
    if (const auto* mk = dynamic_cast<const MarkovMeasure*>(measures[0].get()); mk && mk->block_length() == 1) {
      const auto& q = mk->q();
      if (q(0, 0) == q(1, 0) && q(0, 1) == q(1, 1) && q(0, 0) > 0.0 && q(0, 1) > 0.0) bernoulli_p = q(0, 0);
    }
  }

  std::vector<std::string> header;
  for (std::size_t i = 0; i < r_count; ++i) header.push_back("alpha_" + std::to_string(i + 1));
  for (const char* h : {"f", "method", "feasible", "argmax"}) header.push_back(h);
  auto& csv = run.table("spectrum.csv", header);
  Json rows = Json::array();
  Json hyp = Json::array();
  bool any_disagreement = false;
  for (const auto& alpha : alphas) {
    const auto res = spectrum_variational(*map, measures, alpha, spec);
    std::vector<std::string> row;
    for (double a : alpha) row.push_back(cell(a));
    row.push_back(res.feasible ? cell(res.f) : "");
    row.push_back("variational");
    row.push_back(res.feasible ? "1" : "0");
    row.push_back(join(res.argmax_parameters));
    csv.add(row);
    Json rj{{"alpha", alpha}, {"feasible", res.feasible}};
    if (res.feasible) {
      rj["f"] = res.f;
      rj["argmax"] = res.argmax_parameters;
      rj["constraint_closed"] = res.constraint_closed;
      rj["constraint_quadrature"] = res.constraint_quadrature;
      rj["quadrature_stability"] = res.quadrature_stability;
      rj["disagreement"] = res.disagreement;
      any_disagreement = any_disagreement || res.disagreement;
    }
    rows.push_back(rj);
    if (hyp.empty()) {
      for (const auto& h : res.hypotheses) {
        hyp.push_back({{"invariant", h.invariant},
                       {"weak_gibbs", h.weak_gibbs},
                       {"verdict", h.verdict},
                       {"atom_free", h.atom_free},
                       {"atom_free_witness", h.atom_free_witness ? Json(*h.atom_free_witness) : Json(nullptr)}});
      }
    }
    if (bernoulli_p) {
      if (const auto u = legendre_u(*bernoulli_p, map->slope(1), map->slope(2), alpha[0])) {
        const auto curve = spectrum_legendre_bernoulli_at(*bernoulli_p, map->slope(1), map->slope(2), {*u});
        csv.add({cell(alpha[0]), cell(*curve.f[0]), "legendre", "1", cell(*u)});
      } else {
        csv.add({cell(alpha[0]), "", "legendre", "0", ""});
      }
    }
  }
  auto& r = run.result();
  r["step"] = spec.step;
  r["delta"] = spec.delta;
  r["quadrature_n"] = spec.quadrature_n;
  r["hypotheses"] = hyp;
  r["closed_vs_quadrature_disagreement"] = any_disagreement;
  r["points"] = rows;
  return true;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"sft-check",  "pressure",  "gibbs-build", "weakgibbs-certify",
                                              "psi-verify", "map-check", "spectrum"};
  return names;
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<std::string> normalize_arguments(std::vector<std::string> args) {
  static const std::map<std::pair<std::string, std::string>, std::string> pairs{
      {{"sft", "check"}, "sft-check"},   {{"gibbs", "build"}, "gibbs-build"},
      {{"weakgibbs", "certify"}, "weakgibbs-certify"}, {{"psi", "verify"}, "psi-verify"},
      {{"map", "check"}, "map-check"}};
  if (args.size() >= 3) {
    if (auto it = pairs.find({args[1], args[2]}); it != pairs.end()) {
      args[1] = it->second;
      args.erase(args.begin() + 2);
      return args;
    }
  }
  if (args.size() >= 2 && args[1] == "certify") args[1] = "weakgibbs-certify";
  return args;
}

int run(const std::string& command, const Options& opts, std::ostream& err) {
  if (!command_keys().count(command)) {
    err << "unknown command '" << command << "'\n";
    return kExitInputError;
  }
  try {
    Run r(command, opts);
    bool pass = false;
    if (command == "sft-check") {
      pass = sft_check(r);
    } else if (command == "pressure") {
      pass = pressure_cmd(r);
    } else if (command == "gibbs-build") {
      pass = gibbs_build(r);
    } else if (command == "weakgibbs-certify") {
      pass = certify_cmd(r);
    } else if (command == "psi-verify") {
      pass = psi_verify(r);
    } else if (command == "map-check") {
      pass = map_check(r);
    } else {
      pass = spectrum_cmd(r);
    }
    r.write(pass);
    if (!pass) err << command << ": check failed; see " << (opts.out / "result.json").string() << '\n';
    return pass ? kExitOk : kExitCheckFailed;
  } catch (const InvalidInput& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const NonMixing& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
}

}  // namespace weakgibbs::cli
