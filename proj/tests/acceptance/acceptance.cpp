// Acceptance run: one PASS/FAIL line per criterion.
//
// Two criteria contain a clause that is false as literally stated (4: eta
// vanishing for n >= d; 6: M(n) = 0 on every piecewise-linear map). They are
// evaluated literally and print FAIL. Each also carries the precise failure
// predicted by the analysis; the process exits 0 only if every other
// criterion passes and those two fail exactly as predicted.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "weakgibbs/interval_map.hpp"
#include "weakgibbs/measure.hpp"
#include "weakgibbs/multifractal.hpp"
#include "weakgibbs/numeric.hpp"
#include "weakgibbs/pressure.hpp"
#include "weakgibbs/psi.hpp"

using namespace weakgibbs;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  // Only for criteria with a literally false clause: whether the observed
  // failure is exactly the predicted one.
  std::optional<bool> as_predicted;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

struct NamedSystem {
  std::string name;
  TransitionSystem ts;
  int n_max;
};

std::vector<NamedSystem> systems() {
  return {{"full2", TransitionSystem::full_shift(2), 20},
          {"full3", TransitionSystem::full_shift(3), 14},
          {"golden", TransitionSystem::golden_mean(), 20}};
}

Outcome criterion1() {
  int cases = 0, failures = 0;
  double worst_cyl = 0.0, worst_per = 0.0;  // |estimate - spectral| - error_bar
  std::uint64_t seed = 1000;
  for (const auto& sys : systems()) {
    for (int depth = 1; depth <= 2; ++depth) {
      for (int i = 0; i < 100; ++i) {
        oracle::Rng rng(++seed);
        const auto phi = oracle::random_potential(sys.ts, depth, rng);
        const double spectral = pressure_spectral(phi);
        const auto cyl = pressure_limit(phi, PressureMethod::cylinder, 1, sys.n_max);
        const auto per = pressure_limit(phi, PressureMethod::periodic, 1, sys.n_max);
        const double mc = std::abs(cyl.extrapolated - spectral) - cyl.error_bar;
        const double mp = std::abs(per.extrapolated - spectral) - per.error_bar;
        worst_cyl = std::max(worst_cyl, mc);
        worst_per = std::max(worst_per, mp);
        if (mc > 1e-6 || mp > 1e-6) ++failures;
        ++cases;
      }
    }
  }
  return {failures == 0,
          std::to_string(cases) + " potentials, " + std::to_string(failures) + " outside tolerance; worst excess over error_bar: cylinder " +
              fmt("%.2e", worst_cyl) + ", periodic " + fmt("%.2e", worst_per) + " (limit 1e-06)"};
}

Outcome criterion2() {
  bool ok = true;
  std::string detail;
  // phi = 0 on full k-shifts: the cylinder estimate equals log k bit for bit.
  int mismatches = 0;
  for (int k = 2; k <= 4; ++k) {
    const auto zero = LocallyConstantPotential::constant(TransitionSystem::full_shift(k), 0.0);
    for (int n = 1; n <= 30; ++n) mismatches += pressure_cylinder(zero, n) != std::log(static_cast<double>(k));
  }
  ok = ok && mismatches == 0;
  detail += "phi=0 on full 2,3,4-shifts: " + std::to_string(mismatches) + " of 90 values differ from log k";

  const auto golden = LocallyConstantPotential::constant(TransitionSystem::golden_mean(), 0.0);
  const auto est = pressure_limit(golden, PressureMethod::cylinder, 1, 30);
  const double target = std::log((1.0 + std::sqrt(5.0)) / 2.0);
  const double gerr = std::abs(est.extrapolated - target);
  ok = ok && gerr <= 1e-6;
  detail += "; golden phi=0 at n=30 off by " + fmt("%.2e", gerr);

  // Bernoulli log weights: log(exp(log p) + exp(log(1-p))) is 0 only up to
  // rounding, so "exactly" is read as within 4 ulp of 1 at every n.
  double worst = 0.0;
  for (double p : {0.1, 0.3, 0.5, 0.77}) {
    const double v[2] = {std::log(p), std::log1p(-p)};
    const auto phi = LocallyConstantPotential::by_symbol(TransitionSystem::full_shift(2), v);
    for (int n = 1; n <= 30; ++n) worst = std::max(worst, std::abs(pressure_cylinder(phi, n)));
  }
  ok = ok && worst <= 4 * std::numeric_limits<double>::epsilon();
  detail += "; Bernoulli log weights max |P_n| = " + fmt("%.2e", worst);
  return {ok, detail};
}

struct PipelineCase {
  std::string name;
  std::shared_ptr<const CylinderMeasureOracle> mu;
  LocallyConstantPotential phi;
  double pressure;
};

Outcome criterion3() {
  std::vector<PipelineCase> cases;
  {
    const auto ts = TransitionSystem::full_shift(2);
    const double p[2] = {0.3, 0.7};
    const double v[2] = {std::log(0.3), std::log(0.7)};
    auto phi = LocallyConstantPotential::by_symbol(ts, v);
    cases.push_back({"bernoulli(0.3)", std::make_shared<MarkovMeasure>(MarkovMeasure::bernoulli(ts, p)), phi,
                     pressure_spectral(phi)});
  }
  {
    const auto ts = TransitionSystem::golden_mean();
    auto phi = LocallyConstantPotential::constant(ts, 0.0);
    cases.push_back({"parry(golden)", std::make_shared<MarkovMeasure>(MarkovMeasure::parry(ts)), phi, pressure_spectral(phi)});
  }
  {
    oracle::Rng rng(20240601);
    auto phi = oracle::random_potential(TransitionSystem::full_shift(2), 2, rng);
    const auto rpf = build_rpf(phi);
    cases.push_back({"rpf(depth-2)", rpf.measure, phi, rpf.pressure()});
  }
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const AdditiveSequence seq(c.phi);
    const auto cert = certify_weak_gibbs(*c.mu, seq, c.pressure, 12, 0.1);
    const bool gibbs = cert.verdict == Verdict::gibbs;
    const auto psi = build_psi(c.mu);
    const auto one = check_gibbs_one(psi, *c.mu, 12, 1e-14);
    const auto zero = check_pressure_zero(psi, 20, 1e-3);
    const auto sandwich = check_sandwich(psi, seq, c.pressure, [&](int n) { return cert.k_at(n); }, 12);
    const auto aa = check_almost_additive_psi(psi, cert.constant, 14);
    const bool all = gibbs && one.holds && zero.holds && sandwich.holds && aa.holds;
    ok = ok && all;
    if (!detail.empty()) detail += "; ";
    detail += c.name + ": " + (gibbs ? "gibbs(C=" + fmt("%.4f", cert.constant) + ")" : to_string(cert.verdict)) +
              ", gibbs-one " + fmt("%.1e", one.max_relative_error) + ", P(Psi)=" + fmt("%.1e", zero.estimate.extrapolated) +
              "+-" + fmt("%.1e", zero.estimate.error_bar) + ", sandwich " + (sandwich.holds ? "ok" : "violated") +
              ", almost-additive " + fmt("%.3f", aa.max_defect) + "<=" + fmt("%.3f", aa.bound) + (all ? "" : " [fail]");
  }
  return {ok, detail};
}

// sum_{i=1}^{d-1} var_i(phi): the windows of S_n phi that reach past an
// n-word are the last d-1, and the one starting i symbols before the end
// varies by at most var_i.
double eta_envelope(const LocallyConstantPotential& phi) {
  double s = 0.0;
  for (int i = 1; i < phi.depth(); ++i) s += variation(phi, i);
  return s;
}

Outcome criterion4() {
  int potentials = 0, literal_failures = 0, predicted_failures = 0, envelope_failures = 0, unpredicted = 0;
  double worst_ratio = 0.0;  // max K*(n) / (C exp(eta(n)))
  std::uint64_t seed = 4000;
  for (const auto& sys : systems()) {
    for (int depth = 1; depth <= 3; ++depth) {
      for (int i = 0; i < 5; ++i) {
        oracle::Rng rng(++seed);
        const auto phi = oracle::random_potential(sys.ts, depth, rng);
        ++potentials;
        bool literal = true;
        const double eta_d = eta(phi, depth);
        bool stable = true;
        for (int n = depth; n <= 12; ++n) {
          const double e = eta(phi, n);
          literal = literal && std::exp(e) == 1.0;
          stable = stable && std::abs(e - eta_d) <= 1e-12 && e <= eta_envelope(phi) + 1e-12;
        }
        // Prediction: eta(n) = eta(d) for n >= d, bounded by the envelope;
        // zero exactly when d = 1 and positive for a generic d >= 2 table.
        const bool predicted_literal = depth == 1;
        literal_failures += !literal;
        predicted_failures += !predicted_literal;
        if (literal != predicted_literal || !stable) ++unpredicted;

        const auto rpf = build_rpf(phi);
        const auto cert = certify_weak_gibbs(*rpf.measure, AdditiveSequence(phi), rpf.pressure(), 12, 0.1);
        for (const auto& [n, k] : cert.kstar) {
          const double env = rpf.gibbs_constant * kessebohmer_bound(phi, n);
          worst_ratio = std::max(worst_ratio, k / env);
          if (k > env * (1.0 + 1e-12)) ++envelope_failures;
        }
      }
    }
  }
  const bool literal_all = literal_failures == 0;
  Outcome out;
  out.pass = literal_all && envelope_failures == 0;
  out.as_predicted = unpredicted == 0 && envelope_failures == 0 && literal_failures == predicted_failures;
  out.detail = "exp(eta(n)) = 1 for all n >= d fails on " + std::to_string(literal_failures) + " of " +
               std::to_string(potentials) + " potentials (predicted: every depth >= 2 potential, " +
               std::to_string(predicted_failures) + "; eta(n) = eta(d) > 0 there, within sum var_i); K*(n) <= C exp(eta(n)) " +
               (envelope_failures ? "violated " + std::to_string(envelope_failures) + " times" : "holds") +
               ", max ratio " + fmt("%.4f", worst_ratio);
  return out;
}

Outcome criterion5() {
  const auto f2 = TransitionSystem::full_shift(2);
  const auto zero = LocallyConstantPotential::constant(f2, 0.0);
  const double v[2] = {std::log(0.3), std::log(0.7)};
  const auto bern = LocallyConstantPotential::by_symbol(f2, v);
  const auto w0 = atomfree_check(zero, 6);
  const auto wb = atomfree_check(bern, 6);
  const auto example = oracle::two_step_example();
  const auto we = atomfree_check(example, 6);
  const auto search = oracle::search_two_step_witness();
  const std::array<double, 4> frozen{-2.0, -2.0, -1.0, -2.0};
  const bool ok = w0 == 1 && wb == 1 && we == 2 && search.first == frozen;
  auto show = [](std::optional<int> w) { return w ? std::to_string(*w) : std::string("none"); };
  return {ok, "phi=0 -> " + show(w0) + ", Bernoulli log weights -> " + show(wb) + ", two-step example (-2,-2,-1,-2) -> " +
                  show(we) + "; brute-force search finds " + std::to_string(search.count) +
                  " qualifying tables, first = (" + fmt("%g", search.first[0]) + "," + fmt("%g", search.first[1]) + "," +
                  fmt("%g", search.first[2]) + "," + fmt("%g", search.first[3]) + ")"};
}

Outcome criterion6() {
  struct Named {
    std::string name;
    PiecewiseLinearMap map;
  };
  std::vector<Named> maps{{"slopes(2,2)", PiecewiseLinearMap::full_branch({2.0, 2.0})},
                          {"slopes(2,4)", PiecewiseLinearMap::full_branch({2.0, 4.0})},
                          {"slopes(3,1.5)", PiecewiseLinearMap::full_branch({3.0, 1.5})},
                          {"slopes(3,3,3)", PiecewiseLinearMap::full_branch({3.0, 3.0, 3.0})},
                          {"golden-mean", PiecewiseLinearMap::golden_mean()}};
  std::string nonzero;
  bool as_predicted = true;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (const auto& [name, map] : maps) {
    const auto rep = check_ujr(map, 30);
    bool zero = true;
    for (const auto& [n, m] : rep.m) zero = zero && m == 0.0;
    // Prediction: the residual is log|image(w_n)|, zero for full-branch maps
    // and |log g| / n on the golden-mean map (its second branch maps onto
    // [0, g]).
    const bool full_branch = name != "golden-mean";
    if (full_branch) {
      as_predicted = as_predicted && zero;
    } else {
      for (const auto& [n, m] : rep.m) as_predicted = as_predicted && std::abs(m - std::abs(std::log(g)) / n) <= 1e-15;
      as_predicted = as_predicted && !zero;
    }
    if (!zero) nonzero += (nonzero.empty() ? "" : ", ") + name + " (M(30)=" + fmt("%.6f", rep.m.back().second) + ")";
  }
  const auto general = check_ujr(GeneralMarkovMap::perturbed_doubling(0.3), 30);
  bool monotone = true;
  for (std::size_t i = 1; i < general.m.size(); ++i) {
    if (general.m[i].first > 10 && general.m[i].second > general.m[i - 1].second) monotone = false;
  }
  Outcome out;
  out.pass = nonzero.empty() && monotone;
  out.as_predicted = as_predicted && monotone;
  out.detail = "M(n) = 0 exactly on " + std::string(nonzero.empty() ? "all 5 maps" : "full-branch maps only; nonzero on " + nonzero) +
               " (predicted: log|image| residual, |log g|/n on golden-mean); perturbed doubling a=0.3: M(10)=" +
               fmt("%.5f", general.m[9].second) + ", M(30)=" + fmt("%.5f", general.m[29].second) +
               (monotone ? ", nonincreasing on [10,30]" : ", NOT nonincreasing on [10,30]");
  return out;
}

Outcome criterion7() {
  SearchSpec spec;
  spec.step = 1e-3;
  const auto cross = spectrum_crosscheck(0.3, 2.0, 2.0, 50, spec);
  int feasible = 0;
  for (const auto& r : cross.rows) feasible += r.f_variational.has_value();

  const auto doubling = PiecewiseLinearMap::full_branch({2.0, 2.0});
  const double p[2] = {0.3, 0.7};
  const std::vector<std::shared_ptr<const CylinderMeasureOracle>> mu{
      std::make_shared<MarkovMeasure>(MarkovMeasure::bernoulli(TransitionSystem::full_shift(2), p))};
  const double a_star = spectrum_legendre_bernoulli_at(0.3, 2.0, 2.0, {0.3}).alpha[0];
  const auto tangent = spectrum_variational(doubling, mu, {a_star}, spec);
  const double tangency = tangent.feasible ? std::abs(tangent.f - a_star) : 1.0;

  bool outside_infeasible = true;
  for (double a : {0.40, 0.50, 0.51, 1.74, 1.80, 2.00}) outside_infeasible = outside_infeasible && !spectrum_variational(doubling, mu, {a}, spec).feasible;

  const bool ok = cross.rows.size() == 50 && feasible == 50 && cross.max_deviation <= 5e-3 && tangency <= 2e-3 && outside_infeasible;
  return {ok, "50-point grid, " + std::to_string(feasible) + " feasible, max |f_var - f_leg| = " + fmt("%.2e", cross.max_deviation) +
                  "; tangency at alpha=" + fmt("%.4f", a_star) + " off by " + fmt("%.2e", tangency) + "; alpha in {0.40,0.50,0.51,1.74,1.80,2.00} " +
                  (outside_infeasible ? "all infeasible" : "NOT all infeasible")};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::map<std::string, std::string> directory_bytes(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) out[e.path().filename().string()] = slurp(e.path());
  return out;
}

Outcome criterion8(const fs::path& data) {
  std::vector<std::string> failures;
  auto require = [&](bool cond, const std::string& what) {
    if (!cond) failures.push_back(what);
  };

  // Oracle additivity and shift-invariance.
  std::vector<std::pair<std::string, std::shared_ptr<const CylinderMeasureOracle>>> oracles;
  {
    const double p[2] = {0.3, 0.7};
    oracles.emplace_back("bernoulli", std::make_shared<MarkovMeasure>(MarkovMeasure::bernoulli(TransitionSystem::full_shift(2), p)));
    oracles.emplace_back("parry", std::make_shared<MarkovMeasure>(MarkovMeasure::parry(TransitionSystem::golden_mean())));
    std::uint64_t seed = 8000;
    for (const auto& sys : systems()) {
      for (int depth = 1; depth <= 3; ++depth) {
        oracle::Rng rng(++seed);
        oracles.emplace_back("rpf-" + sys.name + "-d" + std::to_string(depth),
                             build_rpf(oracle::random_potential(sys.ts, depth, rng)).measure);
      }
    }
  }
  double worst_add = 0.0, worst_inv = 0.0;
  for (const auto& [name, mu] : oracles) {
    const auto rep = check_consistency(*mu, mu->system().alphabet_size() == 3 ? 8 : 10);
    worst_add = std::max(worst_add, rep.additivity_defect);
    worst_inv = std::max(worst_inv, rep.invariance_defect);
  }
  require(worst_add <= 1e-12, "additivity");
  require(worst_inv <= 1e-10, "shift-invariance");

  // Birkhoff cocycle: exact on dyadic tables, where every partial sum is
  // representable; within 1e-12 on random real tables.
  int cocycle_bad = 0;
  oracle::Rng rng(8100);
  for (const auto& sys : systems()) {
    for (int depth = 1; depth <= 3; ++depth) {
      const auto dyadic = LocallyConstantPotential::from_function(sys.ts, depth, [&](std::span<const Symbol>) { return rng.below(65) / 16.0 - 2.0; });
      const auto real = oracle::random_potential(sys.ts, depth, rng);
      for (int trial = 0; trial < 40; ++trial) {
        Word prefix, cycle;
        Symbol s = 1 + rng.below(sys.ts.alphabet_size());
        const int plen = rng.below(4), clen = 1 + rng.below(5);
        // random admissible walk; close the cycle by retrying
        Word walk{s};
        while (static_cast<int>(walk.size()) < plen + clen) {
          Symbol t = 1 + rng.below(sys.ts.alphabet_size());
          if (sys.ts.allowed(walk.back(), t)) walk.push_back(t);
        }
        prefix.assign(walk.begin(), walk.begin() + plen);
        cycle.assign(walk.begin() + plen, walk.end());
        if (!sys.ts.allowed(cycle.back(), cycle.front())) continue;
        const SymbolicPoint w(sys.ts, prefix, cycle);
        const int n = 1 + rng.below(12), m = 1 + rng.below(12);
        const double whole_d = birkhoff_sum(dyadic, w, n + m);
        const double split_d = birkhoff_sum(dyadic, w, n) + birkhoff_sum(dyadic, w.shifted(static_cast<std::size_t>(n)), m);
        const double whole_r = birkhoff_sum(real, w, n + m);
        const double split_r = birkhoff_sum(real, w, n) + birkhoff_sum(real, w.shifted(static_cast<std::size_t>(n)), m);
        cocycle_bad += whole_d != split_d || std::abs(whole_r - split_r) > 1e-12;
      }
    }
  }
  require(cocycle_bad == 0, "cocycle");

  // log-sum-exp under permutation.
  double lse_worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(static_cast<std::size_t>(1 + rng.below(200)));
    for (double& x : v) x = rng.uniform(-50.0, 50.0);
    const double a = log_sum_exp(v);
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<std::size_t>(rng.below(static_cast<int>(i)))]);
    lse_worst = std::max(lse_worst, std::abs(a - log_sum_exp(v)));
  }
  require(lse_worst <= 1e-12, "log-sum-exp");

  // Concavity of Legendre curves.
  double concave_worst = 0.0;
  for (double p : {0.1, 0.3, 0.5, 0.8}) {
    for (auto [s1, s2] : std::vector<std::pair<double, double>>{{2, 2}, {2, 4}, {3, 1.5}, {5, 2}}) {
      const auto rep = check_concavity(spectrum_legendre_bernoulli(p, s1, s2, 200), 1e-9);
      require(rep.concave, "concavity p=" + fmt("%g", p));
      concave_worst = std::max(concave_worst, rep.worst);
    }
  }

  // Byte-identical CLI reruns.
  int configs = 0, differing = 0;
  const fs::path scratch = fs::temp_directory_path() / "weakgibbs-acceptance";
  for (const auto& e : fs::directory_iterator(data)) {
    if (e.path().extension() != ".json") continue;
    static const std::map<std::string, std::string> command_of{
        {"sft_golden", "sft-check"},        {"pressure_golden", "pressure"},     {"gibbs_golden", "gibbs-build"},
        {"certify_corrupted", "weakgibbs-certify"}, {"psi_bernoulli", "psi-verify"}, {"map_doubling", "map-check"},
        {"map_perturbed", "map-check"},     {"spectrum_bernoulli", "spectrum"},  {"unknown_key", "pressure"}};
    const auto it = command_of.find(e.path().stem().string());
    if (it == command_of.end()) continue;
    std::map<std::string, std::string> runs[2];
    int codes[2];
    for (int r = 0; r < 2; ++r) {
      const fs::path out = scratch / (e.path().stem().string() + "-" + std::to_string(r));
      fs::remove_all(out);
      fs::create_directories(out);
      cli::Options opts;
      opts.config = e.path();
      opts.out = out;
      std::ostringstream err;
      codes[r] = cli::run(it->second, opts, err);
      runs[r] = directory_bytes(out);
    }
    ++configs;
    differing += codes[0] != codes[1] || runs[0] != runs[1];
  }
  fs::remove_all(scratch);
  require(differing == 0 && configs > 0, "cli reruns");

  std::string detail = "additivity " + fmt("%.1e", worst_add) + ", invariance " + fmt("%.1e", worst_inv) + " over " +
                       std::to_string(oracles.size()) + " oracles; cocycle mismatches " + std::to_string(cocycle_bad) +
                       "; LSE permutation " + fmt("%.1e", lse_worst) + "; concavity worst " + fmt("%.1e", concave_worst) +
                       "; CLI reruns " + std::to_string(configs - differing) + "/" + std::to_string(configs) + " identical";
  for (const auto& f : failures) detail += " [fail: " + f + "]";
  return {failures.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path data = argc > 1 ? fs::path(argv[1]) : fs::path(WEAKGIBBS_TEST_DATA);
  struct Entry {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries{
      {1, "pressure three-way agreement", criterion1},
      {2, "exact baselines", criterion2},
      {3, "weak Gibbs -> Psi pipeline", criterion3},
      {4, "Kessebohmer bound consistency", criterion4},
      {5, "atom-freeness witness", criterion5},
      {6, "UJR comparison", criterion6},
      {7, "multifractal cross-check", criterion7},
      {8, "invariant suites", [&] { return criterion8(data); }},
  };
  int passed = 0;
  bool clean = true;
  for (const auto& e : entries) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what(), std::nullopt};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d [%s]: %s (%.1fs) %s", e.id, e.title, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    if (o.as_predicted) std::printf(" -- literal claim is false; failure %s the recorded analysis", *o.as_predicted ? "matches" : "DOES NOT match");
    std::printf("\n");
    passed += o.pass;
    if (o.as_predicted) {
      clean = clean && *o.as_predicted;
    } else {
      clean = clean && o.pass;
    }
  }
  std::printf("acceptance: %d/%zu PASS; %s\n", passed, entries.size(),
              clean ? "every FAIL is a literally false clause failing exactly as analysed" : "unexpected failure");
  return clean ? 0 : 1;
}
