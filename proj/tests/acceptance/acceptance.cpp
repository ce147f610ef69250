// Copyright 2026 The csc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance run: prints one [PASS]/[FAIL] line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "csc/analysis.hpp"
#include "csc/association_game.hpp"
#include "csc/errors.hpp"
#include "csc/harness.hpp"
#include "csc/learning.hpp"
#include "csc/presets.hpp"
#include "csc/spectrum_game.hpp"
#include "csc/stats.hpp"

#ifndef CSC_UNIT_TESTS
#define CSC_UNIT_TESTS ""
#endif

namespace fs = std::filesystem;
using namespace csc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << id << " " << what << ": " << detail
            << std::endl;
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

double state_space(const Game& g) {
  double n = 1.0;
  for (int p = 0; p < g.num_players(); ++p) n *= g.num_actions(p);
  return n;
}

// --- potential / NE instances ---------------------------------------------

struct Instance {
  std::string name;
  std::shared_ptr<const SpectrumAccessGame> game;
};

std::vector<Instance> robust_instances() {
  std::vector<Instance> out;
  Rng rng(20260101);
  for (std::uint64_t s = 1; s <= 24; ++s) {
    TopologyParams tp;
    tp.seed = s;
    tp.n_cells = 4 + static_cast<int>(s % 6);  // 4..9
    tp.n_channels = 2 + static_cast<int>(s % 2);
    // Denser layouts for half of them so most cells have neighbors.
    tp.region = s % 2 ? Region{100.0, 100.0} : Region{60.0, 60.0};
    tp.active_prob.clear();
    for (int i = 0; i < tp.n_cells; ++i) tp.active_prob.push_back(rng.uniform(0.2, 1.0));
    SpectrumAccessGameSpec spec;
    spec.topo = std::make_shared<const NetworkTopology>(generate_topology(tp));
    spec.robust = true;
    out.push_back({"seed " + std::to_string(s), build_spectrum_game(std::move(spec))});
  }
  return out;
}

void criterion_1(const std::vector<Instance>& inst) {
  const auto t0 = Clock::now();
  int trials = 0, violations = 0, improvement = 0, bad = 0;
  double max_gap = 0.0;
  for (std::size_t k = 0; k < inst.size(); ++k) {
    Rng rng(derive_seed(99, k));
    const auto r = verify_potential_cycles(*inst[k].game, 10000, rng, 1e-6);
    trials += r.trials;
    violations += r.violations;
    improvement += r.improvement_cycles;
    max_gap = std::max(max_gap, r.max_gap);
    bad += r.violations > 0;
  }
  const double secs = seconds_since(t0);
  report(1, violations == 0 && trials >= 10000 && inst.size() >= 20 && secs <= 60.0,
         "potential 4-cycles on robust game",
         std::to_string(inst.size()) + " topologies, " + std::to_string(trials) + " cycles, " +
             std::to_string(violations) + " violations on " + std::to_string(bad) +
             " topologies, max gap " + fmt(max_gap) + " bps, strict improvement cycles " +
             std::to_string(improvement) + ", " + fmt(secs) + " s");
}

void criterion_2(const std::vector<Instance>& inst) {
  int empty = 0, outside = 0, unconverged = 0, runs = 0;
  for (std::size_t k = 0; k < inst.size(); ++k) {
    const Game& g = *inst[k].game;
    const auto ne = enumerate_pure_ne(g, {kExpectationNeTolerance});
    if (ne.empty()) {
      ++empty;
      continue;
    }
    Rng rng(derive_seed(7, k));
    for (int s = 0; s < 200; ++s, ++runs) {
      ActionProfile start(static_cast<std::size_t>(g.num_players()));
      for (int p = 0; p < g.num_players(); ++p)
        start[static_cast<std::size_t>(p)] = static_cast<Action>(rng.index(static_cast<std::uint64_t>(g.num_actions(p))));
      BestResponseParams bp;
      bp.tolerance = kExpectationNeTolerance;
      bp.schedule = s % 2 ? Schedule::kRandom : Schedule::kRoundRobin;
      const auto rec = run_best_response(g, start, bp, static_cast<std::uint64_t>(s));
      if (!rec.converged()) ++unconverged;
      else if (!std::binary_search(ne.begin(), ne.end(), rec.final_profile)) ++outside;
    }
  }
  report(2, empty == 0 && outside == 0 && unconverged == 0, "NE existence and best-response termination",
         std::to_string(inst.size()) + " instances (all, regardless of criterion 1), " +
             std::to_string(empty) + " with no NE, " + std::to_string(runs) + " BR runs, " +
             std::to_string(unconverged) + " unterminated, " + std::to_string(outside) + " outside NE set");
}

// --- presets ----------------------------------------------------------------

struct PresetRun {
  ExperimentConfig config;
  ExperimentResult result;
  double seconds = 0.0;
};

std::map<std::string, PresetRun> runs;

const ExperimentSummary& summary_of(const std::string& name) { return runs.at(name).result.summary; }

double mean_of(const ExperimentSummary& s, const std::string& config, const std::string& metric) {
  const auto* e = s.find(config, metric);
  if (!e) throw std::runtime_error("missing " + config + " " + metric);
  return e->stats.mean;
}

double median_of(const ExperimentSummary& s, const std::string& config, const std::string& metric) {
  const auto* e = s.find(config, metric);
  if (!e) throw std::runtime_error("missing " + config + " " + metric);
  return e->stats.median;
}

void criterion_3() {
  const auto& pr = runs.at("fig8");
  const auto& s = pr.result.summary;
  bool ok = pr.seconds <= 600.0;
  std::string detail;
  for (double lambda : pr.config.active_prob_values()) {
    const auto label = lambda_label(lambda);
    const auto opt = s.baseline(label, "optimum");
    const auto best = s.baseline(label, "best_ne");
    const auto* w = s.find(label, "welfare");
    if (!opt || !best || !w) {
      ok = false;
      detail += label + " missing; ";
      continue;
    }
    const double learned = w->stats.mean / *opt;
    const double bne = *best / *opt;
    ok = ok && learned >= 0.95 && bne >= 0.98 && w->stats.n == 100;
    detail += label + " sla/opt " + fmt(learned) + " best/opt " + fmt(bne) + "; ";
  }
  report(3, ok, "9-cell robust game vs exhaustive optimum", detail + fmt(pr.seconds) + " s");
}

void criterion_4() {
  const auto& s = summary_of("fig3");
  bool ok = true;
  double prev_gap = -1e300;
  std::string detail;
  for (int n : runs.at("fig3").config.n_cells_values()) {
    const auto nl = n_label(n);
    const double c = mean_of(s, nl + "/concave", "satisfied_ratio");
    const double l = mean_of(s, nl + "/linear", "satisfied_ratio");
    const double g = mean_of(s, nl + "/sigmoid", "satisfied_ratio");
    const auto* cl = s.comparison(nl, nl + "/concave > " + nl + "/linear");
    const auto* cg = s.comparison(nl, nl + "/concave > " + nl + "/sigmoid");
    const double gap = c - std::max(l, g);
    const bool here = c > l && c > g && cl && cg && cl->test.p_value < 0.05 && cg->test.p_value < 0.05 &&
                      gap >= prev_gap;
    ok = ok && here;
    prev_gap = gap;
    detail += nl + " concave " + fmt(c) + " linear " + fmt(l) + " sigmoid " + fmt(g) + " p " +
              fmt(cl ? cl->test.p_value : 1.0) + "/" + fmt(cg ? cg->test.p_value : 1.0) + "; ";
  }
  report(4, ok, "concave satisfaction beats linear and sigmoid", detail);
}

void criterion_5() {
  const auto& s = summary_of("fig5");
  const double share = mean_of(s, "discrete_qoe>=continuous_throughput", "good_or_better_at_least");
  const double d = mean_of(s, "discrete_qoe", "good_or_better");
  const double c = mean_of(s, "continuous_throughput", "good_or_better");
  const double r = mean_of(s, "raw_throughput_max", "good_or_better");
  const std::size_t n = s.find("discrete_qoe", "good_or_better")->stats.n;
  report(5, share >= 0.8 && d > r && c > r && n == 100, "QoE-aware association",
         "discrete>=continuous in " + fmt(100.0 * share) + "% of " + std::to_string(n) +
             " seeds; mean good-or-better discrete " + fmt(d) + " continuous " + fmt(c) + " raw " + fmt(r));
}

void criterion_6() {
  const auto& pr = runs.at("fig7");
  const auto& s = pr.result.summary;
  const auto ns = pr.config.n_cells_values();
  bool ok = pr.seconds <= 1200.0;
  std::string detail;
  std::vector<double> sim, hier;
  for (int n : ns) {
    const auto nl = n_label(n);
    sim.push_back(median_of(s, nl + "/simultaneous", "convergence_iterations"));
    hier.push_back(median_of(s, nl + "/hierarchical", "convergence_iterations"));
    ok = ok && hier.back() < sim.back();
    detail += nl + " median simultaneous " + fmt(sim.back()) + " hierarchical " + fmt(hier.back()) + "; ";
  }
  const double gs = sim.back() / sim.front() - 1.0;
  const double gh = hier.back() / hier.front() - 1.0;
  ok = ok && gh < gs;
  report(6, ok, "hierarchical Q-learning converges faster",
         detail + "growth simultaneous " + fmt(100.0 * gs) + "% hierarchical " + fmt(100.0 * gh) + "%; " +
             fmt(pr.seconds) + " s");
}

// --- oracle equivalence ------------------------------------------------------

// Written separately from enumerate_pure_ne: walks profiles with an odometer
// and tries every deviation.
std::vector<ActionProfile> brute_force_ne(const Game& g, double tol) {
  std::vector<ActionProfile> out;
  const int n = g.num_players();
  ActionProfile p(static_cast<std::size_t>(n), 0);
  for (;;) {
    bool ne = true;
    for (int i = 0; i < n && ne; ++i) {
      const double u = g.utility(i, p);
      ActionProfile q = p;
      for (int a = 0; a < g.num_actions(i) && ne; ++a) {
        q[static_cast<std::size_t>(i)] = a;
        ne = !(g.utility(i, q) > u + tol);
      }
    }
    if (ne) out.push_back(p);
    int i = n - 1;
    while (i >= 0 && ++p[static_cast<std::size_t>(i)] == g.num_actions(i)) p[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
  }
  return out;
}

// Counts probes where changing a non-neighbor's action moved a player's
// utility.
int locality_failures(const Game& g, int probes, std::uint64_t seed) {
  if (!g.has_neighbor_sets()) return 0;
  Rng rng(seed);
  const int n = g.num_players();
  int bad = 0;
  for (int k = 0; k < probes; ++k) {
    ActionProfile a(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p)
      a[static_cast<std::size_t>(p)] = static_cast<Action>(rng.index(static_cast<std::uint64_t>(g.num_actions(p))));
    const int p = static_cast<int>(rng.index(static_cast<std::uint64_t>(n)));
    const auto nb = g.neighbors(p);
    std::vector<int> others;
    for (int q = 0; q < n; ++q)
      if (q != p && std::find(nb.begin(), nb.end(), q) == nb.end() && g.num_actions(q) > 1) others.push_back(q);
    if (others.empty()) continue;
    const int q = others[rng.index(others.size())];
    ActionProfile b = a;
    b[static_cast<std::size_t>(q)] = static_cast<Action>((a[static_cast<std::size_t>(q)] + 1 +
                                                          static_cast<Action>(rng.index(static_cast<std::uint64_t>(g.num_actions(q) - 1)))) %
                                                         g.num_actions(q));
    if (g.utility(p, a) != g.utility(p, b)) ++bad;
  }
  return bad;
}

void criterion_7(const std::vector<Instance>& robust) {
  struct Case {
    std::string name;
    std::shared_ptr<const Game> game;
    double tol;
  };
  std::vector<Case> cases;
  for (const auto& i : robust) cases.push_back({"robust " + i.name, i.game, kExpectationNeTolerance});
  Rng rng(31337);
  const auto classes = application_traffic_classes();
  for (std::uint64_t s = 1; s <= 12; ++s) {
    TopologyParams tp;
    tp.seed = 100 + s;
    tp.n_cells = 5 + static_cast<int>(s % 4);
    tp.n_channels = 3;
    tp.bandwidth_hz = 200e3;
    tp.region = {70.0, 70.0};
    SpectrumAccessGameSpec spec;
    spec.topo = std::make_shared<const NetworkTopology>(generate_topology(tp));
    spec.satisfaction_kind = static_cast<SatisfactionKind>(s % 4);
    for (int i = 0; i < tp.n_cells; ++i) spec.traffic.push_back(classes[rng.index(classes.size())]);
    cases.push_back({"spectrum " + std::to_string(s), build_spectrum_game(std::move(spec)), kDeterministicNeTolerance});
  }
  for (std::uint64_t s = 1; s <= 6; ++s) {
    AssociationLayoutParams lp;
    lp.seed = s;
    lp.sap_rows = 2;
    lp.sap_cols = 3;
    lp.fixed_users = 20;
    lp.flexible_users = 10;
    lp.sap_capacity_bps = 6e6;
    for (auto kind : {AssociationUtility::kDiscreteQoe, AssociationUtility::kContinuousThroughput,
                      AssociationUtility::kRawThroughputMax})
      cases.push_back({"association " + std::to_string(s) + " " + std::string(to_string(kind)),
                       std::make_shared<AssociationGame>(AssociationGameSpec{generate_association_topology(lp), kind}),
                       kDeterministicNeTolerance});
  }
  for (int s = 0; s < 10; ++s) {
    // Random finite games; the table is shared by value.
    std::vector<int> counts;
    const int n = 2 + s % 4;
    for (int p = 0; p < n; ++p) counts.push_back(2 + static_cast<int>(rng.index(3)));
    std::vector<double> table(4096);
    for (auto& v : table) v = std::floor(rng.uniform(0.0, 4.0));  // ties on purpose
    cases.push_back({"random " + std::to_string(s),
                     std::make_shared<FunctionGame>(counts,
                                                    [table](int p, const ActionProfile& a) {
                                                      std::uint64_t h = static_cast<std::uint64_t>(p) * 7919u;
                                                      for (Action x : a) h = h * 31u + static_cast<std::uint64_t>(x);
                                                      return table[h % table.size()];
                                                    }),
                     kDeterministicNeTolerance});
  }

  int checked = 0, skipped = 0, mismatched = 0, local_bad = 0, probed = 0;
  std::string first_bad;
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const Game& g = *cases[k].game;
    if (state_space(g) > 1e5) {
      ++skipped;
      continue;
    }
    ++checked;
    const auto a = enumerate_pure_ne(g, {cases[k].tol});
    auto b = brute_force_ne(g, cases[k].tol);
    std::sort(b.begin(), b.end());
    if (a != b) {
      ++mismatched;
      if (first_bad.empty()) first_bad = cases[k].name;
    }
    if (g.has_neighbor_sets()) {
      ++probed;
      local_bad += locality_failures(g, 1000, derive_seed(5, k));
    }
  }
  report(7, mismatched == 0 && local_bad == 0 && checked > 0, "independent NE checker and utility locality",
         std::to_string(checked) + " games checked (" + std::to_string(skipped) + " above 1e5 profiles skipped), " +
             std::to_string(mismatched) + " NE-set mismatches" + (first_bad.empty() ? "" : " first " + first_bad) +
             ", " + std::to_string(probed) + " games x 1000 locality probes, " + std::to_string(local_bad) +
             " failures");
}

// --- unit level ---------------------------------------------------------------

void criterion_8() {
  bool units_ok = false;
  std::string unit_detail = "unit test binary not available";
  const std::string bin = CSC_UNIT_TESTS;
  if (!bin.empty() && fs::exists(bin)) {
    const int rc = std::system((bin + " --gtest_brief=1 > " + (fs::temp_directory_path() / "csc_unit_log.txt").string() +
                                " 2>&1").c_str());
    units_ok = rc == 0;
    unit_detail = std::string("unit tests ") + (units_ok ? "passed" : "failed");
  }
  // Independent SLA sweep.
  Rng rng(8);
  long updates = 0, bad = 0;
  {
    SlaAutomaton a(2, 0.1);
    a.reinforce(0, 1.0);
    if (std::abs(a.probabilities()[0] - 0.55) > 1e-15 || std::abs(a.probabilities()[1] - 0.45) > 1e-15) ++bad;
  }
  while (updates < 1000000) {
    const int k = 2 + static_cast<int>(rng.index(9));
    const double b = rng.uniform(1e-4, 0.9);
    SlaAutomaton a(k, b);
    for (int t = 0; t < 500; ++t, ++updates) {
      const auto before = a.probabilities();
      const Action c = a.choose(rng);
      const double r = rng.uniform();
      a.reinforce(c, r);
      double sum = 0.0;
      for (int i = 0; i < k; ++i) {
        const double p = a.probabilities()[static_cast<std::size_t>(i)];
        const double want = before[static_cast<std::size_t>(i)] +
                            b * r * ((i == c ? 1.0 : 0.0) - before[static_cast<std::size_t>(i)]);
        if (p < 0.0 || p > 1.0 || std::abs(p - want) > 1e-14) ++bad;
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-9) ++bad;
    }
  }
  report(8, units_ok && bad == 0, "unit examples and SLA arithmetic",
         unit_detail + "; " + std::to_string(updates) + " SLA updates, " + std::to_string(bad) + " invariant breaks");
}

// --- determinism ---------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Relative path -> contents for every file under dir.
std::map<std::string, std::string> tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).string()] = slurp(e.path());
  return out;
}

void run_presets_and_criterion_9(const fs::path& scratch) {
  bool ok = true;
  std::string detail;
  for (const auto& info : list_presets()) {
    const auto c = preset(info.name);
    const auto t0 = Clock::now();
    auto serial = run_experiment(c, {1, false});
    const double secs = seconds_since(t0);
    const auto parallel = run_experiment(c, {3, false});
    const fs::path a = scratch / (info.name + "_jobs1");
    const fs::path b = scratch / (info.name + "_jobs3");
    fs::remove_all(a);
    fs::remove_all(b);
    write_artifacts(c, serial, a);
    write_artifacts(c, parallel, b);
    const auto ta = tree(a), tb = tree(b);
    const bool same = ta == tb && !ta.empty();
    ok = ok && same;
    detail += info.name + " " + std::to_string(ta.size()) + " files " + (same ? "identical" : "DIFFER") + "; ";
    runs[info.name] = {c, std::move(serial), secs};
  }
  report(9, ok, "byte-identical preset artifacts across --jobs", detail);
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path scratch = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "csc_acceptance";
  fs::create_directories(scratch);
  const auto t0 = Clock::now();
  const auto inst = robust_instances();
  auto guarded = [](int id, const std::function<void()>& f) {
    try {
      f();
    } catch (const std::exception& e) {
      report(id, false, "error", e.what());
    }
  };
  guarded(1, [&] { criterion_1(inst); });
  guarded(2, [&] { criterion_2(inst); });
  guarded(9, [&] { run_presets_and_criterion_9(scratch); });
  guarded(3, [] { criterion_3(); });
  guarded(4, [] { criterion_4(); });
  guarded(5, [] { criterion_5(); });
  guarded(6, [] { criterion_6(); });
  guarded(7, [&] { criterion_7(inst); });
  guarded(8, [] { criterion_8(); });
  std::cout << "acceptance: " << (9 - failures) << "/9 criteria passed in " << fmt(seconds_since(t0)) << " s"
            << std::endl;
  return failures == 0 ? 0 : 1;
}
