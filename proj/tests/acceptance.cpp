// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rlp/adversary.hpp"
#include "rlp/bench.hpp"
#include "rlp/hsl_game.hpp"
#include "rlp/robust_methods.hpp"
#include "rlp/rlp_core.hpp"

using namespace rlp;

namespace {

const std::string kDataDir = RLP_DATA_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && out_.pass) {
      out_.pass = false;
      out_.detail = what;
    }
  }
  Outcome done(std::string summary) {
    if (out_.pass) out_.detail = std::move(summary);
    return out_;
  }

 private:
  Outcome out_;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int digits = 2) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

double mean_r_dwc(const std::vector<ResultRow>& rows, Method method, int gamma_e = -1) {
  double sum = 0;
  int count = 0;
  for (const auto& r : rows) {
    if (r.method != method || !r.r_dwc || (gamma_e >= 0 && r.gamma_e != gamma_e)) continue;
    sum += r.r_dwc->to_double();
    ++count;
  }
  return count == 0 ? std::nan("") : sum / count;
}

std::vector<ResultRow> criterion7_rows;

Outcome oracle_equivalence() {
  Check c;
  const auto start = Clock::now();
  const auto cases = oracle::oracle_instances(500, 8, 2024);
  for (const auto& oc : cases) {
    const auto tag = " (seed " + std::to_string(oc.seed) + ")";
    const auto ref_static = oracle::brute_min_max(oracle::enumerate_graph(oc.inst, Regime::kStaticBudget), oc.inst);
    const auto ref_dynamic = oracle::brute_min_max(oracle::enumerate_graph(oc.inst, Regime::kDynamicBudget), oc.inst);
    c.require(solve_rsb(oc.inst).objective == ref_static.value, "RSB differs from brute force" + tag);
    c.require(solve_ccg(oc.inst).objective == ref_dynamic.value, "CCG differs from brute force" + tag);
    c.require(solve_benders(oc.inst).objective == ref_dynamic.value, "BDC differs from brute force" + tag);
  }
  const double secs = seconds_since(start);
  c.require(secs < 120, "took " + fmt(secs) + " s");
  return c.done("500 instances, RSB/CCG/BDC match brute force, " + fmt(secs) + " s");
}

Outcome robust_shortest_paths() {
  Check c;
  const auto start = Clock::now();
  std::mt19937_64 rng(99);
  int pairs = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const int gamma = static_cast<int>(trial % 3);
    const NetworkInstance inst = oracle::random_small_graph(rng, n, gamma, 1 + static_cast<int>(rng() % 3));
    const auto devs = max_deviations(inst);
    for (NodeId p = 0; p < n; ++p) {
      for (NodeId q = p + 1; q < n; ++q) {
        const auto ref = oracle::enumerate_robust_sp(inst, p, q, devs, gamma);
        const Distance got = robust_sp_static(inst, p, q, gamma);
        c.require(ref && got && *ref == *got, "static distance mismatch on trial " + std::to_string(trial));
        const auto ref_dyn = oracle::enumerate_robust_sp_dynamic(inst, p, q);
        c.require(ref_dyn && robust_sp_dynamic(inst, p, q) == ref_dyn,
                  "dynamic distance mismatch on trial " + std::to_string(trial));
        ++pairs;
      }
    }
  }
  const double secs = seconds_since(start);
  c.require(secs < 60, "took " + fmt(secs) + " s");
  return c.done("300 graphs, " + std::to_string(pairs) + " pairs match enumeration, " + fmt(secs) + " s");
}

Outcome sandwich_and_monotonicity() {
  Check c;
  for (int k = 0; k < 200; ++k) {
    GeneratorParams g;
    g.n = 5 + k % 16;
    g.gamma_e = k % 4;
    g.gamma_v = (k / 4) % 4;
    g.seed = mix_seed(7001, static_cast<std::uint64_t>(k));
    const NetworkInstance inst = generate_instance(g);
    const auto tag = " (instance " + std::to_string(k) + ")";
    const Rational dwc = solve_dwc(inst).objective;
    const Rational rsb = solve_rsb(inst).objective;
    const Rational rdb = solve_rdb(inst).objective;
    c.require(rdb <= rsb && rsb <= dwc, "sandwich violated" + tag);

    std::vector<std::vector<Rational>> rsb_grid(4, std::vector<Rational>(4));
    std::vector<std::vector<Rational>> rdb_grid(4, std::vector<Rational>(4));
    for (int ge = 0; ge <= 3; ++ge) {
      for (int gv = 0; gv <= 3; ++gv) {
        const NetworkInstance b = inst.with_budgets(ge, gv);
        rsb_grid[ge][gv] = solve_rsb(b).objective;
        rdb_grid[ge][gv] = solve_rdb(b).objective;
        c.require(solve_dwc(b).objective == dwc, "DWC depends on budgets" + tag);
      }
    }
    for (int ge = 0; ge <= 3; ++ge) {
      for (int gv = 0; gv <= 3; ++gv) {
        for (const auto* grid : {&rsb_grid, &rdb_grid}) {
          if (ge > 0) c.require((*grid)[ge - 1][gv] <= (*grid)[ge][gv], "not monotone in gamma_e" + tag);
          if (gv > 0) c.require((*grid)[ge][gv - 1] <= (*grid)[ge][gv], "not monotone in gamma_v" + tag);
        }
      }
    }
  }
  return c.done("200 instances, RDB <= RSB <= DWC and monotone over budgets 0..3");
}

Outcome hsl_worked_example() {
  Check c;
  const Rational eta(15, 100);
  c.require(hider_update(Rational(3, 2), eta, Rational(4, 5), Rational(2)) == Rational::parse("1.62"),
            "first hider update is not 1.62");
  c.require(hider_update(Rational(6, 5), eta, Rational(1, 2), Rational(2)) == Rational::parse("1.275"),
            "second hider update is not 1.275");
  const NetworkInstance inst = load_instance_file(kDataDir + "/five_node.yaml");
  c.require(nominal_cost(NodeSet(5, {1, 3}), inst) == Rational(17), "nominal cost of {2,4} is not 17");

  HslOptions opts;
  opts.eta_d = eta;
  const SolveReport r = play_hsl(inst, opts);
  c.require(r.iterations <= 10, "HSL took " + std::to_string(r.iterations) + " iterations");
  for (std::size_t t = 0; t < r.deviations.size(); ++t) {
    for (EdgeId e = 0; e < inst.m(); ++e) {
      const Rational& d = r.deviations[t][e];
      c.require(d >= Rational(0) && d <= inst.edge(e).max_deviation, "deviation outside [0, d_e]");
    }
  }
  const auto ref = oracle::brute_min_max(oracle::enumerate_graph(inst, Regime::kDynamicBudget), inst);
  const Rational dwc = solve_dwc(inst).objective;
  c.require(ref.value <= r.objective && r.objective <= dwc, "HSL objective outside [oracle, DWC]");
  return c.done("updates 1.62 and 1.275, cost 17, HSL " + r.objective.to_string() + " in " +
                std::to_string(r.iterations) + " iterations within [" + ref.value.to_string() + ", " +
                dwc.to_string() + "]");
}

Outcome exp1_replay() {
  Check c;
  ExperimentConfig cfg;
  cfg.experiment = "acc-exp1";
  cfg.n_values = {10, 12, 14, 16, 18, 20};
  cfg.gamma_e_values = {2};
  cfg.gamma_v_values = {2};
  cfg.instances = 10;
  cfg.methods = {Method::kDWC, Method::kRDB};
  const auto start = Clock::now();
  const ExperimentResult res = run_experiment(cfg);
  const double secs = seconds_since(start);
  const double mean = mean_r_dwc(res.rows, Method::kRDB);
  c.require(mean > 0 && mean <= 30, "mean R-DWC of RDB is " + fmt(mean) + "%");
  c.require(secs < 600, "took " + fmt(secs) + " s");
  return c.done("mean R-DWC of RDB " + fmt(mean) + "% over 60 instances, " + fmt(secs) + " s");
}

Outcome exp4_contrast() {
  Check c;
  ExperimentConfig cfg;
  cfg.experiment = "acc-exp4";
  cfg.n_values = {25};
  cfg.gamma_e_values = {1, 2};
  cfg.gamma_v_values = {1};
  cfg.instances = 20;
  cfg.methods = {Method::kDWC, Method::kRDB};
  const ExperimentResult res = run_experiment(cfg);
  const double one = mean_r_dwc(res.rows, Method::kRDB, 1);
  const double two = mean_r_dwc(res.rows, Method::kRDB, 2);
  const std::string values = "mean R-DWC " + fmt(one) + "% at gamma_e=1 vs " + fmt(two) + "% at gamma_e=2";
  c.require(one >= 3 * two, values + " (ratio " + fmt(one / two) + ", need >= 3)");
  return c.done(values);
}

Outcome iteration_economy() {
  Check c;
  const ExperimentResult res = run_experiment(preset("exp3", 0.5));
  criterion7_rows = res.rows;
  std::map<Method, std::pair<double, int>> acc;
  for (const auto& r : res.rows) {
    if (r.status != "ok") continue;
    acc[r.method].first += r.iterations;
    acc[r.method].second += 1;
  }
  auto mean = [&](Method m) { return acc[m].second == 0 ? std::nan("") : acc[m].first / acc[m].second; };
  const double ccg = mean(Method::kCCG);
  const double bdc = mean(Method::kBDC);
  const double iro = mean(Method::kIRO);
  const double hsl = mean(Method::kHSL);
  const std::string values = "mean iterations CCG " + fmt(ccg) + ", BDC " + fmt(bdc) + ", IRO " + fmt(iro) +
                             ", HSL " + fmt(hsl);
  c.require(ccg <= iro && ccg <= hsl, values + " (CCG above IRO or HSL)");
  c.require(bdc <= iro && bdc <= hsl, values + " (BDC above IRO or HSL)");
  c.require(ccg <= 4, values + " (CCG above 4)");
  return c.done(values);
}

Outcome profile_invariants() {
  Check c;
  const ProfileResult p = profile_from_results(criterion7_rows);
  c.require(p.instances > 0, "empty profile");
  double at_one = 0;
  for (const auto& curve : p.curves) {
    double prev = 0;
    for (const auto& pt : curve.points) {
      c.require(pt.k >= 0 && pt.k <= 1, curve.solver + " leaves [0,1]");
      c.require(pt.k >= prev, curve.solver + " decreases");
      prev = pt.k;
    }
    at_one += curve.at(1) * p.instances;
  }
  c.require(at_one + 1e-9 >= p.instances, "fewer winners than instances at tau=1");

  const double inf = std::numeric_limits<double>::infinity();
  const std::vector<std::vector<double>> times{{1, 4, 2, inf}, {2, 4, 1, 3}, {4, 1, 6, 6}};
  const ProfileResult fixture = performance_profile({"A", "B", "C"}, times);
  for (std::size_t s = 0; s < 3; ++s) {
    for (double tau : {1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 10.0}) {
      c.require(std::abs(fixture.curves[s].at(tau) - oracle::profile_value(times, s, tau)) < 1e-12,
                "fixture mismatch for " + fixture.curves[s].solver + " at tau " + fmt(tau));
    }
  }
  return c.done(std::to_string(p.curves.size()) + " curves over " + std::to_string(p.instances) +
                " instances, fixture matches direct evaluation");
}

Outcome preprocessing_soundness() {
  Check c;
  int checked = 0;
  for (const auto& oc : oracle::oracle_instances(500, 8, 2024)) {
    if (oc.inst.n() < 3) continue;
    const CostFn cost = worst_case_cost_fn(oc.inst);
    for (Regime r : {Regime::kStaticBudget, Regime::kDynamicBudget}) {
      const TransformedGraph m = build_transformed_graph(oc.inst, r);
      const NodeSet mandatory = preprocess(m).mandatory;
      c.require(mandatory.is_subset_of(brute_force_rlp(m, cost).selected),
                "mandatory set outside brute-force optimum (seed " + std::to_string(oc.seed) + ")");
      for (const NodeSet& opt : oracle::brute_min_max(m, oc.inst).optimal) {
        c.require(mandatory.is_subset_of(opt), "mandatory set outside an optimum (seed " +
                                                   std::to_string(oc.seed) + ")");
      }
      ++checked;
    }
  }
  return c.done(std::to_string(checked) + " graphs, every optimum contains the mandatory nodes");
}

}  // namespace

int main() {
  using Criterion = Outcome (*)();
  const std::vector<std::pair<const char*, Criterion>> criteria{
      {"oracle equivalence", oracle_equivalence},
      {"robust shortest paths", robust_shortest_paths},
      {"sandwich and monotonicity", sandwich_and_monotonicity},
      {"hide-and-seek worked example", hsl_worked_example},
      {"scaled Exp-1 replay", exp1_replay},
      {"scaled Exp-4 contrast", exp4_contrast},
      {"iteration economy", iteration_economy},
      {"performance profiles", profile_invariants},
      {"preprocessing soundness", preprocessing_soundness},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
