#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rlp/errors.hpp"
#include "rlp/robust_methods.hpp"

using namespace rlp;

namespace {

// Same network with every period cap raised to the full deviation.
NetworkInstance full_caps(const NetworkInstance& inst, int horizon) {
  std::vector<EdgeData> edges = inst.edges();
  for (auto& e : edges) e.period_caps.assign(static_cast<std::size_t>(horizon), e.max_deviation);
  InstanceParams p = inst.params();
  p.horizon = horizon;
  return NetworkInstance(inst.nodes(), edges, p);
}

NetworkInstance path_example() { return oracle::path_instance({5, 5, 5}, {2, 9, 2}, {1, 1}, 1, 1); }

void expect_report_invariants(const SolveReport& r, const Rational& eps) {
  EXPECT_LE(r.lower_bound, r.objective);
  EXPECT_LE(r.objective, r.upper_bound);
  EXPECT_EQ(r.gap, r.upper_bound - r.lower_bound);
  EXPECT_GE(r.gap, Rational(0));
  if (r.converged) EXPECT_LE(r.gap, eps);
  EXPECT_EQ(static_cast<int>(r.trace.size()), r.iterations);
}

}  // namespace

TEST(Methods, ParseAndPrintNames) {
  EXPECT_EQ(parse_method("dwc"), Method::kDWC);
  EXPECT_EQ(parse_method("BdC"), Method::kBDC);
  EXPECT_EQ(to_string(Method::kHSL), "HSL");
  EXPECT_THROW(parse_method("lp"), InvalidArgument);
}

TEST(ScenarioPoolTest, KeepsInsertionOrderWithoutDuplicates) {
  ScenarioPool pool;
  Scenario a;
  a.node_attacks = {1};
  Scenario b;
  b.node_attacks = {2};
  EXPECT_TRUE(pool.add(a));
  EXPECT_TRUE(pool.add(b));
  EXPECT_FALSE(pool.add(a));
  EXPECT_EQ(pool.size(), 2U);
  EXPECT_EQ(pool.scenarios().front(), a);
  EXPECT_TRUE(pool.contains(b));
}

TEST(Dwc, PathExample) {
  const SolveReport r = solve_dwc(path_example());
  EXPECT_EQ(r.placement.selected, NodeSet(3, {1}));
  EXPECT_EQ(r.objective, Rational(14));
  EXPECT_EQ(r.iterations, 1);
}

TEST(Dwc, IgnoresBudgets) {
  GeneratorParams g;
  g.n = 14;
  g.seed = 4;
  const NetworkInstance inst = generate_instance(g);
  const Rational base = solve_dwc(inst).objective;
  for (int ge = 0; ge <= 3; ++ge) {
    for (int gv = 0; gv <= 3; ++gv) EXPECT_EQ(solve_dwc(inst.with_budgets(ge, gv)).objective, base);
  }
}

TEST(Dwc, DisconnectedReachIsInfeasible) {
  const auto inst = oracle::make_instance({1, 1}, {{0, 1, 600, 1}}, 600);
  EXPECT_THROW(solve_dwc(inst), InfeasibleInstance);
}

TEST(Rsb, UnboundedBudgetsMatchDwc) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GeneratorParams g;
    g.n = 10;
    g.seed = seed;
    const NetworkInstance base = full_caps(generate_instance(g), 3);
    const NetworkInstance inst = base.with_budgets(base.m(), base.n());
    EXPECT_EQ(solve_rsb(inst).objective, solve_dwc(inst).objective);
  }
}

TEST(Rsb, ZeroBudgetsSolveNominalProblem) {
  for (const auto& c : oracle::oracle_instances(40, 8, 41)) {
    const NetworkInstance inst = c.inst.with_budgets(0, 0);
    std::vector<std::pair<NodeId, NodeId>> edges;
    const auto fw = oracle::floyd_warshall(inst, nominal_lengths(inst));
    for (NodeId p = 0; p < inst.n(); ++p) {
      for (NodeId q = p + 1; q < inst.n(); ++q) {
        if (fw[p][q] && *fw[p][q] <= inst.d_max()) edges.emplace_back(p, q);
      }
    }
    std::vector<Rational> costs;
    for (const auto& v : inst.nodes()) costs.push_back(v.nominal_cost);
    const auto ref = oracle::brute_min(TransformedGraph::from_edges(inst.n(), edges), costs);
    EXPECT_EQ(solve_rsb(inst).objective, ref.value);
  }
}

TEST(Rsb, MatchesMinMaxOracle) {
  for (const auto& c : oracle::oracle_instances(80, 8, 43)) {
    const auto m = oracle::enumerate_graph(c.inst, Regime::kStaticBudget);
    EXPECT_EQ(solve_rsb(c.inst).objective, oracle::brute_min_max(m, c.inst).value) << c.seed;
  }
}

TEST(Rdb, SinglePeriodAtFullCapsMatchesRsb) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GeneratorParams g;
    g.n = 12;
    g.seed = seed;
    const NetworkInstance inst = full_caps(generate_instance(g), 1);
    EXPECT_EQ(solve_rdb(inst).objective, solve_rsb(inst).objective);
  }
}

TEST(Rdb, SandwichedBelowRsbAndDwc) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GeneratorParams g;
    g.n = 8 + static_cast<int>(seed % 10);
    g.gamma_e = static_cast<int>(seed % 3);
    g.gamma_v = static_cast<int>(seed % 4);
    g.seed = seed;
    const NetworkInstance inst = generate_instance(g);
    const Rational rdb = solve_rdb(inst).objective;
    const Rational rsb = solve_rsb(inst).objective;
    EXPECT_LE(rdb, rsb);
    EXPECT_LE(rsb, solve_dwc(inst).objective);
  }
}

TEST(Rdb, MonotoneInBudgets) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    GeneratorParams g;
    g.n = 12;
    g.seed = seed + 100;
    const NetworkInstance inst = generate_instance(g);
    for (int ge = 0; ge <= 3; ++ge) {
      for (int gv = 0; gv <= 3; ++gv) {
        const Rational here = solve_rdb(inst.with_budgets(ge, gv)).objective;
        if (ge < 3) EXPECT_LE(here, solve_rdb(inst.with_budgets(ge + 1, gv)).objective);
        if (gv < 3) EXPECT_LE(here, solve_rdb(inst.with_budgets(ge, gv + 1)).objective);
      }
    }
  }
}

TEST(Methods, CompleteShortcutReturnsEmptyPlacement) {
  const auto inst =
      oracle::make_instance({3, 4, 5}, {{0, 1, 1, 0}, {1, 2, 1, 0}, {0, 2, 1, 0}}, 10);
  SolveOptions opts;
  EXPECT_EQ(solve_rsb(inst, opts).objective, Rational(3));
  opts.complete_shortcut = true;
  const SolveReport r = solve_rsb(inst, opts);
  EXPECT_TRUE(r.placement.selected.empty());
  EXPECT_EQ(r.objective, Rational(0));
}

TEST(Ccg, NoNodeBudgetConvergesAtOnce) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GeneratorParams g;
    g.n = 12;
    g.gamma_v = 0;
    g.seed = seed;
    const SolveReport r = solve_ccg(generate_instance(g));
    EXPECT_EQ(r.iterations, 1);
    EXPECT_EQ(r.scenarios_or_cuts, 0);
  }
}

TEST(Ccg, PathExample) {
  const SolveReport r = solve_ccg(path_example());
  EXPECT_EQ(r.objective, Rational(14));
  EXPECT_LE(r.iterations, 2);
  expect_report_invariants(r, Rational(0));
}

TEST(Ccg, NegativeEpsilonRejected) {
  SolveOptions opts;
  opts.epsilon = Rational(-1);
  EXPECT_THROW(solve_ccg(path_example(), opts), InvalidArgument);
  EXPECT_THROW(solve_benders(path_example(), opts), InvalidArgument);
}

TEST(Ccg, BoundsBracketOracle) {
  for (const auto& c : oracle::oracle_instances(60, 8, 47)) {
    const SolveReport r = solve_ccg(c.inst);
    const auto ref = oracle::brute_min_max(oracle::enumerate_graph(c.inst, Regime::kDynamicBudget), c.inst);
    EXPECT_EQ(r.objective, ref.value);
    Rational prev_lb = r.trace.front().lower_bound;
    for (const auto& t : r.trace) {
      EXPECT_GE(t.lower_bound, prev_lb);
      EXPECT_LE(t.lower_bound, ref.value);
      EXPECT_GE(t.upper_bound, ref.value);
      prev_lb = t.lower_bound;
    }
    expect_report_invariants(r, Rational(0));
  }
}

TEST(Benders, FeasibleFirstMasterNeedsNoCuts) {
  const auto inst = oracle::path_instance({5, 1, 5}, {0, 0, 0}, {1, 1}, 1);
  const SolveReport r = solve_benders(inst);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_EQ(r.scenarios_or_cuts, 0);
  EXPECT_EQ(r.placement.selected, NodeSet(3, {1}));
}

TEST(Benders, MandatoryCutVertexSkipsCuts) {
  const SolveReport r = solve_benders(path_example());
  EXPECT_EQ(r.objective, Rational(14));
  EXPECT_EQ(r.iterations, 1);
  EXPECT_EQ(r.scenarios_or_cuts, 0);
}

TEST(Benders, DisconnectedMasterGetsCut) {
  const auto c5 = oracle::make_instance(
      {1, 1, 1, 1, 1}, {{0, 1, 1, 0}, {1, 2, 1, 0}, {2, 3, 1, 0}, {3, 4, 1, 0}, {0, 4, 1, 0}}, 1);
  const SolveReport r = solve_benders(c5);
  EXPECT_EQ(r.objective, Rational(3));
  EXPECT_GE(r.iterations, 2);
  EXPECT_GE(r.scenarios_or_cuts, 1);
  EXPECT_EQ(r.trace.front().upper_bound, Rational(0));
}

TEST(Benders, BothCutFamiliesReachOptimum) {
  for (const auto& c : oracle::oracle_instances(60, 8, 53)) {
    const auto ref = oracle::brute_min_max(oracle::enumerate_graph(c.inst, Regime::kDynamicBudget), c.inst);
    SolveOptions opts;
    for (BendersCut cut : {BendersCut::kSeparator, BendersCut::kNoGood}) {
      opts.benders_cut = cut;
      const SolveReport r = solve_benders(c.inst, opts);
      EXPECT_EQ(r.objective, ref.value) << c.seed;
      EXPECT_EQ(r.objective, solve_rdb(c.inst).objective);
      expect_report_invariants(r, Rational(0));
    }
  }
}

TEST(Benders, SeparatorCutsNeverNeedMoreRounds) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GeneratorParams g;
    g.n = 14;
    g.seed = seed;
    const NetworkInstance inst = generate_instance(g);
    SolveOptions nogood;
    nogood.benders_cut = BendersCut::kNoGood;
    EXPECT_LE(solve_benders(inst).iterations, solve_benders(inst, nogood).iterations);
  }
}

TEST(Iro, NoEdgeBudgetIsFixedPoint) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GeneratorParams g;
    g.n = 12;
    g.gamma_e = 0;
    g.seed = seed;
    const SolveReport r = solve_iro(generate_instance(g));
    EXPECT_EQ(r.iterations, 2);
    EXPECT_TRUE(r.converged);
  }
}

TEST(Iro, ObjectiveWithinOracleAndDwc) {
  for (const auto& c : oracle::oracle_instances(80, 8, 59)) {
    const SolveReport r = solve_iro(c.inst);
    const auto ref = oracle::brute_min_max(oracle::enumerate_graph(c.inst, Regime::kDynamicBudget), c.inst);
    EXPECT_GE(r.objective, ref.value) << c.seed;
    EXPECT_LE(r.objective, solve_dwc(c.inst).objective) << c.seed;
    const auto m = build_transformed_graph(c.inst, Regime::kDynamicBudget);
    EXPECT_TRUE(verify_placement(m, r.placement.selected).ok);
  }
}

TEST(Iro, EpsilonMustBePositive) {
  SolveOptions opts;
  opts.epsilon = Rational(0);
  EXPECT_THROW(solve_iro(path_example(), opts), InvalidArgument);
}

TEST(Methods, ScalableMethodsAgreeOnLargerInstances) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    GeneratorParams g;
    g.n = 20;
    g.seed = seed;
    const NetworkInstance inst = generate_instance(g);
    const Rational rdb = solve_rdb(inst).objective;
    EXPECT_EQ(solve_ccg(inst).objective, rdb);
    EXPECT_EQ(solve_benders(inst).objective, rdb);
  }
}
