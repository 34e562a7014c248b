#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rlp/adversary.hpp"

using namespace rlp;

namespace {

const std::string kDataDir = RLP_DATA_DIR;

NetworkInstance three_nodes(int gamma_v) {
  return oracle::make_instance({4, 4, 4}, {{0, 1, 1, 0}, {1, 2, 1, 0}, {0, 2, 1, 0}}, 100, 0, gamma_v, 1,
                               {5, 3, 1});
}

NodeSet subset(int n, std::uint32_t mask) {
  NodeSet s(n);
  for (int v = 0; v < n; ++v) {
    if (mask >> v & 1U) s.insert(v);
  }
  return s;
}

}  // namespace

TEST(WorstCaseCost, FiveNodeNominalPlacementCosts17) {
  const NetworkInstance inst = load_instance_file(kDataDir + "/five_node.yaml").with_budgets(2, 0);
  const NodeSet p(5, {1, 3});
  EXPECT_EQ(worst_case_node_cost(p, inst).total, Rational(17));
  EXPECT_EQ(nominal_cost(p, inst), Rational(17));
}

TEST(WorstCaseCost, OneAttackHitsLargestDeviation) {
  const NetworkInstance inst = load_instance_file(kDataDir + "/five_node.yaml");
  const WorstCaseCost w = worst_case_node_cost(NodeSet(5, {1, 3}), inst);
  EXPECT_EQ(w.total, Rational(20));
  EXPECT_EQ(w.attacked_nodes, std::vector<NodeId>{1});
  EXPECT_EQ(w.nominal_part, Rational(17));
  EXPECT_EQ(w.deviation_part, Rational(3));
}

TEST(WorstCaseCost, EmptyPlacementCostsNothing) {
  EXPECT_EQ(worst_case_node_cost(NodeSet(3), three_nodes(2)).total, Rational(0));
}

TEST(WorstCaseCost, TiesGoToLowestId) {
  const auto inst = oracle::make_instance({1, 1, 1}, {{0, 1, 1, 0}, {1, 2, 1, 0}}, 100, 0, 1, 1, {2, 2, 2});
  EXPECT_EQ(worst_case_node_cost(NodeSet(3, {1, 2}), inst).attacked_nodes, std::vector<NodeId>{1});
}

TEST(WorstCaseCost, MonotoneInBudgetAndSaturates) {
  const NodeSet all = NodeSet::full(3);
  Rational prev(0);
  for (int g = 0; g <= 5; ++g) {
    const WorstCaseCost w = worst_case_node_cost(all, three_nodes(g));
    EXPECT_GE(w.total, prev);
    EXPECT_EQ(w.total, w.nominal_part + w.deviation_part);
    prev = w.total;
  }
  EXPECT_EQ(prev, full_cost(all, three_nodes(0)));
}

TEST(WorstCaseCost, MatchesEnumeration) {
  for (const auto& c : oracle::oracle_instances(60, 8, 5)) {
    const int n = c.inst.n();
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
      const NodeSet p = subset(n, mask);
      const WorstCaseCost w = worst_case_node_cost(p, c.inst);
      ASSERT_EQ(w.total, oracle::worst_node_cost(c.inst, p));
      ASSERT_LE(static_cast<int>(w.attacked_nodes.size()), c.inst.gamma_v());
      for (NodeId v : w.attacked_nodes) ASSERT_TRUE(p.contains(v));
    }
  }
}

TEST(Scenario, SingleSelectedNodeIsAttacked) {
  const auto inst =
      oracle::make_instance({3, 3, 3}, {{0, 1, 1, 0}, {1, 2, 1, 0}}, 100, 0, 1, 1, {1, 1, 9});
  const auto m = build_transformed_graph(inst, Regime::kDynamicBudget);
  EXPECT_EQ(worst_case_scenario(NodeSet(3, {2}), inst, m).node_attacks, std::vector<NodeId>{2});
}

TEST(Scenario, LargeBudgetAttacksWholePlacement) {
  const auto inst = three_nodes(3);
  const auto m = build_transformed_graph(inst, Regime::kDynamicBudget);
  EXPECT_EQ(worst_case_scenario(NodeSet(3, {0, 2}), inst, m).node_attacks, (std::vector<NodeId>{0, 2}));
}

TEST(Scenario, WorstScenarioIsValidAndMaximal) {
  for (const auto& c : oracle::oracle_instances(60, 8, 6)) {
    const auto m = build_transformed_graph(c.inst, Regime::kDynamicBudget);
    const int n = c.inst.n();
    for (std::uint32_t mask = 1; mask < (1U << n); mask += 3) {
      const NodeSet p = subset(n, mask);
      const Scenario s = worst_case_scenario(p, c.inst, m);
      ASSERT_NO_THROW(s.validate(c.inst));
      ASSERT_EQ(scenario_cost(p, c.inst, s), oracle::worst_node_cost(c.inst, p));
      ASSERT_EQ(worst_case_scenario(p, c.inst, m), s);
    }
  }
}

TEST(DualCertificate, TopOneOfThree) {
  const DualCertificate d = dual_certificate(NodeSet::full(3), three_nodes(1));
  EXPECT_EQ(d.pi, Rational(3));
  EXPECT_EQ(d.lambda, (std::vector<Rational>{2, 0, 0}));
  EXPECT_EQ(d.value(1), Rational(5));
}

TEST(DualCertificate, ZeroBudgetCertifiesZero) {
  const DualCertificate d = dual_certificate(NodeSet::full(3), three_nodes(0));
  EXPECT_EQ(d.pi, Rational(5));
  EXPECT_EQ(d.value(0), Rational(0));
}

TEST(DualCertificate, EqualDeviations) {
  const auto inst = oracle::make_instance({1, 1, 1}, {{0, 1, 1, 0}, {1, 2, 1, 0}}, 100, 0, 2, 1, {4, 4, 4});
  const DualCertificate d = dual_certificate(NodeSet::full(3), inst);
  EXPECT_EQ(d.pi, Rational(4));
  EXPECT_EQ(d.lambda, (std::vector<Rational>{0, 0, 0}));
  EXPECT_EQ(d.value(2), Rational(8));
}

TEST(DualCertificate, StrongDualityOnAllPlacements) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    GeneratorParams g;
    g.n = 10;
    g.gamma_v = static_cast<int>(seed % 4);
    g.seed = seed;
    const NetworkInstance inst = generate_instance(g);
    for (std::uint32_t mask = 0; mask < (1U << 10); ++mask) {
      const NodeSet p = subset(10, mask);
      ASSERT_EQ(dual_certificate(p, inst).value(inst.gamma_v()), worst_case_node_cost(p, inst).deviation_part);
    }
  }
}
