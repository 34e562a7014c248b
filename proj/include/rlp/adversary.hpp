#pragma once

#include <vector>

#include "rlp/instance.hpp"
#include "rlp/node_set.hpp"
#include "rlp/rational.hpp"
#include "rlp/shortest_paths.hpp"

namespace rlp {

struct WorstCaseCost {
  Rational total;
  Rational nominal_part;
  Rational deviation_part;
  std::vector<NodeId> attacked_nodes;  // ascending id
};

/// Optimal value of the node adversary: nominal cost of the placement plus
/// its gamma_v largest deviations (ties to the lowest id). The adversary LP is
/// a fractional knapsack with unit weights, so this greedy choice is optimal.
WorstCaseCost worst_case_node_cost(const NodeSet& placement, const NetworkInstance& inst);

Rational nominal_cost(const NodeSet& placement, const NetworkInstance& inst);

/// Every selected node at nominal + full deviation.
Rational full_cost(const NodeSet& placement, const NetworkInstance& inst);

/// Node cost of the placement under a fixed scenario's node attacks.
Rational scenario_cost(const NodeSet& placement, const NetworkInstance& inst, const Scenario& scenario);

/// Optimal dual (pi, lambda) of the node adversary LP for a placement.
struct DualCertificate {
  Rational pi;
  std::vector<Rational> lambda;  // one per node, zero outside the placement

  /// gamma * pi + sum(lambda)
  [[nodiscard]] Rational value(int gamma) const;
};

DualCertificate dual_certificate(const NodeSet& placement, const NetworkInstance& inst);

/// Worst realization against a placement on M. Node attacks follow
/// worst_case_node_cost. When M carries per-period data from a budgeted
/// regime, each period's edge attack is the worst attack on the certifying
/// path of the M-edge touching the placement with the largest distance in
/// that period.
Scenario worst_case_scenario(const NodeSet& placement, const NetworkInstance& inst, const TransformedGraph& m);

}  // namespace rlp
