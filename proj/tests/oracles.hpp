#pragma once

// Slow reference implementations used to check the library. None of them
// share code with the solvers beyond the data types.

#include <optional>
#include <random>
#include <vector>

#include "rlp/instance.hpp"
#include "rlp/node_set.hpp"
#include "rlp/rational.hpp"
#include "rlp/shortest_paths.hpp"

namespace oracle {

using rlp::NetworkInstance;
using rlp::NodeId;
using rlp::NodeSet;
using rlp::Rational;
using rlp::TransformedGraph;

using Dist = std::optional<Rational>;

/// Floyd-Warshall over the given per-edge lengths.
std::vector<std::vector<Dist>> floyd_warshall(const NetworkInstance& inst, const std::vector<Rational>& lengths);

/// Minimum over all simple p-q paths of nominal length plus the largest sum
/// of at most gamma deviations on the path, by enumerating paths and subsets.
Dist enumerate_robust_sp(const NetworkInstance& inst, NodeId p, NodeId q, const std::vector<Rational>& deviations,
                         int gamma);

/// Worst period of enumerate_robust_sp with period caps and budget gamma_e.
Dist enumerate_robust_sp_dynamic(const NetworkInstance& inst, NodeId p, NodeId q);

/// M rebuilt from the enumeration oracles for one of the named regimes.
TransformedGraph enumerate_graph(const NetworkInstance& inst, rlp::Regime regime);

/// Domination plus a unit max-flow between every pair of selected nodes in
/// which only selected nodes may relay.
bool flow_feasible(const TransformedGraph& m, const NodeSet& placement);

/// Max over every node attack set of size at most gamma_v of the attacked cost.
Rational worst_node_cost(const NetworkInstance& inst, const NodeSet& placement);

struct MinMax {
  NodeSet placement;
  Rational value;
  std::vector<NodeSet> optimal;  // every placement reaching the minimum
};

/// Min over flow-feasible placements of worst_node_cost (or a custom cost).
MinMax brute_min_max(const TransformedGraph& m, const NetworkInstance& inst);
MinMax brute_min(const TransformedGraph& m, const std::vector<Rational>& unit_costs);

/// k_s(tau) straight from the definition.
double profile_value(const std::vector<std::vector<double>>& times, std::size_t solver, double tau);

/// Seeded oracle-scale instances drawn with generate_instance.
struct OracleCase {
  NetworkInstance inst;
  std::uint64_t seed;
};
std::vector<OracleCase> oracle_instances(int count, int max_n, std::uint64_t seed);

/// Connected graph with small integer lengths and deviations, for path checks.
NetworkInstance random_small_graph(std::mt19937_64& rng, int n, int gamma_e, int horizon);

struct EdgeSpec {
  NodeId u;
  NodeId v;
  Rational len;
  Rational dev;
  std::vector<Rational> caps;  // empty means every period at dev
};

/// Instance from explicit data. Node deviations default to zero.
NetworkInstance make_instance(const std::vector<Rational>& node_costs, const std::vector<EdgeSpec>& edges,
                              Rational d_max, int gamma_e = 0, int gamma_v = 0, int horizon = 1,
                              const std::vector<Rational>& node_devs = {});

/// Path p0 - p1 - ... with the given lengths; no deviations.
NetworkInstance path_instance(const std::vector<Rational>& node_costs, const std::vector<Rational>& node_devs,
                              const std::vector<Rational>& lengths, Rational d_max, int gamma_v = 0);

}  // namespace oracle
