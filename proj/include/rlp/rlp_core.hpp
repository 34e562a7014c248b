#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "rlp/node_set.hpp"
#include "rlp/rational.hpp"
#include "rlp/shortest_paths.hpp"

namespace rlp {

struct Placement {
  NodeSet selected;
  Rational objective;

  friend bool operator==(const Placement&, const Placement&) = default;
};

/// Nodes forced into every placement: unique neighbors of degree-one nodes of M.
struct WarmStart {
  NodeSet mandatory;
};

WarmStart preprocess(const TransformedGraph& m);

struct Violation {
  enum class Kind { kNone, kUndominated, kDisconnected };
  Kind kind = Kind::kNone;
  NodeId node = -1;   // undominated node, or first endpoint of a disconnected pair
  NodeId other = -1;  // second endpoint of a disconnected pair
};

struct VerifyResult {
  bool ok = true;
  Violation witness;
  explicit operator bool() const { return ok; }
};

/// Feasibility of a placement on M: every unselected node has a selected
/// neighbor, and the selected nodes are connected in the subgraph they
/// induce (only the listed pairs, when given). This is exactly when unit
/// flows between all selected pairs exist using selected relays only.
VerifyResult verify_placement(const TransformedGraph& m, const NodeSet& placement,
                              const std::vector<std::pair<NodeId, NodeId>>* pairs = nullptr);

/// Monotone set cost: adding a node never lowers it.
using CostFn = std::function<Rational(const NodeSet&)>;
using FeasibleFn = std::function<bool(const NodeSet&)>;

using Clock = std::chrono::steady_clock;

struct SearchOptions {
  /// Replaces the connected-dominating-set test when set.
  FeasibleFn feasible;
  /// Prune partial assignments whose selected nodes can no longer be
  /// connected. Only valid if every feasible set is connected.
  bool connectivity_pruning = true;
  std::optional<Clock::time_point> deadline;
};

struct SearchStats {
  std::uint64_t nodes = 0;
};

/// Minimum-cost feasible placement by depth-first branch and bound: nodes are
/// branched in id order, include before exclude, warm-start nodes fixed in.
/// Among minimum-cost sets the lexicographically smallest id sequence is
/// returned, so the answer does not depend on search order.
Placement solve_rlp_exact(const TransformedGraph& m, const CostFn& cost, const WarmStart& warm,
                          const SearchOptions& options = {}, SearchStats* stats = nullptr);

/// Exhaustive scan over all 2^n subsets with the same tie rule. n <= 16.
Placement brute_force_rlp(const TransformedGraph& m, const CostFn& cost, const FeasibleFn& feasible = {});

}  // namespace rlp
