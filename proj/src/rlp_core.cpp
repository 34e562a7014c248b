#include "rlp/rlp_core.hpp"

#include <algorithm>
#include <optional>

#include "rlp/errors.hpp"

namespace rlp {

WarmStart preprocess(const TransformedGraph& m) {
  WarmStart warm{NodeSet(m.n())};
  if (m.n() < 3) return warm;
  for (NodeId v = 0; v < m.n(); ++v) {
    if (m.degree(v) == 1) warm.mandatory.insert(m.neighbors(v).first());
  }
  return warm;
}

namespace {

// Nodes of `allowed` reachable from `start` inside the subgraph induced by `allowed`.
NodeSet reach_within(const TransformedGraph& m, NodeId start, const NodeSet& allowed) {
  NodeSet seen(m.n());
  NodeSet frontier(m.n());
  seen.insert(start);
  frontier.insert(start);
  while (!frontier.empty()) {
    NodeSet next(m.n());
    for (int v = frontier.first(); v >= 0; v = frontier.next(v + 1)) next |= m.neighbors(v);
    next &= allowed;
    next.subtract(seen);
    seen |= next;
    frontier = std::move(next);
  }
  return seen;
}

bool dominates(const TransformedGraph& m, const NodeSet& placement) {
  for (NodeId v = 0; v < m.n(); ++v) {
    if (!placement.contains(v) && !m.neighbors(v).intersects(placement)) return false;
  }
  return true;
}

bool connected_within(const TransformedGraph& m, const NodeSet& placement) {
  const int start = placement.first();
  if (start < 0) return true;
  return placement.is_subset_of(reach_within(m, start, placement));
}

bool better(const Rational& cost, const NodeSet& set, const std::optional<Placement>& best) {
  if (!best) return true;
  if (cost != best->objective) return cost < best->objective;
  return NodeSet::lex_less(set, best->selected);
}

class BranchAndBound {
 public:
  BranchAndBound(const TransformedGraph& m, const CostFn& cost, const SearchOptions& options, SearchStats* stats)
      : m_(m), cost_(cost), options_(options), stats_(stats), included_(m.n()), excluded_(m.n()) {}

  Placement run(const WarmStart& warm) {
    included_ = warm.mandatory;
    seed_incumbent();
    visit(0);
    if (!best_) throw Error("solve_rlp_exact: no feasible placement exists");
    return *best_;
  }

 private:
  bool feasible(const NodeSet& s) const {
    if (options_.feasible) return options_.feasible(s);
    return dominates(m_, s) && connected_within(m_, s);
  }

  // Reverse delete from V: drop the costliest nodes first while feasibility holds.
  void seed_incumbent() {
    NodeSet all = NodeSet::full(m_.n());
    if (!feasible(all)) return;
    std::vector<std::pair<Rational, NodeId>> order;
    for (NodeId v = 0; v < m_.n(); ++v) {
      if (!included_.contains(v)) order.emplace_back(cost_(NodeSet(m_.n(), {v})), v);
    }
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return b.first < a.first; });
    for (const auto& [c, v] : order) {
      all.erase(v);
      if (!feasible(all)) all.insert(v);
    }
    best_ = Placement{all, cost_(all)};
  }

  void tick() {
    if (stats_) ++stats_->nodes;
    if (options_.deadline && (++ticks_ & 255U) == 0 && Clock::now() > *options_.deadline) {
      throw TimeLimitExceeded("solve_rlp_exact: time limit reached");
    }
  }

  // Whether some completion of the current partial assignment can still be feasible.
  bool completable() const {
    NodeSet open = excluded_.complement();
    for (int v = excluded_.first(); v >= 0; v = excluded_.next(v + 1)) {
      if (!m_.neighbors(v).intersects(open)) return false;
    }
    if (options_.connectivity_pruning) {
      const int start = included_.first();
      if (start >= 0 && !included_.is_subset_of(reach_within(m_, start, open))) return false;
    }
    return true;
  }

  void visit(NodeId next) {
    tick();
    const Rational here = cost_(included_);
    if (best_ && best_->objective < here) return;

    const bool done = feasible(included_);
    if (done && better(here, included_, best_)) best_ = Placement{included_, here};
    if (!done && !completable()) return;

    // Cheapest single-node extension bounds every completion from below.
    std::optional<Rational> extend;
    NodeId branch = -1;
    for (NodeId u = next; u < m_.n(); ++u) {
      if (included_.contains(u)) continue;
      if (branch < 0) branch = u;
      included_.insert(u);
      Rational c = cost_(included_);
      included_.erase(u);
      if (!extend || c < *extend) extend = std::move(c);
    }
    if (branch < 0) return;
    // A feasible set only needs extending when a tie in cost could make a lexicographically smaller answer.
    if (done && here < *extend) return;
    if (best_ && best_->objective < *extend) return;

    included_.insert(branch);
    visit(branch + 1);
    included_.erase(branch);

    excluded_.insert(branch);
    visit(branch + 1);
    excluded_.erase(branch);
  }

  const TransformedGraph& m_;
  const CostFn& cost_;
  const SearchOptions& options_;
  SearchStats* stats_;
  NodeSet included_;
  NodeSet excluded_;
  std::optional<Placement> best_;
  unsigned ticks_ = 0;
};

}  // namespace

VerifyResult verify_placement(const TransformedGraph& m, const NodeSet& placement,
                              const std::vector<std::pair<NodeId, NodeId>>* pairs) {
  VerifyResult out;
  for (NodeId v = 0; v < m.n(); ++v) {
    if (!placement.contains(v) && !m.neighbors(v).intersects(placement)) {
      out.ok = false;
      out.witness = {Violation::Kind::kUndominated, v, -1};
      return out;
    }
  }
  std::vector<int> component(static_cast<std::size_t>(m.n()), -1);
  int label = 0;
  for (int v = placement.first(); v >= 0; v = placement.next(v + 1)) {
    if (component[static_cast<std::size_t>(v)] >= 0) continue;
    const NodeSet reached = reach_within(m, v, placement);
    for (int w = reached.first(); w >= 0; w = reached.next(w + 1)) component[static_cast<std::size_t>(w)] = label;
    ++label;
  }
  auto disconnected = [&](NodeId p, NodeId q) {
    return component[static_cast<std::size_t>(p)] != component[static_cast<std::size_t>(q)];
  };
  if (pairs) {
    for (auto [p, q] : *pairs) {
      if (!placement.contains(p) || !placement.contains(q)) continue;
      if (disconnected(p, q)) {
        out.ok = false;
        out.witness = {Violation::Kind::kDisconnected, std::min(p, q), std::max(p, q)};
        return out;
      }
    }
    return out;
  }
  const int root = placement.first();
  for (int v = root; v >= 0; v = placement.next(v + 1)) {
    if (disconnected(root, v)) {
      out.ok = false;
      out.witness = {Violation::Kind::kDisconnected, root, v};
      return out;
    }
  }
  return out;
}

Placement solve_rlp_exact(const TransformedGraph& m, const CostFn& cost, const WarmStart& warm,
                          const SearchOptions& options, SearchStats* stats) {
  if (warm.mandatory.universe() != m.n()) throw InvalidArgument("solve_rlp_exact: warm start has the wrong universe");
  BranchAndBound search(m, cost, options, stats);
  return search.run(warm);
}

Placement brute_force_rlp(const TransformedGraph& m, const CostFn& cost, const FeasibleFn& feasible) {
  const int n = m.n();
  if (n > 16) throw InvalidArgument("brute_force_rlp: refusing n > 16");
  std::optional<Placement> best;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    NodeSet s(n);
    for (int v = 0; v < n; ++v) {
      if (mask & (1U << v)) s.insert(v);
    }
    const bool ok = feasible ? feasible(s) : verify_placement(m, s).ok;
    if (!ok) continue;
    Rational c = cost(s);
    if (better(c, s, best)) best = Placement{s, c};
  }
  if (!best) throw Error("brute_force_rlp: no feasible placement exists");
  return *best;
}

}  // namespace rlp
