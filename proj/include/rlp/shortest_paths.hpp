#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rlp/instance.hpp"
#include "rlp/node_set.hpp"
#include "rlp/rational.hpp"

namespace rlp {

/// A shortest distance, or nullopt for "no path" (+infinity).
using Distance = std::optional<Rational>;

/// How edge lengths are treated when building the communication graph.
enum class Regime {
  kNominalUpper,   // every edge at nominal + full deviation
  kStaticBudget,   // at most gamma_e edges at nominal + full deviation
  kDynamicBudget,  // per period, at most gamma_e edges at nominal + period cap; worst period
  kCustom,         // caller-supplied per-period deviations
};

std::string to_string(Regime r);

/// Per-period, per-edge deviation levels: devs[t][e].
using PeriodDeviations = std::vector<std::vector<Rational>>;

/// Symmetric all-pairs matrix of certified distances.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(int n, Regime regime) : n_(n), regime_(regime), dist_(static_cast<std::size_t>(n) * n) {
    for (int v = 0; v < n; ++v) set(v, v, Rational(0));
  }

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] Regime regime() const { return regime_; }
  [[nodiscard]] const Distance& at(NodeId p, NodeId q) const { return dist_[index(p, q)]; }
  void set(NodeId p, NodeId q, Distance d) {
    dist_[index(p, q)] = d;
    dist_[index(q, p)] = std::move(d);
  }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  [[nodiscard]] std::size_t index(NodeId p, NodeId q) const {
    return static_cast<std::size_t>(p) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(q);
  }
  int n_ = 0;
  Regime regime_ = Regime::kNominalUpper;
  std::vector<Distance> dist_;
};

/// A p-q path certifying a robust distance.
struct RobustPath {
  Distance value;                 // nominal length + worst attack on the path
  Rational threshold;             // decomposition threshold that produced it
  std::vector<NodeId> nodes;      // p ... q
  std::vector<EdgeId> edges;      // consecutive path edges
  std::vector<EdgeId> attacked;   // at most gamma path edges with largest deviation, ascending id
};

/// Communication graph M: (p,q) adjacent iff their certified distance is at most d_max.
class TransformedGraph {
 public:
  TransformedGraph() = default;
  TransformedGraph(Regime regime, std::vector<NodeSet> adjacency, DistanceMatrix distances);

  /// Graph given directly by its edge list; distances left empty.
  static TransformedGraph from_edges(int n, const std::vector<std::pair<NodeId, NodeId>>& edges);

  [[nodiscard]] int n() const { return static_cast<int>(adjacency_.size()); }
  [[nodiscard]] Regime regime() const { return regime_; }
  [[nodiscard]] bool adjacent(NodeId p, NodeId q) const { return adjacency_[static_cast<std::size_t>(p)].contains(q); }
  [[nodiscard]] const NodeSet& neighbors(NodeId v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  [[nodiscard]] int degree(NodeId v) const { return neighbors(v).size(); }
  [[nodiscard]] int edge_count() const;
  [[nodiscard]] std::vector<std::pair<NodeId, NodeId>> edges() const;
  [[nodiscard]] std::vector<std::pair<NodeId, NodeId>> ndc_pairs() const;
  [[nodiscard]] bool connected() const;
  [[nodiscard]] bool complete() const { return edge_count() == n() * (n() - 1) / 2; }
  /// Distances truncated at d_max: absent entries exceed the reach limit.
  [[nodiscard]] const DistanceMatrix& distances() const { return distances_; }
  /// Edge set is contained in other's edge set.
  [[nodiscard]] bool subgraph_of(const TransformedGraph& other) const;

  /// Per-period robust matrices (truncated at d_max) and the deviations and
  /// budget they were computed with. Empty for graphs built from edge lists.
  [[nodiscard]] const std::vector<DistanceMatrix>& period_distances() const { return period_distances_; }
  [[nodiscard]] const PeriodDeviations& period_deviations() const { return period_deviations_; }
  [[nodiscard]] int budget() const { return budget_; }
  void attach_periods(std::vector<DistanceMatrix> matrices, PeriodDeviations devs, int budget) {
    period_distances_ = std::move(matrices);
    period_deviations_ = std::move(devs);
    budget_ = budget;
  }

 private:
  Regime regime_ = Regime::kCustom;
  std::vector<NodeSet> adjacency_;
  DistanceMatrix distances_;
  std::vector<DistanceMatrix> period_distances_;
  PeriodDeviations period_deviations_;
  int budget_ = 0;
};

/// Exact all-pairs shortest distances under the given per-edge lengths.
DistanceMatrix nominal_shortest_paths(const NetworkInstance& inst, std::span<const Rational> lengths);

/// All-pairs robust distances: for each pair, the minimum over paths of the
/// path's nominal length plus the sum of its `gamma` largest deviations.
/// With a cutoff, distances above it are reported as absent.
DistanceMatrix robust_all_pairs(const NetworkInstance& inst, std::span<const Rational> nominal,
                                std::span<const Rational> deviations, int gamma,
                                const std::optional<Rational>& cutoff = std::nullopt,
                                Regime regime = Regime::kCustom);

/// Same as robust_all_pairs but only rows whose source is in `sources` are
/// recomputed; other entries are copied from `base`.
DistanceMatrix robust_rows(const NetworkInstance& inst, std::span<const Rational> nominal,
                           std::span<const Rational> deviations, int gamma, const std::optional<Rational>& cutoff,
                           const DistanceMatrix& base, const NodeSet& sources);

/// Robust distance and a certifying path for one pair.
RobustPath robust_path(const NetworkInstance& inst, std::span<const Rational> nominal,
                       std::span<const Rational> deviations, int gamma, NodeId p, NodeId q);

/// Certifying paths from p to each target, indexed by node id. Targets with
/// no path within the cutoff keep an empty value. Equal to robust_path per target.
std::vector<RobustPath> robust_paths_from(const NetworkInstance& inst, std::span<const Rational> nominal,
                                          std::span<const Rational> deviations, int gamma, NodeId p,
                                          const NodeSet& targets, const std::optional<Rational>& cutoff = std::nullopt);

/// Robust p-q distance with full deviations and budget gamma.
Distance robust_sp_static(const NetworkInstance& inst, NodeId p, NodeId q, int gamma);

/// Worst period robust p-q distance with period caps and budget gamma_e.
Distance robust_sp_dynamic(const NetworkInstance& inst, NodeId p, NodeId q);

/// Per-period deviation tables.
PeriodDeviations period_caps(const NetworkInstance& inst);
std::vector<Rational> nominal_lengths(const NetworkInstance& inst);
std::vector<Rational> max_deviations(const NetworkInstance& inst);

/// M for one of the three named regimes. Throws InfeasibleInstance if M is disconnected.
TransformedGraph build_transformed_graph(const NetworkInstance& inst, Regime regime);

/// M as the intersection over periods of per-period robust graphs, with
/// deviations devs[t] and budget gamma_e. Does not check connectivity.
TransformedGraph transformed_graph_from(const NetworkInstance& inst, const PeriodDeviations& devs, Regime regime);

/// Combine per-period matrices (worst period) into M.
TransformedGraph combine_periods(const NetworkInstance& inst, const std::vector<DistanceMatrix>& per_period,
                                 Regime regime);

}  // namespace rlp
