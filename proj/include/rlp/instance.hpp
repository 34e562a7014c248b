#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rlp/rational.hpp"

namespace rlp {

using NodeId = int;
using EdgeId = int;

struct NodeData {
  NodeId id = 0;
  Rational nominal_cost;
  Rational max_deviation;
};

/// Undirected edge. Endpoints are stored with u < v.
struct EdgeData {
  NodeId u = 0;
  NodeId v = 0;
  Rational nominal_length;
  Rational max_deviation;
  /// Realized deviation cap per period, each within [0, max_deviation].
  std::vector<Rational> period_caps;

  [[nodiscard]] NodeId other(NodeId w) const { return w == u ? v : u; }
};

struct InstanceParams {
  Rational d_max = 1000;
  int gamma_e = 0;
  int gamma_v = 0;
  int horizon = 3;
  std::uint64_t seed = 0;
};

/// Immutable network: nodes with uncertain installation cost, edges with
/// uncertain length, adversary budgets and the signal reach limit.
///
/// Construction validates every invariant, drops edges whose nominal length
/// already exceeds d_max, and rejects graphs that are then disconnected.
class NetworkInstance {
 public:
  NetworkInstance(std::vector<NodeData> nodes, std::vector<EdgeData> edges, InstanceParams params);

  [[nodiscard]] int n() const { return static_cast<int>(nodes_.size()); }
  [[nodiscard]] int m() const { return static_cast<int>(edges_.size()); }
  [[nodiscard]] const std::vector<NodeData>& nodes() const { return nodes_; }
  [[nodiscard]] const std::vector<EdgeData>& edges() const { return edges_; }
  [[nodiscard]] const NodeData& node(NodeId v) const { return nodes_[static_cast<std::size_t>(v)]; }
  [[nodiscard]] const EdgeData& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  [[nodiscard]] const std::vector<EdgeId>& incident(NodeId v) const { return incident_[static_cast<std::size_t>(v)]; }
  [[nodiscard]] const InstanceParams& params() const { return params_; }
  [[nodiscard]] const Rational& d_max() const { return params_.d_max; }
  [[nodiscard]] int gamma_e() const { return params_.gamma_e; }
  [[nodiscard]] int gamma_v() const { return params_.gamma_v; }
  [[nodiscard]] int horizon() const { return params_.horizon; }
  [[nodiscard]] std::uint64_t seed() const { return params_.seed; }

  /// Edge id joining a and b, or -1.
  [[nodiscard]] EdgeId find_edge(NodeId a, NodeId b) const;

  /// Same network with different adversary budgets.
  [[nodiscard]] NetworkInstance with_budgets(int gamma_e, int gamma_v) const;

  friend bool operator==(const NetworkInstance& a, const NetworkInstance& b);

 private:
  std::vector<NodeData> nodes_;
  std::vector<EdgeData> edges_;
  InstanceParams params_;
  std::vector<std::vector<EdgeId>> incident_;
};

/// One adversary realization: attacked nodes, and per period the attacked
/// edges together with the deviation level applied to each.
struct Scenario {
  std::vector<NodeId> node_attacks;
  std::vector<std::vector<EdgeId>> edge_attacks;
  std::vector<std::vector<Rational>> deviation_levels;

  /// Throws ValidationError if a budget or cap is violated.
  void validate(const NetworkInstance& inst) const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct GeneratorParams {
  int n = 25;
  Rational density{3, 10};
  Rational d_max = 1000;
  int gamma_e = 2;
  int gamma_v = 2;
  int horizon = 3;
  std::uint64_t seed = 0;
};

/// Seeded Erdos-Renyi instance with integer lengths in [350,600], length
/// deviations in [1,250], node costs in [250,300] and node deviations in
/// [1,50]. Period caps are multiples of 1/1000 in [0, deviation]. Disconnected
/// draws are resampled from a derived seed.
NetworkInstance generate_instance(const GeneratorParams& params);

/// Parse the YAML instance document. Throws ParseError or ValidationError.
NetworkInstance load_instance(std::string_view text);
NetworkInstance load_instance_file(const std::string& path);

/// Canonical YAML serialization; load_instance(save_instance(x)) == x.
std::string save_instance(const NetworkInstance& inst);
void save_instance_file(const NetworkInstance& inst, const std::string& path);

/// splitmix64 finalizer, used to derive independent seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace rlp
