#include "rlp/instance.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "rlp/errors.hpp"

namespace rlp {

namespace {

bool is_connected(int n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
  if (n <= 1) return true;
  std::vector<std::vector<NodeId>> adj(static_cast<std::size_t>(n));
  for (auto [a, b] : edges) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (NodeId w : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

// Portable bounded draw: rejection sampling on raw engine output, so the same
// seed gives the same instance regardless of the standard library in use.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

std::int64_t draw_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(draw_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

bool draw_bernoulli(std::mt19937_64& rng, const Rational& p) {
  return static_cast<std::int64_t>(draw_below(rng, static_cast<std::uint64_t>(p.den()))) < p.num();
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

NetworkInstance::NetworkInstance(std::vector<NodeData> nodes, std::vector<EdgeData> edges, InstanceParams params)
    : nodes_(std::move(nodes)), params_(params) {
  if (nodes_.empty()) throw ValidationError("nodes", "instance needs at least one node");
  if (params_.d_max <= 0) throw ValidationError("meta.d_max", "must be positive");
  if (params_.gamma_e < 0) throw ValidationError("meta.gamma_e", "must be nonnegative");
  if (params_.gamma_v < 0) throw ValidationError("meta.gamma_v", "must be nonnegative");
  if (params_.horizon < 1) throw ValidationError("meta.horizon", "must be positive");

  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& nd = nodes_[i];
    const std::string where = "nodes[" + std::to_string(i) + "]";
    if (nd.id != static_cast<NodeId>(i)) throw ValidationError(where + ".id", "ids must be dense and ordered 0..n-1");
    if (nd.nominal_cost < 0) throw ValidationError(where + ".cost", "must be nonnegative");
    if (nd.max_deviation < 0) throw ValidationError(where + ".dev", "must be nonnegative");
  }

  std::set<std::pair<NodeId, NodeId>> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto& e = edges[i];
    const std::string where = "edges[" + std::to_string(i) + "]";
    if (e.u < 0 || e.u >= n() || e.v < 0 || e.v >= n()) throw ValidationError(where, "endpoint out of range");
    if (e.u == e.v) throw ValidationError(where, "self loop");
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!seen.insert({e.u, e.v}).second) {
      throw ValidationError(where, "parallel edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    }
    if (e.nominal_length < 0) throw ValidationError(where + ".len", "must be nonnegative");
    if (e.max_deviation < 0) throw ValidationError(where + ".dev", "must be nonnegative");
    if (static_cast<int>(e.period_caps.size()) != params_.horizon) {
      throw ValidationError(where + ".period_caps", "needs one cap per period");
    }
    for (const auto& cap : e.period_caps) {
      if (cap < 0 || cap > e.max_deviation) throw ValidationError(where + ".period_caps", "cap outside [0, dev]");
    }
  }

  // Edges that cannot carry a signal even nominally are removed.
  std::erase_if(edges, [&](const EdgeData& e) { return e.nominal_length > params_.d_max; });
  edges_ = std::move(edges);

  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(edges_.size());
  for (const auto& e : edges_) pairs.emplace_back(e.u, e.v);
  if (!is_connected(n(), pairs)) throw ValidationError("edges", "network is disconnected");

  incident_.assign(nodes_.size(), {});
  for (EdgeId id = 0; id < m(); ++id) {
    incident_[static_cast<std::size_t>(edges_[static_cast<std::size_t>(id)].u)].push_back(id);
    incident_[static_cast<std::size_t>(edges_[static_cast<std::size_t>(id)].v)].push_back(id);
  }
}

EdgeId NetworkInstance::find_edge(NodeId a, NodeId b) const {
  for (EdgeId e : incident(a)) {
    if (edge(e).other(a) == b) return e;
  }
  return -1;
}

NetworkInstance NetworkInstance::with_budgets(int gamma_e, int gamma_v) const {
  InstanceParams p = params_;
  p.gamma_e = gamma_e;
  p.gamma_v = gamma_v;
  return NetworkInstance(nodes_, edges_, p);
}

bool operator==(const NetworkInstance& a, const NetworkInstance& b) {
  auto node_eq = [](const NodeData& x, const NodeData& y) {
    return x.id == y.id && x.nominal_cost == y.nominal_cost && x.max_deviation == y.max_deviation;
  };
  auto edge_eq = [](const EdgeData& x, const EdgeData& y) {
    return x.u == y.u && x.v == y.v && x.nominal_length == y.nominal_length && x.max_deviation == y.max_deviation &&
           x.period_caps == y.period_caps;
  };
  const auto& p = a.params_;
  const auto& q = b.params_;
  return p.d_max == q.d_max && p.gamma_e == q.gamma_e && p.gamma_v == q.gamma_v && p.horizon == q.horizon &&
         p.seed == q.seed && std::equal(a.nodes_.begin(), a.nodes_.end(), b.nodes_.begin(), b.nodes_.end(), node_eq) &&
         std::equal(a.edges_.begin(), a.edges_.end(), b.edges_.begin(), b.edges_.end(), edge_eq);
}

void Scenario::validate(const NetworkInstance& inst) const {
  if (static_cast<int>(node_attacks.size()) > inst.gamma_v()) {
    throw ValidationError("node_attacks", "exceeds gamma_v");
  }
  std::set<NodeId> distinct(node_attacks.begin(), node_attacks.end());
  if (distinct.size() != node_attacks.size()) throw ValidationError("node_attacks", "duplicate node");
  for (NodeId v : node_attacks) {
    if (v < 0 || v >= inst.n()) throw ValidationError("node_attacks", "node out of range");
  }
  if (static_cast<int>(edge_attacks.size()) > inst.horizon()) throw ValidationError("edge_attacks", "too many periods");
  if (deviation_levels.size() != edge_attacks.size()) {
    throw ValidationError("deviation_levels", "must parallel edge_attacks");
  }
  for (std::size_t t = 0; t < edge_attacks.size(); ++t) {
    const std::string where = "edge_attacks[" + std::to_string(t) + "]";
    if (static_cast<int>(edge_attacks[t].size()) > inst.gamma_e()) throw ValidationError(where, "exceeds gamma_e");
    if (deviation_levels[t].size() != edge_attacks[t].size()) {
      throw ValidationError("deviation_levels[" + std::to_string(t) + "]", "must parallel edge_attacks");
    }
    std::set<EdgeId> edges(edge_attacks[t].begin(), edge_attacks[t].end());
    if (edges.size() != edge_attacks[t].size()) throw ValidationError(where, "duplicate edge");
    for (std::size_t i = 0; i < edge_attacks[t].size(); ++i) {
      const EdgeId e = edge_attacks[t][i];
      if (e < 0 || e >= inst.m()) throw ValidationError(where, "edge out of range");
      const auto& level = deviation_levels[t][i];
      if (level < 0 || level > inst.edge(e).period_caps[t]) {
        throw ValidationError("deviation_levels[" + std::to_string(t) + "]", "level outside period cap");
      }
    }
  }
}

NetworkInstance generate_instance(const GeneratorParams& params) {
  if (params.n < 2) throw InvalidArgument("generate_instance: n must be at least 2");
  if (params.density <= 0 || params.density > 1) throw InvalidArgument("generate_instance: density must be in (0,1]");
  if (params.d_max <= 0) throw InvalidArgument("generate_instance: d_max must be positive");
  if (params.horizon < 1) throw InvalidArgument("generate_instance: horizon must be positive");
  if (params.gamma_e < 0 || params.gamma_v < 0) throw InvalidArgument("generate_instance: budgets must be nonnegative");

  constexpr int kMaxAttempts = 1000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::mt19937_64 rng(mix_seed(params.seed, static_cast<std::uint64_t>(attempt)));

    std::vector<EdgeData> edges;
    for (NodeId u = 0; u < params.n; ++u) {
      for (NodeId v = u + 1; v < params.n; ++v) {
        if (draw_bernoulli(rng, params.density)) edges.push_back(EdgeData{u, v, 0, 0, {}});
      }
    }
    for (auto& e : edges) {
      e.nominal_length = draw_int(rng, 350, 600);
      const std::int64_t dev = draw_int(rng, 1, 250);
      e.max_deviation = dev;
      for (int t = 0; t < params.horizon; ++t) e.period_caps.emplace_back(draw_int(rng, 0, dev * 1000), 1000);
    }
    std::vector<NodeData> nodes;
    for (NodeId v = 0; v < params.n; ++v) {
      const std::int64_t cost = draw_int(rng, 250, 300);
      const std::int64_t dev = draw_int(rng, 1, 50);
      nodes.push_back(NodeData{v, cost, dev});
    }

    std::vector<std::pair<NodeId, NodeId>> usable;
    for (const auto& e : edges) {
      if (e.nominal_length <= params.d_max) usable.emplace_back(e.u, e.v);
    }
    if (!is_connected(params.n, usable)) continue;

    InstanceParams ip{params.d_max, params.gamma_e, params.gamma_v, params.horizon, params.seed};
    return NetworkInstance(std::move(nodes), std::move(edges), ip);
  }
  throw GenerationFailure("generate_instance: " + std::to_string(kMaxAttempts) + " consecutive disconnected draws");
}

// ---------------------------------------------------------------------------
// YAML instance document

namespace {

int line_of(const YAML::Node& node) { return node.Mark().line; }

void reject_unknown(const YAML::Node& map, std::initializer_list<std::string_view> allowed, const std::string& where) {
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ParseError("unknown field '" + key + "' in " + where, line_of(kv.first));
    }
  }
}

const YAML::Node require(const YAML::Node& map, const std::string& key, const std::string& where) {
  const YAML::Node child = map[key];
  if (!child) throw ParseError("missing field '" + key + "' in " + where, line_of(map));
  return child;
}

Rational as_rational(const YAML::Node& node, const std::string& field) {
  if (!node.IsScalar()) throw ParseError(field + ": expected a number", line_of(node));
  try {
    return Rational::parse(node.Scalar());
  } catch (const std::exception& ex) {
    throw ParseError(field + ": " + ex.what(), line_of(node));
  }
}

std::int64_t as_int(const YAML::Node& node, const std::string& field) {
  const Rational r = as_rational(node, field);
  if (!r.is_integer()) throw ParseError(field + ": expected an integer", line_of(node));
  return r.num();
}

}  // namespace

NetworkInstance load_instance(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& ex) {
    throw ParseError(ex.msg, ex.mark.line);
  }
  if (!root.IsMap()) throw ParseError("instance document must be a mapping", line_of(root));
  reject_unknown(root, {"meta", "nodes", "edges"}, "document");

  const YAML::Node meta = require(root, "meta", "document");
  if (!meta.IsMap()) throw ParseError("meta must be a mapping", line_of(meta));
  reject_unknown(meta, {"n", "d_max", "gamma_e", "gamma_v", "horizon", "seed"}, "meta");
  const auto n = as_int(require(meta, "n", "meta"), "meta.n");
  InstanceParams params;
  params.d_max = as_rational(require(meta, "d_max", "meta"), "meta.d_max");
  params.gamma_e = static_cast<int>(as_int(require(meta, "gamma_e", "meta"), "meta.gamma_e"));
  params.gamma_v = static_cast<int>(as_int(require(meta, "gamma_v", "meta"), "meta.gamma_v"));
  params.horizon = static_cast<int>(as_int(require(meta, "horizon", "meta"), "meta.horizon"));
  const YAML::Node seed = require(meta, "seed", "meta");
  try {
    params.seed = seed.as<std::uint64_t>();
  } catch (const YAML::Exception&) {
    throw ParseError("meta.seed: expected an unsigned 64-bit integer", line_of(seed));
  }

  const YAML::Node nodes_node = require(root, "nodes", "document");
  if (!nodes_node.IsSequence()) throw ParseError("nodes must be a sequence", line_of(nodes_node));
  std::vector<NodeData> nodes;
  for (std::size_t i = 0; i < nodes_node.size(); ++i) {
    const YAML::Node item = nodes_node[i];
    const std::string where = "nodes[" + std::to_string(i) + "]";
    if (!item.IsMap()) throw ParseError(where + " must be a mapping", line_of(item));
    reject_unknown(item, {"id", "cost", "dev"}, where);
    nodes.push_back(NodeData{static_cast<NodeId>(as_int(require(item, "id", where), where + ".id")),
                             as_rational(require(item, "cost", where), where + ".cost"),
                             as_rational(require(item, "dev", where), where + ".dev")});
  }
  if (static_cast<std::int64_t>(nodes.size()) != n) throw ValidationError("meta.n", "does not match node count");

  const YAML::Node edges_node = require(root, "edges", "document");
  if (!edges_node.IsSequence()) throw ParseError("edges must be a sequence", line_of(edges_node));
  std::vector<EdgeData> edges;
  for (std::size_t i = 0; i < edges_node.size(); ++i) {
    const YAML::Node item = edges_node[i];
    const std::string where = "edges[" + std::to_string(i) + "]";
    if (!item.IsMap()) throw ParseError(where + " must be a mapping", line_of(item));
    reject_unknown(item, {"u", "v", "len", "dev", "period_caps"}, where);
    EdgeData e;
    e.u = static_cast<NodeId>(as_int(require(item, "u", where), where + ".u"));
    e.v = static_cast<NodeId>(as_int(require(item, "v", where), where + ".v"));
    e.nominal_length = as_rational(require(item, "len", where), where + ".len");
    e.max_deviation = as_rational(require(item, "dev", where), where + ".dev");
    const YAML::Node caps = require(item, "period_caps", where);
    if (!caps.IsSequence()) throw ParseError(where + ".period_caps must be a sequence", line_of(caps));
    for (std::size_t t = 0; t < caps.size(); ++t) {
      e.period_caps.push_back(as_rational(caps[t], where + ".period_caps[" + std::to_string(t) + "]"));
    }
    edges.push_back(std::move(e));
  }
  return NetworkInstance(std::move(nodes), std::move(edges), params);
}

NetworkInstance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open instance file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_instance(buf.str());
}

std::string save_instance(const NetworkInstance& inst) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "meta" << YAML::Value << YAML::Flow << YAML::BeginMap;
  out << YAML::Key << "n" << YAML::Value << inst.n();
  out << YAML::Key << "d_max" << YAML::Value << inst.d_max().to_string();
  out << YAML::Key << "gamma_e" << YAML::Value << inst.gamma_e();
  out << YAML::Key << "gamma_v" << YAML::Value << inst.gamma_v();
  out << YAML::Key << "horizon" << YAML::Value << inst.horizon();
  out << YAML::Key << "seed" << YAML::Value << inst.seed();
  out << YAML::EndMap;

  out << YAML::Key << "nodes" << YAML::Value << YAML::BeginSeq;
  for (const auto& nd : inst.nodes()) {
    out << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value << nd.id;
    out << YAML::Key << "cost" << YAML::Value << nd.nominal_cost.to_string();
    out << YAML::Key << "dev" << YAML::Value << nd.max_deviation.to_string();
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "edges" << YAML::Value << YAML::BeginSeq;
  for (const auto& e : inst.edges()) {
    out << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "u" << YAML::Value << e.u;
    out << YAML::Key << "v" << YAML::Value << e.v;
    out << YAML::Key << "len" << YAML::Value << e.nominal_length.to_string();
    out << YAML::Key << "dev" << YAML::Value << e.max_deviation.to_string();
    out << YAML::Key << "period_caps" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (const auto& cap : e.period_caps) out << cap.to_string();
    out << YAML::EndSeq;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

void save_instance_file(const NetworkInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write instance file '" + path + "'");
  out << save_instance(inst);
}

}  // namespace rlp
