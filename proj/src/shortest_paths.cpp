#include "rlp/shortest_paths.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>

#include "rlp/errors.hpp"

namespace rlp {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::kNominalUpper: return "nominal-upper";
    case Regime::kStaticBudget: return "static-budget";
    case Regime::kDynamicBudget: return "dynamic-budget";
    case Regime::kCustom: return "custom";
  }
  return "unknown";
}

namespace {

// Robust distances use the threshold decomposition: for a budget gamma,
//   min_path [ sum c_e + max_{|S|<=gamma} sum_{e in S} d_e ]
//     = min_{theta in {0} u {d_e}} [ gamma*theta + min_path sum (c_e + max(d_e - theta, 0)) ].
// Each theta is one nominal shortest-path problem.
//
// The engine runs on a value type T: int64 when every input shares a small
// common denominator (exact, scaled by that denominator), Rational otherwise.
template <class T>
class Engine {
 public:
  Engine(const NetworkInstance& inst, std::vector<T> nominal, std::vector<T> dev, int gamma)
      : inst_(inst), nominal_(std::move(nominal)), dev_(std::move(dev)), gamma_(gamma) {
    const T zero{0};
    if (gamma_ == 0 || dev_.empty()) {
      T top = zero;
      for (const auto& d : dev_) top = std::max(top, d);
      thresholds_.push_back(top);
    } else {
      thresholds_.push_back(zero);
      for (const auto& d : dev_) thresholds_.push_back(d);
      std::sort(thresholds_.begin(), thresholds_.end());
      thresholds_.erase(std::unique(thresholds_.begin(), thresholds_.end()), thresholds_.end());
    }
    dist_.resize(static_cast<std::size_t>(inst.n()));
    reached_.resize(static_cast<std::size_t>(inst.n()));
    parent_.resize(static_cast<std::size_t>(inst.n()));
  }

  [[nodiscard]] const std::vector<T>& thresholds() const { return thresholds_; }

  void lengths_for(const T& theta, std::vector<T>& len) const {
    len.resize(nominal_.size());
    for (std::size_t e = 0; e < nominal_.size(); ++e) {
      len[e] = dev_[e] > theta ? nominal_[e] + (dev_[e] - theta) : nominal_[e];
    }
  }

  [[nodiscard]] T attack_cost(const T& theta) const { return T(gamma_) * theta; }

  /// Label-setting from s; nodes beyond `bound` stay unreached.
  void run(NodeId s, const std::vector<T>& len, const std::optional<T>& bound) {
    std::fill(reached_.begin(), reached_.end(), 0);
    std::fill(parent_.begin(), parent_.end(), -1);
    using Item = std::pair<T, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    std::vector<char> done(static_cast<std::size_t>(inst_.n()), 0);
    dist_[static_cast<std::size_t>(s)] = T(0);
    reached_[static_cast<std::size_t>(s)] = 1;
    heap.emplace(T(0), s);
    while (!heap.empty()) {
      auto [d, v] = heap.top();
      heap.pop();
      const auto vi = static_cast<std::size_t>(v);
      if (done[vi]) continue;
      done[vi] = 1;
      for (EdgeId e : inst_.incident(v)) {
        const NodeId w = inst_.edge(e).other(v);
        const auto wi = static_cast<std::size_t>(w);
        if (done[wi]) continue;
        T nd = d + len[static_cast<std::size_t>(e)];
        if (bound && *bound < nd) continue;
        if (!reached_[wi] || nd < dist_[wi]) {
          dist_[wi] = nd;
          reached_[wi] = 1;
          parent_[wi] = e;
          heap.emplace(std::move(nd), w);
        }
      }
    }
  }

  [[nodiscard]] bool reached(NodeId v) const { return reached_[static_cast<std::size_t>(v)] != 0; }
  [[nodiscard]] const T& dist(NodeId v) const { return dist_[static_cast<std::size_t>(v)]; }
  [[nodiscard]] EdgeId parent(NodeId v) const { return parent_[static_cast<std::size_t>(v)]; }

  /// best[q] = min over thresholds of robust candidates from source s.
  void source_row(NodeId s, const std::optional<T>& cutoff, std::vector<std::optional<T>>& best) {
    best.assign(static_cast<std::size_t>(inst_.n()), std::nullopt);
    std::vector<T> len;
    for (const auto& theta : thresholds_) {
      const T base = attack_cost(theta);
      std::optional<T> bound;
      if (cutoff) {
        if (*cutoff < base) break;  // thresholds ascend, so every later candidate exceeds the cutoff
        bound = *cutoff - base;
      }
      lengths_for(theta, len);
      run(s, len, bound);
      for (NodeId q = 0; q < inst_.n(); ++q) {
        if (!reached(q)) continue;
        T cand = base + dist(q);
        auto& slot = best[static_cast<std::size_t>(q)];
        if (!slot || cand < *slot) slot = std::move(cand);
      }
    }
  }

 private:
  const NetworkInstance& inst_;
  std::vector<T> nominal_;
  std::vector<T> dev_;
  int gamma_;
  std::vector<T> thresholds_;
  std::vector<T> dist_;
  std::vector<char> reached_;
  std::vector<EdgeId> parent_;
};

// Common denominator scaling. Returns 0 when int64 arithmetic could overflow.
std::int64_t common_scale(std::span<const Rational> a, std::span<const Rational> b, const std::optional<Rational>& c,
                          int gamma) {
  __int128 scale = 1;
  auto absorb = [&](const Rational& r) {
    const __int128 g = std::gcd(static_cast<std::int64_t>(scale), r.den());
    scale = scale / g * r.den();
    return scale <= (__int128{1} << 40);
  };
  for (const auto& r : a) {
    if (!absorb(r)) return 0;
  }
  for (const auto& r : b) {
    if (!absorb(r)) return 0;
  }
  if (c && !absorb(*c)) return 0;

  __int128 total = 0;
  __int128 top_dev = 0;
  auto magnitude = [&](const Rational& r) {
    const __int128 v = static_cast<__int128>(r.num()) * (scale / r.den());
    return v < 0 ? -v : v;
  };
  for (const auto& r : a) total += magnitude(r);
  for (const auto& r : b) {
    total += magnitude(r);
    top_dev = std::max(top_dev, magnitude(r));
  }
  if (c) total += magnitude(*c);
  total += top_dev * (gamma + 1);
  if (total >= (__int128{1} << 62)) return 0;
  return static_cast<std::int64_t>(scale);
}

std::vector<std::int64_t> scaled(std::span<const Rational> values, std::int64_t scale) {
  std::vector<std::int64_t> out;
  out.reserve(values.size());
  for (const auto& r : values) out.push_back(r.num() * (scale / r.den()));
  return out;
}

void check_inputs(const NetworkInstance& inst, std::span<const Rational> nominal, std::span<const Rational> dev,
                  int gamma) {
  if (static_cast<int>(nominal.size()) != inst.m() || static_cast<int>(dev.size()) != inst.m()) {
    throw InvalidArgument("shortest paths: need exactly one length and one deviation per edge");
  }
  for (const auto& r : nominal) {
    if (r < 0) throw InvalidArgument("shortest paths: negative edge length");
  }
  for (const auto& r : dev) {
    if (r < 0) throw InvalidArgument("shortest paths: negative deviation");
  }
  if (gamma < 0) throw InvalidArgument("shortest paths: negative budget");
}

template <class T, class ToRational>
void fill_rows(Engine<T>& engine, const NetworkInstance& inst, const std::optional<T>& cutoff, const NodeSet* sources,
               DistanceMatrix& out, ToRational to_rational) {
  std::vector<std::optional<T>> row;
  for (NodeId s = 0; s < inst.n(); ++s) {
    if (sources && !sources->contains(s)) continue;
    engine.source_row(s, cutoff, row);
    for (NodeId q = 0; q < inst.n(); ++q) {
      if (q == s) continue;
      // Each unordered pair is owned by its lower endpoint unless only the other is recomputed.
      if (!sources && q < s) continue;
      const auto& v = row[static_cast<std::size_t>(q)];
      out.set(s, q, v ? Distance(to_rational(*v)) : std::nullopt);
    }
  }
}

DistanceMatrix robust_matrix(const NetworkInstance& inst, std::span<const Rational> nominal,
                             std::span<const Rational> deviations, int gamma, const std::optional<Rational>& cutoff,
                             Regime regime, const DistanceMatrix* base, const NodeSet* sources) {
  check_inputs(inst, nominal, deviations, gamma);
  DistanceMatrix out = base ? *base : DistanceMatrix(inst.n(), regime);
  if (const std::int64_t scale = common_scale(nominal, deviations, cutoff, gamma); scale > 0) {
    Engine<std::int64_t> engine(inst, scaled(nominal, scale), scaled(deviations, scale), gamma);
    std::optional<std::int64_t> c;
    if (cutoff) c = cutoff->num() * (scale / cutoff->den());
    fill_rows(engine, inst, c, sources, out, [scale](std::int64_t v) { return Rational(v, scale); });
  } else {
    Engine<Rational> engine(inst, {nominal.begin(), nominal.end()}, {deviations.begin(), deviations.end()}, gamma);
    fill_rows(engine, inst, cutoff, sources, out, [](const Rational& v) { return v; });
  }
  return out;
}

}  // namespace

TransformedGraph::TransformedGraph(Regime regime, std::vector<NodeSet> adjacency, DistanceMatrix distances)
    : regime_(regime), adjacency_(std::move(adjacency)), distances_(std::move(distances)) {}

TransformedGraph TransformedGraph::from_edges(int n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
  std::vector<NodeSet> adj(static_cast<std::size_t>(n), NodeSet(n));
  for (auto [a, b] : edges) {
    if (a == b || a < 0 || b < 0 || a >= n || b >= n) throw InvalidArgument("from_edges: bad edge");
    adj[static_cast<std::size_t>(a)].insert(b);
    adj[static_cast<std::size_t>(b)].insert(a);
  }
  return TransformedGraph(Regime::kCustom, std::move(adj), DistanceMatrix(n, Regime::kCustom));
}

int TransformedGraph::edge_count() const {
  int twice = 0;
  for (const auto& row : adjacency_) twice += row.size();
  return twice / 2;
}

std::vector<std::pair<NodeId, NodeId>> TransformedGraph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (NodeId p = 0; p < n(); ++p) {
    for (NodeId q = neighbors(p).next(p + 1); q >= 0; q = neighbors(p).next(q + 1)) out.emplace_back(p, q);
  }
  return out;
}

std::vector<std::pair<NodeId, NodeId>> TransformedGraph::ndc_pairs() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (NodeId p = 0; p < n(); ++p) {
    for (NodeId q = p + 1; q < n(); ++q) {
      if (!adjacent(p, q)) out.emplace_back(p, q);
    }
  }
  return out;
}

bool TransformedGraph::connected() const {
  if (n() <= 1) return true;
  NodeSet seen(n());
  NodeSet frontier(n());
  seen.insert(0);
  frontier.insert(0);
  while (!frontier.empty()) {
    NodeSet next(n());
    for (int v = frontier.first(); v >= 0; v = frontier.next(v + 1)) next |= neighbors(v);
    next.subtract(seen);
    seen |= next;
    frontier = std::move(next);
  }
  return seen.size() == n();
}

bool TransformedGraph::subgraph_of(const TransformedGraph& other) const {
  if (other.n() != n()) return false;
  for (NodeId v = 0; v < n(); ++v) {
    if (!neighbors(v).is_subset_of(other.neighbors(v))) return false;
  }
  return true;
}

DistanceMatrix nominal_shortest_paths(const NetworkInstance& inst, std::span<const Rational> lengths) {
  const std::vector<Rational> zero(static_cast<std::size_t>(inst.m()), Rational(0));
  return robust_matrix(inst, lengths, zero, 0, std::nullopt, Regime::kNominalUpper, nullptr, nullptr);
}

DistanceMatrix robust_all_pairs(const NetworkInstance& inst, std::span<const Rational> nominal,
                                std::span<const Rational> deviations, int gamma, const std::optional<Rational>& cutoff,
                                Regime regime) {
  return robust_matrix(inst, nominal, deviations, gamma, cutoff, regime, nullptr, nullptr);
}

DistanceMatrix robust_rows(const NetworkInstance& inst, std::span<const Rational> nominal,
                           std::span<const Rational> deviations, int gamma, const std::optional<Rational>& cutoff,
                           const DistanceMatrix& base, const NodeSet& sources) {
  return robust_matrix(inst, nominal, deviations, gamma, cutoff, base.regime(), &base, &sources);
}

namespace {

// Certifying paths from p: per target the first threshold (ascending) that
// attains the minimum, then the label-setting tree at that threshold.
template <class T, class ToRational>
std::vector<RobustPath> paths_from(Engine<T>& engine, const NetworkInstance& inst, std::span<const Rational> deviations,
                                   int gamma, NodeId p, const NodeSet& targets, const std::optional<T>& cutoff,
                                   ToRational to_rational) {
  const int n = inst.n();
  std::vector<RobustPath> out(static_cast<std::size_t>(n));
  std::vector<std::optional<T>> best(static_cast<std::size_t>(n));
  std::vector<std::size_t> best_theta(static_cast<std::size_t>(n), 0);
  std::vector<T> len;
  const auto& thresholds = engine.thresholds();
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    const T base = engine.attack_cost(thresholds[i]);
    std::optional<T> bound;
    if (cutoff) {
      if (*cutoff < base) break;
      bound = *cutoff - base;
    }
    engine.lengths_for(thresholds[i], len);
    engine.run(p, len, bound);
    for (int q = targets.first(); q >= 0; q = targets.next(q + 1)) {
      if (q == p || !engine.reached(q)) continue;
      T cand = base + engine.dist(q);
      auto& slot = best[static_cast<std::size_t>(q)];
      if (!slot || cand < *slot) {
        slot = std::move(cand);
        best_theta[static_cast<std::size_t>(q)] = i;
      }
    }
  }

  std::vector<std::size_t> needed;
  for (int q = targets.first(); q >= 0; q = targets.next(q + 1)) {
    if (q == p) {
      out[static_cast<std::size_t>(q)].value = Rational(0);
      out[static_cast<std::size_t>(q)].nodes = {p};
    } else if (best[static_cast<std::size_t>(q)]) {
      needed.push_back(best_theta[static_cast<std::size_t>(q)]);
    }
  }
  std::sort(needed.begin(), needed.end());
  needed.erase(std::unique(needed.begin(), needed.end()), needed.end());

  for (std::size_t i : needed) {
    engine.lengths_for(thresholds[i], len);
    engine.run(p, len, std::nullopt);
    for (int q = targets.first(); q >= 0; q = targets.next(q + 1)) {
      const auto qi = static_cast<std::size_t>(q);
      if (q == p || !best[qi] || best_theta[qi] != i) continue;
      RobustPath& path = out[qi];
      path.value = to_rational(*best[qi]);
      path.threshold = to_rational(thresholds[i]);
      for (NodeId v = q; v != p;) {
        const EdgeId e = engine.parent(v);
        path.edges.push_back(e);
        path.nodes.push_back(v);
        v = inst.edge(e).other(v);
      }
      path.nodes.push_back(p);
      std::reverse(path.nodes.begin(), path.nodes.end());
      std::reverse(path.edges.begin(), path.edges.end());

      std::vector<EdgeId> by_dev = path.edges;
      std::stable_sort(by_dev.begin(), by_dev.end(), [&](EdgeId a, EdgeId b) {
        const auto& da = deviations[static_cast<std::size_t>(a)];
        const auto& db = deviations[static_cast<std::size_t>(b)];
        return da != db ? db < da : a < b;
      });
      for (EdgeId e : by_dev) {
        if (static_cast<int>(path.attacked.size()) >= gamma) break;
        if (deviations[static_cast<std::size_t>(e)] > 0) path.attacked.push_back(e);
      }
      std::sort(path.attacked.begin(), path.attacked.end());
    }
  }
  return out;
}

}  // namespace

std::vector<RobustPath> robust_paths_from(const NetworkInstance& inst, std::span<const Rational> nominal,
                                          std::span<const Rational> deviations, int gamma, NodeId p,
                                          const NodeSet& targets, const std::optional<Rational>& cutoff) {
  check_inputs(inst, nominal, deviations, gamma);
  if (p < 0 || p >= inst.n()) throw InvalidArgument("robust_paths_from: node out of range");
  if (targets.universe() != inst.n()) throw InvalidArgument("robust_paths_from: target set has the wrong universe");
  if (const std::int64_t scale = common_scale(nominal, deviations, cutoff, gamma); scale > 0) {
    Engine<std::int64_t> engine(inst, scaled(nominal, scale), scaled(deviations, scale), gamma);
    std::optional<std::int64_t> c;
    if (cutoff) c = cutoff->num() * (scale / cutoff->den());
    return paths_from(engine, inst, deviations, gamma, p, targets, c,
                      [scale](std::int64_t v) { return Rational(v, scale); });
  }
  Engine<Rational> engine(inst, {nominal.begin(), nominal.end()}, {deviations.begin(), deviations.end()}, gamma);
  return paths_from(engine, inst, deviations, gamma, p, targets, cutoff, [](const Rational& v) { return v; });
}

RobustPath robust_path(const NetworkInstance& inst, std::span<const Rational> nominal,
                       std::span<const Rational> deviations, int gamma, NodeId p, NodeId q) {
  if (p < 0 || q < 0 || p >= inst.n() || q >= inst.n()) throw InvalidArgument("robust_path: node out of range");
  NodeSet target(inst.n());
  target.insert(q);
  return std::move(robust_paths_from(inst, nominal, deviations, gamma, p, target)[static_cast<std::size_t>(q)]);
}

std::vector<Rational> nominal_lengths(const NetworkInstance& inst) {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(inst.m()));
  for (const auto& e : inst.edges()) out.push_back(e.nominal_length);
  return out;
}

std::vector<Rational> max_deviations(const NetworkInstance& inst) {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(inst.m()));
  for (const auto& e : inst.edges()) out.push_back(e.max_deviation);
  return out;
}

PeriodDeviations period_caps(const NetworkInstance& inst) {
  PeriodDeviations out(static_cast<std::size_t>(inst.horizon()));
  for (int t = 0; t < inst.horizon(); ++t) {
    for (const auto& e : inst.edges()) out[static_cast<std::size_t>(t)].push_back(e.period_caps[static_cast<std::size_t>(t)]);
  }
  return out;
}

Distance robust_sp_static(const NetworkInstance& inst, NodeId p, NodeId q, int gamma) {
  if (p == q) throw InvalidArgument("robust_sp_static: endpoints must differ");
  return robust_path(inst, nominal_lengths(inst), max_deviations(inst), gamma, p, q).value;
}

Distance robust_sp_dynamic(const NetworkInstance& inst, NodeId p, NodeId q) {
  if (p == q) throw InvalidArgument("robust_sp_dynamic: endpoints must differ");
  const auto nominal = nominal_lengths(inst);
  Distance worst = Rational(0);
  for (const auto& devs : period_caps(inst)) {
    const Distance d = robust_path(inst, nominal, devs, inst.gamma_e(), p, q).value;
    if (!d) return std::nullopt;
    worst = max(*worst, *d);
  }
  return worst;
}

TransformedGraph combine_periods(const NetworkInstance& inst, const std::vector<DistanceMatrix>& per_period,
                                 Regime regime) {
  const int n = inst.n();
  DistanceMatrix dist(n, regime);
  std::vector<NodeSet> adj(static_cast<std::size_t>(n), NodeSet(n));
  for (NodeId p = 0; p < n; ++p) {
    for (NodeId q = p + 1; q < n; ++q) {
      Distance worst = Rational(0);
      for (const auto& m : per_period) {
        const auto& d = m.at(p, q);
        if (!d) {
          worst.reset();
          break;
        }
        worst = max(*worst, *d);
      }
      if (worst && *worst <= inst.d_max()) {
        adj[static_cast<std::size_t>(p)].insert(q);
        adj[static_cast<std::size_t>(q)].insert(p);
        dist.set(p, q, worst);
      } else {
        dist.set(p, q, std::nullopt);
      }
    }
  }
  return TransformedGraph(regime, std::move(adj), std::move(dist));
}

TransformedGraph transformed_graph_from(const NetworkInstance& inst, const PeriodDeviations& devs, Regime regime) {
  const auto nominal = nominal_lengths(inst);
  std::vector<DistanceMatrix> per_period;
  per_period.reserve(devs.size());
  for (const auto& d : devs) {
    per_period.push_back(robust_all_pairs(inst, nominal, d, inst.gamma_e(), inst.d_max(), regime));
  }
  TransformedGraph g = combine_periods(inst, per_period, regime);
  g.attach_periods(std::move(per_period), devs, inst.gamma_e());
  return g;
}

TransformedGraph build_transformed_graph(const NetworkInstance& inst, Regime regime) {
  TransformedGraph g;
  switch (regime) {
    case Regime::kNominalUpper: {
      std::vector<Rational> upper;
      for (const auto& e : inst.edges()) upper.push_back(e.nominal_length + e.max_deviation);
      const std::vector<Rational> zero(static_cast<std::size_t>(inst.m()), Rational(0));
      std::vector<DistanceMatrix> single{robust_all_pairs(inst, upper, zero, 0, inst.d_max(), regime)};
      g = combine_periods(inst, single, regime);
      g.attach_periods(std::move(single), {zero}, 0);
      break;
    }
    case Regime::kStaticBudget:
      g = transformed_graph_from(inst, {max_deviations(inst)}, regime);
      break;
    case Regime::kDynamicBudget:
      g = transformed_graph_from(inst, period_caps(inst), regime);
      break;
    case Regime::kCustom:
      throw InvalidArgument("build_transformed_graph: custom regime needs explicit deviations");
  }
  if (!g.connected()) {
    throw InfeasibleInstance("transformed graph (" + to_string(regime) + ") is disconnected; no placement can connect all nodes");
  }
  return g;
}

}  // namespace rlp
