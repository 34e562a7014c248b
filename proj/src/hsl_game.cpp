#include "rlp/hsl_game.hpp"

#include <algorithm>
#include <map>

#include "rlp/adversary.hpp"
#include "rlp/errors.hpp"

namespace rlp {

namespace {

using Seconds = std::chrono::duration<double>;

// Work shared by every (e,t) sensitivity of one state.
class SensitivityContext {
 public:
  SensitivityContext(const GameState& state, const NetworkInstance& inst, const HslOptions& options)
      : state_(state), inst_(inst), options_(options), nominal_(nominal_lengths(inst)),
        m_(seeker_graph(state, inst)), cost_(worst_case_cost_fn(inst)) {
    if (state.k > 0 && state.placement.selected.universe() == inst.n()) {
      current_ = state.placement;
    } else {
      current_ = seeker_step(state, inst, options);
    }
  }

  Rational at(EdgeId e, int t) {
    const auto ti = static_cast<std::size_t>(t);
    const auto ei = static_cast<std::size_t>(e);
    const Rational& d = state_.deviations[ti][ei];
    const Rational& top = inst_.edge(e).max_deviation;
    if (!(d < top)) return Rational(0);
    const Rational diff = cost_at_cap(e, t) - current_.objective;
    if (diff != 0) return diff / (top - d);
    return criticality(e, t);
  }

 private:
  // Certifying path of every M-edge pair in period t, indexed by the edges it uses.
  struct Certificates {
    std::vector<std::vector<std::pair<NodeId, NodeId>>> by_edge;
    int total = 0;
  };

  const Certificates& certificates(int t) {
    auto it = certs_.find(t);
    if (it != certs_.end()) return it->second;
    const auto ti = static_cast<std::size_t>(t);
    Certificates c;
    c.by_edge.resize(static_cast<std::size_t>(inst_.m()));
    for (NodeId p = 0; p < inst_.n(); ++p) {
      NodeSet later = m_.neighbors(p);
      for (NodeId q = later.first(); q >= 0 && q < p; q = later.next(q + 1)) later.erase(q);
      if (later.empty()) continue;
      const auto paths =
          robust_paths_from(inst_, nominal_, state_.deviations[ti], inst_.gamma_e(), p, later, inst_.d_max());
      for (NodeId q = later.first(); q >= 0; q = later.next(q + 1)) {
        const RobustPath& path = paths[static_cast<std::size_t>(q)];
        if (!path.value) continue;
        ++c.total;
        for (EdgeId f : path.edges) c.by_edge[static_cast<std::size_t>(f)].emplace_back(p, q);
      }
    }
    return certs_.emplace(t, std::move(c)).first->second;
  }

  // Optimal cost after raising d_e^t to d_e. Only pairs certified through e can
  // move, and each by at most the raise, so only those within it of d_max are rechecked.
  Rational cost_at_cap(EdgeId e, int t) {
    if (inst_.gamma_e() == 0) return current_.objective;
    const auto ti = static_cast<std::size_t>(t);
    const Rational delta = inst_.edge(e).max_deviation - state_.deviations[ti][static_cast<std::size_t>(e)];
    const Rational limit = inst_.d_max() - delta;
    const DistanceMatrix& base = m_.period_distances()[ti];

    std::vector<std::pair<NodeId, NodeId>> at_risk;
    NodeSet sources(inst_.n());
    for (auto [p, q] : certificates(t).by_edge[static_cast<std::size_t>(e)]) {
      const auto& d = base.at(p, q);
      if (d && limit < *d) {
        at_risk.emplace_back(p, q);
        sources.insert(p);
      }
    }
    if (at_risk.empty()) return current_.objective;

    std::vector<Rational> raised = state_.deviations[ti];
    raised[static_cast<std::size_t>(e)] = inst_.edge(e).max_deviation;
    std::vector<std::pair<NodeId, NodeId>> dropped;
    for (int p = sources.first(); p >= 0; p = sources.next(p + 1)) {
      NodeSet targets(inst_.n());
      for (auto [a, b] : at_risk) {
        if (a == p) targets.insert(b);
      }
      const auto paths = robust_paths_from(inst_, nominal_, raised, inst_.gamma_e(), p, targets, inst_.d_max());
      for (int q = targets.first(); q >= 0; q = targets.next(q + 1)) {
        if (!paths[static_cast<std::size_t>(q)].value) dropped.emplace_back(p, q);
      }
    }
    if (dropped.empty()) return current_.objective;

    std::vector<std::pair<NodeId, NodeId>> kept;
    for (auto pq : m_.edges()) {
      if (std::find(dropped.begin(), dropped.end(), pq) == dropped.end()) kept.push_back(pq);
    }
    const TransformedGraph raised_m = TransformedGraph::from_edges(inst_.n(), kept);
    // A raise that disconnects M would end the game; it carries no cost signal.
    if (!raised_m.connected()) return current_.objective;
    if (verify_placement(raised_m, current_.selected).ok) return current_.objective;
    SearchOptions search;
    search.deadline = options_.deadline;
    return solve_rlp_exact(raised_m, cost_, preprocess(raised_m), search).objective;
  }

  Rational criticality(EdgeId e, int t) {
    const Certificates& c = certificates(t);
    if (c.total == 0) return Rational(0);
    return Rational(static_cast<std::int64_t>(c.by_edge[static_cast<std::size_t>(e)].size()), c.total);
  }

  const GameState& state_;
  const NetworkInstance& inst_;
  const HslOptions& options_;
  std::vector<Rational> nominal_;
  TransformedGraph m_;
  CostFn cost_;
  Placement current_;
  std::map<int, Certificates> certs_;
};

}  // namespace

GameState initial_state(const NetworkInstance& inst, const HslOptions& options) {
  if (!(0 < options.eta_d)) throw InvalidArgument("play_hsl: eta_d must be positive");
  GameState s;
  s.eta_d = options.eta_d;
  s.deviations = options.start == HslOptions::Start::kPeriodCaps
                     ? period_caps(inst)
                     : PeriodDeviations(static_cast<std::size_t>(inst.horizon()), max_deviations(inst));
  s.placement.selected = NodeSet(inst.n());
  return s;
}

TransformedGraph seeker_graph(const GameState& state, const NetworkInstance& inst) {
  TransformedGraph m = transformed_graph_from(inst, state.deviations, Regime::kCustom);
  if (!m.connected()) throw GameInfeasible("hide-and-seek: no connected placement survives every period");
  return m;
}

Placement seeker_step(const GameState& state, const NetworkInstance& inst, const HslOptions& options) {
  const TransformedGraph m = seeker_graph(state, inst);
  if (options.complete_shortcut && m.complete()) return Placement{NodeSet(inst.n()), Rational(0)};
  SearchOptions search;
  search.deadline = options.deadline;
  return solve_rlp_exact(m, worst_case_cost_fn(inst), preprocess(m), search);
}

Rational estimate_sensitivity(const GameState& state, const NetworkInstance& inst, EdgeId e, int t) {
  if (e < 0 || e >= inst.m() || t < 0 || t >= static_cast<int>(state.deviations.size())) {
    throw InvalidArgument("estimate_sensitivity: edge or period out of range");
  }
  const HslOptions options;
  SensitivityContext ctx(state, inst, options);
  return ctx.at(e, t);
}

Sensitivities estimate_sensitivities(const GameState& state, const NetworkInstance& inst, const HslOptions& options) {
  SensitivityContext ctx(state, inst, options);
  Sensitivities out(state.deviations.size());
  for (std::size_t t = 0; t < state.deviations.size(); ++t) {
    for (EdgeId e = 0; e < inst.m(); ++e) {
      if (options.deadline && Clock::now() > *options.deadline) {
        throw TimeLimitExceeded("play_hsl: time limit reached");
      }
      out[t].push_back(ctx.at(e, static_cast<int>(t)));
    }
  }
  return out;
}

Rational hider_update(const Rational& d, const Rational& eta, const Rational& s, const Rational& cap,
                      std::int64_t grid) {
  const Rational step = max(Rational(0), min(cap, d + eta * s));
  if (grid <= 0) return step;
  const Rational floored = step.floor_to_grid(grid);
  // Flooring never undoes an upward step.
  if (!(s < 0) && floored < d) return min(d, cap);
  return max(Rational(0), floored);
}

GameState hider_step(const GameState& state, const NetworkInstance& inst, const Sensitivities& s, std::int64_t grid) {
  if (s.size() != state.deviations.size()) throw InvalidArgument("hider_step: sensitivity shape mismatch");
  GameState next = state;
  for (std::size_t t = 0; t < state.deviations.size(); ++t) {
    if (s[t].size() != state.deviations[t].size()) throw InvalidArgument("hider_step: sensitivity shape mismatch");
    for (EdgeId e = 0; e < inst.m(); ++e) {
      const auto ei = static_cast<std::size_t>(e);
      next.deviations[t][ei] =
          hider_update(state.deviations[t][ei], state.eta_d, s[t][ei], inst.edge(e).max_deviation, grid);
    }
  }
  return next;
}

SolveReport play_hsl(const NetworkInstance& inst, const HslOptions& options) {
  const auto start = Clock::now();
  if (!(0 < options.epsilon)) throw InvalidArgument("play_hsl: epsilon must be positive");
  if (options.max_iter < 1) throw InvalidArgument("play_hsl: max_iter must be at least 1");
  GameState state = initial_state(inst, options);

  SolveReport r;
  r.method = Method::kHSL;
  r.converged = false;
  for (int k = 1; k <= options.max_iter; ++k) {
    state.placement = seeker_step(state, inst, options);
    state.k = k;
    const Rational loss = state.placement.objective;
    state.loss_history.push_back(loss);
    r.iterations = k;
    if (state.loss_history.size() >= 2) {
      const Rational prev = state.loss_history[state.loss_history.size() - 2];
      const Rational diff = loss > prev ? loss - prev : prev - loss;
      if (diff < options.epsilon) {
        r.converged = true;
        r.trace.push_back({k, loss, loss, state.placement.selected.to_string(), loss, 0});
        break;
      }
    }
    if (k == options.max_iter) {
      r.trace.push_back({k, loss, loss, state.placement.selected.to_string(), loss, 0});
      break;
    }
    const Sensitivities s = estimate_sensitivities(state, inst, options);
    GameState next = hider_step(state, inst, s, options.grid);
    int changed = 0;
    for (std::size_t t = 0; t < next.deviations.size(); ++t) {
      for (std::size_t e = 0; e < next.deviations[t].size(); ++e) {
        if (next.deviations[t][e] != state.deviations[t][e]) ++changed;
      }
    }
    r.trace.push_back({k, loss, loss, state.placement.selected.to_string(), loss, changed});
    state = std::move(next);
  }
  r.placement = state.placement;
  r.objective = state.placement.objective;
  r.lower_bound = r.upper_bound = r.objective;
  r.deviations = state.deviations;
  r.loss_history = state.loss_history;
  r.scenarios_or_cuts = 0;
  for (const auto& t : r.trace) r.scenarios_or_cuts += t.changed;
  r.wall_time = Seconds(Clock::now() - start);
  return r;
}

}  // namespace rlp
