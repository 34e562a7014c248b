#include "rlp/robust_methods.hpp"

#include <algorithm>
#include <cctype>
#include <memory>

#include "rlp/errors.hpp"

namespace rlp {

std::string to_string(Method m) {
  switch (m) {
    case Method::kDWC: return "DWC";
    case Method::kRSB: return "RSB";
    case Method::kRDB: return "RDB";
    case Method::kCCG: return "CCG";
    case Method::kBDC: return "BDC";
    case Method::kIRO: return "IRO";
    case Method::kHSL: return "HSL";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  for (Method m : {Method::kDWC, Method::kRSB, Method::kRDB, Method::kCCG, Method::kBDC, Method::kIRO, Method::kHSL}) {
    std::string id = to_string(m);
    std::transform(id.begin(), id.end(), id.begin(), [](unsigned char c) { return std::tolower(c); });
    if (id == lower) return m;
  }
  throw InvalidArgument("unknown method '" + std::string(name) + "'");
}

bool ScenarioPool::add(Scenario s) {
  if (contains(s)) return false;
  scenarios_.push_back(std::move(s));
  return true;
}

bool ScenarioPool::contains(const Scenario& s) const {
  return std::find(scenarios_.begin(), scenarios_.end(), s) != scenarios_.end();
}

CostFn worst_case_cost_fn(const NetworkInstance& inst) {
  // Nodes by deviation, largest first, so the top-gamma members of any set are found in one pass.
  auto order = std::make_shared<std::vector<NodeId>>();
  for (NodeId v = 0; v < inst.n(); ++v) order->push_back(v);
  std::stable_sort(order->begin(), order->end(), [&inst](NodeId a, NodeId b) {
    return inst.node(b).max_deviation < inst.node(a).max_deviation;
  });
  return [&inst, order](const NodeSet& s) {
    Rational sum;
    int budget = inst.gamma_v();
    for (NodeId v : *order) {
      if (!s.contains(v)) continue;
      sum += inst.node(v).nominal_cost;
      if (budget > 0) {
        sum += inst.node(v).max_deviation;
        --budget;
      }
    }
    return sum;
  };
}

namespace {

using Seconds = std::chrono::duration<double>;

void check_deadline(const SolveOptions& options, const char* where) {
  if (options.deadline && Clock::now() > *options.deadline) {
    throw TimeLimitExceeded(std::string(where) + ": time limit reached");
  }
}

SearchOptions search_options(const SolveOptions& options) {
  SearchOptions s;
  s.deadline = options.deadline;
  return s;
}

Rational epsilon_or(const SolveOptions& options, const Rational& fallback) {
  const Rational eps = options.epsilon.value_or(fallback);
  if (eps < 0) throw InvalidArgument("epsilon must be nonnegative");
  return eps;
}

// Single master solve on a fixed M.
SolveReport monolithic(Method method, const NetworkInstance& inst, const TransformedGraph& m, const CostFn& cost,
                       const SolveOptions& options, Clock::time_point start) {
  SolveReport r;
  r.method = method;
  r.iterations = 1;
  if (options.complete_shortcut && m.complete()) {
    r.placement = Placement{NodeSet(inst.n()), Rational(0)};
  } else {
    r.placement = solve_rlp_exact(m, cost, preprocess(m), search_options(options));
  }
  r.objective = r.placement.objective;
  r.lower_bound = r.upper_bound = r.objective;
  r.trace.push_back({1, r.objective, r.objective, r.placement.selected.to_string(), r.objective, 0});
  r.wall_time = Seconds(Clock::now() - start);
  return r;
}

// Outer boundary of a node set: neighbors of its members that lie outside it.
NodeSet boundary(const TransformedGraph& m, const NodeSet& c) {
  NodeSet out(m.n());
  for (int v = c.first(); v >= 0; v = c.next(v + 1)) out |= m.neighbors(v);
  return out.subtract(c);
}

// A Benders feasibility cut in implication form: if the placement meets
// `side` and `far`, it must meet `through`. A no-good has side = far = V.
struct Cut {
  NodeSet side;
  NodeSet far;
  NodeSet through;

  [[nodiscard]] bool satisfied(const NodeSet& s) const {
    return !s.intersects(side) || !s.intersects(far) || s.intersects(through);
  }
};

std::vector<Cut> feasibility_cuts(const TransformedGraph& m, const NodeSet& rejected, BendersCut kind) {
  const int n = m.n();
  if (kind == BendersCut::kNoGood) {
    return {Cut{NodeSet::full(n), NodeSet::full(n), rejected.complement()}};
  }
  std::vector<Cut> cuts;
  NodeSet left = rejected;
  while (!left.empty()) {
    NodeSet comp(n);
    comp.insert(left.first());
    for (NodeSet grow = comp;;) {
      NodeSet next = boundary(m, grow) & rejected;
      next.subtract(comp);
      if (next.empty()) break;
      comp |= next;
      grow = std::move(next);
    }
    left.subtract(comp);
    NodeSet through = boundary(m, comp);
    NodeSet far = (comp | through).complement();
    cuts.push_back(Cut{comp, std::move(far), std::move(through)});
  }
  return cuts;
}

bool dominating(const TransformedGraph& m, const NodeSet& s) {
  for (NodeId v = 0; v < m.n(); ++v) {
    if (!s.contains(v) && !m.neighbors(v).intersects(s)) return false;
  }
  return true;
}

bool relatively_close(const Rational& now, const Rational& before, const Rational& eps) {
  const Rational diff = now > before ? now - before : before - now;
  if (before == 0) return diff <= eps;
  const Rational scale = before < 0 ? -before : before;
  return diff <= eps * scale;
}

}  // namespace

SolveReport solve_dwc(const NetworkInstance& inst, const SolveOptions& options) {
  const auto start = Clock::now();
  const TransformedGraph m = build_transformed_graph(inst, Regime::kNominalUpper);
  CostFn cost = [&inst](const NodeSet& s) { return full_cost(s, inst); };
  return monolithic(Method::kDWC, inst, m, cost, options, start);
}

SolveReport solve_rsb(const NetworkInstance& inst, const SolveOptions& options) {
  const auto start = Clock::now();
  const TransformedGraph m = build_transformed_graph(inst, Regime::kStaticBudget);
  return monolithic(Method::kRSB, inst, m, worst_case_cost_fn(inst), options, start);
}

SolveReport solve_rdb(const NetworkInstance& inst, const SolveOptions& options) {
  const auto start = Clock::now();
  const TransformedGraph m = build_transformed_graph(inst, Regime::kDynamicBudget);
  return monolithic(Method::kRDB, inst, m, worst_case_cost_fn(inst), options, start);
}

SolveReport solve_ccg(const NetworkInstance& inst, const SolveOptions& options) {
  const auto start = Clock::now();
  const Rational eps = epsilon_or(options, Rational(0));
  const TransformedGraph m = build_transformed_graph(inst, Regime::kDynamicBudget);
  const WarmStart warm = preprocess(m);
  const CostFn worst = worst_case_cost_fn(inst);

  SolveReport r;
  r.method = Method::kCCG;
  if (options.complete_shortcut && m.complete()) {
    return monolithic(Method::kCCG, inst, m, worst, options, start);
  }
  ScenarioPool pool;
  std::optional<Rational> upper;
  const std::size_t cap = static_cast<std::size_t>(std::max(1, options.max_iter));
  for (int it = 1;; ++it) {
    check_deadline(options, "solve_ccg");
    CostFn master;
    if (pool.empty()) {
      master = [&inst](const NodeSet& s) { return nominal_cost(s, inst); };
    } else {
      master = [&inst, &pool](const NodeSet& s) {
        Rational worst_seen = scenario_cost(s, inst, pool.scenarios().front());
        for (const auto& sc : pool.scenarios()) worst_seen = max(worst_seen, scenario_cost(s, inst, sc));
        return worst_seen;
      };
    }
    const Placement p = solve_rlp_exact(m, master, warm, search_options(options));
    const Rational sp = worst(p.selected);
    r.lower_bound = it == 1 ? p.objective : max(r.lower_bound, p.objective);
    if (!upper || sp < *upper) upper = sp;
    r.iterations = it;

    const bool done = !(p.objective + eps < sp);
    int added = 0;
    if (!done) {
      if (!pool.add(worst_case_scenario(p.selected, inst, m))) {
        throw NonconvergenceError("solve_ccg: separation returned a scenario already in the pool");
      }
      added = 1;
    }
    r.trace.push_back({it, r.lower_bound, *upper, p.selected.to_string(), p.objective, added});
    if (done) {
      r.placement = Placement{p.selected, sp};
      break;
    }
    if (pool.size() > cap + static_cast<std::size_t>(inst.n()) * static_cast<std::size_t>(inst.n())) {
      throw NonconvergenceError("solve_ccg: scenario pool exceeded its safety cap");
    }
  }
  r.objective = r.placement.objective;
  r.upper_bound = r.objective;
  r.gap = r.upper_bound - r.lower_bound;
  r.scenarios_or_cuts = static_cast<int>(pool.size());
  r.wall_time = Seconds(Clock::now() - start);
  return r;
}

SolveReport solve_benders(const NetworkInstance& inst, const SolveOptions& options) {
  const auto start = Clock::now();
  const Rational eps = epsilon_or(options, Rational(0));
  const TransformedGraph m = build_transformed_graph(inst, Regime::kDynamicBudget);
  const WarmStart warm = preprocess(m);
  const CostFn worst = worst_case_cost_fn(inst);
  if (options.complete_shortcut && m.complete()) {
    return monolithic(Method::kBDC, inst, m, worst, options, start);
  }

  SolveReport r;
  r.method = Method::kBDC;
  std::vector<Cut> cuts;
  SearchOptions search = search_options(options);
  search.connectivity_pruning = false;
  search.feasible = [&](const NodeSet& s) {
    if (!dominating(m, s)) return false;
    return std::all_of(cuts.begin(), cuts.end(), [&s](const Cut& c) { return c.satisfied(s); });
  };
  const double cap = inst.n() >= 62 ? 4.6e18 : static_cast<double>(std::uint64_t{1} << inst.n());
  for (int it = 1;; ++it) {
    check_deadline(options, "solve_benders");
    const Placement p = solve_rlp_exact(m, worst, warm, search);
    r.iterations = it;
    r.lower_bound = p.objective;
    const VerifyResult check = verify_placement(m, p.selected);
    if (check.ok) {
      r.placement = p;
      r.trace.push_back({it, p.objective, p.objective, p.selected.to_string(), p.objective, 0});
      break;
    }
    auto fresh = feasibility_cuts(m, p.selected, options.benders_cut);
    r.trace.push_back({it, p.objective, Rational(0), p.selected.to_string(), p.objective,
                       static_cast<int>(fresh.size())});
    for (auto& c : fresh) cuts.push_back(std::move(c));
    if (static_cast<double>(cuts.size()) > cap) {
      throw NonconvergenceError("solve_benders: cut pool exceeded 2^n");
    }
  }
  // The subproblem carries no flow cost, so a feasible master placement closes the gap exactly.
  r.objective = r.placement.objective;
  r.upper_bound = r.objective;
  r.gap = r.upper_bound - r.lower_bound;
  if (eps < r.gap) throw NonconvergenceError("solve_benders: gap above epsilon at termination");
  r.scenarios_or_cuts = static_cast<int>(cuts.size());
  r.wall_time = Seconds(Clock::now() - start);
  return r;
}

SolveReport solve_iro(const NetworkInstance& inst, const SolveOptions& options) {
  const auto start = Clock::now();
  const Rational eps = options.epsilon.value_or(Rational(1, 1000000));
  if (!(0 < eps)) throw InvalidArgument("solve_iro: epsilon must be positive");
  const TransformedGraph target = build_transformed_graph(inst, Regime::kDynamicBudget);
  const CostFn worst = worst_case_cost_fn(inst);
  const auto nominal = nominal_lengths(inst);
  const PeriodDeviations caps = period_caps(inst);
  const auto periods = caps.size();

  SolveReport r;
  r.method = Method::kIRO;
  r.converged = false;
  PeriodDeviations emphasis(periods, std::vector<Rational>(static_cast<std::size_t>(inst.m()), Rational(0)));
  std::optional<Rational> previous;
  for (int it = 1; it <= options.max_iter; ++it) {
    check_deadline(options, "solve_iro");
    const TransformedGraph mk = transformed_graph_from(inst, emphasis, Regime::kCustom);
    Placement p;
    if (options.complete_shortcut && mk.complete()) {
      p = Placement{NodeSet(inst.n()), Rational(0)};
    } else {
      p = solve_rlp_exact(mk, worst, preprocess(mk), search_options(options));
    }
    const Rational z = p.objective;

    // Attacks that break the placement: every M^(k) edge it relies on that
    // fails in some period has its currently certifying path attacked at caps.
    int pins = 0;
    const bool placement_ok = (options.complete_shortcut && target.complete() && p.selected.empty()) ||
                              verify_placement(target, p.selected).ok;
    if (!placement_ok) {
      for (auto [a, b] : mk.edges()) {
        if (target.adjacent(a, b)) continue;
        if (!p.selected.contains(a) && !p.selected.contains(b)) continue;
        for (std::size_t t = 0; t < periods; ++t) {
          const auto& dt = target.period_distances()[t].at(a, b);
          if (dt && *dt <= inst.d_max()) continue;
          const RobustPath path = robust_path(inst, nominal, emphasis[t], inst.gamma_e(), a, b);
          std::vector<EdgeId> by_cap = path.edges;
          std::stable_sort(by_cap.begin(), by_cap.end(), [&](EdgeId x, EdgeId y) {
            return caps[t][static_cast<std::size_t>(y)] < caps[t][static_cast<std::size_t>(x)];
          });
          const auto k = std::min<std::size_t>(by_cap.size(), static_cast<std::size_t>(inst.gamma_e()));
          for (std::size_t i = 0; i < k; ++i) {
            auto& slot = emphasis[t][static_cast<std::size_t>(by_cap[i])];
            if (slot != caps[t][static_cast<std::size_t>(by_cap[i])]) {
              slot = caps[t][static_cast<std::size_t>(by_cap[i])];
              ++pins;
            }
          }
        }
      }
      if (pins == 0) throw NonconvergenceError("solve_iro: placement infeasible but no attack left to pin");
    }

    r.iterations = it;
    r.scenarios_or_cuts += pins;
    r.placement = p;
    r.trace.push_back({it, z, z, p.selected.to_string(), z, pins});
    if (previous && pins == 0 && relatively_close(z, *previous, eps)) {
      r.converged = true;
      break;
    }
    previous = z;
  }
  r.objective = r.placement.objective;
  r.lower_bound = r.upper_bound = r.objective;
  r.wall_time = Seconds(Clock::now() - start);
  return r;
}

}  // namespace rlp
