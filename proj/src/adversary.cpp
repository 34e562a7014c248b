#include "rlp/adversary.hpp"

#include <algorithm>

namespace rlp {

namespace {

// Selected nodes ordered by deviation, largest first, lowest id on ties.
std::vector<NodeId> by_deviation(const NodeSet& placement, const NetworkInstance& inst) {
  std::vector<NodeId> ids = placement.ids();
  std::stable_sort(ids.begin(), ids.end(), [&](NodeId a, NodeId b) {
    const auto& da = inst.node(a).max_deviation;
    const auto& db = inst.node(b).max_deviation;
    return da != db ? db < da : a < b;
  });
  return ids;
}

}  // namespace

WorstCaseCost worst_case_node_cost(const NodeSet& placement, const NetworkInstance& inst) {
  WorstCaseCost out;
  out.nominal_part = nominal_cost(placement, inst);
  const auto order = by_deviation(placement, inst);
  const auto k = std::min<std::size_t>(order.size(), static_cast<std::size_t>(inst.gamma_v()));
  for (std::size_t i = 0; i < k; ++i) {
    out.deviation_part += inst.node(order[i]).max_deviation;
    out.attacked_nodes.push_back(order[i]);
  }
  std::sort(out.attacked_nodes.begin(), out.attacked_nodes.end());
  out.total = out.nominal_part + out.deviation_part;
  return out;
}

Rational nominal_cost(const NodeSet& placement, const NetworkInstance& inst) {
  Rational sum;
  for (int v = placement.first(); v >= 0; v = placement.next(v + 1)) sum += inst.node(v).nominal_cost;
  return sum;
}

Rational full_cost(const NodeSet& placement, const NetworkInstance& inst) {
  Rational sum;
  for (int v = placement.first(); v >= 0; v = placement.next(v + 1)) {
    sum += inst.node(v).nominal_cost + inst.node(v).max_deviation;
  }
  return sum;
}

Rational scenario_cost(const NodeSet& placement, const NetworkInstance& inst, const Scenario& scenario) {
  Rational sum = nominal_cost(placement, inst);
  for (NodeId v : scenario.node_attacks) {
    if (placement.contains(v)) sum += inst.node(v).max_deviation;
  }
  return sum;
}

Rational DualCertificate::value(int gamma) const {
  Rational sum = Rational(gamma) * pi;
  for (const auto& l : lambda) sum += l;
  return sum;
}

DualCertificate dual_certificate(const NodeSet& placement, const NetworkInstance& inst) {
  DualCertificate cert;
  cert.lambda.assign(static_cast<std::size_t>(inst.n()), Rational(0));
  const auto order = by_deviation(placement, inst);
  const auto gamma = static_cast<std::size_t>(inst.gamma_v());
  // pi sits at the (gamma+1)-th largest deviation; only deviations above it earn a lambda.
  if (order.size() > gamma) cert.pi = inst.node(order[gamma]).max_deviation;
  for (NodeId v : order) {
    const Rational excess = inst.node(v).max_deviation - cert.pi;
    if (excess > 0) cert.lambda[static_cast<std::size_t>(v)] = excess;
  }
  return cert;
}

Scenario worst_case_scenario(const NodeSet& placement, const NetworkInstance& inst, const TransformedGraph& m) {
  Scenario s;
  s.node_attacks = worst_case_node_cost(placement, inst).attacked_nodes;
  if (m.regime() != Regime::kDynamicBudget || m.period_distances().empty() || m.budget() == 0) return s;

  const auto nominal = nominal_lengths(inst);
  const auto periods = m.period_distances().size();
  s.edge_attacks.resize(periods);
  s.deviation_levels.resize(periods);
  for (std::size_t t = 0; t < periods; ++t) {
    const auto& dist = m.period_distances()[t];
    NodeId best_p = -1;
    NodeId best_q = -1;
    Rational best;
    for (NodeId p = 0; p < m.n(); ++p) {
      const NodeSet& nb = m.neighbors(p);
      for (NodeId q = nb.next(p + 1); q >= 0; q = nb.next(q + 1)) {
        if (!placement.contains(p) && !placement.contains(q)) continue;
        const auto& d = dist.at(p, q);
        if (d && (best_p < 0 || best < *d)) {
          best = *d;
          best_p = p;
          best_q = q;
        }
      }
    }
    if (best_p < 0) continue;
    const auto& devs = m.period_deviations()[t];
    const RobustPath path = robust_path(inst, nominal, devs, m.budget(), best_p, best_q);
    for (EdgeId e : path.attacked) {
      s.edge_attacks[t].push_back(e);
      s.deviation_levels[t].push_back(devs[static_cast<std::size_t>(e)]);
    }
  }
  return s;
}

}  // namespace rlp
