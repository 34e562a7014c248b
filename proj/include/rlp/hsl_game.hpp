#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rlp/instance.hpp"
#include "rlp/rlp_core.hpp"
#include "rlp/robust_methods.hpp"
#include "rlp/shortest_paths.hpp"

namespace rlp {

struct HslOptions {
  Rational eta_d{1, 10};
  Rational epsilon{1, 1000000};
  int max_iter = 10;
  enum class Start {
    kPeriodCaps,    // d_e^{t,(0)} = realized period cap
    kMaxDeviation,  // d_e^{t,(0)} = d_e, which leaves the hider no room to move
  } start = Start::kPeriodCaps;
  /// Updated deviations are floored to multiples of 1/grid; 0 keeps them exact.
  std::int64_t grid = 1000;
  bool complete_shortcut = false;
  std::optional<Clock::time_point> deadline;
};

struct GameState {
  int k = 0;
  PeriodDeviations deviations;  // deviations[t][e], within [0, d_e]
  Placement placement;
  Rational eta_d{1, 10};
  std::vector<Rational> loss_history;
};

/// Per-edge, per-period sensitivity surrogates, indexed like the deviations.
using Sensitivities = PeriodDeviations;

GameState initial_state(const NetworkInstance& inst, const HslOptions& options = {});

/// M at the state's deviations: an edge survives only if it is within reach
/// in every period. Throws GameInfeasible if that graph is disconnected.
TransformedGraph seeker_graph(const GameState& state, const NetworkInstance& inst);

/// Best response: minimum worst-case node cost placement on seeker_graph.
Placement seeker_step(const GameState& state, const NetworkInstance& inst, const HslOptions& options = {});

/// Finite-difference surrogate for dL/dd_e^t at the state's placement:
/// the optimal cost change when d_e^t jumps to d_e, per unit of deviation.
/// When that change is zero, the share of certifying paths in period t
/// that use e. Zero when d_e^t is already d_e.
Rational estimate_sensitivity(const GameState& state, const NetworkInstance& inst, EdgeId e, int t);

/// All (e,t) sensitivities at once, sharing the per-period work.
Sensitivities estimate_sensitivities(const GameState& state, const NetworkInstance& inst,
                                     const HslOptions& options = {});

/// Projected gradient step for a single deviation, optionally floored to a grid.
Rational hider_update(const Rational& d, const Rational& eta, const Rational& s, const Rational& cap,
                      std::int64_t grid = 0);

GameState hider_step(const GameState& state, const NetworkInstance& inst, const Sensitivities& s,
                     std::int64_t grid = 0);

/// Alternate seeker and hider until the loss changes by less than epsilon.
SolveReport play_hsl(const NetworkInstance& inst, const HslOptions& options = {});

}  // namespace rlp
