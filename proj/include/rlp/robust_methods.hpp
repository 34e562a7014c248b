#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rlp/adversary.hpp"
#include "rlp/instance.hpp"
#include "rlp/rlp_core.hpp"
#include "rlp/shortest_paths.hpp"

namespace rlp {

enum class Method { kDWC, kRSB, kRDB, kCCG, kBDC, kIRO, kHSL };

std::string to_string(Method m);
/// Accepts "dwc", "rsb", "rdb", "ccg", "bdc", "iro", "hsl" in any case.
Method parse_method(std::string_view name);

struct TraceRecord {
  int iteration = 0;
  Rational lower_bound;
  Rational upper_bound;
  std::string placement;  // ascending ids, e.g. "{1,3}"
  Rational value;         // master value, loss, or stage objective
  int changed = 0;        // scenarios, cuts, pins or deviations added in this iteration
};

struct SolveReport {
  Method method = Method::kDWC;
  Placement placement;
  Rational objective;
  int iterations = 0;
  Rational lower_bound;
  Rational upper_bound;
  Rational gap;
  int scenarios_or_cuts = 0;
  bool converged = true;
  std::chrono::duration<double> wall_time{0};
  std::vector<TraceRecord> trace;
  /// Final deviations d_e^t of the hide-and-seek game; empty for other methods.
  PeriodDeviations deviations;
  std::vector<Rational> loss_history;
};

/// Scenarios in insertion order without duplicates.
class ScenarioPool {
 public:
  /// Returns false if an equal scenario is already present.
  bool add(Scenario s);
  [[nodiscard]] bool contains(const Scenario& s) const;
  [[nodiscard]] std::size_t size() const { return scenarios_.size(); }
  [[nodiscard]] bool empty() const { return scenarios_.empty(); }
  [[nodiscard]] const std::vector<Scenario>& scenarios() const { return scenarios_; }

 private:
  std::vector<Scenario> scenarios_;
};

enum class BendersCut {
  kNoGood,     // some node outside the rejected placement must enter
  kSeparator,  // a component's outer boundary must be crossed to reach nodes beyond it
};

struct SolveOptions {
  /// Absolute gap for CCG and Benders, relative change for IRO.
  std::optional<Rational> epsilon;
  int max_iter = 50;
  /// When M is complete, return the empty placement at cost 0.
  bool complete_shortcut = false;
  BendersCut benders_cut = BendersCut::kSeparator;
  std::optional<Clock::time_point> deadline;
};

/// Worst-case node cost of a placement as a cost function.
CostFn worst_case_cost_fn(const NetworkInstance& inst);

SolveReport solve_dwc(const NetworkInstance& inst, const SolveOptions& options = {});
SolveReport solve_rsb(const NetworkInstance& inst, const SolveOptions& options = {});
SolveReport solve_rdb(const NetworkInstance& inst, const SolveOptions& options = {});

/// Column-and-constraint generation over node-attack scenarios on the
/// dynamic-budget M. Default epsilon 0.
SolveReport solve_ccg(const NetworkInstance& inst, const SolveOptions& options = {});

/// Master over dominating sets with accumulated feasibility cuts; the
/// subproblem checks connectivity of the master placement on the
/// dynamic-budget M. Default epsilon 0.
SolveReport solve_benders(const NetworkInstance& inst, const SolveOptions& options = {});

/// Iterative robust optimization: rebuild M from emphasized deviations,
/// solve the static problem, and pin the attacks that break the placement
/// at their period caps. Default epsilon 1e-6 relative.
SolveReport solve_iro(const NetworkInstance& inst, const SolveOptions& options = {});

}  // namespace rlp
