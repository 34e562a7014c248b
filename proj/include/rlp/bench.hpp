#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rlp/hsl_game.hpp"
#include "rlp/instance.hpp"
#include "rlp/robust_methods.hpp"

namespace rlp {

struct RunOptions {
  SolveOptions solve;
  HslOptions hsl;
};

/// Run one named method on an instance.
SolveReport run_method(const NetworkInstance& inst, Method method, const RunOptions& options = {});

/// Solve report as a JSON document. Exact values are kept as strings.
std::string report_to_json(const SolveReport& report, int indent = 2);

struct ExperimentConfig {
  std::string experiment = "custom";
  std::vector<int> n_values;
  std::vector<int> gamma_e_values{2};
  std::vector<int> gamma_v_values{2};
  int instances = 50;
  std::vector<Method> methods;
  Rational d_max = 1000;
  Rational density{3, 10};
  int horizon = 3;
  Rational eta_d{1, 10};
  int max_iter = 10;
  std::uint64_t seed = 1;
  double time_limit_s = 60.0;
  double scale = 1.0;
  int workers = 1;

  /// Throws ValidationError on an empty method set, empty grids, or bad counts.
  void validate() const;
};

/// Exp-1 to Exp-4 grids. A scale below 1 shrinks the node counts and the
/// number of instances per cell while keeping the parameter distributions.
ExperimentConfig preset(std::string_view id, double scale = 1.0);

/// YAML config: an optional `preset` key, then any ExperimentConfig field.
ExperimentConfig load_config(std::string_view text);
ExperimentConfig load_config_file(const std::string& path);

struct ResultRow {
  std::string experiment;
  int n = 0;
  int gamma_e = 0;
  int gamma_v = 0;
  int instance = 0;
  std::uint64_t seed = 0;
  Method method = Method::kDWC;
  std::optional<Rational> objective;
  std::optional<Rational> r_dwc;  // percent below DWC
  std::optional<Rational> r_rsb;  // percent below RSB
  int iterations = 0;
  double time_ms = 0;  // +infinity on timeout
  std::string status = "ok";
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<ResultRow> rows;
  std::vector<std::string> events;
};

ExperimentResult run_experiment(const ExperimentConfig& config,
                                const std::function<void(const ResultRow&)>& on_row = {});

std::string results_to_csv(const ExperimentResult& result);
std::vector<ResultRow> read_results_csv(std::string_view text);

struct ProfilePoint {
  double tau = 1;
  double k = 0;
};

/// Step function k_s(tau) sampled at every breakpoint.
struct ProfileCurve {
  std::string solver;
  std::vector<ProfilePoint> points;

  /// k_s(tau) for any tau >= 1.
  [[nodiscard]] double at(double tau) const;
};

struct ProfileResult {
  std::vector<ProfileCurve> curves;
  std::vector<std::string> warnings;
  int instances = 0;  // instances kept after dropping all-timeout ones
  double tau_max = 1;
};

/// times[s][k] is solver s on instance k; timeouts are +infinity.
ProfileResult performance_profile(const std::vector<std::string>& solvers,
                                  const std::vector<std::vector<double>>& times);

/// Profile of a results table: one instance per (experiment, n, budgets, index).
ProfileResult profile_from_results(const std::vector<ResultRow>& rows);

std::string profile_to_csv(const ProfileResult& profile);

}  // namespace rlp
