// Command-line front end: instance generation, single solves, experiment
// grids, performance profiles and traced hide-and-seek runs.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "rlp/bench.hpp"
#include "rlp/errors.hpp"

namespace {

using namespace rlp;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Clock::time_point deadline_after(double seconds) {
  return Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust regenerator location: generate, solve and benchmark"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write a seeded random instance");
  GeneratorParams gp;
  std::string density = "0.3";
  std::string gen_dmax = "1000";
  std::string gen_out;
  gen->add_option("--n", gp.n, "Number of nodes")->check(CLI::PositiveNumber);
  gen->add_option("--density", density, "Edge probability, e.g. 0.3 or 3/10");
  gen->add_option("--d-max", gen_dmax, "Signal reach limit");
  gen->add_option("--gamma-e", gp.gamma_e, "Edge attack budget per period")->check(CLI::NonNegativeNumber);
  gen->add_option("--gamma-v", gp.gamma_v, "Node attack budget")->check(CLI::NonNegativeNumber);
  gen->add_option("--horizon", gp.horizon, "Number of periods")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gp.seed, "Random seed");
  gen->add_option("--out,-o", gen_out, "Output file (default stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve one instance with one method");
  std::string method_name;
  std::string instance_path;
  std::string solve_out;
  std::optional<std::string> epsilon;
  int max_iter = 0;
  std::string eta = "0.1";
  bool complete_shortcut = false;
  double time_limit = 0;
  std::string cut = "separator";
  solve->add_option("--method,-m", method_name, "dwc | rsb | rdb | ccg | bdc | iro | hsl")
      ->required()
      ->check(CLI::IsMember({"dwc", "rsb", "rdb", "ccg", "bdc", "iro", "hsl"}, CLI::ignore_case));
  solve->add_option("--instance,-i", instance_path, "Instance file")->required()->check(CLI::ExistingFile);
  solve->add_option("--epsilon", epsilon, "Convergence tolerance");
  solve->add_option("--max-iter", max_iter, "Iteration cap for iro and hsl")->check(CLI::PositiveNumber);
  solve->add_option("--eta", eta, "Hider learning rate for hsl");
  solve->add_option("--time-limit", time_limit, "Seconds before giving up (0 = none)")->check(CLI::NonNegativeNumber);
  solve->add_option("--benders-cut", cut, "separator | nogood")->check(CLI::IsMember({"separator", "nogood"}));
  solve->add_flag("--complete-shortcut", complete_shortcut, "Empty placement at cost 0 when M is complete");
  solve->add_option("--out,-o", solve_out, "Report file (default stdout)");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Run an experiment grid and write a results table");
  std::string config_path;
  std::string preset_name;
  double scale = 1.0;
  std::string results_out;
  std::string profile_out;
  int workers = 0;
  auto* cfg_opt = exp->add_option("--config,-c", config_path, "YAML experiment config")->check(CLI::ExistingFile);
  exp->add_option("--preset", preset_name, "exp1 | exp2 | exp3 | exp4")->excludes(cfg_opt);
  exp->add_option("--scale", scale, "Shrink node counts and instance counts (0, 1]")->check(CLI::Range(0.0, 1.0));
  exp->add_option("--workers", workers, "Parallel solves")->check(CLI::PositiveNumber);
  exp->add_option("--out,-o", results_out, "Results CSV (default stdout)");
  exp->add_option("--profile-out", profile_out, "Performance profile CSV");

  // profile
  auto* prof = app.add_subcommand("profile", "Performance profile of a results table");
  std::string profile_in;
  std::string profile_dest;
  prof->add_option("--in,-i", profile_in, "Results CSV")->required()->check(CLI::ExistingFile);
  prof->add_option("--out,-o", profile_dest, "Profile CSV (default stdout)");

  // hsl
  auto* hsl = app.add_subcommand("hsl", "Play the hide-and-seek game and print its trace");
  std::string hsl_instance;
  std::string hsl_eta = "0.1";
  std::string hsl_eps = "0.000001";
  int hsl_iter = 10;
  std::string hsl_start = "caps";
  std::int64_t hsl_grid = 1000;
  std::string hsl_out;
  hsl->add_option("--instance,-i", hsl_instance, "Instance file")->required()->check(CLI::ExistingFile);
  hsl->add_option("--eta", hsl_eta, "Hider learning rate");
  hsl->add_option("--epsilon", hsl_eps, "Loss change tolerance");
  hsl->add_option("--max-iter", hsl_iter, "Iteration cap")->check(CLI::PositiveNumber);
  hsl->add_option("--start", hsl_start, "caps | max")->check(CLI::IsMember({"caps", "max"}));
  hsl->add_option("--grid", hsl_grid, "Deviation grid denominator (0 = exact)")->check(CLI::NonNegativeNumber);
  hsl->add_option("--out,-o", hsl_out, "Report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen) {
      gp.density = Rational::parse(density);
      gp.d_max = Rational::parse(gen_dmax);
      write_output(gen_out, save_instance(generate_instance(gp)));
    } else if (*solve) {
      const NetworkInstance inst = load_instance_file(instance_path);
      RunOptions opts;
      if (epsilon) {
        opts.solve.epsilon = Rational::parse(*epsilon);
        opts.hsl.epsilon = *opts.solve.epsilon;
      }
      if (max_iter > 0) {
        opts.solve.max_iter = max_iter;
        opts.hsl.max_iter = max_iter;
      }
      opts.hsl.eta_d = Rational::parse(eta);
      opts.solve.complete_shortcut = complete_shortcut;
      opts.solve.benders_cut = cut == "nogood" ? BendersCut::kNoGood : BendersCut::kSeparator;
      if (time_limit > 0) opts.solve.deadline = deadline_after(time_limit);
      write_output(solve_out, report_to_json(run_method(inst, parse_method(method_name), opts)) + "\n");
    } else if (*exp) {
      ExperimentConfig config;
      if (!config_path.empty()) {
        config = load_config_file(config_path);
      } else if (!preset_name.empty()) {
        config = preset(preset_name, scale);
      } else {
        throw InvalidArgument("experiment needs --config or --preset");
      }
      if (workers > 0) config.workers = workers;
      const ExperimentResult result = run_experiment(config, [](const ResultRow& r) {
        std::cerr << "n=" << r.n << " gamma_e=" << r.gamma_e << " gamma_v=" << r.gamma_v << " #" << r.instance << ' '
                  << to_string(r.method) << ' ' << r.status << '\n';
      });
      for (const auto& e : result.events) std::cerr << "event: " << e << '\n';
      write_output(results_out, results_to_csv(result));
      if (!profile_out.empty()) {
        const ProfileResult p = profile_from_results(result.rows);
        for (const auto& w : p.warnings) std::cerr << "warning: " << w << '\n';
        write_output(profile_out, profile_to_csv(p));
      }
    } else if (*prof) {
      const ProfileResult p = profile_from_results(read_results_csv(read_file(profile_in)));
      for (const auto& w : p.warnings) std::cerr << "warning: " << w << '\n';
      write_output(profile_dest, profile_to_csv(p));
    } else if (*hsl) {
      const NetworkInstance inst = load_instance_file(hsl_instance);
      HslOptions opts;
      opts.eta_d = Rational::parse(hsl_eta);
      opts.epsilon = Rational::parse(hsl_eps);
      opts.max_iter = hsl_iter;
      opts.start = hsl_start == "max" ? HslOptions::Start::kMaxDeviation : HslOptions::Start::kPeriodCaps;
      opts.grid = hsl_grid;
      const SolveReport r = play_hsl(inst, opts);
      std::cerr << "k,loss,placement,changed\n";
      for (const auto& t : r.trace) {
        std::cerr << t.iteration << ',' << t.value << ",\"" << t.placement << "\"," << t.changed << '\n';
      }
      write_output(hsl_out, report_to_json(r) + "\n");
    }
  } catch (const InfeasibleInstance& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
