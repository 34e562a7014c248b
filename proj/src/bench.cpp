#include "rlp/bench.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "rlp/errors.hpp"

namespace rlp {

SolveReport run_method(const NetworkInstance& inst, Method method, const RunOptions& options) {
  switch (method) {
    case Method::kDWC: return solve_dwc(inst, options.solve);
    case Method::kRSB: return solve_rsb(inst, options.solve);
    case Method::kRDB: return solve_rdb(inst, options.solve);
    case Method::kCCG: return solve_ccg(inst, options.solve);
    case Method::kBDC: return solve_benders(inst, options.solve);
    case Method::kIRO: return solve_iro(inst, options.solve);
    case Method::kHSL: {
      HslOptions hsl = options.hsl;
      hsl.deadline = options.solve.deadline;
      hsl.complete_shortcut = options.solve.complete_shortcut;
      return play_hsl(inst, hsl);
    }
  }
  throw InvalidArgument("run_method: unknown method");
}

std::string report_to_json(const SolveReport& r, int indent) {
  using nlohmann::json;
  json j;
  j["method"] = to_string(r.method);
  j["placement"] = r.placement.selected.ids();
  j["objective"] = r.objective.to_string();
  j["objective_value"] = r.objective.to_double();
  j["iterations"] = r.iterations;
  j["lower_bound"] = r.lower_bound.to_string();
  j["upper_bound"] = r.upper_bound.to_string();
  j["gap"] = r.gap.to_string();
  j["scenarios_or_cuts"] = r.scenarios_or_cuts;
  j["converged"] = r.converged;
  j["wall_time_ms"] = r.wall_time.count() * 1000.0;
  json trace = json::array();
  for (const auto& t : r.trace) {
    trace.push_back({{"iteration", t.iteration},
                     {"lower_bound", t.lower_bound.to_string()},
                     {"upper_bound", t.upper_bound.to_string()},
                     {"placement", t.placement},
                     {"value", t.value.to_string()},
                     {"changed", t.changed}});
  }
  j["trace"] = trace;
  if (!r.deviations.empty()) {
    json devs = json::array();
    for (const auto& period : r.deviations) {
      json row = json::array();
      for (const auto& d : period) row.push_back(d.to_string());
      devs.push_back(row);
    }
    j["deviations"] = devs;
    json loss = json::array();
    for (const auto& l : r.loss_history) loss.push_back(l.to_string());
    j["loss_history"] = loss;
  }
  return j.dump(indent);
}

void ExperimentConfig::validate() const {
  if (methods.empty()) throw ValidationError("methods", "at least one method is required");
  if (n_values.empty()) throw ValidationError("n", "at least one network size is required");
  if (gamma_e_values.empty()) throw ValidationError("gamma_e", "at least one value is required");
  if (gamma_v_values.empty()) throw ValidationError("gamma_v", "at least one value is required");
  if (instances < 1) throw ValidationError("instances", "must be at least 1");
  for (int n : n_values) {
    if (n < 2) throw ValidationError("n", "network sizes must be at least 2");
  }
  for (int g : gamma_e_values) {
    if (g < 0) throw ValidationError("gamma_e", "must be nonnegative");
  }
  for (int g : gamma_v_values) {
    if (g < 0) throw ValidationError("gamma_v", "must be nonnegative");
  }
  if (!(0 < density) || density > 1) throw ValidationError("density", "must lie in (0, 1]");
  if (!(0 < d_max)) throw ValidationError("d_max", "must be positive");
  if (horizon < 1) throw ValidationError("horizon", "must be positive");
  if (!(0 < eta_d)) throw ValidationError("eta_d", "must be positive");
  if (max_iter < 1) throw ValidationError("max_iter", "must be at least 1");
  if (!(time_limit_s > 0)) throw ValidationError("time_limit", "must be positive");
  if (!(scale > 0) || scale > 1) throw ValidationError("scale", "must lie in (0, 1]");
  if (workers < 1) throw ValidationError("workers", "must be at least 1");
}

namespace {

std::vector<int> range(int from, int to, int step) {
  std::vector<int> out;
  for (int v = from; v <= to; v += step) out.push_back(v);
  return out;
}

void apply_scale(ExperimentConfig& c, double scale) {
  c.scale = scale;
  if (scale >= 1.0) return;
  std::vector<int> scaled;
  for (int n : c.n_values) {
    const int s = std::max(4, static_cast<int>(std::lround(n * scale)));
    if (std::find(scaled.begin(), scaled.end(), s) == scaled.end()) scaled.push_back(s);
  }
  c.n_values = scaled;
  c.instances = std::max(1, static_cast<int>(std::lround(c.instances * scale)));
}

}  // namespace

ExperimentConfig preset(std::string_view id, double scale) {
  ExperimentConfig c;
  c.experiment = std::string(id);
  const std::vector<Method> small{Method::kDWC, Method::kRSB, Method::kRDB};
  const std::vector<Method> large{Method::kDWC, Method::kBDC, Method::kCCG, Method::kIRO, Method::kHSL};
  if (id == "exp1") {
    c.n_values = range(10, 30, 2);
    c.methods = small;
  } else if (id == "exp2") {
    c.n_values = {25};
    c.gamma_e_values = {1, 2};
    c.gamma_v_values = {1, 2, 3};
    c.methods = small;
  } else if (id == "exp3") {
    c.n_values = range(40, 60, 2);
    c.methods = large;
  } else if (id == "exp4") {
    c.n_values = {50};
    c.gamma_e_values = {1, 2};
    c.gamma_v_values = {1, 2, 3};
    c.methods = large;
  } else {
    throw InvalidArgument("unknown preset '" + std::string(id) + "' (expected exp1..exp4)");
  }
  if (scale <= 0 || scale > 1) throw InvalidArgument("scale must lie in (0, 1]");
  apply_scale(c, scale);
  return c;
}

namespace {

int line_of(const YAML::Node& node) { return node.Mark().line; }

Rational yaml_rational(const YAML::Node& node, const std::string& field) {
  if (!node.IsScalar()) throw ParseError(field + ": expected a number", line_of(node));
  try {
    return Rational::parse(node.Scalar());
  } catch (const std::exception& ex) {
    throw ParseError(field + ": " + ex.what(), line_of(node));
  }
}

int yaml_int(const YAML::Node& node, const std::string& field) {
  const Rational r = yaml_rational(node, field);
  if (!r.is_integer()) throw ParseError(field + ": expected an integer", line_of(node));
  return static_cast<int>(r.num());
}

double yaml_double(const YAML::Node& node, const std::string& field) { return yaml_rational(node, field).to_double(); }

std::vector<int> yaml_int_list(const YAML::Node& node, const std::string& field) {
  if (node.IsScalar()) return {yaml_int(node, field)};
  if (node.IsMap()) {
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (key != "from" && key != "to" && key != "step") {
        throw ParseError("unknown field '" + key + "' in " + field, line_of(kv.first));
      }
    }
    if (!node["from"] || !node["to"]) throw ParseError(field + ": a range needs 'from' and 'to'", line_of(node));
    const int step = node["step"] ? yaml_int(node["step"], field + ".step") : 1;
    if (step < 1) throw ParseError(field + ".step: must be positive", line_of(node));
    return range(yaml_int(node["from"], field + ".from"), yaml_int(node["to"], field + ".to"), step);
  }
  if (!node.IsSequence()) throw ParseError(field + ": expected a list", line_of(node));
  std::vector<int> out;
  for (const auto& item : node) out.push_back(yaml_int(item, field));
  return out;
}

}  // namespace

ExperimentConfig load_config(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& ex) {
    throw ParseError(ex.msg, ex.mark.line);
  }
  if (!root.IsMap()) throw ParseError("config must be a mapping", line_of(root));

  const double scale = root["scale"] ? yaml_double(root["scale"], "scale") : 1.0;
  ExperimentConfig c;
  if (root["preset"]) {
    c = preset(root["preset"].as<std::string>(), scale);
  } else {
    c.scale = scale;
  }
  static const std::set<std::string> known{"preset", "scale", "experiment", "n", "gamma_e", "gamma_v",
                                           "instances", "methods", "d_max", "density", "horizon", "eta_d",
                                           "max_iter", "seed", "time_limit", "workers"};
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (!known.count(key)) throw ParseError("unknown field '" + key + "'", line_of(kv.first));
    const YAML::Node& v = kv.second;
    if (key == "experiment") c.experiment = v.as<std::string>();
    else if (key == "n") c.n_values = yaml_int_list(v, key);
    else if (key == "gamma_e") c.gamma_e_values = yaml_int_list(v, key);
    else if (key == "gamma_v") c.gamma_v_values = yaml_int_list(v, key);
    else if (key == "instances") c.instances = yaml_int(v, key);
    else if (key == "d_max") c.d_max = yaml_rational(v, key);
    else if (key == "density") c.density = yaml_rational(v, key);
    else if (key == "horizon") c.horizon = yaml_int(v, key);
    else if (key == "eta_d") c.eta_d = yaml_rational(v, key);
    else if (key == "max_iter") c.max_iter = yaml_int(v, key);
    else if (key == "time_limit") c.time_limit_s = yaml_double(v, key);
    else if (key == "workers") c.workers = yaml_int(v, key);
    else if (key == "seed") {
      const Rational r = yaml_rational(v, key);
      if (!r.is_integer() || r < 0) throw ParseError("seed: expected a nonnegative integer", line_of(v));
      c.seed = static_cast<std::uint64_t>(r.num());
    } else if (key == "methods") {
      if (!v.IsSequence()) throw ParseError("methods: expected a list", line_of(v));
      c.methods.clear();
      for (const auto& item : v) {
        try {
          c.methods.push_back(parse_method(item.as<std::string>()));
        } catch (const InvalidArgument& ex) {
          throw ParseError(ex.what(), line_of(item));
        }
      }
    }
  }
  c.validate();
  return c;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_config(buf.str());
}

namespace {

struct Job {
  int n;
  int gamma_e;
  int gamma_v;
  int index;
};

struct JobResult {
  std::vector<ResultRow> rows;
  std::vector<std::string> events;
};

std::uint64_t instance_seed(std::uint64_t master, int n, int index) {
  return mix_seed(mix_seed(master, static_cast<std::uint64_t>(n)), static_cast<std::uint64_t>(index));
}

JobResult run_job(const ExperimentConfig& c, const Job& job) {
  JobResult out;
  const std::uint64_t base = instance_seed(c.seed, job.n, job.index);
  for (int attempt = 0;; ++attempt) {
    if (attempt >= 100) throw GenerationFailure("run_experiment: no feasible instance after 100 resamples");
    GeneratorParams gp;
    gp.n = job.n;
    gp.density = c.density;
    gp.d_max = c.d_max;
    gp.gamma_e = job.gamma_e;
    gp.gamma_v = job.gamma_v;
    gp.horizon = c.horizon;
    gp.seed = attempt == 0 ? base : mix_seed(base, 0x5eed0000ULL + static_cast<std::uint64_t>(attempt));
    const NetworkInstance inst = generate_instance(gp);

    std::vector<ResultRow> rows;
    bool infeasible = false;
    for (Method m : c.methods) {
      ResultRow row;
      row.experiment = c.experiment;
      row.n = job.n;
      row.gamma_e = job.gamma_e;
      row.gamma_v = job.gamma_v;
      row.instance = job.index;
      row.seed = gp.seed;
      row.method = m;
      RunOptions opts;
      opts.hsl.eta_d = c.eta_d;
      opts.hsl.max_iter = c.max_iter;
      const auto start = Clock::now();
      opts.solve.deadline = start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(c.time_limit_s));
      try {
        const SolveReport r = run_method(inst, m, opts);
        row.objective = r.objective;
        row.iterations = r.iterations;
        row.time_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        row.status = r.converged ? "ok" : "max_iter";
      } catch (const TimeLimitExceeded&) {
        row.time_ms = std::numeric_limits<double>::infinity();
        row.status = "timeout";
      } catch (const InfeasibleInstance& ex) {
        out.events.push_back("n=" + std::to_string(job.n) + " instance=" + std::to_string(job.index) + " seed=" +
                             std::to_string(gp.seed) + ": " + ex.what() + "; resampling");
        infeasible = true;
        break;
      }
      rows.push_back(std::move(row));
    }
    if (infeasible) continue;

    std::optional<Rational> dwc;
    std::optional<Rational> rsb;
    for (const auto& row : rows) {
      if (row.method == Method::kDWC) dwc = row.objective;
      if (row.method == Method::kRSB) rsb = row.objective;
    }
    for (auto& row : rows) {
      if (!row.objective) continue;
      if (dwc && *dwc != 0) row.r_dwc = Rational(100) * (*dwc - *row.objective) / *dwc;
      if (rsb && *rsb != 0) row.r_rsb = Rational(100) * (*rsb - *row.objective) / *rsb;
    }
    out.rows = std::move(rows);
    return out;
  }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, const std::function<void(const ResultRow&)>& on_row) {
  config.validate();
  std::vector<Job> jobs;
  for (int n : config.n_values) {
    for (int ge : config.gamma_e_values) {
      for (int gv : config.gamma_v_values) {
        for (int i = 0; i < config.instances; ++i) jobs.push_back({n, ge, gv, i});
      }
    }
  }

  ExperimentResult result;
  result.config = config;
  std::vector<std::optional<JobResult>> done(jobs.size());
  std::size_t flushed = 0;
  std::mutex mu;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;

  // Rows are released strictly in job order, whichever worker finishes first.
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      JobResult jr;
      try {
        jr = run_job(config, jobs[j]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        next = jobs.size();
        return;
      }
      std::lock_guard<std::mutex> lock(mu);
      done[j] = std::move(jr);
      while (flushed < done.size() && done[flushed]) {
        for (auto& row : done[flushed]->rows) {
          if (on_row) on_row(row);
          result.rows.push_back(std::move(row));
        }
        for (auto& e : done[flushed]->events) result.events.push_back(std::move(e));
        done[flushed].reset();
        ++flushed;
      }
    }
  };
  const int workers = std::min<int>(config.workers, static_cast<int>(std::max<std::size_t>(1, jobs.size())));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

namespace {

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

const char* kHeader = "experiment,n,gamma_e,gamma_v,instance,seed,method,objective,r_dwc,r_rsb,iterations,time_ms,status";

}  // namespace

std::string results_to_csv(const ExperimentResult& result) {
  std::ostringstream os;
  const auto& c = result.config;
  os << "# experiment=" << c.experiment << " scale=" << c.scale << " instances=" << c.instances
     << " seed=" << c.seed << " time_limit_s=" << c.time_limit_s << "\n";
  for (const auto& e : result.events) os << "# event: " << e << "\n";
  os << kHeader << "\n";
  for (const auto& r : result.rows) {
    os << r.experiment << ',' << r.n << ',' << r.gamma_e << ',' << r.gamma_v << ',' << r.instance << ',' << r.seed
       << ',' << to_string(r.method) << ',' << (r.objective ? r.objective->to_string() : "") << ','
       << (r.r_dwc ? fixed(r.r_dwc->to_double(), 6) : "") << ',' << (r.r_rsb ? fixed(r.r_rsb->to_double(), 6) : "")
       << ',' << r.iterations << ',' << (std::isinf(r.time_ms) ? "inf" : fixed(r.time_ms, 3)) << ',' << r.status
       << "\n";
  }
  return os.str();
}

std::vector<ResultRow> read_results_csv(std::string_view text) {
  std::vector<ResultRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') {
      ++lineno;
      continue;
    }
    if (!header_seen) {
      if (line != kHeader) throw ParseError("unexpected results header", lineno);
      header_seen = true;
      ++lineno;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 13) throw ParseError("expected 13 columns", lineno);
    try {
      ResultRow r;
      r.experiment = f[0];
      r.n = std::stoi(f[1]);
      r.gamma_e = std::stoi(f[2]);
      r.gamma_v = std::stoi(f[3]);
      r.instance = std::stoi(f[4]);
      r.seed = std::stoull(f[5]);
      r.method = parse_method(f[6]);
      if (!f[7].empty()) r.objective = Rational::parse(f[7]);
      if (!f[8].empty()) r.r_dwc = Rational::parse(f[8]);
      if (!f[9].empty()) r.r_rsb = Rational::parse(f[9]);
      r.iterations = std::stoi(f[10]);
      r.time_ms = f[11] == "inf" ? std::numeric_limits<double>::infinity() : std::stod(f[11]);
      r.status = f[12];
      rows.push_back(std::move(r));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& ex) {
      throw ParseError(std::string("bad results row: ") + ex.what(), lineno);
    }
    ++lineno;
  }
  if (!header_seen) throw ParseError("missing results header", -1);
  return rows;
}

double ProfileCurve::at(double tau) const {
  double k = 0;
  for (const auto& p : points) {
    if (p.tau <= tau) k = p.k;
  }
  return k;
}

ProfileResult performance_profile(const std::vector<std::string>& solvers,
                                  const std::vector<std::vector<double>>& times) {
  if (solvers.empty() || solvers.size() != times.size()) {
    throw InvalidArgument("performance_profile: need one time series per solver");
  }
  const std::size_t instances = times.front().size();
  for (const auto& t : times) {
    if (t.size() != instances) throw InvalidArgument("performance_profile: ragged time table");
  }
  constexpr double kFloor = 1e-9;  // keeps zero durations from producing 0/0
  ProfileResult out;
  std::vector<std::vector<double>> ratios(solvers.size());
  std::set<double> breakpoints{1.0};
  for (std::size_t k = 0; k < instances; ++k) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& t : times) {
      if (std::isnan(t[k]) || t[k] < 0) throw InvalidArgument("performance_profile: negative or NaN time");
      best = std::min(best, std::max(t[k], kFloor));
    }
    if (std::isinf(best)) {
      out.warnings.push_back("instance " + std::to_string(k) + " excluded: every solver timed out");
      continue;
    }
    for (std::size_t s = 0; s < times.size(); ++s) {
      const double t = times[s][k];
      const double r = std::isinf(t) ? t : std::max(t, kFloor) / best;
      ratios[s].push_back(r);
      if (!std::isinf(r)) breakpoints.insert(r);
    }
  }
  out.instances = static_cast<int>(ratios.front().size());
  out.tau_max = *breakpoints.rbegin();
  for (std::size_t s = 0; s < solvers.size(); ++s) {
    ProfileCurve curve;
    curve.solver = solvers[s];
    std::vector<double> sorted = ratios[s];
    std::sort(sorted.begin(), sorted.end());
    std::size_t below = 0;
    for (double tau : breakpoints) {
      while (below < sorted.size() && sorted[below] <= tau) ++below;
      const double k = out.instances == 0 ? 0.0 : static_cast<double>(below) / out.instances;
      curve.points.push_back({tau, k});
    }
    out.curves.push_back(std::move(curve));
  }
  return out;
}

ProfileResult profile_from_results(const std::vector<ResultRow>& rows) {
  using Key = std::tuple<std::string, int, int, int, int>;
  std::vector<std::string> solvers;
  std::map<Key, std::map<std::string, double>> table;
  for (const auto& r : rows) {
    const std::string s = to_string(r.method);
    if (std::find(solvers.begin(), solvers.end(), s) == solvers.end()) solvers.push_back(s);
    table[Key{r.experiment, r.n, r.gamma_e, r.gamma_v, r.instance}][s] =
        r.status == "timeout" ? std::numeric_limits<double>::infinity() : r.time_ms;
  }
  if (solvers.empty()) throw InvalidArgument("profile_from_results: no rows");
  std::vector<std::vector<double>> times(solvers.size());
  for (const auto& [key, per_solver] : table) {
    for (std::size_t s = 0; s < solvers.size(); ++s) {
      auto it = per_solver.find(solvers[s]);
      times[s].push_back(it == per_solver.end() ? std::numeric_limits<double>::infinity() : it->second);
    }
  }
  return performance_profile(solvers, times);
}

std::string profile_to_csv(const ProfileResult& profile) {
  std::ostringstream os;
  os << "# instances=" << profile.instances << " tau_max=" << fixed(profile.tau_max, 6) << "\n";
  for (const auto& w : profile.warnings) os << "# warning: " << w << "\n";
  os << "solver,tau,k\n";
  for (const auto& c : profile.curves) {
    for (const auto& p : c.points) os << c.solver << ',' << fixed(p.tau, 6) << ',' << fixed(p.k, 6) << "\n";
  }
  return os.str();
}

}  // namespace rlp
