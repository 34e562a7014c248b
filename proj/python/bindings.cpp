#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rlp/adversary.hpp"
#include "rlp/bench.hpp"
#include "rlp/errors.hpp"
#include "rlp/hsl_game.hpp"
#include "rlp/instance.hpp"
#include "rlp/robust_methods.hpp"

namespace py = pybind11;

// Rational values cross the boundary as fractions.Fraction. Python ints and
// decimal strings are accepted on the way in.
namespace pybind11::detail {
template <>
struct type_caster<rlp::Rational> {
  PYBIND11_TYPE_CASTER(rlp::Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src) return false;
    try {
      if (py::isinstance<py::str>(src)) {
        value = rlp::Rational::parse(src.cast<std::string>());
        return true;
      }
      const py::object frac = py::module_::import("fractions").attr("Fraction")(src);
      value = rlp::Rational(frac.attr("numerator").cast<std::int64_t>(),
                            frac.attr("denominator").cast<std::int64_t>());
      return true;
    } catch (const std::exception&) {
      PyErr_Clear();
      return false;
    }
  }

  static handle cast(const rlp::Rational& r, return_value_policy, handle) {
    return py::module_::import("fractions").attr("Fraction")(r.num(), r.den()).release();
  }
};

template <>
struct type_caster<rlp::NodeSet> {
  PYBIND11_TYPE_CASTER(rlp::NodeSet, const_name("list[int]"));

  bool load(handle, bool) { return false; }

  static handle cast(const rlp::NodeSet& s, return_value_policy, handle) {
    return py::cast(s.ids()).release();
  }
};
}  // namespace pybind11::detail

namespace {

py::dict report_dict(const rlp::SolveReport& r) {
  py::dict d;
  d["method"] = rlp::to_string(r.method);
  d["placement"] = r.placement.selected.ids();
  d["objective"] = r.objective;
  d["iterations"] = r.iterations;
  d["lower_bound"] = r.lower_bound;
  d["upper_bound"] = r.upper_bound;
  d["gap"] = r.gap;
  d["scenarios_or_cuts"] = r.scenarios_or_cuts;
  d["converged"] = r.converged;
  d["wall_time_s"] = r.wall_time.count();
  if (r.method == rlp::Method::kHSL) {
    d["deviations"] = r.deviations;
    d["loss_history"] = r.loss_history;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Robust regenerator location: instances, solvers and benchmarks.";

  auto base = py::register_exception<rlp::Error>(m, "RlpError");
  py::register_exception<rlp::InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<rlp::ParseError>(m, "ParseError", base.ptr());
  py::register_exception<rlp::ValidationError>(m, "ValidationError", base.ptr());
  auto infeasible = py::register_exception<rlp::InfeasibleInstance>(m, "InfeasibleInstance", base.ptr());
  py::register_exception<rlp::GameInfeasible>(m, "GameInfeasible", infeasible.ptr());
  py::register_exception<rlp::TimeLimitExceeded>(m, "TimeLimitExceeded", base.ptr());

  py::class_<rlp::NetworkInstance>(m, "Instance")
      .def_property_readonly("n", &rlp::NetworkInstance::n)
      .def_property_readonly("m", &rlp::NetworkInstance::m)
      .def_property_readonly("d_max", &rlp::NetworkInstance::d_max)
      .def_property_readonly("gamma_e", &rlp::NetworkInstance::gamma_e)
      .def_property_readonly("gamma_v", &rlp::NetworkInstance::gamma_v)
      .def_property_readonly("horizon", &rlp::NetworkInstance::horizon)
      .def_property_readonly("seed", &rlp::NetworkInstance::seed)
      .def_property_readonly("edges",
                             [](const rlp::NetworkInstance& inst) {
                               py::list out;
                               for (const auto& e : inst.edges()) out.append(py::make_tuple(e.u, e.v));
                               return out;
                             })
      .def("with_budgets", &rlp::NetworkInstance::with_budgets, py::arg("gamma_e"), py::arg("gamma_v"))
      .def("to_yaml", [](const rlp::NetworkInstance& inst) { return rlp::save_instance(inst); })
      .def("__eq__", [](const rlp::NetworkInstance& a, const rlp::NetworkInstance& b) { return a == b; })
      .def("__repr__", [](const rlp::NetworkInstance& inst) {
        return "<Instance n=" + std::to_string(inst.n()) + " m=" + std::to_string(inst.m()) + ">";
      });

  m.def("load_instance", &rlp::load_instance, py::arg("text"), "Parse a YAML instance document.");
  m.def("load_instance_file", &rlp::load_instance_file, py::arg("path"));
  m.def(
      "generate_instance",
      [](int n, const rlp::Rational& density, const rlp::Rational& d_max, int gamma_e, int gamma_v, int horizon,
         std::uint64_t seed) {
        rlp::GeneratorParams g;
        g.n = n;
        g.density = density;
        g.d_max = d_max;
        g.gamma_e = gamma_e;
        g.gamma_v = gamma_v;
        g.horizon = horizon;
        g.seed = seed;
        return rlp::generate_instance(g);
      },
      py::arg("n") = 25, py::arg("density") = rlp::Rational(3, 10), py::arg("d_max") = rlp::Rational(1000),
      py::arg("gamma_e") = 2, py::arg("gamma_v") = 2, py::arg("horizon") = 3, py::arg("seed") = 0);

  m.def(
      "worst_case_cost",
      [](const std::vector<int>& placement, const rlp::NetworkInstance& inst) {
        return rlp::worst_case_node_cost(rlp::NodeSet::from_ids(inst.n(), placement), inst).total;
      },
      py::arg("placement"), py::arg("instance"));
  m.def(
      "nominal_cost",
      [](const std::vector<int>& placement, const rlp::NetworkInstance& inst) {
        return rlp::nominal_cost(rlp::NodeSet::from_ids(inst.n(), placement), inst);
      },
      py::arg("placement"), py::arg("instance"));

  m.def(
      "solve",
      [](const rlp::NetworkInstance& inst, const std::string& method, std::optional<rlp::Rational> epsilon,
         int max_iter, const rlp::Rational& eta, double time_limit) {
        rlp::RunOptions opts;
        opts.solve.epsilon = epsilon;
        opts.solve.max_iter = max_iter;
        opts.hsl.eta_d = eta;
        if (epsilon) opts.hsl.epsilon = *epsilon;
        if (time_limit > 0) {
          const auto limit = std::chrono::duration<double>(time_limit);
          const auto deadline = rlp::Clock::now() + std::chrono::duration_cast<rlp::Clock::duration>(limit);
          opts.solve.deadline = deadline;
          opts.hsl.deadline = deadline;
        }
        rlp::SolveReport r;
        {
          py::gil_scoped_release release;
          r = rlp::run_method(inst, rlp::parse_method(method), opts);
        }
        return report_dict(r);
      },
      py::arg("instance"), py::arg("method") = "rdb", py::arg("epsilon") = py::none(), py::arg("max_iter") = 50,
      py::arg("eta") = rlp::Rational(1, 10), py::arg("time_limit") = 0.0,
      "Solve with one of dwc, rsb, rdb, ccg, bdc, iro, hsl and return the report as a dict.");

  m.def("hider_update", &rlp::hider_update, py::arg("d"), py::arg("eta"), py::arg("s"), py::arg("cap"),
        py::arg("grid") = 0);

  m.def(
      "performance_profile",
      [](const std::vector<std::string>& solvers, const std::vector<std::vector<double>>& times) {
        const rlp::ProfileResult p = rlp::performance_profile(solvers, times);
        py::dict curves;
        for (const auto& c : p.curves) {
          py::list pts;
          for (const auto& pt : c.points) pts.append(py::make_tuple(pt.tau, pt.k));
          curves[py::str(c.solver)] = pts;
        }
        return py::make_tuple(curves, p.warnings);
      },
      py::arg("solvers"), py::arg("times"),
      "Breakpoints (tau, k) per solver and the warnings raised while building them.");
}
