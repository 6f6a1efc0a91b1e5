#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crk/catalog.hpp"
#include "crk/cli.hpp"
#include "crk/discretize.hpp"
#include "crk/errors.hpp"
#include "crk/laws.hpp"
#include "crk/network.hpp"

namespace py = pybind11;
using namespace crk;

namespace {

Vec to_vec(const std::vector<double>& v) { return Vec(v); }

py::dict report_dict(const LawReport& r) {
  py::dict d;
  d["law_name"] = r.law_name;
  d["trials_run"] = r.trials_run;
  d["max_deviation"] = r.max_deviation;
  d["tolerance"] = r.tolerance;
  d["worst_sample"] = r.worst_sample;
  d["pass"] = r.pass;
  return d;
}

Method parse_method(const std::string& m) {
  if (m == "rk4") return Method::Rk4;
  if (m == "euler") return Method::Euler;
  throw py::value_error("method must be 'rk4' or 'euler', got '" + m + "'");
}

Mode parse_mode(const std::string& m) {
  if (m == "pre-compose") return Mode::PreCompose;
  if (m == "post-compose") return Mode::PostCompose;
  throw py::value_error("mode must be 'pre-compose' or 'post-compose', got '" + m + "'");
}

SampleConfig make_config(std::uint64_t seed, std::size_t trials, double tol, const std::vector<double>& hs) {
  SampleConfig cfg;
  cfg.seed = seed;
  cfg.trials = trials;
  cfg.tolerance = tol;
  cfg.step_sizes.clear();
  for (const double h : hs) cfg.step_sizes.emplace_back(h);
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Compositional RK4 discretization of wired continuous systems";

  py::register_exception<Error>(m, "Error");
  py::register_exception<SpecError>(m, "SpecError", m.attr("Error"));
  py::register_exception<ParseError>(m, "ParseError", m.attr("Error"));
  py::register_exception<BlowUpError>(m, "BlowUpError", m.attr("Error"));

  py::class_<Interface>(m, "Interface")
      .def(py::init<std::size_t, std::size_t>(), py::arg("in_dim"), py::arg("out_dim"))
      .def_property_readonly("in_dim", &Interface::in_dim)
      .def_property_readonly("out_dim", &Interface::out_dim)
      .def("__eq__", [](const Interface& a, const Interface& b) { return a == b; })
      .def("__repr__", [](const Interface& i) { return "Interface" + to_string(i); });

  py::class_<ContinuousSystem>(m, "ContinuousSystem")
      .def(py::init([](Interface iface, std::size_t state_dim, std::function<std::vector<double>(std::vector<double>, std::vector<double>)> update,
                       std::function<std::vector<double>(std::vector<double>)> readout, std::string name) {
             return ContinuousSystem(
                 iface, state_dim,
                 [update](const Vec& a, const Vec& s) { return to_vec(update(a.values(), s.values())); },
                 [readout](const Vec& s) { return to_vec(readout(s.values())); }, std::move(name));
           }),
           py::arg("iface"), py::arg("state_dim"), py::arg("update"), py::arg("readout"), py::arg("name") = "")
      .def_property_readonly("iface", &ContinuousSystem::iface)
      .def_property_readonly("state_dim", &ContinuousSystem::state_dim)
      .def_property_readonly("name", &ContinuousSystem::name)
      .def("update", [](const ContinuousSystem& x, const std::vector<double>& a,
                        const std::vector<double>& s) { return x.update(to_vec(a), to_vec(s)).values(); })
      .def("readout", [](const ContinuousSystem& x, const std::vector<double>& s) { return x.readout(to_vec(s)).values(); });

  py::class_<DiscreteSystem>(m, "DiscreteSystem")
      .def_property_readonly("iface", &DiscreteSystem::iface)
      .def_property_readonly("name", &DiscreteSystem::name)
      .def("update", [](const DiscreteSystem& x, const std::vector<double>& a,
                        const std::vector<double>& s) { return x.update(to_vec(a), to_vec(s)).values(); })
      .def("readout", [](const DiscreteSystem& x, const std::vector<double>& s) { return x.readout(to_vec(s)).values(); });

  py::class_<FourStepSystem>(m, "FourStepSystem")
      .def_property_readonly("iface", &FourStepSystem::iface)
      .def_property_readonly("carriers", &FourStepSystem::carriers)
      .def_property_readonly("name", &FourStepSystem::name)
      .def(
          "update",
          [](const FourStepSystem& x, const std::vector<double>& a, int phase, const std::vector<double>& payload) {
            const PhasedState next = x.update(to_vec(a), PhasedState{phase, to_vec(payload)});
            return py::make_tuple(next.phase, next.payload.values());
          },
          py::arg("input"), py::arg("phase"), py::arg("payload"))
      .def(
          "readout",
          [](const FourStepSystem& x, int phase, const std::vector<double>& payload) {
            return x.readout(PhasedState{phase, to_vec(payload)}).values();
          },
          py::arg("phase"), py::arg("payload"))
      .def(
          "step",
          [](const FourStepSystem& x, const std::vector<double>& init, std::size_t n_macro) {
            const Trajectory t = simulate(x, constant_signal(Vec::zeros(x.iface().in_dim())), to_vec(init), n_macro);
            return macro_state(x, t, n_macro).values();
          },
          py::arg("init"), py::arg("n_macro") = 1, "Phase-1 state after n_macro steps with zero input");

  py::class_<WiringDiagram>(m, "WiringDiagram")
      .def(py::init([](Interface inner, Interface outer, const std::string& table) {
             return WiringDiagram(inner, outer, parse_routing_table(table));
           }),
           py::arg("inner"), py::arg("outer"), py::arg("routing"))
      .def_property_readonly("inner", &WiringDiagram::inner)
      .def_property_readonly("outer", &WiringDiagram::outer)
      .def_property_readonly("routing",
                             [](const WiringDiagram& d) -> py::object {
                               if (!d.routing()) return py::none();
                               return py::str(to_string(*d.routing()));
                             })
      .def("in_map", [](const WiringDiagram& d, const std::vector<double>& c,
                        const std::vector<double>& b) { return d.in_map(to_vec(c), to_vec(b)).values(); })
      .def("out_map", [](const WiringDiagram& d, const std::vector<double>& b) { return d.out_map(to_vec(b)).values(); });

  m.def("wiring_identity", &wiring_identity, py::arg("iface"));
  m.def("wiring_compose", &wiring_compose, py::arg("psi"), py::arg("phi"));
  m.def("wiring_tensor", &wiring_tensor, py::arg("first"), py::arg("second"));
  m.def("cs_tensor", &cs_tensor, py::arg("first"), py::arg("second"));
  m.def(
      "apply_wiring", [](const WiringDiagram& phi, const ContinuousSystem& x) { return apply_wiring(phi, x); },
      py::arg("phi"), py::arg("x"));
  m.def(
      "apply_wiring", [](const WiringDiagram& phi, const FourStepSystem& x) { return apply_wiring(phi, x); },
      py::arg("phi"), py::arg("x"));
  m.def(
      "rk4_discretize", [](const ContinuousSystem& x, double h) { return rk4_discretize(x, StepSize(h)); },
      py::arg("x"), py::arg("h"));
  m.def(
      "euler_discretize", [](const ContinuousSystem& x, double h) { return euler_discretize(x, StepSize(h)); },
      py::arg("x"), py::arg("h"));

  m.def(
      "check_compositionality",
      [](const ContinuousSystem& x, const WiringDiagram& phi, std::uint64_t seed, std::size_t trials, double tol,
         const std::vector<double>& hs) {
        return report_dict(check_compositionality(x, phi, make_config(seed, trials, tol, hs)));
      },
      py::arg("x"), py::arg("phi"), py::arg("seed") = SampleConfig{}.seed, py::arg("trials") = 64,
      py::arg("tol") = 1e-10, py::arg("step_sizes") = std::vector<double>{0.2, 0.1, 0.01});
  m.def(
      "check_laws",
      [](std::uint64_t seed, std::size_t trials, double tol) {
        py::list out;
        for (const auto& r : run_suite(check_laws_config(CheckLawsOptions{seed, trials, tol}))) {
          out.append(report_dict(r));
        }
        return out;
      },
      py::arg("seed") = SampleConfig{}.seed, py::arg("trials") = SampleConfig{}.trials,
      py::arg("tol") = SampleConfig{}.tolerance);

  m.def(
      "simulate_csv",
      [](const std::string& network, const std::string& method, const std::string& mode, double h,
         std::size_t steps, bool dump_state) {
        SimulateOptions o;
        o.method = parse_method(method);
        o.mode = parse_mode(mode);
        o.h = h;
        o.steps = steps;
        o.dump_state = dump_state;
        return simulate_csv(load_network(network), o);
      },
      py::arg("network"), py::arg("method") = "rk4", py::arg("mode") = "post-compose", py::arg("h") = 0.01,
      py::arg("steps") = 100, py::arg("dump_state") = false, "Trajectory CSV for a network description file");
  m.def(
      "convergence",
      [](const std::string& network, const std::string& method, const std::vector<double>& hs, double t_final) {
        const ConvergenceResult r = convergence(load_network(network), parse_method(method), hs, t_final);
        py::dict d;
        d["step_sizes"] = r.step_sizes;
        d["errors"] = r.errors;
        d["reference_h"] = r.reference_h;
        d["slope"] = r.slope;
        return d;
      },
      py::arg("network"), py::arg("method"), py::arg("step_sizes"), py::arg("t_final"));
  m.def(
      "parse_expression",
      [](const std::string& text, std::size_t in_dim, std::size_t state_dim) {
        return to_string(parse_expression(text, in_dim, state_dim));
      },
      py::arg("text"), py::arg("in_dim"), py::arg("state_dim"), "Canonical parenthesized form of an expression");
  m.def(
      "eval_expression",
      [](const std::string& text, const std::vector<double>& a, const std::vector<double>& s) {
        return eval_expression(parse_expression(text, a.size(), s.size()), to_vec(a), to_vec(s));
      },
      py::arg("text"), py::arg("inputs"), py::arg("state"));

  py::module_ cat = m.def_submodule("catalog", "Built-in systems");
  cat.def("growth", &catalog::growth);
  cat.def("linear_1d", &catalog::linear_1d);
  cat.def("linear_2d", &catalog::linear_2d);
  cat.def("harmonic_split", &catalog::harmonic_split);
  cat.def("lotka_volterra_split", &catalog::lotka_volterra_split);
  cat.def("van_der_pol_split", &catalog::van_der_pol_split);
}
