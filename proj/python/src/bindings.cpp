#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vproblog/error.hpp"
#include "vproblog/magic.hpp"
#include "vproblog/oracle.hpp"
#include "vproblog/parser.hpp"
#include "vproblog/smokers.hpp"

namespace py = pybind11;

namespace {

vpl::Budget to_budget(const std::optional<std::size_t>& iterations) {
  return iterations ? vpl::Budget(*iterations) : vpl::kUnbounded;
}

vpl::SolveMode to_mode(const std::string& s) {
  auto mode = vpl::parse_solve_mode(s);
  if (!mode) throw py::value_error("unknown mode '" + s + "'");
  return *mode;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact and anytime inference for function-free probabilistic logic programs";

  static py::exception<vpl::Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const vpl::Error& e) {
      PyErr_SetString(error.ptr(), (std::string(vpl::to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  py::class_<vpl::ProbProgram>(m, "Program")
      .def_property_readonly("facts", [](const vpl::ProbProgram& p) {
        std::vector<std::pair<std::string, double>> out;
        for (std::size_t i = 0; i < p.facts().size(); ++i) out.emplace_back(p.facts()[i].to_string(), p.probability(i));
        return out;
      })
      .def_property_readonly("rules", [](const vpl::ProbProgram& p) {
        std::vector<std::string> out;
        for (const auto& r : p.rules()) out.push_back(r.to_string());
        return out;
      })
      .def("render", &vpl::render_program)
      .def("__repr__", [](const vpl::ProbProgram& p) {
        return "<Program facts=" + std::to_string(p.facts().size()) + " rules=" + std::to_string(p.rules().size()) + ">";
      });

  py::class_<vpl::Answer>(m, "Answer")
      .def_readonly("atom", &vpl::Answer::text)
      .def_readonly("probability", &vpl::Answer::probability)
      .def_property_readonly("bound", [](const vpl::Answer& a) { return std::string(vpl::to_string(a.bound)); })
      .def_readonly("iterations", &vpl::Answer::iterations)
      .def_readonly("dd_nodes", &vpl::Answer::dd_nodes)
      .def("__repr__", [](const vpl::Answer& a) {
        return "<Answer " + a.text + " " + vpl::format_probability(a.probability) + " " + vpl::to_string(a.bound) + ">";
      });

  py::class_<vpl::SolveReport>(m, "SolveReport")
      .def_readonly("answers", &vpl::SolveReport::answers)
      .def_readonly("converged", &vpl::SolveReport::converged)
      .def_readonly("iterations", &vpl::SolveReport::iterations)
      .def_readonly("entries", &vpl::SolveReport::entries)
      .def_readonly("magic_entries", &vpl::SolveReport::magic_entries)
      .def_readonly("dd_nodes", &vpl::SolveReport::dd_nodes)
      .def_property_readonly("timings", [](const vpl::SolveReport& r) {
        return py::dict(py::arg("parse_ms") = r.timings.parse_ms, py::arg("transform_ms") = r.timings.transform_ms,
                        py::arg("materialize_ms") = r.timings.materialize_ms, py::arg("wmc_ms") = r.timings.wmc_ms);
      });

  m.def("parse_program", [](const std::string& text) { return vpl::parse_program(text); }, py::arg("text"));

  m.def(
      "solve",
      [](const vpl::ProbProgram& program, const std::string& query, const std::string& mode,
         std::optional<std::size_t> iterations, std::size_t node_limit) {
        vpl::SolveOptions options;
        options.mode = to_mode(mode);
        options.iterations = to_budget(iterations);
        options.node_limit = node_limit;
        vpl::Atom q = vpl::parse_query(query);
        py::gil_scoped_release release;
        return vpl::solve(program, q, options);
      },
      py::arg("program"), py::arg("query"), py::arg("mode") = "magic-opt", py::arg("iterations") = py::none(),
      py::arg("node_limit") = 0,
      "Probability (exact) or lower bound of every answer to the query. iterations=None runs to the fixpoint.");

  m.def(
      "enumerate_prob",
      [](const vpl::ProbProgram& program, const std::string& atom, std::size_t cap) {
        return vpl::oracle::enumerate_prob(program, vpl::parse_query(atom), {cap});
      },
      py::arg("program"), py::arg("atom"), py::arg("cap") = 20);

  m.def(
      "magic_transform",
      [](const vpl::ProbProgram& program, const std::string& query) {
        return vpl::magic_transform(program.rules(), vpl::parse_query(query)).to_string();
      },
      py::arg("program"), py::arg("query"));

  m.def(
      "generate_smokers",
      [](std::size_t persons, std::uint64_t seed, double p_stress, double p_influences, double p_susceptible) {
        return vpl::generate_smokers({persons, seed, p_stress, p_influences, p_susceptible});
      },
      py::arg("persons"), py::arg("seed") = 0, py::arg("p_stress") = 0.3, py::arg("p_influences") = 0.2,
      py::arg("p_susceptible") = 0.4);
}
