#include "qcfg/cli.hpp"
#include "qcfg/derivation.hpp"
#include "qcfg/evolution.hpp"
#include "qcfg/format.hpp"
#include "qcfg/wellformedness.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace qcfg;

namespace {

std::vector<Complex> components(const AmplitudeVector& v) {
  return {v.begin(), v.end()};
}

DerivationLimits limits(std::optional<std::size_t> max_steps) { return {max_steps}; }

CheckMode parse_mode(const std::string& mode) {
  if (mode == "strict") return CheckMode::strict;
  if (mode == "aggregate") return CheckMode::aggregate;
  throw py::value_error("mode must be 'strict' or 'aggregate'");
}

}  // namespace

PYBIND11_MODULE(_qcfg, m) {
  m.doc() = "quantum context-free grammars";

  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<DerivationError>(m, "DerivationError", PyExc_ValueError);
  py::register_exception<UnknownSymbol>(m, "UnknownSymbol", PyExc_KeyError);

  py::class_<Production>(m, "Production")
      .def_property_readonly("lhs", [](const Production& p) { return p.lhs.name; })
      .def_property_readonly("rhs",
                             [](const Production& p) {
                               std::vector<std::string> out;
                               for (const auto& s : p.rhs) out.push_back(s.name);
                               return out;
                             })
      .def_property_readonly("amplitude",
                             [](const Production& p) { return components(p.amplitude); })
      .def("__repr__", [](const Production& p) { return "<Production " + p.to_string() + ">"; })
      .def("__str__", &Production::to_string);

  py::class_<QuantumGrammar>(m, "Grammar")
      .def_property_readonly("dimension", &QuantumGrammar::dimension)
      .def_property_readonly("start", [](const QuantumGrammar& g) { return g.start().name; })
      .def_property_readonly("terminals",
                             [](const QuantumGrammar& g) {
                               std::vector<std::string> out;
                               for (const auto& s : g.terminals()) out.push_back(s.name);
                               return out;
                             })
      .def_property_readonly("nonterminals",
                             [](const QuantumGrammar& g) {
                               std::vector<std::string> out;
                               for (const auto& s : g.nonterminals()) out.push_back(s.name);
                               return out;
                             })
      .def_property_readonly("productions",
                             [](const QuantumGrammar& g) {
                               return std::vector<Production>(g.productions().begin(),
                                                              g.productions().end());
                             })
      .def("approx_equal", &QuantumGrammar::approx_equal, py::arg("other"),
           py::arg("tolerance") = kDefaultTolerance)
      .def("__repr__", [](const QuantumGrammar& g) {
        return "<Grammar start=" + g.start().name + " dimension=" + std::to_string(g.dimension()) +
               " rules=" + std::to_string(g.productions().size()) + ">";
      });

  m.def("parse_grammar", [](const std::string& text) { return parse_grammar(text); },
        py::arg("text"));
  m.def("load_grammar", [](const std::string& path) { return load_grammar(path); },
        py::arg("path"));
  m.def("serialize_grammar", &serialize_grammar, py::arg("grammar"));
  m.def("eval_amplitude", [](const std::string& text) { return eval_amplitude_expr(text); },
        py::arg("text"));

  m.def(
      "word_probability",
      [](const QuantumGrammar& g, const std::string& word, std::optional<std::size_t> max_steps) {
        const auto r = word_probability(g, g.parse_form(word), limits(max_steps));
        py::dict d;
        d["probability"] = r.probability;
        d["amplitude"] = components(r.amplitude);
        d["derivations"] = r.derivations;
        d["complete"] = r.complete;
        return d;
      },
      py::arg("grammar"), py::arg("word"), py::arg("max_steps") = py::none());

  m.def(
      "derivations",
      [](const QuantumGrammar& g, const std::string& target, std::optional<std::size_t> max_steps) {
        const auto r = enumerate_derivations(g, g.parse_form(target), limits(max_steps));
        py::list out;
        for (const auto& d : r.derivations) {
          std::vector<std::string> forms;
          for (const auto& f : replay(g, d)) forms.push_back(f.to_string());
          py::dict item;
          item["forms"] = forms;
          item["amplitude"] = components(derivation_amplitude(g, d));
          out.append(item);
        }
        return out;
      },
      py::arg("grammar"), py::arg("target"), py::arg("max_steps") = py::none());

  // Reports share the tool's JSON encoding; the Python package decodes them.
  m.def(
      "_check_json",
      [](const QuantumGrammar& g, std::size_t max_len, const std::string& mode, double tolerance,
         bool structural) {
        const auto r = check_all(g, {max_len, parse_mode(mode), tolerance, structural});
        return cli::to_json(g, r).dump();
      },
      py::arg("grammar"), py::arg("max_len"), py::arg("mode"), py::arg("tolerance"),
      py::arg("structural"));

  m.def(
      "_matrix_json",
      [](const QuantumGrammar& g, const std::string& a, std::size_t max_len, double tolerance,
         bool dense) {
        const auto slice = build_evolution_matrix(g, terminal(a), max_len);
        nlohmann::json j = cli::to_json(g, slice, dense);
        j["orthogonality"] = cli::to_json(check_truncated_orthogonality(slice, tolerance));
        return j.dump();
      },
      py::arg("grammar"), py::arg("terminal"), py::arg("max_len"), py::arg("tolerance"),
      py::arg("dense"));

  m.def(
      "language",
      [](const QuantumGrammar& g, std::size_t max_len, std::size_t steps, double tolerance) {
        std::vector<std::tuple<std::string, double, std::uint64_t>> out;
        for (const auto& r : cli::language_table(g, max_len, steps, tolerance)) {
          out.emplace_back(r.word.to_string(), r.probability, r.derivations);
        }
        return out;
      },
      py::arg("grammar"), py::arg("max_len") = 10, py::arg("steps") = 64,
      py::arg("tolerance") = kDefaultTolerance);

  m.attr("__version__") = cli::kToolVersion;
}
