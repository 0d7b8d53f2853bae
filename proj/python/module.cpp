// Python bindings: a string-oriented surface over the main library
// operations. Formulas, schemes, graphs and structures travel as the same
// text formats the CLI uses; results come back as plain python values.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "foil/cli.hpp"
#include "foil/codings.hpp"
#include "foil/errors.hpp"
#include "foil/parse.hpp"
#include "foil/prenex.hpp"
#include "foil/product.hpp"
#include "foil/scheme.hpp"
#include "foil/structure.hpp"
#include "foil/suites.hpp"

namespace py = pybind11;
using namespace foil;

namespace {

Formula pf(const std::string& text) { return parse_infer(text).first; }

// Scheme argument: full scheme text, or a builtin name (fpo, vn).
Scheme scheme_arg(const std::string& text) {
  if (text == "fpo") return fpo_scheme();
  if (text == "vn") return vn_scheme();
  return read_scheme_text(text);
}

FiniteStructure structure_arg(const std::string& text) {
  std::istringstream in(text);
  return read_structure(in);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "First-order interpretation workbench: formulas, prenex classes, "
      "coding schemes, finite models, product decompositions.";

  py::register_exception<ParseError>(m, "FormulaParseError");
  py::register_exception<DomainError>(m, "FoilDomainError");
  py::register_exception<BudgetError>(m, "FoilBudgetError");

  m.def(
      "parse",
      [](const std::string& text) { return render(pf(text)); },
      py::arg("formula"),
      "Parse a formula (signature inferred) and return its canonical "
      "rendering.");

  m.def(
      "classify",
      [](const std::string& text) { return to_string(classify(pf(text))); },
      py::arg("formula"),
      "Quantifier-alternation class of the formula's prenex form, e.g. "
      "'Sigma 2'.");

  m.def(
      "prenex",
      [](const std::string& text) { return render(to_prenex(pf(text))); },
      py::arg("formula"), "Equivalent prenex normal form.");

  m.def(
      "translate",
      [](const std::string& scheme, const std::string& formula) {
        Scheme s = scheme_arg(scheme);
        Formula phi = parse(formula, s.source());
        Formula tilde = tilde_translate(s, phi);
        py::dict out;
        out["input_class"] = to_string(classify(phi));
        out["tilde"] = render(tilde);
        out["tilde_class"] = to_string(classify(tilde));
        return out;
      },
      py::arg("scheme"), py::arg("formula"),
      "Tilde-translation of a prenex sentence through a coding scheme. "
      "`scheme` is scheme text or a builtin name ('fpo', 'vn').");

  m.def(
      "transfer_report",
      [](const std::string& scheme, const std::string& formula) {
        Scheme s = scheme_arg(scheme);
        Formula phi = parse(formula, s.source());
        TranslationReport rep = complexity_report(s, phi);
        py::dict out;
        out["input_class"] = to_string(rep.input_class);
        out["F"] = render(rep.output);
        out["F_class"] = to_string(rep.output_class);
        out["bound"] = to_string(rep.bound);
        out["within_bound"] = rep.within_bound;
        out["hypotheses_met"] = rep.hypotheses_met;
        return out;
      },
      py::arg("scheme"), py::arg("formula"),
      "Reduction F(phi) = correctness -> tilde with its class and the "
      "transfer bound.");

  m.def(
      "eval",
      [](const std::string& structure, const std::string& formula,
         const std::map<std::string, int>& assignment) {
        FiniteStructure a = structure_arg(structure);
        return eval(a, parse(formula, a.sig()), assignment);
      },
      py::arg("structure"), py::arg("formula"),
      py::arg("assignment") = std::map<std::string, int>{},
      "Evaluate a formula on a structure (structure file text); free "
      "variables come from `assignment`.");

  m.def(
      "check_correctness",
      [](const std::string& scheme, const std::string& structure,
         const std::map<std::string, int>& params) {
        return check_correctness(scheme_arg(scheme), structure_arg(structure),
                                 params);
      },
      py::arg("scheme"), py::arg("structure"),
      py::arg("params") = std::map<std::string, int>{},
      "Whether the host structure satisfies the scheme's correctness "
      "conditions.");

  m.def(
      "decode",
      [](const std::string& scheme, const std::string& structure,
         const std::map<std::string, int>& params) {
        return write_structure(
            decode(scheme_arg(scheme), structure_arg(structure), params));
      },
      py::arg("scheme"), py::arg("structure"),
      py::arg("params") = std::map<std::string, int>{},
      "Decode the coded source structure out of a host structure; returns "
      "structure file text.");

  m.def(
      "encode_graph",
      [](const std::string& graph) {
        std::istringstream in(graph);
        return write_structure(
            encode_graph_as_poset(read_graph(in)).structure());
      },
      py::arg("graph"),
      "Encode an undirected graph (graph file text) as a finite partial "
      "order; returns structure file text.");

  m.def(
      "vn_fragment",
      [](int n) {
        if (n < 0) throw DomainError("fragment size must be >= 0");
        return write_structure(vn_fragment(n).structure());
      },
      py::arg("n"),
      "The arithmetic fragment order on numbers {0..n}; returns structure "
      "file text.");

  m.def(
      "fv_decompose",
      [](const std::string& formula, int k) {
        FVDecomposition dec = fv_decompose(pf(formula), k);
        std::vector<std::vector<std::string>> clauses;
        for (const auto& cl : dec.clauses) {
          std::vector<std::string> parts;
          for (const auto& f : cl) parts.push_back(render(f));
          clauses.push_back(parts);
        }
        py::dict out;
        out["components"] = dec.components;
        out["clauses"] = clauses;
        return out;
      },
      py::arg("formula"), py::arg("k"),
      "Decomposition of a formula over (k+1)-fold powers: disjunction of "
      "component-formula clauses.");

  m.def(
      "fv_verify",
      [](const std::string& formula, int k, const std::string& structure) {
        FiniteStructure a = structure_arg(structure);
        return fv_verify(parse(formula, a.sig()), k, a);
      },
      py::arg("formula"), py::arg("k"), py::arg("structure"),
      "Exhaustively verify the decomposition equivalence on a small base "
      "structure.");

  m.def(
      "check_suite",
      [](const std::string& name) {
        std::vector<py::dict> rows;
        for (const auto& r : run_suite(name)) {
          py::dict d;
          d["name"] = r.name;
          d["expected"] = r.expected;
          d["got"] = r.got;
          d["pass"] = r.pass;
          rows.push_back(d);
        }
        return rows;
      },
      py::arg("name"),
      "Run an invariant suite (formula, models, scheme, codings, fv, all).");

  m.def("suite_names", &suite_names, "Names of the invariant suites.");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"),
      "Invoke the batch CLI in-process; returns (exit_code, stdout, "
      "stderr).");
}
