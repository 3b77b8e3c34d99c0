#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "jetreduce/cli.hpp"
#include "jetreduce/lft.hpp"

namespace py = pybind11;
using namespace jetreduce;

namespace {

py::object loads(const std::string& s) { return py::module_::import("json").attr("loads")(s); }

std::vector<py::dict> diagnostics_of(const std::vector<dsl::Diagnostic>& ds) {
  std::vector<py::dict> out;
  for (const auto& d : ds) {
    py::dict e;
    e["kind"] = dsl::to_string(d.kind);
    e["line"] = d.span.line;
    e["col"] = d.span.col;
    e["offset"] = d.span.offset;
    e["length"] = d.span.length;
    e["message"] = d.message;
    out.push_back(e);
  }
  return out;
}

dsl::Document parse_checked(const std::string& text, std::optional<int> jet_order) {
  dsl::ParseOptions opt;
  opt.jet_order = jet_order;
  try {
    return dsl::parse_or_throw(text, "<input>", opt);
  } catch (const dsl::ParseError& e) {
    throw py::value_error(e.what());
  }
}

}  // namespace

PYBIND11_MODULE(_jetreduce, m) {
  m.doc() = "Variational bicomplex engine: Euler-Lagrange forms, momentum maps and zero loci.";

  m.def("diagnostics", [](const std::string& text) { return diagnostics_of(dsl::parse(text).diagnostics); },
        py::arg("text"), "Parse diagnostics of a document; empty when it is valid.");

  m.def("format", [](const std::string& text) { return dsl::print(parse_checked(text, std::nullopt)); },
        py::arg("text"), "Canonical rendering of a document. Raises ValueError on parse errors.");

  m.def(
      "euler_lagrange",
      [](const std::string& text, std::optional<int> jet_order) {
        dsl::Document doc = parse_checked(text, jet_order);
        py::dict out;
        for (const auto& T : doc.theories) {
          auto d = premultisymplectic(*T);
          const JetSpace& s = *T->space;
          py::dict forms;
          if (T->density) {
            forms["L"] = to_text(d.lagrangian, s);
            forms["EL"] = to_text(d.el, s);
            forms["gamma"] = to_text(d.gamma, s);
          }
          forms["omega"] = to_text(d.omega, s);
          out[py::str(T->name)] = forms;
        }
        return out;
      },
      py::arg("text"), py::arg("jet_order") = py::none(), "Canonical EL, gamma and omega for every theory.");

  m.def(
      "run",
      [](const std::string& command, const std::string& text, std::optional<double> tol, std::optional<int> jet_order,
         std::optional<std::string> subject) {
        cli::RunConfig cfg;
        cfg.command = command;
        cfg.subject = subject;
        if (tol) cfg.tol.numeric = *tol;
        cli::Report rep;
        rep.command = command;
        rep.inputs = {"<input>"};
        dsl::ParseOptions opt;
        opt.jet_order = jet_order;
        dsl::ParseResult pr = dsl::parse(text, opt);
        if (!pr.ok()) {
          rep.parse_failed = true;
          for (const auto& d : pr.diagnostics) rep.diagnostics.push_back(d.render(text));
        } else {
          try {
            rep.results = cli::run_document(command, pr.doc, cfg);
          } catch (const DomainError& e) {
            throw py::value_error(e.what());
          }
        }
        return loads(cli::render_json(rep));
      },
      py::arg("command"), py::arg("text"), py::arg("tol") = py::none(), py::arg("jet_order") = py::none(),
      py::arg("subject") = py::none(),
      "Run el, symmetry, verify-momap, zero-locus or check on a document; returns the JSON report as a dict.");

  m.def(
      "selftest",
      [](std::uint64_t seed, int forms, std::vector<std::string> suites) {
        SelftestOptions opt;
        opt.seed = seed;
        opt.forms = forms;
        opt.suites = std::move(suites);
        cli::Report rep;
        rep.command = "selftest";
        rep.results = cli::cmd_selftest(opt);
        return loads(cli::render_json(rep));
      },
      py::arg("seed") = 0, py::arg("forms") = 200, py::arg("suites") = selftest_suites(),
      "Randomized invariant suites; returns the JSON report as a dict.");

  m.def(
      "main",
      [](std::vector<std::string> args) {
        std::vector<char*> argv;
        std::string prog = "jetreduce";
        argv.push_back(prog.data());
        for (auto& a : args) argv.push_back(a.data());
        std::ostringstream out, err;
        int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Command-line driver; returns (exit code, stdout, stderr).");
}
