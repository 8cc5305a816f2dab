#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "twistfold/scenario.hpp"

namespace py = pybind11;
using namespace twistfold;

namespace {

py::dict check_dict(const CheckResult& c) {
    py::dict d;
    d["name"] = c.name;
    d["kind"] = c.kind;
    d["ref"] = c.ref;
    d["passed"] = c.pass;
    d["residual"] = c.residual;
    d["nu_order"] = c.nu_order;
    d["detail"] = c.detail;
    return d;
}

}  // namespace

PYBIND11_MODULE(_twistfold, m) {
    m.doc() = "Bindings for the twistfold engine";

    static py::exception<ParseError> parse_error(m, "ParseError", PyExc_ValueError);
    static py::exception<EvalError> eval_error(m, "EvalError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ParseError& e) {
            parse_error(e.what());
        } catch (const EvalError& e) {
            eval_error(e.what());
        } catch (const Error& e) {
            PyErr_SetString(PyExc_RuntimeError, e.what());
        }
    });

    m.def("print_expression", [](const std::string& src) { return print_expression(*parse_expression(src)); },
          "Canonical text of an expression.");
    m.def(
        "roundtrip",
        [](const std::string& src) {
            auto e = parse_expression(src);
            return same_tree(*e, *parse_expression(print_expression(*e)));
        },
        "True if printing then parsing reproduces the tree.");

    py::class_<Scenario>(m, "Scenario")
        .def_readonly("name", &Scenario::name)
        .def_property_readonly("checks", [](const Scenario& s) {
            std::vector<std::string> names;
            for (const auto& c : s.checks) names.push_back(c.name);
            return names;
        });
    m.def("parse_scenario", &parse_scenario, py::arg("text"), py::arg("origin") = "<string>");
    m.def("load_scenario", &load_scenario, py::arg("path"));

    py::class_<Report>(m, "Report")
        .def_readonly("scenario", &Report::scenario)
        .def_readonly("twist", &Report::twist)
        .def_readonly("order", &Report::order)
        .def_property_readonly("passed", &Report::passed)
        .def_property_readonly("failed", &Report::failed)
        .def_property_readonly("ok", &Report::ok)
        .def_property_readonly("checks",
                               [](const Report& r) {
                                   py::list out;
                                   for (const auto& c : r.checks) out.append(check_dict(c));
                                   return out;
                               })
        .def("structured", [](const Report& r) { return emit_report(r, ReportFormat::structured); })
        .def("human", [](const Report& r) { return emit_report(r, ReportFormat::human); });
    m.def("run_scenario", &run_scenario, py::arg("scenario"), py::arg("seed") = 0,
          py::call_guard<py::gil_scoped_release>());

    py::class_<Workspace>(m, "Workspace")
        .def(py::init([](const Scenario& s) { return build_workspace(s); }), py::arg("scenario"))
        .def_property_readonly("order", &Workspace::order)
        .def(
            "eval",
            [](const Workspace& ws, const std::string& src, bool compact) {
                return value_str(evaluate(ws, src), compact);
            },
            py::arg("expr"), py::arg("compact") = false, "Evaluates an expression and prints the result.")
        .def(
            "kind", [](const Workspace& ws, const std::string& src) { return value_kind(evaluate(ws, src)); },
            py::arg("expr"));
}
