#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hopfu/cli.hpp"
#include "hopfu/error.hpp"
#include "hopfu/families.hpp"
#include "hopfu/green.hpp"
#include "hopfu/io.hpp"

namespace py = pybind11;
using namespace hopfu;

namespace {

using io::json;

std::map<std::string, std::int64_t> green_map(const green::GreenElem& x) {
    std::map<std::string, std::int64_t> out;
    for (const auto& [lab, c] : x.coeffs()) out[std::to_string(lab.l) + "," + std::to_string(lab.i)] = c;
    return out;
}

py::tuple run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = 0;
    {
        py::gil_scoped_release release;
        code = cli::run(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
}

py::dict tensor_report(std::uint32_t p, std::uint32_t l, std::uint32_t r, std::uint32_t m, std::uint32_t s) {
    const auto f = gf::Field::make(p);
    const auto closed = green::basis_product(p, {l, r}, {m, s});
    const auto brute = umod::decompose(umod::tensor(umod::standard_module(f, l, r), umod::standard_module(f, m, s)));
    py::dict d;
    d["closed_form"] = green_map(closed);
    d["brute_force"] = green_map(green::GreenElem::from_decomposition(brute));
    d["terms"] = brute.to_terms();
    d["agreement"] = closed == green::GreenElem::from_decomposition(brute);
    return d;
}

double fpdim(std::uint32_t p, const std::map<std::string, std::uint64_t>& module) {
    std::map<umod::Label, std::uint64_t> mult;
    for (const auto& [text, c] : module) mult[umod::parse_label(text, p)] += c;
    return green::fpdim(p, mult);
}

std::vector<std::size_t> hilbert(const std::string& presentation, std::size_t max_deg) {
    return io::presentation_from_json(io::parse_text(presentation, "<presentation>")).hilbert(max_deg);
}

std::string decompose(const std::string& module) {
    return umod::decompose(io::module_from_json(io::parse_text(module, "<module>"))).to_terms();
}

py::dict solve(const std::string& presentation, std::uint64_t budget) {
    const auto a = io::presentation_from_json(io::parse_text(presentation, "<presentation>"));
    std::optional<action::SolveResult> r;
    {
        py::gil_scoped_release release;
        r = action::solve_actions(a, budget);
    }
    py::dict d;
    d["derivation_space_dim"] = r->derivation_space_dim;
    d["solutions"] = r->solutions.size();
    d["inner_faithful_solutions"] = r->inner_faithful_count();
    return d;
}

py::dict verify_family(const std::string& id, std::uint32_t p, std::uint32_t k, const std::map<std::string, gf::Elem>& params,
                       std::size_t max_deg) {
    const auto f = gf::Field::make(p, k);
    const auto r = families::verify(families::instantiate_unchecked(id, f, params), max_deg);
    py::dict checks;
    for (const auto& c : r.checks) checks[py::str(c.name)] = py::make_tuple(c.pass, c.witness);
    py::dict d;
    d["family"] = r.family;
    d["params"] = r.params;
    d["checks"] = checks;
    d["hilbert"] = r.hilbert;
    d["dual_dims"] = r.dual_dims;
    d["overall"] = r.overall();
    return d;
}

std::vector<std::string> family_ids() {
    std::vector<std::string> out;
    for (const auto& s : families::list_families()) out.push_back(s.id);
    return out;
}

}  // namespace

PYBIND11_MODULE(_hopfu, m) {
    m.doc() = "Exact computations for U = k<u,w>/(u^p, w^p - w, wu - uw - u)";

    // The exception type lives as long as the interpreter.
    static PyObject* exc = PyErr_NewException("hopfu._hopfu.HopfuError", PyExc_RuntimeError, nullptr);
    m.attr("HopfuError") = py::handle(exc);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object err = py::reinterpret_borrow<py::object>(exc)(e.what());
            err.attr("kind") = std::string(to_string(e.kind()));
            PyErr_SetObject(exc, err.ptr());
        }
    });

    m.def("run_cli", &run_cli, py::arg("args"), "Run the hopfu command line; returns (exit_code, stdout, stderr).");
    m.def("tensor", &tensor_report, py::arg("p"), py::arg("l"), py::arg("r"), py::arg("m"), py::arg("s"),
          "Decompose M(l,r) (x) M(m,s) by the closed form and by brute force.");
    m.def("fpdim", &fpdim, py::arg("p"), py::arg("module"), "Frobenius-Perron dimension of a module given as {label: multiplicity}.");
    m.def("hilbert", &hilbert, py::arg("presentation"), py::arg("max_deg") = 6, "Hilbert function of a presentation given as JSON text.");
    m.def("decompose", &decompose, py::arg("module"), "Indecomposable summands of a module given as JSON text.");
    m.def("solve_actions", &solve, py::arg("presentation"), py::arg("budget") = action::kDefaultSolveBudget,
          "Count the U-actions on a presentation given as JSON text.");
    m.def("verify_family", &verify_family, py::arg("family"), py::arg("p"), py::arg("k") = 1,
          py::arg("params") = std::map<std::string, gf::Elem>{}, py::arg("max_deg") = 6, "Verify one catalog family instance.");
    m.def("family_ids", &family_ids, "Catalog family ids in catalog order.");
}
