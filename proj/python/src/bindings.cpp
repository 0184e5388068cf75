#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <variant>
#include <vector>

#include "unwindr/analytic.hpp"
#include "unwindr/blaschke.hpp"
#include "unwindr/error.hpp"
#include "unwindr/laws.hpp"
#include "unwindr/unwind.hpp"
#include "unwindr/weiss.hpp"

namespace py = pybind11;
using namespace unwindr;

namespace {

using ComplexArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;
using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<cplx> to_vector(const ComplexArray& a) {
    if (a.ndim() != 1) throw py::value_error("expected a one-dimensional array");
    return {a.data(), a.data() + a.size()};
}

std::vector<double> to_real(const RealArray& a) {
    if (a.ndim() != 1) throw py::value_error("expected a one-dimensional array");
    return {a.data(), a.data() + a.size()};
}

ComplexArray to_array(std::span<const cplx> v) {
    ComplexArray out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

RealArray to_array(std::span<const double> v) {
    RealArray out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

/// "dirichlet", "h1", "sobolev:<s>" or a sequence of explicit weights.
GammaWeights gamma_from(const py::object& g) {
    if (py::isinstance<py::str>(g)) {
        const auto text = g.cast<std::string>();
        if (text == "dirichlet") return GammaWeights::dirichlet();
        if (text == "h1") return GammaWeights::h1();
        if (text.rfind("sobolev:", 0) == 0) return GammaWeights::sobolev(std::stod(text.substr(8)));
        throw py::value_error("gamma must be dirichlet, h1, sobolev:<s> or a weight sequence");
    }
    return GammaWeights::explicit_values(g.cast<std::vector<double>>());
}

ShiftStrategy shift_from(const std::string& s) {
    if (s == "origin") return ShiftStrategy::origin;
    if (s == "maximize") return ShiftStrategy::maximize_selector;
    throw py::value_error("shift must be 'origin' or 'maximize'");
}

py::dict weiss_dict(const WeissFactorization& w) {
    py::dict d;
    d["inner"] = to_array(w.inner.values());
    d["outer_samples"] = to_array(w.outer_samples.values());
    d["outer"] = to_array(w.outer.coeffs());
    d["outer_tail_fraction"] = w.outer_tail_fraction;
    d["input_negative_fraction"] = w.input_negative_fraction;
    d["min_modulus"] = w.min_modulus;
    d["max_modulus"] = w.max_modulus;
    return d;
}

py::dict unwind_dict(const UnwindingExpansion& e) {
    py::list terms, diagnostics;
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
        py::dict t;
        t["coefficient"] = e.terms[i].coefficient;
        t["factor"] = to_array(e.terms[i].factor.values());
        t["shift"] = e.shifts[i];
        terms.append(t);
    }
    for (const auto& s : e.diagnostics) {
        py::dict d;
        d["residual_l2"] = s.residual_l2;
        d["residual_sup"] = s.residual_sup;
        d["norm_x"] = s.norm_x;
        d["norm_y"] = s.norm_y;
        d["min_boundary_modulus"] = s.min_boundary_modulus;
        d["outer_tail_fraction"] = s.outer_tail_fraction;
        d["working_grid"] = s.working_grid;
        diagnostics.append(d);
    }
    py::dict d;
    d["terms"] = terms;
    d["diagnostics"] = diagnostics;
    d["remainder"] = to_array(e.remainder.coeffs());
    d["input_norm_x"] = e.input_norm_x;
    d["input_l2"] = e.input_l2;
    d["termination"] = std::string(to_string(e.termination));
    d["steps"] = e.steps();
    d["grid"] = e.grid;
    BoundarySamples sum = BoundarySamples::constant(e.grid, 0.0);
    for (const auto& t : term_samples(e)) sum = sum + t;
    d["reconstruction"] = to_array((sum + remainder_term(e)).values());
    return d;
}

}  // namespace

PYBIND11_MODULE(_unwindr, m) {
    m.doc() = "Blaschke factorization and unwinding series on the unit circle";

    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
    error_type.call_once_and_store_result(
        [&] { return py::exception<Error>(m, "UnwindrError", PyExc_RuntimeError); });
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            const py::object& type = error_type.get_stored();
            py::object inst = type(e.what());
            inst.attr("name") = e.name();
            PyErr_SetObject(type.ptr(), inst.ptr());
        }
    });

    m.def("default_grid_size", &default_grid_size, py::arg("n"));

    m.def(
        "to_samples",
        [](const ComplexArray& coeffs, std::size_t grid) {
            return to_array(to_samples(SpectralSignal(to_vector(coeffs)), grid).values());
        },
        py::arg("coeffs"), py::arg("grid"), "Boundary samples of sum c_n z^n at grid points.");
    m.def(
        "to_spectrum",
        [](const ComplexArray& samples, std::size_t n, double analytic_tol) {
            return to_array(to_spectrum(BoundarySamples(to_vector(samples)), n, analytic_tol).signal.coeffs());
        },
        py::arg("samples"), py::arg("n"), py::arg("analytic_tol") = kAnalyticTolerance);
    m.def(
        "analytic_signal", [](const RealArray& u) { return to_array(analytic_signal(to_real(u)).values()); },
        py::arg("u"));
    m.def(
        "hilbert_transform", [](const RealArray& u) { return to_array(hilbert_transform(to_real(u))); },
        py::arg("u"));
    m.def(
        "norm_x",
        [](const ComplexArray& coeffs, const py::object& gamma) {
            return norm_x(SpectralSignal(to_vector(coeffs)), gamma_from(gamma));
        },
        py::arg("coeffs"), py::arg("gamma") = "dirichlet");
    m.def(
        "norm_y",
        [](const ComplexArray& coeffs, const py::object& gamma) {
            return norm_y(SpectralSignal(to_vector(coeffs)), gamma_from(gamma));
        },
        py::arg("coeffs"), py::arg("gamma") = "dirichlet");

    m.def(
        "blaschke_eval",
        [](const ComplexArray& roots, std::size_t grid, std::size_t origin_multiplicity) {
            return to_array(blaschke_eval(BlaschkeProduct(origin_multiplicity, to_vector(roots)), grid).values());
        },
        py::arg("roots"), py::arg("grid"), py::arg("origin_multiplicity") = 0);
    m.def(
        "phase_derivative",
        [](const ComplexArray& roots, std::size_t grid, std::size_t origin_multiplicity) {
            return to_array(phase_derivative(BlaschkeProduct(origin_multiplicity, to_vector(roots)), grid));
        },
        py::arg("roots"), py::arg("grid"), py::arg("origin_multiplicity") = 0);
    m.def(
        "factor_polynomial",
        [](const ComplexArray& coeffs) {
            const auto p = factor_polynomial(to_vector(coeffs));
            py::dict d;
            d["inside_roots"] = to_array(p.inside_roots);
            d["outside_roots"] = to_array(p.outside_roots);
            d["outer"] = to_array(p.outer.coeffs());
            d["unimodular"] = p.unimodular;
            d["origin_multiplicity"] = p.blaschke.origin_multiplicity();
            return d;
        },
        py::arg("coeffs"), "Root-based factorization of a polynomial.");

    m.def(
        "weiss_factorize",
        [](const ComplexArray& samples, double modulus_floor) {
            WeissOptions opts;
            opts.modulus_floor = modulus_floor;
            return weiss_dict(weiss_factorize(BoundarySamples(to_vector(samples)), opts));
        },
        py::arg("samples"), py::arg("modulus_floor") = 1e-6);
    m.def(
        "stabilized_factorize",
        [](const ComplexArray& samples, std::optional<cplx> offset, std::optional<cplx> shift) {
            if (offset.has_value() == shift.has_value())
                throw py::value_error("pass exactly one of offset or shift");
            const Stabilizer st = offset ? Stabilizer{ConstantOffset{*offset}} : Stabilizer{DiskShift{*shift}};
            const auto r = stabilized_factorize(BoundarySamples(to_vector(samples)), st);
            py::dict d = weiss_dict(r.factorization);
            d["perturbation"] = r.perturbation;
            d["strategy"] = r.strategy;
            return d;
        },
        py::arg("samples"), py::kw_only(), py::arg("offset") = py::none(), py::arg("shift") = py::none());
    m.def(
        "denoise",
        [](const RealArray& u, int rounds) {
            const auto r = denoise(to_real(u), rounds);
            py::dict d;
            d["output"] = to_array(r.output.values());
            d["modulus_deviation"] = r.modulus_deviation;
            return d;
        },
        py::arg("u"), py::arg("rounds") = 2);

    m.def(
        "unwind",
        [](const ComplexArray& coeffs, std::size_t max_steps, double tol, const py::object& gamma,
           const std::string& shift, std::size_t grid) {
            UnwindConfig cfg;
            cfg.max_steps = max_steps;
            cfg.residual_tol = tol;
            cfg.gamma = gamma_from(gamma);
            cfg.shift = shift_from(shift);
            cfg.grid = grid;
            return unwind_dict(unwind(SpectralSignal(to_vector(coeffs)), cfg));
        },
        py::arg("coeffs"), py::arg("max_steps") = 32, py::arg("tol") = 1e-8, py::arg("gamma") = "dirichlet",
        py::arg("shift") = "origin", py::arg("grid") = 0);

    m.def("law_suite_names", [] {
        std::vector<std::string> out;
        for (auto n : law_suite_names()) out.emplace_back(n);
        return out;
    });
    m.def(
        "run_law_suite",
        [](const std::string& suite, std::uint64_t seed) {
            py::list out;
            for (const auto& r : run_law_suite(suite, seed)) {
                py::dict d;
                d["name"] = r.name;
                d["passed"] = r.passed;
                d["cases"] = r.cases;
                d["worst"] = r.worst;
                d["tolerance"] = r.tolerance;
                out.append(d);
            }
            return out;
        },
        py::arg("suite") = "all", py::arg("seed") = 0);
}
