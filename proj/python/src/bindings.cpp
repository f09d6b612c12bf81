#include "confrac/cli.hpp"
#include "confrac/errors.hpp"
#include "confrac/inequalities.hpp"
#include "confrac/ivp.hpp"
#include "confrac/report.hpp"
#include "confrac/taylor.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace confrac;

namespace {

ConformableFn fn(const std::string& text, double alpha) {
    return ConformableFn::from_text(text, Alpha(alpha));
}

QuadratureConfig quad(double abs_tol, double rel_tol) {
    QuadratureConfig q;
    q.abs_tol = abs_tol;
    q.rel_tol = rel_tol;
    q.validate();
    return q;
}

LinearOperator make_operator(int order, const std::optional<std::vector<std::string>>& coeffs, double alpha) {
    std::vector<ConformableFn> p;
    if (coeffs) {
        for (const auto& c : *coeffs) p.push_back(fn(c, alpha));
    }
    return LinearOperator(order, std::move(p), Alpha(alpha));
}

py::dict hypothesis_dict(const HypothesisCheck& h) {
    py::dict d;
    d["name"] = h.name;
    d["verified"] = h.verified;
    d["witness"] = h.witness ? py::cast(*h.witness) : py::none();
    d["grid"] = h.grid;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Conformable fractional calculus: derivatives, integrals, Taylor expansions, "
              "linear IVPs and integral inequalities.";

    static py::exception<Error> base(m, "ConfracError");
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
    py::register_exception<NumericError>(m, "NumericError", base.ptr());
    py::register_exception<HypothesisError>(m, "HypothesisError", base.ptr());

    m.def("parse", [](const std::string& text) { return to_text(parse(text)); }, py::arg("text"),
          "Parse an expression and return its canonical fully parenthesized form.");
    m.def(
        "derivative_text",
        [](const std::string& text, double alpha, int n) {
            return to_text(frac_derivative_expr(parse(text), Alpha(alpha), n));
        },
        py::arg("expr"), py::arg("alpha"), py::arg("order") = 1, "Symbolic D^n_alpha of an expression.");
    m.def(
        "evaluate", [](const std::string& text, double t, double alpha) { return fn(text, alpha)(t); },
        py::arg("expr"), py::arg("t"), py::arg("alpha") = 1.0);

    m.def(
        "frac_deriv",
        [](const std::string& text, double alpha, double t, int order) {
            return frac_deriv_n(fn(text, alpha), Alpha(alpha), order, t);
        },
        py::arg("expr"), py::arg("alpha"), py::arg("t"), py::arg("order") = 1);
    m.def(
        "frac_integral",
        [](const std::string& text, double alpha, double a, double b, double abs_tol, double rel_tol) {
            return frac_integral(fn(text, alpha), Alpha(alpha), a, b, quad(abs_tol, rel_tol));
        },
        py::arg("expr"), py::arg("alpha"), py::arg("a"), py::arg("b"), py::arg("abs_tol") = 1e-10,
        py::arg("rel_tol") = 1e-10, "Orientation-signed int_a^b f(t) t^(alpha-1) dt.");

    m.def(
        "taylor_poly",
        [](const std::string& text, double alpha, int n, double center, double at) {
            return taylor_poly(fn(text, alpha), Alpha(alpha), n, center, at);
        },
        py::arg("expr"), py::arg("alpha"), py::arg("n"), py::arg("center"), py::arg("at"));
    m.def(
        "taylor_remainder",
        [](const std::string& text, double alpha, int n, double center, double at) {
            return taylor_remainder(fn(text, alpha), Alpha(alpha), n, center, at);
        },
        py::arg("expr"), py::arg("alpha"), py::arg("n"), py::arg("center"), py::arg("at"));
    m.def(
        "remainder_split_residual",
        [](const std::string& text, double alpha, int n, double a, double b, double t) {
            return remainder_split_residual(fn(text, alpha), Alpha(alpha), n, Interval(a, b), t);
        },
        py::arg("expr"), py::arg("alpha"), py::arg("n"), py::arg("a"), py::arg("b"), py::arg("t"));
    m.def(
        "binomial_identity_residual",
        [](int n, double alpha, double t, double s, double r) {
            return binomial_identity_residual(n, Alpha(alpha), t, s, r);
        },
        py::arg("n"), py::arg("alpha"), py::arg("t"), py::arg("s"), py::arg("r"));

    m.def(
        "cauchy_kernel", [](int n, double alpha, double t, double s) { return cauchy_kernel(n, Alpha(alpha), t, s); },
        py::arg("n"), py::arg("alpha"), py::arg("t"), py::arg("s"));
    m.def(
        "cauchy_function",
        [](int order, double alpha, double s, double t, std::optional<std::vector<std::string>> coeffs, int steps) {
            return cauchy_function(make_operator(order, coeffs, alpha), s, t, steps);
        },
        py::arg("order"), py::arg("alpha"), py::arg("s"), py::arg("t"), py::arg("coeffs") = py::none(),
        py::arg("steps") = kAutoSteps);
    m.def(
        "solve",
        [](int order, const std::string& rhs, double alpha, double s, double t,
           std::optional<std::vector<std::string>> coeffs, std::optional<std::vector<double>> init, int steps) {
            const IvpSpec spec{make_operator(order, coeffs, alpha), fn(rhs, alpha), s,
                               init.value_or(std::vector<double>(order, 0.0))};
            return solve_full(spec, t, steps);
        },
        py::arg("order"), py::arg("rhs"), py::arg("alpha"), py::arg("s"), py::arg("t"),
        py::arg("coeffs") = py::none(), py::arg("init") = py::none(), py::arg("steps") = kAutoSteps,
        "y(t) for D^n y + sum p_i D^(n-i) y = rhs with D^i y(s) = init[i].");

    m.def(
        "steffensen_ell",
        [](const std::string& g, double alpha, double a, double b) {
            return steffensen_ell(fn(g, alpha), Alpha(alpha), Interval(a, b)).ell;
        },
        py::arg("g"), py::arg("alpha"), py::arg("a"), py::arg("b"));

    py::class_<InequalityReport>(m, "Report")
        .def_property_readonly("theorem", [](const InequalityReport& r) { return std::string(theorem_id(r.theorem)); })
        .def_readonly("alpha", &InequalityReport::alpha)
        .def_readonly("a", &InequalityReport::a)
        .def_readonly("b", &InequalityReport::b)
        .def_readonly("lower", &InequalityReport::lower)
        .def_readonly("actual", &InequalityReport::actual)
        .def_readonly("upper", &InequalityReport::upper)
        .def_readonly("slack_low", &InequalityReport::slack_low)
        .def_readonly("slack_high", &InequalityReport::slack_high)
        .def_readonly("holds", &InequalityReport::holds)
        .def_readonly("details", &InequalityReport::details)
        .def_property_readonly("hypotheses",
                               [](const InequalityReport& r) {
                                   py::list out;
                                   for (const auto& h : r.hypotheses) out.append(hypothesis_dict(h));
                                   return out;
                               })
        .def_property_readonly("hypotheses_verified", &InequalityReport::hypotheses_verified)
        .def("to_json", [](const InequalityReport& r) { return emit_report(r, Format::Json); })
        .def("to_text", [](const InequalityReport& r) { return emit_report(r, Format::Text); })
        .def("__repr__", [](const InequalityReport& r) {
            return "<Report " + std::string(theorem_id(r.theorem)) + (r.holds ? " holds>" : " violated>");
        });

    m.def(
        "check",
        [](const std::string& ineq, double alpha, double a, double b, std::optional<std::string> f,
           std::optional<std::string> g, std::optional<std::string> w, std::optional<std::string> F, int n,
           std::optional<double> m_, std::optional<double> M_, std::optional<double> m2,
           std::optional<double> M2, std::optional<double> t, int grid, std::optional<double> tol) {
            cli::CheckRequest req;
            req.ineq = ineq;
            req.alpha = alpha;
            req.a = a;
            req.b = b;
            req.f = std::move(f);
            req.g = std::move(g);
            req.w = std::move(w);
            req.F = std::move(F);
            req.n = n;
            req.m = m_;
            req.M = M_;
            req.m2 = m2;
            req.M2 = M2;
            req.t = t;
            req.grid = grid;
            req.tol = tol;
            return cli::check(req);
        },
        py::arg("ineq"), py::arg("alpha"), py::arg("a"), py::arg("b"), py::kw_only(), py::arg("f") = py::none(),
        py::arg("g") = py::none(), py::arg("w") = py::none(), py::arg("F") = py::none(), py::arg("n") = 0,
        py::arg("m") = py::none(), py::arg("M") = py::none(), py::arg("m2") = py::none(),
        py::arg("M2") = py::none(), py::arg("t") = py::none(), py::arg("grid") = 256, py::arg("tol") = py::none(),
        "Evaluate one inequality; ids as in the command-line `check --ineq`.");

    m.def("theorems", [] {
        std::vector<std::string> ids;
        for (auto th : all_theorems()) ids.emplace_back(theorem_id(th));
        return ids;
    });
}
