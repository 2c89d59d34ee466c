#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "quivar/catalog.hpp"
#include "quivar/errors.hpp"
#include "quivar/qgeom.hpp"
#include "quivar/report.hpp"

namespace py = pybind11;
using namespace quivar;

namespace {

std::vector<CycMatrix> as_matrices(const std::vector<std::variant<CycMatrix, std::string>>& gens) {
    std::vector<CycMatrix> out;
    for (const auto& g : gens) out.push_back(std::holds_alternative<CycMatrix>(g) ? std::get<CycMatrix>(g) : parse_matrix(std::get<std::string>(g)));
    if (out.empty()) throw Error("need at least one generator");
    return out;
}

py::dict result_dict(const ClaimResult& r) {
    py::dict d;
    d["id"] = r.id;
    d["status"] = std::string(to_string(r.status));
    d["expected"] = r.expected;
    d["computed"] = r.computed;
    d["details"] = r.details;
    d["runtime_ms"] = r.runtime_ms;
    return d;
}

std::vector<std::string> coefficient_strings(const MolienSeries& s) {
    std::vector<std::string> out;
    for (const auto& c : s.coefficients) out.push_back(c.get_str());
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact qubit/quartit invariant theory over Q(zeta_24)";

    // Translators run most recent first, so the base class goes first.
    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base);
    py::register_exception<CapExceeded>(m, "CapExceeded", base);
    py::register_exception<UnknownName>(m, "UnknownName", base);
    py::register_exception<NotNormalized>(m, "NotNormalized", base);

    py::class_<CycNum>(m, "CycNum")
        .def(py::init([](const std::string& s) { return parse_cyclotomic(s); }))
        .def(py::init<long long>())
        .def("__str__", &CycNum::to_string)
        .def("__repr__", [](const CycNum& a) { return "CycNum('" + a.to_string() + "')"; })
        .def("__complex__", &CycNum::embed)
        .def("conj", &CycNum::conj)
        .def("is_rational", &CycNum::is_rational)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(py::self / py::self)
        .def(-py::self)
        .def(py::self == py::self)
        .def("__hash__", &CycNum::hash);

    py::class_<CycMatrix>(m, "Matrix")
        .def(py::init([](const std::string& s) { return parse_matrix(s); }))
        .def_property_readonly("rows", &CycMatrix::rows)
        .def_property_readonly("cols", &CycMatrix::cols)
        .def("__getitem__", [](const CycMatrix& a, std::pair<int, int> rc) { return a.at(rc.first, rc.second); })
        .def("__str__", &CycMatrix::to_string)
        .def("__repr__", [](const CycMatrix& a) { return "Matrix('" + a.to_string() + "')"; })
        .def(py::self * py::self)
        .def(py::self == py::self)
        .def("adjoint", &CycMatrix::adjoint)
        .def("det", [](const CycMatrix& a) { return det(a); })
        .def("is_unitary", [](const CycMatrix& a) { return mat_props(a).is_unitary; })
        .def("is_orthogonal", [](const CycMatrix& a) { return mat_props(a).is_orthogonal; });
    m.def("kron", [](const CycMatrix& a, const CycMatrix& b) { return kron(a, b); });

    py::class_<MultiPoly>(m, "Poly")
        .def(py::init([](const std::string& s, int nvars) { return parse_polynomial(s, nvars); }), py::arg("text"), py::arg("nvars"))
        .def_property_readonly("nvars", &MultiPoly::nvars)
        .def_property_readonly("degree", &MultiPoly::degree)
        .def("__len__", &MultiPoly::term_count)
        .def("__str__", &MultiPoly::to_string)
        .def("__repr__", [](const MultiPoly& p) { return "Poly('" + p.to_string() + "')"; })
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(py::self == py::self)
        .def("substitute", [](const MultiPoly& p, const CycMatrix& a) { return substitute_linear(p, a); });
    m.def("proportional", [](const MultiPoly& f, const MultiPoly& g) { return proportional(f, g); });

    py::class_<FiniteMatrixGroup>(m, "Group")
        .def_property_readonly("order", &FiniteMatrixGroup::order)
        .def_property_readonly("dimension", &FiniteMatrixGroup::dimension)
        .def("__len__", &FiniteMatrixGroup::order)
        .def("__contains__", &FiniteMatrixGroup::contains)
        .def("fingerprint", [](const FiniteMatrixGroup& g) { return order_histogram(g).to_string(); })
        .def("order_histogram", [](const FiniteMatrixGroup& g) { return order_histogram(g).order_histogram; })
        .def("center_order", [](const FiniteMatrixGroup& g) { return center(g).order(); });

    m.def("closure", [](const std::vector<std::variant<CycMatrix, std::string>>& gens, std::uint64_t cap) {
        py::gil_scoped_release nogil;
        return FiniteMatrixGroup::closure(as_matrices(gens), cap);
    }, py::arg("generators"), py::arg("cap") = kDefaultClosureCap);
    m.def("molien_series", [](const FiniteMatrixGroup& g, int order, unsigned threads) {
        py::gil_scoped_release nogil;
        return coefficient_strings(molien_series(g, order, threads));
    }, py::arg("group"), py::arg("order") = kDefaultSeriesOrder, py::arg("threads") = 1);
    m.def("expand_closed_form", [](const std::string& form, int order) {
        return coefficient_strings(expand_closed_form(parse_closed_form(form), order));
    }, py::arg("form"), py::arg("order") = kDefaultSeriesOrder);
    m.def("reynolds_basis", [](const FiniteMatrixGroup& g, int degree) {
        py::gil_scoped_release nogil;
        return reynolds_basis(g, degree);
    }, py::arg("group"), py::arg("degree"));
    m.def("is_invariant", [](const MultiPoly& f, const std::vector<std::variant<CycMatrix, std::string>>& gens) {
        const auto ms = as_matrices(gens);
        return is_invariant(f, ms);
    });
    m.def("relation_holds", [](const std::string& expr, int nvars, const PolyEnv& env) { return relation_check(expr, nvars, env); },
          py::arg("expr"), py::arg("nvars"), py::arg("env") = PolyEnv{});

    m.def("bloch_map", [](cplx a, cplx b) {
        const BlochVector v = bloch_map({a, b});
        return std::array<double, 3>{v.xi, v.eta, v.zeta};
    });
    m.def("stereographic", [](double xi, double eta, double zeta) -> std::optional<cplx> {
        const RiemannPoint r = stereographic({xi, eta, zeta});
        if (r.is_infinity()) return std::nullopt;
        return r.value();
    }, "Riemann-sphere image; None for the point at infinity");
    m.def("second_hopf", [](cplx a, cplx b, cplx c, cplx d) {
        const S4Point p = second_hopf({a, b, c, d});
        return std::array<double, 5>{p.xi, p.eta, p.u, p.v, p.zeta};
    });
    m.def("concurrence", [](cplx a, cplx b, cplx c, cplx d) { return entanglement({a, b, c, d}).c; });

    py::class_<Catalog>(m, "Catalog")
        .def_static("builtin", &Catalog::builtin)
        .def_static("load", [](const std::string& path) { return Catalog::load_file(path); })
        .def_static("parse", [](const std::string& text) { return Catalog::parse(text); })
        .def_property_readonly("schema_version", &Catalog::schema_version)
        .def("claim_ids", &Catalog::claim_ids)
        .def("ids", [](const Catalog& c, const std::string& kind) { return c.ids(entity_kind_from_string(kind)); })
        .def("gate", [](const Catalog& c, const std::string& id) { return c.get_named(EntityKind::gate, id).gate(); })
        .def("invariant", [](const Catalog& c, const std::string& id) { return c.get_named(EntityKind::invariant, id).poly(); })
        .def("group", [](const Catalog& c, const std::string& id, std::uint64_t cap) {
            py::gil_scoped_release nogil;
            RunOptions o;
            o.cap = cap;
            return c.group(id, o);
        }, py::arg("id"), py::arg("cap") = kDefaultClosureCap)
        .def("run_claim", [](const Catalog& c, const std::string& id) {
            ClaimResult r;
            {
                py::gil_scoped_release nogil;
                r = c.run_claim(id);
            }
            return result_dict(r);
        })
        .def("run_claims", [](const Catalog& c, const std::string& glob, unsigned threads) {
            std::vector<ClaimResult> rs;
            {
                py::gil_scoped_release nogil;
                RunOptions o;
                o.threads = threads;
                rs = c.run_claims(glob, o);
            }
            py::list out;
            for (const auto& r : rs) out.append(result_dict(r));
            return out;
        }, py::arg("glob") = "*", py::arg("threads") = 1)
        .def("report", [](const Catalog& c, const std::string& glob, unsigned threads, std::optional<std::string> timestamp) {
            py::gil_scoped_release nogil;
            RunOptions o;
            o.threads = threads;
            ReportOptions ro;
            ro.timestamp = timestamp;
            return render_report(c, c.run_claims(glob, o), o, ro);
        }, py::arg("glob") = "*", py::arg("threads") = 1, py::arg("timestamp") = std::nullopt);

    m.def("glob_match", &glob_match);
    m.attr("__version__") = std::string(tool_version());
}
