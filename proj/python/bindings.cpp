#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bivfactor/errors.hpp"
#include "bivfactor/facto.hpp"
#include "bivfactor/io.hpp"
#include "bivfactor/polygon.hpp"
#include "bivfactor/recomb.hpp"
#include "bivfactor/slopecore.hpp"

namespace py = pybind11;
using namespace bivfactor;

namespace {

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(std::stoll(s));
    return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

std::vector<std::string> formatted(const std::vector<BiPoly>& fs) {
    std::vector<std::string> out;
    for (const auto& f : fs) out.push_back(format_poly(f));
    return out;
}

py::dict factor(const std::string& text, std::optional<u64> p, u64 seed, bool minimal) {
    PolyDocument doc = parse_document(text, p);
    py::dict d;
    FactorizationResult res;
    std::vector<BiPoly> factors;
    if (minimal) {
        MinimalResult mr = factor_minimal(doc.poly, seed);
        factors = mr.factors;
        res = mr.inner;
        d["transform"] = mr.tau.to_string();
    } else {
        res = factorization(doc.poly, seed);
        factors = res.factors;
    }
    d["modulus"] = doc.modulus;
    d["factors"] = formatted(factors);
    d["lambda"] = res.lambda.to_string();
    d["sigma"] = res.sigma.to_string();
    d["s"] = res.s;
    d["recursion_depth"] = res.recursion_depth;
    d["used_psi"] = res.used_psi;
    return d;
}

py::dict polygon(const std::string& text, std::optional<u64> p) {
    PolyDocument doc = parse_document(text, p);
    LatticePolygon P = newton_polygon(doc.poly);
    py::dict d;
    d["vertices"] = P.vertices;
    d["r"] = lattice_length(P);
    if (P.vertices.size() >= 2) d["r0"] = minimal_lattice_length(P).r0;
    d["volume"] = volume(P).to_string();
    d["degenerate"] = is_degenerate(doc.poly);
    return d;
}

py::dict hensel(const std::string& text, std::optional<u64> p, std::optional<std::string> lambda,
                std::optional<std::string> sigma, u64 seed) {
    PolyDocument doc = parse_document(text, p);
    const BiPoly& F = doc.poly;
    Slope lam = lambda ? Slope(parse_rat(*lambda)) : average_slope(F);
    Rat sg = sigma ? parse_rat(*sigma) : d_lambda(F, lam) - v_lambda(F, lam) + m_lambda(F, lam);
    if (sg < m_lambda(F, lam)) throw PrecisionTooLow("sigma " + sg.to_string() + " below m_lambda");
    BiPoly Fm = monic_series(F, lam, sg);
    AnalyticFactorization af = facto(Fm, lam, sg, seed);
    std::vector<BiPoly> shown;
    for (const auto& f : af.factors) shown.push_back(trunc_lambda(f, lam, v_lambda(f, lam) + sg));
    py::dict d;
    d["lambda"] = lam.to_string();
    d["sigma"] = sg.to_string();
    d["factors"] = formatted(shown);
    d["recursion_depth"] = af.recursion_depth();
    return d;
}

std::string multiply(const std::vector<std::string>& polys, u64 p) {
    BiPoly r = BiPoly::constant(p, 1);
    for (const auto& s : polys) r = r * parse_poly(s, p);
    return format_poly(r);
}

}  // namespace

PYBIND11_MODULE(_bivfactor, m) {
    m.doc() = "Factorization of bivariate polynomials over prime fields";
    static py::exception<Error> base(m, "Error");
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<DegenerateInput>(m, "DegenerateInput", base.ptr());
    py::register_exception<NotSeparable>(m, "NotSeparable", base.ptr());
    py::register_exception<MinimallyDegenerate>(m, "MinimallyDegenerate", base.ptr());
    py::register_exception<PrecisionTooLow>(m, "PrecisionTooLow", base.ptr());
    py::register_exception<ModulusNotPrime>(m, "ModulusNotPrime", base.ptr());

    m.def("factor", &factor, py::arg("poly"), py::arg("p") = py::none(), py::arg("seed") = 0,
          py::arg("minimal") = false, "Irreducible factorization; factors come back in the expression grammar.");
    m.def("polygon", &polygon, py::arg("poly"), py::arg("p") = py::none(), "Newton polygon quantities.");
    m.def("hensel", &hensel, py::arg("poly"), py::arg("p") = py::none(), py::arg("lam") = py::none(),
          py::arg("sigma") = py::none(), py::arg("seed") = 0, "Analytic factors at a slope and relative precision.");
    m.def("multiply", &multiply, py::arg("polys"), py::arg("p"), "Product of polynomials given as text.");
}
