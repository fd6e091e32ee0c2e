#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "bivfactor/errors.hpp"
#include "bivfactor/facto.hpp"
#include "bivfactor/io.hpp"
#include "bivfactor/polygon.hpp"
#include "bivfactor/recomb.hpp"
#include "bivfactor/slopecore.hpp"

using namespace bivfactor;

namespace {

enum Exit { kOk = 0, kOther = 1, kDegenerate = 2, kParse = 3, kNotSeparable = 4, kMinDegenerate = 5,
            kPrecision = 6, kVerify = 7 };

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(std::stoll(s));
    return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

std::string point(const Point& v) { return "(" + std::to_string(v.first) + "," + std::to_string(v.second) + ")"; }

struct Options {
    std::string file;
    std::optional<u64> modulus;
    u64 seed = 0;
    bool verify = false, minimal = false, json = false;
    std::string lambda, sigma;
};

int cmd_factor(const Options& o) {
    PolyDocument doc = parse_document(read_input(o.file), o.modulus);
    std::vector<BiPoly> factors;
    FactorizationResult res;
    std::optional<AffineMap> tau;
    if (o.minimal) {
        MinimalResult mr = factor_minimal(doc.poly, o.seed);
        factors = mr.factors;
        res = mr.inner;
        tau = mr.tau;
    } else {
        res = factorization(doc.poly, o.seed);
        factors = res.factors;
    }
    if (o.verify) {
        BiPoly prod = BiPoly::constant(doc.modulus, 1);
        for (const auto& f : factors) prod = prod * f;
        if (!equal_up_to_unit(prod, doc.poly)) {
            std::cerr << "verification failed: product of factors differs from the input\n";
            return kVerify;
        }
    }
    if (o.json) {
        std::cout << factors_to_json(doc.modulus, factors, &res).dump(2) << "\n";
        return kOk;
    }
    std::cout << "modulus " << doc.modulus << "\n";
    if (tau) std::cout << "transform " << tau->to_string() << "\n";
    std::cout << "lambda " << res.lambda.to_string() << "  sigma " << res.sigma.to_string() << "  analytic factors "
              << res.s << "  recursion depth " << res.recursion_depth << (res.used_psi ? "  (psi map used)" : "")
              << "\n";
    std::cout << factors.size() << " irreducible factor(s)\n";
    for (const auto& f : factors) std::cout << "  " << format_poly(f) << "\n";
    if (o.verify) std::cout << "verified: product equals the input up to a unit\n";
    return kOk;
}

int cmd_polygon(const Options& o) {
    PolyDocument doc = parse_document(read_input(o.file), o.modulus);
    LatticePolygon P = newton_polygon(doc.poly);
    std::cout << "vertices";
    for (const auto& v : P.vertices) std::cout << " " << point(v);
    std::cout << "\nlower boundary\n";
    for (const auto& e : lower_boundary(P))
        std::cout << "  " << point(e.a) << " -> " << point(e.b) << "  normal (" << e.normal.first << ","
                  << e.normal.second << ")  length " << e.lattice_length() << "\n";
    std::cout << "r " << lattice_length(P) << "\n";
    if (P.vertices.size() >= 2) {
        MinimalLength ml = minimal_lattice_length(P);
        std::cout << "r0 " << ml.r0 << "\n";
        for (const auto& m : ml.maps) std::cout << "  minimizer " << m.to_string() << "\n";
    }
    i64 imin = P.vertices.front().first, imax = imin, jmin = P.vertices.front().second, jmax = jmin;
    for (const auto& v : P.vertices) {
        imin = std::min(imin, v.first);
        imax = std::max(imax, v.first);
        jmin = std::min(jmin, v.second);
        jmax = std::max(jmax, v.second);
    }
    std::cout << "V " << volume(P).to_string() << "\n";
    std::cout << "bounding rectangle area " << (imax - imin) * (jmax - jmin) << "\n";
    DegeneracyReport rep = degeneracy_report(doc.poly);
    for (const auto& e : rep.edges)
        std::cout << "  edge " << point(e.edge.a) << " -> " << point(e.edge.b) << "  edge polynomial "
                  << e.g.to_string("t") << "  " << (e.separable ? "separable" : "NOT separable") << "\n";
    std::cout << (rep.degenerate ? "degenerate" : "non-degenerate") << "\n";
    return kOk;
}

int cmd_hensel(const Options& o) {
    PolyDocument doc = parse_document(read_input(o.file), o.modulus);
    BiPoly F = doc.poly;
    if (F.deg_y() < 1) throw std::invalid_argument("need positive degree in y");
    Slope lam = o.lambda.empty() ? average_slope(F) : Slope(parse_rat(o.lambda));
    Rat sigma = o.sigma.empty() ? d_lambda(F, lam) - v_lambda(F, lam) + m_lambda(F, lam) : parse_rat(o.sigma);
    // the monic normalization keeps every stratum's valuation, so m_lambda can be read off F
    const Rat m = m_lambda(F, lam);
    if (sigma < m) throw PrecisionTooLow("sigma " + sigma.to_string() + " below m_lambda " + m.to_string());
    BiPoly Fm = monic_series(F, lam, sigma);
    AnalyticFactorization af = facto(Fm, lam, sigma, o.seed);
    BiPoly prod = BiPoly::constant(doc.modulus, 1);
    for (const auto& f : af.factors) prod = prod * f;
    Rat v = v_lambda(Fm, lam);
    BiPoly diff = trunc_lambda(Fm - prod, lam, v + sigma);
    Rat residual = diff.is_zero() ? Rat::infinity() : v_lambda(diff, lam) - v;
    std::cout << "lambda " << lam.to_string() << "  sigma " << sigma.to_string() << "  m_lambda " << m.to_string() << "\n";
    std::cout << af.factors.size() << " analytic factor(s)\n";
    for (const auto& f : af.factors)
        std::cout << "  " << format_poly(trunc_lambda(f, lam, v_lambda(f, lam) + sigma)) << "\n";
    std::cout << "residual valuation " << residual.to_string() << "\n";
    if (!(residual > sigma)) {
        std::cerr << "residual does not exceed sigma\n";
        return kVerify;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Factorization of bivariate polynomials over prime fields via Newton polygons"};
    app.require_subcommand(1);
    Options o;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("file", o.file, "input file, '-' for stdin")->required();
        sub->add_option("--modulus,-p", o.modulus, "prime modulus when the input has no 'p' header");
        sub->add_option("--seed", o.seed, "seed for randomized subroutines")->default_val(0);
    };
    auto* factor = app.add_subcommand("factor", "irreducible factorization");
    add_common(factor);
    factor->add_flag("--verify", o.verify, "multiply the factors back and check");
    factor->add_flag("--minimal", o.minimal, "factor through a transform of minimal lattice length");
    factor->add_flag("--json", o.json, "JSON output");
    auto* polygon = app.add_subcommand("polygon", "Newton polygon diagnostics");
    add_common(polygon);
    auto* hensel = app.add_subcommand("hensel", "analytic factorization at a given slope and precision");
    add_common(hensel);
    hensel->add_option("--lambda", o.lambda, "slope m/q (default: average slope)");
    hensel->add_option("--sigma", o.sigma, "relative precision a/b");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    try {
        if (factor->parsed()) return cmd_factor(o);
        if (polygon->parsed()) return cmd_polygon(o);
        return cmd_hensel(o);
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return kParse;
    } catch (const DegenerateInput& e) {
        std::cerr << e.what() << "\n";
        return kDegenerate;
    } catch (const NotSeparable& e) {
        std::cerr << e.what() << "\n";
        return kNotSeparable;
    } catch (const MinimallyDegenerate& e) {
        std::cerr << e.what() << "\n";
        return kMinDegenerate;
    } catch (const PrecisionTooLow& e) {
        std::cerr << e.what() << "\n";
        return kPrecision;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOther;
    }
}
