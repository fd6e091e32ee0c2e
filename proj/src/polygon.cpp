#include "bivfactor/polygon.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "bivfactor/errors.hpp"

namespace bivfactor {

namespace {

i64 cross(const Point& o, const Point& a, const Point& b) {
    return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
}

i64 iabs(i64 v) { return v < 0 ? -v : v; }

// Minimal Bezout pair: s*a + t*b = gcd(a, b) > 0.
void ext_gcd(i64 a, i64 b, i64& g, i64& s, i64& t) {
    i64 s0 = 1, s1 = 0, t0 = 0, t1 = 1, r0 = a, r1 = b;
    while (r1 != 0) {
        i64 q = r0 / r1;
        i64 tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = s0 - q * s1;
        s0 = s1;
        s1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    g = r0;
    s = s0;
    t = t0;
}

std::vector<Point> support_points(const BiPoly& f) {
    std::vector<Point> pts;
    pts.reserve(f.size());
    for (const auto& t : f.terms()) pts.emplace_back(t.i, t.j);
    return pts;
}

}  // namespace

i64 Edge::lattice_length() const { return std::gcd(iabs(b.first - a.first), iabs(b.second - a.second)); }

AffineMap AffineMap::inverse() const {
    i64 d = det();
    if (d != 1 && d != -1) throw std::invalid_argument("AffineMap::inverse: not unimodular");
    AffineMap r;
    r.M = {M[3] * d, -M[1] * d, -M[2] * d, M[0] * d};
    Point tt = {r.M[0] * t.first + r.M[1] * t.second, r.M[2] * t.first + r.M[3] * t.second};
    r.t = {-tt.first, -tt.second};
    return r;
}

std::string AffineMap::to_string() const {
    std::ostringstream os;
    os << "(i,j) -> (" << M[0] << "*i + " << M[1] << "*j + " << t.first << ", " << M[2] << "*i + " << M[3] << "*j + "
       << t.second << ")";
    return os.str();
}

LatticePolygon convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    LatticePolygon P;
    if (pts.size() <= 1) {
        P.vertices = pts;
        return P;
    }
    std::vector<Point> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {
        while (k >= lo && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    P.vertices = h;
    return P;
}

LatticePolygon newton_polygon(const BiPoly& f) {
    if (f.is_zero()) throw ZeroPolynomial("Newton polygon of zero");
    return convex_hull(support_points(f));
}

std::vector<Edge> polygon_edges(const LatticePolygon& P) {
    std::vector<Edge> out;
    const auto& v = P.vertices;
    if (v.size() < 2) return out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const Point& a = v[k];
        const Point& b = v[(k + 1) % v.size()];
        i64 di = b.first - a.first, dj = b.second - a.second;
        i64 g = std::gcd(iabs(di), iabs(dj));
        out.push_back({a, b, {-dj / g, di / g}});
    }
    return out;
}

std::vector<Edge> lower_boundary(const LatticePolygon& P) {
    std::vector<Edge> out;
    for (const auto& e : polygon_edges(P))
        if (e.normal.second > 0) out.push_back(e);
    std::sort(out.begin(), out.end(), [](const Edge& x, const Edge& y) { return x.a.first < y.a.first; });
    return out;
}

i64 lattice_length(const LatticePolygon& P) {
    i64 r = 0;
    for (const auto& e : lower_boundary(P)) r += e.lattice_length();
    return r;
}

Rat volume(const LatticePolygon& P) {
    const auto& v = P.vertices;
    if (v.size() < 3) return Rat(0);
    i64 s = 0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const auto& a = v[k];
        const auto& b = v[(k + 1) % v.size()];
        s += a.first * b.second - a.second * b.first;
    }
    return Rat(iabs(s), 2);
}

LatticePolygon apply_affine(const AffineMap& tau, const LatticePolygon& P) {
    std::vector<Point> pts;
    for (const auto& v : P.vertices) pts.push_back(tau.apply(v));
    return convex_hull(std::move(pts));
}

MinimalLength minimal_lattice_length(const LatticePolygon& P) {
    if (P.vertices.size() < 2) throw DegeneratePolygon("minimal lattice length of a point");
    MinimalLength res;
    bool first = true;
    for (const auto& e : polygon_edges(P)) {
        i64 a = e.normal.first, b = e.normal.second, g, s, t;
        ext_gcd(a, b, g, s, t);
        // first row is the normal, so the image normal of e is (1, 0)
        AffineMap plus, minus;
        plus.M = {a, b, -t, s};
        minus.M = {a, b, t, -s};
        for (AffineMap tau : {plus, minus}) {
            LatticePolygon img = apply_affine(tau, P);
            i64 mi = img.vertices.front().first, mj = img.vertices.front().second;
            for (const auto& v : img.vertices) {
                mi = std::min(mi, v.first);
                mj = std::min(mj, v.second);
            }
            tau.t = {-mi, -mj};
            i64 r = lattice_length(img);
            if (first || r < res.r0) {
                res.r0 = r;
                res.maps.clear();
                first = false;
            }
            if (r == res.r0 && std::find(res.maps.begin(), res.maps.end(), tau) == res.maps.end())
                res.maps.push_back(tau);
        }
    }
    return res;
}

BiPoly apply_affine(const AffineMap& tau, const BiPoly& f) {
    if (f.is_zero()) return f;
    BiPoly g = f.map_exponents([&](i64 i, i64 j) { return tau.apply({i, j}); });
    return g.shifted(-g.ord_y(), -g.min_x());
}

BiPoly edge_polynomial(const BiPoly& f, const Edge& e) {
    bool found = false;
    for (const auto& l : lower_boundary(newton_polygon(f)))
        if (l.a == e.a && l.b == e.b) found = true;
    if (!found) throw EdgeNotOnPolygon("edge is not a lower edge of the Newton polygon");
    return f.filter([&](const Term& t) {
        if (cross(e.a, e.b, {t.i, t.j}) != 0) return false;
        return t.i >= e.a.first && t.i <= e.b.first;
    });
}

EdgeUnivariate edge_to_univariate(const BiPoly& f, const Edge& e) {
    BiPoly fe = edge_polynomial(f, e);
    i64 di = e.b.first - e.a.first, dj = e.b.second - e.a.second;
    i64 len = std::gcd(iabs(di), iabs(dj));
    EdgeUnivariate r;
    r.q = di / len;
    r.m = -dj / len;
    r.yexp = e.a.first;
    r.xexp = e.a.second;
    std::vector<u64> c(static_cast<std::size_t>(len + 1), 0);
    for (const auto& t : fe.terms()) c[static_cast<std::size_t>((t.i - e.a.first) / r.q)] = t.c;
    r.g = UniPoly(f.modulus(), std::move(c));
    return r;
}

BiPoly univariate_to_edge(const EdgeUnivariate& eu) {
    std::vector<Term> terms;
    for (std::size_t k = 0; k < eu.g.coeffs().size(); ++k) {
        if (!eu.g[k]) continue;
        i64 kk = static_cast<i64>(k);
        terms.push_back({eu.yexp + kk * eu.q, eu.xexp - kk * eu.m, eu.g[k]});
    }
    return BiPoly(eu.g.modulus(), std::move(terms));
}

DegeneracyReport degeneracy_report(const BiPoly& f) {
    if (f.is_zero()) throw ZeroPolynomial("degeneracy test of zero");
    DegeneracyReport rep;
    for (const auto& e : lower_boundary(newton_polygon(f))) {
        EdgeUnivariate eu = edge_to_univariate(f, e);
        bool sep = uni_is_separable(eu.g);
        rep.edges.push_back({e, eu.g, sep});
        if (!sep) rep.degenerate = true;
    }
    return rep;
}

}  // namespace bivfactor
