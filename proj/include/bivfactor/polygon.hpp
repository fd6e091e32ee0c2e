#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "bivfactor/bipoly.hpp"
#include "bivfactor/rat.hpp"

namespace bivfactor {

// Lattice point (i, j): i is the y-exponent (horizontal axis), j the x-exponent.
using Point = std::pair<i64, i64>;

struct LatticePolygon {
    std::vector<Point> vertices;  // counterclockwise, starting at the lowest leftmost vertex
    int dimension() const { return vertices.size() >= 3 ? 2 : static_cast<int>(vertices.size()) - 1; }
};

struct Edge {
    Point a, b;                   // a -> b in counterclockwise order
    std::pair<i64, i64> normal;  // inward, primitive
    i64 lattice_length() const;
};

struct AffineMap {
    std::array<i64, 4> M{1, 0, 0, 1};  // row-major [[M0, M1], [M2, M3]]
    std::pair<i64, i64> t{0, 0};

    i64 det() const { return M[0] * M[3] - M[1] * M[2]; }
    Point apply(const Point& v) const {
        return {M[0] * v.first + M[1] * v.second + t.first, M[2] * v.first + M[3] * v.second + t.second};
    }
    AffineMap inverse() const;
    std::string to_string() const;
    friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

LatticePolygon convex_hull(std::vector<Point> pts);
LatticePolygon newton_polygon(const BiPoly& f);
std::vector<Edge> polygon_edges(const LatticePolygon& p);
std::vector<Edge> lower_boundary(const LatticePolygon& p);
i64 lattice_length(const LatticePolygon& p);
Rat volume(const LatticePolygon& p);
LatticePolygon apply_affine(const AffineMap& tau, const LatticePolygon& p);

struct MinimalLength {
    i64 r0 = 0;
    std::vector<AffineMap> maps;  // every candidate map reaching r0
};
MinimalLength minimal_lattice_length(const LatticePolygon& p);

// Exponents mapped by tau, then shifted so both minimal exponents are 0.
BiPoly apply_affine(const AffineMap& tau, const BiPoly& f);

BiPoly edge_polynomial(const BiPoly& f, const Edge& e);

// F_E = x^xexp * y^yexp * g(y^q * x^(-m)).
struct EdgeUnivariate {
    UniPoly g;
    i64 xexp = 0, yexp = 0;
    i64 q = 1, m = 0;
};
EdgeUnivariate edge_to_univariate(const BiPoly& f, const Edge& e);
BiPoly univariate_to_edge(const EdgeUnivariate& eu);

struct EdgeReport {
    Edge edge;
    UniPoly g;
    bool separable = true;
};
struct DegeneracyReport {
    bool degenerate = false;
    std::vector<EdgeReport> edges;
};
DegeneracyReport degeneracy_report(const BiPoly& f);
inline bool is_degenerate(const BiPoly& f) { return degeneracy_report(f).degenerate; }

}  // namespace bivfactor
