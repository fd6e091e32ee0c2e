#pragma once

#include <string>
#include <vector>

#include "bivfactor/bipoly.hpp"
#include "bivfactor/rat.hpp"

namespace bivfactor {

// One call of the recursion.
struct FactoNode {
    Slope lambda;
    Rat sigma;
    Rat volume;        // area of the convex hull of the lower boundary
    i64 degree = 0;    // deg_y
    Rat m_lambda;      // defect of straightness at the slope used
    Rat m_average;     // defect at the node's own average slope
    bool at_average_slope = false;
    int depth = 0;
    int parent = -1;
    std::vector<int> children;
};

struct AnalyticFactorization {
    std::vector<BiPoly> factors;
    Slope lambda;
    Rat sigma;
    std::vector<FactoNode> trace;  // trace[0] is the root
    int recursion_depth() const;
};

// F monic in y, non-degenerate along every slope met, sigma >= m_lambda(F).
AnalyticFactorization facto(const BiPoly& f, const Slope& lam, const Rat& sigma, u64 rng_seed);

// x^(-k) u^(-1) F where lc_y(F) = x^k u(x), u(0) != 0, at relative lambda-precision sigma.
BiPoly monic_series(const BiPoly& f, const Slope& lam, const Rat& sigma);

// Area of the convex hull of the lower boundary of the Newton polygon.
Rat lower_hull_volume(const BiPoly& f);

struct VolumeCheck {
    bool ok = true;
    int node = -1;
    std::string reason;
};
VolumeCheck check_recursion_volume(const AnalyticFactorization& af);

// Smallest k with 2^k >= v, for v > 0.
int ceil_log2(const Rat& v);

}  // namespace bivfactor
