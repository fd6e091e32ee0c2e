#pragma once

#include <vector>

#include "bivfactor/bipoly.hpp"
#include "bivfactor/rat.hpp"

namespace bivfactor {

// Truncated series in K[[x]][y], indexed by the power of x.
using XSeries = std::vector<UniPoly>;

XSeries to_xseries(const BiPoly& f, i64 n);  // needs exponents j >= 0; keeps j < n
BiPoly from_xseries(const XSeries& s, u64 p);

// Lifts f = prod(monic) * unit-branch mod x^n from the coprime factorization
// f(0, y) = prod(monic_init) * unit. The unit branch comes last in the result.
std::vector<XSeries> hensel_lift(const XSeries& f, const std::vector<UniPoly>& monic_init, u64 unit, i64 n);

BiPoly apl_mul_trunc(const BiPoly& g, const BiPoly& h, const Slope& lam, i64 n);

// Inverse of u (a polynomial in x^q) modulo x^n.
UniPoly apl_invert_unit(const UniPoly& u, i64 q, i64 n);

struct DivResult {
    BiPoly Q, R;
};
// f = Q g + R mod x^(v0(f) + n), deg_y R < deg_y g.
DivResult apl_div_trunc(const BiPoly& f, const BiPoly& g, const Slope& lam, i64 n);

// init holds monic factors, optionally followed by a constant unit.
std::vector<BiPoly> apl_hensel(const BiPoly& f, const std::vector<UniPoly>& init, const Slope& lam, i64 n);

// Relative lambda-precision sigma.
BiPoly lambda_mul_trunc(const BiPoly& f, const BiPoly& g, const Slope& lam, const Rat& sigma);
DivResult lambda_div_trunc(const BiPoly& f, const BiPoly& g, const Slope& lam, const Rat& sigma);

// In_lambda(F) = p0 * prod(middle) * pinf.
struct InitFacto {
    i64 s = 0;                  // p0 = y^s
    BiPoly p0, pinf;
    std::vector<BiPoly> middle;  // lambda-homogeneous monic blocks
    std::vector<UniPoly> g_factors;  // irreducible g_i with middle[k] the homogenization of g_i^e_i
    std::vector<int> mult;
    u64 unit = 1;  // coefficient of pinf
    i64 pinf_x = 0;  // pinf = unit * x^pinf_x
};
InitFacto init_facto(const BiPoly& f, const Slope& lam, u64 rng_seed);

struct PartialFactorization {
    BiPoly P0, Pinf;
    std::vector<BiPoly> middle;
    Slope lambda;
    Rat sigma;
};
PartialFactorization partial_facto(const BiPoly& f, const Slope& lam, const Rat& sigma, u64 rng_seed);

}  // namespace bivfactor
