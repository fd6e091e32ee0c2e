#pragma once

#include "bivfactor/bipoly.hpp"
#include "bivfactor/rat.hpp"

namespace bivfactor {

// min / max of j + i*lambda over the support; v_lambda(0) is +infinity.
Rat v_lambda(const BiPoly& f, const Slope& lam);
Rat d_lambda(const BiPoly& f, const Slope& lam);
// Gauss valuation (min j); the zero polynomial gives +infinity.
Rat v0(const BiPoly& f);

// Terms with j + i*lambda <= sigma.
BiPoly trunc_lambda(const BiPoly& f, const Slope& lam, const Rat& sigma);

struct LambdaParts {
    Rat a, b, m;
    BiPoly in_y;  // trailing y-term p_s y^s
    BiPoly lt_y;  // leading y-term p_n y^n
};
LambdaParts lambda_parts(const BiPoly& f, const Slope& lam);
inline Rat m_lambda(const BiPoly& f, const Slope& lam) { return lambda_parts(f, lam).m; }

// Terms realizing v_lambda(f).
BiPoly in_lambda(const BiPoly& f, const Slope& lam);

// (i, j) -> (i, q*j + m*i) and back.
BiPoly tau_lambda(const BiPoly& f, const Slope& lam);
BiPoly tau_lambda_inverse(const BiPoly& f, const Slope& lam);

i64 alpha_lambda(i64 k, const Slope& lam);
bool is_in_Apl(const BiPoly& f, const Slope& lam);
// Membership up to a monomial factor: all terms share the grade j - m*i mod q.
bool is_in_Apl_translated(const BiPoly& f, const Slope& lam);

// (i, j) -> (deg_y f - i, j).
BiPoly reciprocal(const BiPoly& f);

Slope average_slope(const BiPoly& f);
Rat sigma_prime(const Slope& lam, const Slope& lam2, const Rat& sigma, const BiPoly& p);

// Modular inverse of a mod n for gcd(a, n) = 1, result in [0, n).
i64 inv_mod_int(i64 a, i64 n);

}  // namespace bivfactor
