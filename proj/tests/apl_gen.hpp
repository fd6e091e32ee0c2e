#pragma once

// Random members of A_lambda for the arithmetic contracts.

#include <random>

#include "bivfactor/bipoly.hpp"
#include "bivfactor/rat.hpp"
#include "bivfactor/slopecore.hpp"

namespace aplgen {

using namespace bivfactor;

// y^d + terms of lambda-weight >= d*lambda, d a multiple of q; then x^(-d m) tau_lambda(.)
// lies in A_lambda, is monic in y and has nonnegative x-exponents.
inline BiPoly lambda_monic(std::mt19937_64& rng, u64 p, const Slope& lam, i64 k, int nterms, i64 spread) {
    const i64 d = lam.q * k;
    std::vector<Term> ts{{d, 0, 1}};
    for (int t = 0; t < nterms; ++t) {
        i64 i = static_cast<i64>(rng() % static_cast<u64>(d));
        // smallest j with q j + m i >= m d
        i64 need = lam.m * (d - i);
        i64 j0 = need <= 0 ? 0 : (need + lam.q - 1) / lam.q;
        ts.push_back({i, j0 + static_cast<i64>(rng() % static_cast<u64>(spread + 1)), rng() % p});
    }
    BiPoly g(p, ts);
    return tau_lambda(g, lam).shifted(0, -lam.m * d);
}

inline UniPoly at_x0(const BiPoly& f) {
    std::vector<u64> c(static_cast<std::size_t>(f.deg_y() + 1), 0);
    for (const auto& t : f.terms())
        if (t.j == 0) c[static_cast<std::size_t>(t.i)] = t.c;
    return UniPoly(f.modulus(), c);
}

}  // namespace aplgen
