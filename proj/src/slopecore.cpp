#include "bivfactor/slopecore.hpp"

#include <numeric>

#include "bivfactor/errors.hpp"

namespace bivfactor {

namespace {

// q*j + m*i, the weight scaled by q
i64 qweight(const Term& t, const Slope& lam) { return lam.q * t.j + lam.m * t.i; }

i64 mod_pos(i64 a, i64 n) {
    i64 r = a % n;
    return r < 0 ? r + n : r;
}

}  // namespace

i64 inv_mod_int(i64 a, i64 n) {
    if (n == 1) return 0;
    i64 t = 0, nt = 1, r = n, nr = mod_pos(a, n);
    while (nr) {
        i64 q = r / nr;
        i64 tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw std::invalid_argument("inv_mod_int: not invertible");
    return mod_pos(t, n);
}

Rat v_lambda(const BiPoly& f, const Slope& lam) {
    if (f.is_zero()) return Rat::infinity();
    i64 best = qweight(f.terms().front(), lam);
    for (const auto& t : f.terms()) best = std::min(best, qweight(t, lam));
    return Rat(best, lam.q);
}

Rat d_lambda(const BiPoly& f, const Slope& lam) {
    if (f.is_zero()) throw ZeroPolynomial("d_lambda of zero");
    i64 best = qweight(f.terms().front(), lam);
    for (const auto& t : f.terms()) best = std::max(best, qweight(t, lam));
    return Rat(best, lam.q);
}

Rat v0(const BiPoly& f) {
    if (f.is_zero()) return Rat::infinity();
    return Rat(f.min_x());
}

BiPoly trunc_lambda(const BiPoly& f, const Slope& lam, const Rat& sigma) {
    if (sigma.is_inf()) return f;
    // j + i m/q <= sigma  <=>  q j + m i <= floor(q sigma)
    i64 bound = (sigma * Rat(lam.q)).floor();
    return f.filter([&](const Term& t) { return qweight(t, lam) <= bound; });
}

LambdaParts lambda_parts(const BiPoly& f, const Slope& lam) {
    if (f.is_zero()) throw ZeroPolynomial("lambda_parts of zero");
    LambdaParts r;
    r.in_y = f.tc_y();
    r.lt_y = f.lc_y();
    Rat v = v_lambda(f, lam);
    r.a = v_lambda(r.in_y, lam) - v;
    r.b = v_lambda(r.lt_y, lam) - v;
    r.m = max(r.a, r.b);
    return r;
}

BiPoly in_lambda(const BiPoly& f, const Slope& lam) {
    if (f.is_zero()) return f;
    Rat v = v_lambda(f, lam);
    i64 w = v.num() * (lam.q / v.den());
    return f.filter([&](const Term& t) { return qweight(t, lam) == w; });
}

BiPoly tau_lambda(const BiPoly& f, const Slope& lam) {
    return f.map_exponents([&](i64 i, i64 j) { return std::make_pair(i, lam.q * j + lam.m * i); });
}

BiPoly tau_lambda_inverse(const BiPoly& f, const Slope& lam) {
    if (!is_in_Apl(f, lam)) throw NotInApl("tau_lambda_inverse: polynomial is not in the image ring");
    return f.map_exponents([&](i64 i, i64 j) { return std::make_pair(i, (j - lam.m * i) / lam.q); });
}

i64 alpha_lambda(i64 k, const Slope& lam) {
    if (lam.q == 1) return 0;
    return mod_pos(mod_pos(k, lam.q) * inv_mod_int(lam.m, lam.q), lam.q);
}

bool is_in_Apl(const BiPoly& f, const Slope& lam) {
    for (const auto& t : f.terms())
        if (mod_pos(t.i, lam.q) != alpha_lambda(t.j, lam)) return false;
    return true;
}

bool is_in_Apl_translated(const BiPoly& f, const Slope& lam) {
    if (f.is_zero()) return true;
    i64 g = mod_pos(f.terms().front().j - lam.m * f.terms().front().i, lam.q);
    for (const auto& t : f.terms())
        if (mod_pos(t.j - lam.m * t.i, lam.q) != g) return false;
    return true;
}

BiPoly reciprocal(const BiPoly& f) {
    i64 d = f.deg_y();
    return f.map_exponents([d](i64 i, i64 j) { return std::make_pair(d - i, j); });
}

Slope average_slope(const BiPoly& f) {
    if (f.is_zero() || f.deg_y() == f.ord_y()) throw SingleYStratum("average slope needs two y-strata");
    i64 n = f.deg_y(), s = f.ord_y();
    i64 vn = f.lc_y().min_x(), vs = f.tc_y().min_x();
    return Slope(-(vn - vs), n - s);
}

Rat sigma_prime(const Slope& lam, const Slope& lam2, const Rat& sigma, const BiPoly& p) {
    Rat base = sigma + v_lambda(p, lam) - v_lambda(p, lam2);
    if (lam2 >= lam) return base + Rat(p.deg_y()) * (lam2.value() - lam.value());
    return base;
}

}  // namespace bivfactor
