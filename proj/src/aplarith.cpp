#include "bivfactor/aplarith.hpp"

#include <algorithm>

#include "bivfactor/errors.hpp"
#include "bivfactor/slopecore.hpp"

namespace bivfactor {

namespace {

i64 qweight_of(const Rat& v, const Slope& lam) { return v.num() * (lam.q / v.den()); }

UniPoly product(const std::vector<UniPoly>& fs, std::size_t lo, std::size_t hi, u64 p) {
    UniPoly r = UniPoly::constant(p, 1);
    for (std::size_t k = lo; k < hi; ++k) r = r * fs[k];
    return r;
}

// e_k = target_k - sum_{a=1}^{k-1} A_a B_{k-a}
UniPoly defect(const UniPoly& target, const XSeries& A, const XSeries& B, std::size_t k) {
    UniPoly e = target;
    for (std::size_t a = 1; a < k; ++a) {
        if (A[a].is_zero() || B[k - a].is_zero()) continue;
        e -= A[a] * B[k - a];
    }
    return e;
}

// M = prod(fs) with M(0) = prod(fs(0)), all monic and pairwise coprime.
void split_monic(const XSeries& M, const std::vector<UniPoly>& fs, std::size_t lo, std::size_t hi,
                 std::vector<XSeries>& out) {
    if (hi - lo == 1) {
        out.push_back(M);
        return;
    }
    const u64 p = M[0].modulus();
    std::size_t mid = lo + (hi - lo) / 2;
    UniPoly A0 = product(fs, lo, mid, p), B0 = product(fs, mid, hi, p);
    UniXgcd xg = uni_xgcd(A0, B0);
    if (!xg.g.is_one()) throw NotCoprime("initial factors are not coprime");
    const std::size_t n = M.size();
    XSeries A(n, UniPoly(p)), B(n, UniPoly(p));
    A[0] = A0;
    B[0] = B0;
    for (std::size_t k = 1; k < n; ++k) {
        UniPoly e = defect(M[k], A, B, k);
        if (e.is_zero()) continue;
        UniPoly dA = uni_rem(xg.t * e, A0);
        auto [dB, rem] = uni_divmod(e - B0 * dA, A0);
        if (!rem.is_zero()) throw InternalError("Hensel step: inexact quotient");
        A[k] = std::move(dA);
        B[k] = std::move(dB);
    }
    split_monic(A, fs, lo, mid, out);
    split_monic(B, fs, mid, hi, out);
}

}  // namespace

XSeries to_xseries(const BiPoly& f, i64 n) {
    const u64 p = f.modulus();
    XSeries s(static_cast<std::size_t>(std::max<i64>(n, 0)), UniPoly(p));
    std::vector<std::vector<u64>> dense(s.size());
    for (const auto& t : f.terms()) {
        if (t.j < 0) throw std::domain_error("to_xseries: negative x-exponent");
        if (t.j >= n) continue;
        auto& row = dense[static_cast<std::size_t>(t.j)];
        if (row.size() <= static_cast<std::size_t>(t.i)) row.resize(static_cast<std::size_t>(t.i) + 1, 0);
        row[static_cast<std::size_t>(t.i)] = t.c;
    }
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = UniPoly(p, std::move(dense[k]));
    return s;
}

BiPoly from_xseries(const XSeries& s, u64 p) {
    std::vector<Term> terms;
    for (std::size_t k = 0; k < s.size(); ++k)
        for (std::size_t i = 0; i < s[k].coeffs().size(); ++i)
            if (s[k][i]) terms.push_back({static_cast<i64>(i), static_cast<i64>(k), s[k][i]});
    return BiPoly(p, std::move(terms));
}

std::vector<XSeries> hensel_lift(const XSeries& f, const std::vector<UniPoly>& monic_init, u64 unit, i64 n) {
    if (n <= 0) throw std::invalid_argument("hensel_lift: precision must be positive");
    const u64 p = f.empty() ? (monic_init.empty() ? 2 : monic_init[0].modulus()) : f[0].modulus();
    XSeries F = f;
    F.resize(static_cast<std::size_t>(n), UniPoly(p));
    if (monic_init.empty()) return {F};
    UniPoly M0 = product(monic_init, 0, monic_init.size(), p);
    if (M0.scaled(unit) != F[0]) throw InitMismatch("product of initial factors differs from F(0,y)");
    const std::size_t N = F.size();
    XSeries M(N, UniPoly(p)), B(N, UniPoly(p));
    M[0] = M0;
    B[0] = UniPoly::constant(p, unit);
    const u64 cinv = fp::inv(unit, p);
    for (std::size_t k = 1; k < N; ++k) {
        UniPoly e = defect(F[k], M, B, k);
        if (e.is_zero()) continue;
        // M0 dB + unit dM = e with deg dM < deg M0
        UniPoly dM = uni_rem(e.scaled(cinv), M0);
        auto [dB, rem] = uni_divmod(e - dM.scaled(unit), M0);
        if (!rem.is_zero()) throw InternalError("Hensel step: inexact quotient");
        M[k] = std::move(dM);
        B[k] = std::move(dB);
    }
    std::vector<XSeries> out;
    split_monic(M, monic_init, 0, monic_init.size(), out);
    out.push_back(std::move(B));
    return out;
}

BiPoly apl_mul_trunc(const BiPoly& g, const BiPoly& h, const Slope& lam, i64 n) {
    if (!is_in_Apl_translated(g, lam) || !is_in_Apl_translated(h, lam))
        throw NotInApl("apl_mul_trunc: operand outside the slope ring");
    if (g.is_zero() || h.is_zero()) return BiPoly(g.modulus());
    i64 vg = g.min_x(), vh = h.min_x();
    i64 N = n + vg + vh;
    BiPoly gt = g.trunc_x(N - vh), ht = h.trunc_x(N - vg);
    return mul_weight_bounded(gt, ht, 0, 1, N - 1);
}

UniPoly apl_invert_unit(const UniPoly& u, i64 q, i64 n) {
    const u64 p = u.modulus();
    if (u[0] == 0) throw NotAUnit("apl_invert_unit: zero constant term");
    std::vector<u64> c0;
    for (std::size_t k = 0; k < u.coeffs().size(); ++k) {
        if (!u[k]) continue;
        if (static_cast<i64>(k) % q != 0) throw NotInApl("apl_invert_unit: not a series in x^q");
        std::size_t e = k / static_cast<std::size_t>(q);
        if (c0.size() <= e) c0.resize(e + 1, 0);
        c0[e] = u[k];
    }
    if (n <= 0) return UniPoly(p);
    i64 nq = (n + q - 1) / q;
    UniPoly w = uni_inv_series(UniPoly(p, c0), static_cast<std::size_t>(nq));
    std::vector<u64> r(static_cast<std::size_t>(n), 0);
    for (std::size_t k = 0; k < w.coeffs().size(); ++k) {
        std::size_t e = k * static_cast<std::size_t>(q);
        if (e < r.size()) r[e] = w[k];
    }
    return UniPoly(p, std::move(r));
}

DivResult apl_div_trunc(const BiPoly& f, const BiPoly& g, const Slope& lam, i64 n) {
    const u64 p = f.modulus();
    if (g.is_zero()) throw ZeroPolynomial("apl_div_trunc: zero divisor");
    if (!is_in_Apl_translated(f, lam) || !is_in_Apl_translated(g, lam))
        throw NotInApl("apl_div_trunc: operand outside the slope ring");
    if (g.lc_y().min_x() != g.min_x())
        throw BadLeadingValuation("leading y-coefficient does not carry the x-valuation of the divisor");
    if (f.is_zero() || n <= 0) return {BiPoly(p), f};
    const i64 vf = f.min_x(), vg = g.min_x();
    const i64 dg = g.deg_y(), df = f.deg_y();
    const std::size_t N = static_cast<std::size_t>(n);
    // y-major rows of x-series, both normalized to x-valuation 0
    auto rows = [&](const BiPoly& h, i64 shift, i64 deg) {
        std::vector<UniPoly> r(static_cast<std::size_t>(deg + 1), UniPoly(p));
        for (i64 i = 0; i <= deg; ++i) r[static_cast<std::size_t>(i)] = h.coeff_y(i, shift).truncated(N);
        return r;
    };
    std::vector<UniPoly> R = rows(f, vf, df), G = rows(g, vg, dg);
    UniPoly linv = uni_inv_series(G[static_cast<std::size_t>(dg)], N);
    std::vector<UniPoly> Q(static_cast<std::size_t>(std::max<i64>(df - dg + 1, 0)), UniPoly(p));
    for (i64 k = df; k >= dg; --k) {
        UniPoly c = uni_mullow(R[static_cast<std::size_t>(k)], linv, N);
        if (c.is_zero()) continue;
        for (i64 i = 0; i <= dg; ++i) {
            auto& row = R[static_cast<std::size_t>(k - dg + i)];
            row = row - uni_mullow(c, G[static_cast<std::size_t>(i)], N);
        }
        Q[static_cast<std::size_t>(k - dg)] = std::move(c);
    }
    BiPoly q(p), r(p);
    for (std::size_t i = 0; i < Q.size(); ++i) q += BiPoly::from_x_poly(Q[i], static_cast<i64>(i)).shifted(0, vf - vg);
    for (i64 i = 0; i < dg && i < static_cast<i64>(R.size()); ++i)
        r += BiPoly::from_x_poly(R[static_cast<std::size_t>(i)], i).shifted(0, vf);
    return {q, r};
}

std::vector<BiPoly> apl_hensel(const BiPoly& f, const std::vector<UniPoly>& init, const Slope& lam, i64 n) {
    const u64 p = f.modulus();
    if (!is_in_Apl(f, lam)) throw NotInApl("apl_hensel: F outside the slope ring");
    if (!f.is_zero() && f.min_x() < 0) throw NotInApl("apl_hensel: F has negative x-exponents");
    std::vector<UniPoly> monic = init;
    u64 unit = 1;
    bool explicit_unit = false;
    if (!monic.empty() && monic.back().degree() == 0) {
        unit = monic.back()[0];
        monic.pop_back();
        explicit_unit = true;
    }
    for (const auto& m : monic)
        if (m.lead() != 1 || m.degree() < 1) throw InitMismatch("initial factors must be monic of positive degree");
    for (std::size_t a = 0; a < monic.size(); ++a)
        for (std::size_t b = a + 1; b < monic.size(); ++b)
            if (!uni_gcd(monic[a], monic[b]).is_one()) throw NotCoprime("initial factors are not coprime");
    XSeries fs = to_xseries(f, n);
    std::vector<XSeries> lifted = hensel_lift(fs, monic, unit, n);
    std::vector<BiPoly> out;
    for (std::size_t k = 0; k < lifted.size(); ++k) {
        BiPoly b = from_xseries(lifted[k], p);
        if (k + 1 == lifted.size() && !monic.empty() && !explicit_unit && b == BiPoly::constant(p, 1)) continue;
        out.push_back(std::move(b));
    }
    return out;
}

BiPoly lambda_mul_trunc(const BiPoly& f, const BiPoly& g, const Slope& lam, const Rat& sigma) {
    if (f.is_zero() || g.is_zero()) return BiPoly(f.modulus());
    Rat bound = v_lambda(f, lam) + v_lambda(g, lam) + sigma;
    return mul_weight_bounded(f, g, lam.m, lam.q, (bound * Rat(lam.q)).floor());
}

DivResult lambda_div_trunc(const BiPoly& f, const BiPoly& g, const Slope& lam, const Rat& sigma) {
    if (g.is_zero()) throw ZeroPolynomial("lambda_div_trunc: zero divisor");
    if (v_lambda(g.lc_y(), lam) != v_lambda(g, lam)) throw NotLambdaMonic("divisor is not lambda-monic");
    i64 n = (sigma * Rat(lam.q)).ceil();
    DivResult d = apl_div_trunc(tau_lambda(f, lam), tau_lambda(g, lam), lam, n);
    return {tau_lambda_inverse(d.Q, lam), tau_lambda_inverse(d.R, lam)};
}

InitFacto init_facto(const BiPoly& f, const Slope& lam, u64 rng_seed) {
    if (f.is_zero()) throw ZeroPolynomial("init_facto of zero");
    const u64 p = f.modulus();
    BiPoly in = in_lambda(f, lam);
    InitFacto r;
    r.s = in.ord_y();
    const i64 top = in.deg_y();
    std::vector<u64> c(static_cast<std::size_t>((top - r.s) / lam.q + 1), 0);
    for (const auto& t : in.terms()) c[static_cast<std::size_t>((t.i - r.s) / lam.q)] = t.c;
    UniPoly g(p, c);
    r.unit = g.lead();
    const i64 js = in.tc_y().terms().front().j;
    r.p0 = BiPoly::monomial(p, 1, r.s, 0);
    i64 total = 0;
    if (g.degree() > 0) {
        for (auto& [gi, e] : uni_factor(g, rng_seed)) {
            UniPoly block = uni_pow(gi, static_cast<u64>(e));
            i64 D = block.degree();
            std::vector<Term> terms;
            for (i64 k = 0; k <= D; ++k)
                if (block[static_cast<std::size_t>(k)])
                    terms.push_back({lam.q * k, lam.m * (D - k), block[static_cast<std::size_t>(k)]});
            r.middle.emplace_back(p, std::move(terms));
            r.g_factors.push_back(gi);
            r.mult.push_back(e);
            total += D;
        }
    }
    r.pinf_x = js - lam.m * total;
    r.pinf = BiPoly::monomial(p, r.unit, 0, r.pinf_x);
    return r;
}

PartialFactorization partial_facto(const BiPoly& f, const Slope& lam, const Rat& sigma, u64 rng_seed) {
    if (f.is_zero()) throw ZeroPolynomial("partial_facto of zero");
    if (sigma < Rat(0)) throw PrecisionTooLow("partial_facto needs sigma >= 0");
    const u64 p = f.modulus();
    InitFacto I = init_facto(f, lam, rng_seed);
    for (int e : I.mult)
        if (e > 1) throw DegenerateEdge("repeated factor in the initial part along slope " + lam.to_string());

    const i64 qv = qweight_of(v_lambda(f, lam), lam);
    const i64 N = (sigma * Rat(lam.q)).floor() + 1;
    // fhat = x^(-q v) tau_lambda(f) mod x^N
    std::vector<Term> terms;
    for (const auto& t : f.terms()) {
        i64 J = lam.q * t.j + lam.m * t.i - qv;
        if (J < N) terms.push_back({t.i, J, t.c});
    }
    XSeries fhat = to_xseries(BiPoly(p, std::move(terms)), N);

    std::vector<UniPoly> init;
    if (I.s > 0) init.push_back(UniPoly::monomial(p, 1, static_cast<std::size_t>(I.s)));
    std::vector<i64> degs;
    for (const auto& gi : I.g_factors) {
        std::vector<u64> c(static_cast<std::size_t>(gi.degree() * lam.q + 1), 0);
        for (std::size_t k = 0; k < gi.coeffs().size(); ++k) c[k * static_cast<std::size_t>(lam.q)] = gi[k];
        init.emplace_back(p, std::move(c));
        degs.push_back(gi.degree() * lam.q);
    }
    std::vector<XSeries> lifted = hensel_lift(fhat, init, I.unit, N);

    auto back = [&](const XSeries& s, i64 shift) {
        BiPoly b = tau_lambda_inverse(from_xseries(s, p).shifted(0, shift), lam);
        return trunc_lambda(b, lam, v_lambda(b, lam) + sigma);
    };
    PartialFactorization r;
    r.lambda = lam;
    r.sigma = sigma;
    std::size_t idx = 0;
    i64 D = 0;
    if (I.s > 0) {
        r.P0 = back(lifted[idx++], lam.m * I.s);
        D += I.s;
    } else {
        r.P0 = BiPoly::constant(p, 1);
    }
    for (i64 d : degs) {
        r.middle.push_back(back(lifted[idx++], lam.m * d));
        D += d;
    }
    r.Pinf = back(lifted[idx], qv - lam.m * D);
    return r;
}

}  // namespace bivfactor
