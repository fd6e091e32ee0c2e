#include "bivfactor/facto.hpp"

#include <algorithm>

#include "bivfactor/aplarith.hpp"
#include "bivfactor/errors.hpp"
#include "bivfactor/polygon.hpp"
#include "bivfactor/slopecore.hpp"

namespace bivfactor {

namespace {

bool two_strata(const BiPoly& f) { return !f.is_zero() && f.deg_y() > f.ord_y(); }

bool is_monic_y(const BiPoly& f) {
    BiPoly lc = f.lc_y();
    return lc.is_monomial() && lc.terms()[0].j == 0 && lc.terms()[0].c == 1;
}

void run(const BiPoly& f, const Slope& lam, const Rat& sigma, u64 seed, int parent, AnalyticFactorization& out) {
    const u64 p = f.modulus();
    const int id = static_cast<int>(out.trace.size());
    {
        FactoNode node;
        node.lambda = lam;
        node.sigma = sigma;
        node.volume = lower_hull_volume(f);
        node.degree = f.deg_y();
        node.parent = parent;
        node.depth = parent < 0 ? 0 : out.trace[static_cast<std::size_t>(parent)].depth + 1;
        if (two_strata(f)) {
            node.m_lambda = m_lambda(f, lam);
            Slope avg = average_slope(f);
            node.m_average = m_lambda(f, avg);
            node.at_average_slope = avg == lam;
        }
        out.trace.push_back(node);
        if (parent >= 0) out.trace[static_cast<std::size_t>(parent)].children.push_back(id);
    }

    BiPoly F = f;
    if (F.ord_y() > 0) {
        for (i64 k = 0; k < F.ord_y(); ++k) out.factors.push_back(BiPoly::y(p));
        F = F.shifted(-F.ord_y(), 0);
    }
    if (F.deg_y() <= 1) {
        if (F.deg_y() == 1) out.factors.push_back(F);
        return;
    }
    if (sigma < m_lambda(F, lam))
        throw PrecisionTooLow("sigma " + sigma.to_string() + " below m_lambda " + m_lambda(F, lam).to_string());

    PartialFactorization pf = partial_facto(F, lam, sigma, seed);
    for (auto& m : pf.middle) out.factors.push_back(std::move(m));
    for (const BiPoly* P : {&pf.P0, &pf.Pinf}) {
        if (P->deg_y() <= 0) continue;
        if (P->deg_y() == 1) {
            run(*P, lam, sigma, seed, id, out);
            continue;
        }
        if (!two_strata(*P)) throw PrecisionTooLow("branch collapsed to a single y-stratum");
        Slope lp = average_slope(*P);
        Rat sp = max(sigma_prime(lam, lp, sigma, *P), m_lambda(*P, lp));
        run(*P, lp, sp, seed, id, out);
    }
}

}  // namespace

BiPoly monic_series(const BiPoly& f, const Slope& lam, const Rat& sigma) {
    if (f.is_zero()) throw ZeroPolynomial("monic_series of zero");
    BiPoly lcb = f.lc_y();
    const i64 k = lcb.min_x();
    UniPoly u = lcb.coeff_y(f.deg_y(), k);
    UniPoly w = uni_inv_series(u, static_cast<std::size_t>(std::max<i64>(sigma.floor() + 1, 1)));
    BiPoly g = f.shifted(0, -k);
    return mul_weight_bounded(g, BiPoly::from_x_poly(w), lam.m, lam.q, ((v_lambda(g, lam) + sigma) * Rat(lam.q)).floor());
}

int ceil_log2(const Rat& v) {
    if (v <= Rat(0)) throw std::domain_error("ceil_log2 of a non-positive value");
    int k = 0;
    Rat t(1);
    while (t < v) {
        t = t * Rat(2);
        ++k;
    }
    while (t / Rat(2) >= v) {
        t = t / Rat(2);
        --k;
    }
    return k;
}

Rat lower_hull_volume(const BiPoly& f) {
    if (f.is_zero()) return Rat(0);
    auto edges = lower_boundary(newton_polygon(f));
    if (edges.empty()) return Rat(0);
    std::vector<Point> pts;
    for (const auto& e : edges) pts.push_back(e.a);
    pts.push_back(edges.back().b);
    return volume(convex_hull(pts));
}

int AnalyticFactorization::recursion_depth() const {
    int d = 0;
    for (const auto& n : trace) d = std::max(d, n.depth);
    return d;
}

AnalyticFactorization facto(const BiPoly& f, const Slope& lam, const Rat& sigma, u64 rng_seed) {
    if (f.is_zero()) throw ZeroPolynomial("facto of zero");
    if (!is_monic_y(f)) throw std::invalid_argument("facto: F must be monic in y");
    AnalyticFactorization af;
    af.lambda = lam;
    af.sigma = sigma;
    run(f, lam, sigma, rng_seed, -1, af);
    return af;
}

VolumeCheck check_recursion_volume(const AnalyticFactorization& af) {
    for (std::size_t k = 0; k < af.trace.size(); ++k) {
        const FactoNode& n = af.trace[k];
        if (n.at_average_slope) {
            Rat dm = Rat(n.degree) * n.m_average;
            if (n.volume > dm || n.volume * Rat(2) < dm)
                return {false, static_cast<int>(k), "V_F outside [d m/2, d m]"};
        }
        bool applies = k > 0 || n.at_average_slope;
        if (applies && !n.children.empty()) {
            Rat sum(0);
            for (int c : n.children) sum += af.trace[static_cast<std::size_t>(c)].volume;
            if (sum * Rat(2) > n.volume) return {false, static_cast<int>(k), "V_G + V_H > V_F / 2"};
        }
    }
    return {};
}

}  // namespace bivfactor
