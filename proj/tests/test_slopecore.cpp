#include <doctest.h>

#include <random>

#include "bivfactor/errors.hpp"
#include "bivfactor/slopecore.hpp"
#include "oracle.hpp"

using namespace bivfactor;

namespace {

// j + i*lambda scanned over the support
Rat scan(const BiPoly& f, const Slope& lam, bool want_max) {
    Rat best = Rat::infinity();
    bool first = true;
    for (const auto& t : f.terms()) {
        Rat w = Rat(t.j) + Rat(t.i) * lam.value();
        if (first || (want_max ? best < w : w < best)) best = w;
        first = false;
    }
    return best;
}

Slope random_slope(std::mt19937_64& rng) { return Slope(static_cast<i64>(rng() % 7), 1 + static_cast<i64>(rng() % 4)); }

}  // namespace

TEST_CASE("v_lambda and d_lambda") {
    BiPoly f(7, {{0, 2, 1}, {3, 1, 1}});
    CHECK(v_lambda(f, Slope(1, 2)) == Rat(2));
    CHECK(d_lambda(f, Slope(1, 2)) == Rat(5, 2));
    CHECK(v_lambda(BiPoly::monomial(7, 1, 5, 0), Slope(2, 3)) == Rat(10, 3));
    CHECK(v_lambda(BiPoly(7), Slope(1, 1)).is_inf());

    std::mt19937_64 rng(1);
    for (int it = 0; it < 200; ++it) {
        BiPoly g = oracle::random_poly(rng, 101, 6, 6, 6), h = oracle::random_poly(rng, 101, 6, 6, 6);
        Slope lam = random_slope(rng);
        CHECK(v_lambda(g, lam) == scan(g, lam, false));
        CHECK(d_lambda(g, lam) == scan(g, lam, true));
        CHECK(d_lambda(g * h, lam) == d_lambda(g, lam) + d_lambda(h, lam));
    }
}

TEST_CASE("trunc_lambda") {
    BiPoly f(7, {{0, 2, 1}, {3, 1, 1}});
    CHECK(trunc_lambda(f, Slope(1, 2), Rat(2)) == BiPoly(7, {{0, 2, 1}}));
    CHECK(trunc_lambda(f, Slope(1, 2), d_lambda(f, Slope(1, 2))) == f);
    std::mt19937_64 rng(2);
    for (int it = 0; it < 100; ++it) {
        BiPoly g = oracle::random_poly(rng, 101, 6, 6, 8);
        Slope lam = random_slope(rng);
        Rat s(static_cast<i64>(rng() % 20), 1 + static_cast<i64>(rng() % 3));
        std::vector<Term> keep;
        for (const auto& t : g.terms())
            if (!(s < Rat(t.j) + Rat(t.i) * lam.value())) keep.push_back(t);
        CHECK(trunc_lambda(g, lam, s) == BiPoly(101, keep));
    }
}

TEST_CASE("lambda_parts and average slope") {
    BiPoly f(7, {{2, 0, 1}, {1, 1, 1}, {0, 3, 1}});
    CHECK(average_slope(f) == Slope(3, 2));
    LambdaParts lp = lambda_parts(f, Slope(3, 2));
    CHECK(lp.a == Rat(1, 2));
    CHECK(lp.b == Rat(1, 2));
    CHECK(lp.m == Rat(1, 2));
    CHECK(average_slope(BiPoly(7, {{1, 0, 1}, {0, 1, 1}})) == Slope(1, 1));

    // one-sided lower boundary of slope -lambda
    CHECK(m_lambda(BiPoly(7, {{2, 0, 1}, {1, 1, 3}, {0, 2, 1}, {2, 5, 1}}), Slope(1, 1)) == Rat(0));
    // lambda-monic: leading y-term realizes v_lambda
    CHECK(lambda_parts(BiPoly(7, {{2, 0, 1}, {0, 3, 1}, {1, 1, 1}}), Slope(1, 1)).b == Rat(0));
    CHECK_THROWS_AS(average_slope(BiPoly(7, {{0, 3, 1}})), SingleYStratum);

    std::mt19937_64 rng(3);
    for (int it = 0; it < 200; ++it) {
        BiPoly g = oracle::random_poly(rng, 101, 6, 6, 6);
        if (g.deg_y() == g.ord_y()) continue;
        Slope lam = average_slope(g);
        LambdaParts p = lambda_parts(g, lam);
        CHECK(p.a == p.b);
    }
}

TEST_CASE("in_lambda") {
    CHECK(in_lambda(BiPoly(7, {{2, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}}), Slope(0, 1)) ==
          BiPoly(7, {{2, 0, 1}, {1, 0, 1}}));
    CHECK(in_lambda(BiPoly(5, {{2, 0, 1}, {0, 2, 4}, {0, 3, 4}}), Slope(1, 1)) == BiPoly(5, {{2, 0, 1}, {0, 2, 4}}));
    BiPoly mono = BiPoly::monomial(5, 3, 2, 7);
    CHECK(in_lambda(mono, Slope(2, 3)) == mono);
}

TEST_CASE("tau_lambda, alpha and A_lambda membership") {
    Slope half(1, 2);
    BiPoly f(7, {{1, 0, 1}, {0, 1, 1}});
    BiPoly tf = tau_lambda(f, half);
    CHECK(tf == BiPoly(7, {{1, 1, 1}, {0, 2, 1}}));
    CHECK(tau_lambda_inverse(tf, half) == f);
    CHECK(tau_lambda(f, Slope(0, 1)) == f);
    CHECK(tau_lambda_inverse(BiPoly::constant(7, 3), half) == BiPoly::constant(7, 3));

    CHECK(alpha_lambda(1, Slope(2, 3)) == 2);
    CHECK(alpha_lambda(2, Slope(2, 3)) == 1);
    CHECK(alpha_lambda(0, Slope(5, 7)) == 0);

    CHECK_FALSE(is_in_Apl(BiPoly::y(7), half));
    CHECK_FALSE(is_in_Apl(BiPoly::x(7), half));
    CHECK(is_in_Apl(BiPoly::monomial(7, 1, 0, 2), half));
    CHECK_THROWS_AS(tau_lambda_inverse(BiPoly::y(7), half), NotInApl);

    std::mt19937_64 rng(4);
    for (int it = 0; it < 200; ++it) {
        BiPoly g = oracle::random_poly(rng, 101, 6, 6, 6);
        Slope lam = random_slope(rng);
        BiPoly tg = tau_lambda(g, lam);
        CHECK(is_in_Apl(tg, lam));
        CHECK(v0(tg) == Rat(lam.q) * v_lambda(g, lam));
        CHECK(tau_lambda_inverse(tg, lam) == g);
    }
}

TEST_CASE("reciprocal") {
    BiPoly f(7, {{2, 0, 1}, {0, 1, 1}});
    CHECK(reciprocal(f) == BiPoly(7, {{0, 0, 1}, {2, 1, 1}}));
    CHECK(reciprocal(BiPoly::y(7)) == BiPoly::constant(7, 1));
    BiPoly g(7, {{0, 0, 1}, {1, 2, 1}, {3, 1, 5}});
    CHECK(reciprocal(reciprocal(g)) == g);
    // 1 + x y^2 lies in A_{-1/2} after the shift by the grade
    CHECK(is_in_Apl_translated(reciprocal(tau_lambda(f, Slope(1, 2))), Slope(-1, 2)));
}

TEST_CASE("sigma_prime") {
    BiPoly f(7, {{1, 0, 1}, {0, 1, 1}});
    CHECK(sigma_prime(Slope(0, 1), Slope(1, 1), Rat(2), f) == Rat(2));
    CHECK(sigma_prime(Slope(1, 3), Slope(1, 3), Rat(5, 2), f) == Rat(5, 2));
}
