#include <doctest.h>

#include <random>

#include "bivfactor/errors.hpp"
#include "bivfactor/io.hpp"
#include "bivfactor/recomb.hpp"
#include "oracle.hpp"

using namespace bivfactor;

TEST_CASE("expression grammar") {
    BiPoly f = parse_poly("y^2 + (1+1)*x*y + x", 5);
    CHECK(f == BiPoly(5, {{2, 0, 1}, {1, 1, 2}, {0, 1, 1}}));
    CHECK(parse_poly("3*x^2*y - 4 # trailing comment\n", 7) == BiPoly(7, {{1, 2, 3}, {0, 0, 3}}));
    CHECK(parse_poly("(y+1)*(y+x)", 101) == BiPoly(101, {{2, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}}));
    CHECK(parse_poly("x^(2*3) + y^(1+1)", 11) == BiPoly(11, {{0, 6, 1}, {2, 0, 1}}));
    CHECK(parse_poly("-1", 7) == BiPoly::constant(7, 6));
    CHECK(parse_poly("(2+5)*y", 7).is_zero());
}

TEST_CASE("monomial list") {
    CHECK(parse_poly("3 7 4\n0 0 1", 11) == BiPoly(11, {{7, 3, 4}, {0, 0, 1}}));
    PolyDocument d = parse_document("p 13\n1 2 5\n0 0 1\n");
    CHECK(d.modulus == 13);
    CHECK(d.format == InputFormat::MonomialList);
    CHECK(d.poly == BiPoly(13, {{2, 1, 5}, {0, 0, 1}}));
    PolyDocument e = parse_document("p 13\ny + x\n");
    CHECK(e.format == InputFormat::Expression);
}

TEST_CASE("parse errors carry positions") {
    try {
        parse_poly("y^2 +\n  x * * y", 7);
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 7);
    }
    CHECK_THROWS_AS(parse_poly("y^", 7), ParseError);
    CHECK_THROWS_AS(parse_poly("z + 1", 7), ParseError);
    CHECK_THROWS_AS(parse_document("y + 1", std::nullopt), ParseError);
    CHECK_THROWS_AS(parse_document("p 12\ny + 1"), ModulusNotPrime);
}

TEST_CASE("print and parse round trip") {
    std::mt19937_64 rng(61);
    for (int it = 0; it < 100; ++it) {
        u64 p = it % 2 ? 65537 : 3;
        BiPoly f = oracle::random_poly(rng, p, 7, 7, 1 + static_cast<int>(rng() % 9));
        CHECK(parse_poly(format_poly(f), p) == f);
        PolyDocument d = parse_document(format_monomial_list(f));
        CHECK(d.modulus == p);
        CHECK(d.poly == f);
    }
}

TEST_CASE("json round trip") {
    const u64 p = 101;
    BiPoly f = parse_poly("(y+1)*(y+x)*(y^2 + x^3 + 2)", p);
    FactorizationResult r = factorization(f, 0);
    nlohmann::json j = factors_to_json(p, r.factors, &r);
    CHECK(j["modulus"] == p);
    CHECK(j["trace"]["s"] == r.s);
    CHECK(j["trace"]["lambda"] == r.lambda.to_string());
    auto back = factors_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back == r.factors);
}
