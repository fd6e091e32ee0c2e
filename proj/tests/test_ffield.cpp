#include <doctest.h>

#include <random>

#include "bivfactor/errors.hpp"
#include "bivfactor/ffield.hpp"
#include "oracle.hpp"

using namespace bivfactor;

namespace {

UniPoly U(u64 p, std::vector<u64> c) { return UniPoly(p, std::move(c)); }

UniPoly product(const std::vector<std::pair<UniPoly, int>>& fs, u64 p) {
    UniPoly r = UniPoly::constant(p, 1);
    for (const auto& [g, e] : fs)
        for (int k = 0; k < e; ++k) r = r * g;
    return r;
}

}  // namespace

TEST_CASE("primality and field axioms") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(65537));
    CHECK(is_prime_u64((u64(1) << 61) - 1));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(65537ull * 65539ull));
    CHECK_THROWS_AS(require_prime_modulus(91), ModulusNotPrime);
    CHECK_THROWS_AS(require_prime_modulus(u64(1) << 62), ModulusNotPrime);
    CHECK_THROWS_AS(fp::inv(0, 7), NotAUnit);

    std::mt19937_64 rng(3);
    const u64 p = (u64(1) << 61) - 1;
    for (int k = 0; k < 200; ++k) {
        u64 a = rng() % p, b = rng() % p, c = rng() % p;
        CHECK(fp::mul(a, fp::add(b, c, p), p) == fp::add(fp::mul(a, b, p), fp::mul(a, c, p), p));
        CHECK(fp::mul(a, b, p) == oracle::mulmod(a, b, p));
        if (a) CHECK(fp::mul(a, fp::inv(a, p), p) == 1);
    }
    CHECK(fp::from_int(-1, 7) == 6);
}

TEST_CASE("uni_gcd") {
    CHECK(uni_gcd(U(5, {4, 0, 1}), U(5, {4, 1})) == U(5, {4, 1}));
    CHECK(uni_gcd(U(5, {2, 4}), UniPoly(5)) == U(5, {3, 1}));
    CHECK(uni_gcd(U(2, {1, 0, 1}), U(2, {0, 1, 1})) == U(2, {1, 1}));
}

TEST_CASE("uni_factor examples") {
    auto f1 = uni_factor(U(2, {0, 1, 1}), 0);
    REQUIRE(f1.size() == 2);
    CHECK(f1[0].first == U(2, {0, 1}));
    CHECK(f1[1].first == U(2, {1, 1}));

    auto f2 = uni_factor(U(3, {1, 0, 1}), 0);
    REQUIRE(f2.size() == 1);
    CHECK(f2[0].first == U(3, {1, 0, 1}));

    UniPoly g = U(5, {4, 0, 0, 0, 1});
    CHECK(product(uni_factor(g, 0), 5) == g);
}

TEST_CASE("uni_factor random products") {
    std::mt19937_64 rng(11);
    for (u64 p : {2ull, 3ull, 7ull, 101ull, 65537ull}) {
        for (int it = 0; it < 25; ++it) {
            UniPoly f = UniPoly::constant(p, 1);
            int nf = 1 + rng() % 4;
            for (int k = 0; k < nf; ++k) {
                std::vector<u64> c(2 + rng() % 4);
                for (auto& v : c) v = rng() % p;
                c.back() = 1;
                f = f * U(p, c);
            }
            auto fs = uni_factor(f, it);
            CHECK(product(fs, p) == f);
            for (const auto& [g, e] : fs) {
                CHECK(g.lead() == 1);
                CHECK(uni_is_irreducible(g));
            }
        }
    }
}

TEST_CASE("irreducibility against exhaustive divisor search over F_3") {
    // all monic quartics over F_3
    const u64 p = 3;
    for (u64 code = 0; code < 81; ++code) {
        std::vector<u64> c{code % 3, code / 3 % 3, code / 9 % 3, code / 27 % 3, 1};
        bool reducible = false;
        for (int deg = 1; deg <= 2; ++deg)
            for (u64 d = 0; d < (deg == 1 ? 3u : 9u); ++d) {
                std::vector<u64> h{d % 3};
                if (deg == 2) h.push_back(d / 3);
                h.push_back(1);
                if (oracle::uni_exact_div(c, h, p)) reducible = true;
            }
        CHECK(uni_is_irreducible(U(p, c)) == !reducible);
    }
}

TEST_CASE("uni_find_coprime_irreducible") {
    CHECK(uni_find_coprime_irreducible(U(5, {0, 1})) == U(5, {4, 1}));
    CHECK(uni_find_coprime_irreducible(U(2, {0, 1, 1})) == U(2, {1, 1, 1}));
    CHECK(uni_find_coprime_irreducible(U(7, {1})) == U(7, {0, 1}));
}

TEST_CASE("series inverse, xgcd, squarefree") {
    std::mt19937_64 rng(5);
    const u64 p = 101;
    for (int it = 0; it < 50; ++it) {
        std::vector<u64> c(1 + rng() % 8);
        for (auto& v : c) v = rng() % p;
        c[0] = 1 + rng() % (p - 1);
        UniPoly f = U(p, c);
        UniPoly g = uni_inv_series(f, 20);
        CHECK(uni_mullow(f, g, 20) == UniPoly::constant(p, 1));

        std::vector<u64> d(1 + rng() % 6);
        for (auto& v : d) v = rng() % p;
        UniPoly h = U(p, d);
        auto x = uni_xgcd(f, h);
        CHECK(x.s * f + x.t * h == x.g);
    }
    UniPoly sq = U(7, {1, 1}) * U(7, {1, 1}) * U(7, {2, 0, 1});
    auto sf = uni_squarefree(sq);
    CHECK(product(sf, 7) == uni_monic(sq));
}

TEST_CASE("large products match the schoolbook oracle") {
    std::mt19937_64 rng(31);
    for (u64 p : {2ull, 65537ull, 4611686018427387847ull}) {
        for (std::size_t n : {700u, 2100u, 3000u}) {
            std::vector<u64> a(n), b(n + 17);
            for (auto& v : a) v = rng() % p;
            for (auto& v : b) v = rng() % p;
            a.back() = b.back() = 1;
            std::vector<u64> want(a.size() + b.size() - 1, 0);
            for (std::size_t i = 0; i < a.size(); ++i)
                for (std::size_t j = 0; j < b.size(); ++j)
                    want[i + j] = (want[i + j] + oracle::mulmod(a[i], b[j], p)) % p;
            CHECK(UniPoly(p, a) * UniPoly(p, b) == UniPoly(p, want));
        }
    }
}
