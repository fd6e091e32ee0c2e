#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace bivfactor {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Residue in [0, p); the modulus travels with the containing polynomial.
using FieldElement = u64;

constexpr u64 kMaxModulus = u64(1) << 62;

bool is_prime_u64(u64 n);

namespace fp {

inline u64 add(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    return s >= p ? s - p : s;
}
inline u64 sub(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
inline u64 neg(u64 a, u64 p) { return a == 0 ? 0 : p - a; }
inline u64 mul(u64 a, u64 b, u64 p) {
    if (p <= 0xFFFFFFFFull) return (a * b) % p;
    return static_cast<u64>((static_cast<u128>(a) * b) % p);
}
u64 pow(u64 a, u64 e, u64 p);
u64 inv(u64 a, u64 p);  // throws NotAUnit on 0
u64 from_int(i64 v, u64 p);
u64 from_i128(i128 v, u64 p);

}  // namespace fp

// Checks primality and range; throws ModulusNotPrime.
void require_prime_modulus(u64 p);

// Dense univariate polynomial over F_p; coefficient index is the degree.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(u64 p) : p_(p) {}
    UniPoly(u64 p, std::vector<u64> coeffs);

    static UniPoly constant(u64 p, u64 c);
    static UniPoly monomial(u64 p, u64 c, std::size_t deg);
    static UniPoly x(u64 p) { return monomial(p, 1, 1); }

    u64 modulus() const { return p_; }
    const std::vector<u64>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    u64 operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    u64 lead() const { return c_.empty() ? 0 : c_.back(); }
    u64 eval(u64 z) const;
    int valuation() const;  // -1 for zero

    void set(std::size_t i, u64 v);
    UniPoly truncated(std::size_t n) const;  // mod x^n
    UniPoly shifted(std::size_t k) const;    // times x^k

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }
    friend bool operator<(const UniPoly& a, const UniPoly& b);

    UniPoly& operator+=(const UniPoly& o);
    UniPoly& operator-=(const UniPoly& o);
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    UniPoly operator-() const;
    UniPoly scaled(u64 s) const;

    std::string to_string(const char* var = "y") const;

private:
    void trim();

    u64 p_ = 2;
    std::vector<u64> c_;
};

UniPoly uni_mullow(const UniPoly& a, const UniPoly& b, std::size_t n);
std::pair<UniPoly, UniPoly> uni_divmod(const UniPoly& a, const UniPoly& b);
UniPoly uni_rem(const UniPoly& a, const UniPoly& b);
UniPoly uni_quo(const UniPoly& a, const UniPoly& b);
UniPoly uni_monic(const UniPoly& f);
UniPoly uni_derivative(const UniPoly& f);
UniPoly uni_gcd(const UniPoly& f, const UniPoly& g);
// g = s*a + t*b with g monic.
struct UniXgcd {
    UniPoly g, s, t;
};
UniXgcd uni_xgcd(const UniPoly& a, const UniPoly& b);
UniPoly uni_powmod(const UniPoly& base, u64 e, const UniPoly& mod);
UniPoly uni_pow(const UniPoly& base, u64 e);
// Inverse of f modulo x^n; f(0) must be nonzero.
UniPoly uni_inv_series(const UniPoly& f, std::size_t n);
// Inverse of a modulo m, throws NotAUnit when gcd(a, m) != 1.
UniPoly uni_invmod(const UniPoly& a, const UniPoly& m);

bool uni_is_separable(const UniPoly& f);
bool uni_is_irreducible(const UniPoly& f);

// Monic squarefree parts with multiplicities; the leading unit is dropped.
std::vector<std::pair<UniPoly, int>> uni_squarefree(const UniPoly& f);

// Complete factorization into monic irreducibles, sorted by (degree, coefficients).
std::vector<std::pair<UniPoly, int>> uni_factor(const UniPoly& f, u64 rng_seed);

UniPoly uni_find_coprime_irreducible(const UniPoly& c0);

}  // namespace bivfactor
