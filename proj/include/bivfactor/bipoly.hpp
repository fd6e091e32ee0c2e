#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "bivfactor/ffield.hpp"

namespace bivfactor {

// One monomial c * x^j * y^i; i is the y-exponent.
struct Term {
    i64 i = 0;
    i64 j = 0;
    u64 c = 0;
    friend bool operator==(const Term&, const Term&) = default;
};

// Sparse polynomial in K[x^{+-1}][y]; terms sorted by (i, j), no zero coefficients.
class BiPoly {
public:
    BiPoly() = default;
    explicit BiPoly(u64 p) : p_(p) {}
    // Sorts, merges duplicates and drops zeros.
    BiPoly(u64 p, std::vector<Term> terms);

    static BiPoly constant(u64 p, u64 c);
    static BiPoly monomial(u64 p, u64 c, i64 i, i64 j);
    static BiPoly x(u64 p) { return monomial(p, 1, 0, 1); }
    static BiPoly y(u64 p) { return monomial(p, 1, 1, 0); }
    // Sum over k of coeffs[k] * x^k * y^i.
    static BiPoly from_x_poly(const UniPoly& f, i64 i = 0);
    static BiPoly from_y_poly(const UniPoly& f, i64 j = 0);

    u64 modulus() const { return p_; }
    const std::vector<Term>& terms() const { return t_; }
    std::size_t size() const { return t_.size(); }
    bool is_zero() const { return t_.empty(); }
    bool is_monomial() const { return t_.size() == 1; }
    u64 coeff(i64 i, i64 j) const;

    // Empty polynomial conventions: deg_y = -1, ord_y = 0.
    i64 deg_y() const { return t_.empty() ? -1 : t_.back().i; }
    i64 ord_y() const { return t_.empty() ? 0 : t_.front().i; }
    i64 min_x() const;
    i64 max_x() const;

    // Coefficient of y^i as a polynomial in x (exponents shifted by -shift).
    UniPoly coeff_y(i64 i, i64 shift = 0) const;
    BiPoly lc_y() const;  // leading y-coefficient times y^deg
    BiPoly tc_y() const;  // trailing y-coefficient times y^ord
    UniPoly eval_x(u64 x0) const;  // needs j >= 0

    BiPoly shifted(i64 di, i64 dj) const;
    BiPoly scaled(u64 s) const;
    BiPoly deriv_y() const;
    BiPoly deriv_x() const;
    BiPoly filter(const std::function<bool(const Term&)>& keep) const;
    BiPoly map_exponents(const std::function<std::pair<i64, i64>(i64, i64)>& f) const;
    // Keep terms with j < n.
    BiPoly trunc_x(i64 n) const;

    BiPoly& operator+=(const BiPoly& o);
    BiPoly& operator-=(const BiPoly& o);
    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    BiPoly operator-() const { return scaled(p_ - 1); }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.p_ == b.p_ && a.t_ == b.t_; }
    friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

    std::string to_string() const;

private:
    u64 p_ = 2;
    std::vector<Term> t_;
};

// Product keeping only terms with q*j + m*i <= bound.
BiPoly mul_weight_bounded(const BiPoly& a, const BiPoly& b, i64 m, i64 q, i64 bound);
BiPoly bi_pow(const BiPoly& f, u64 e);

// Graded-lex comparison of supports, then coefficients; used for output ordering.
bool support_less(const BiPoly& a, const BiPoly& b);

}  // namespace bivfactor
