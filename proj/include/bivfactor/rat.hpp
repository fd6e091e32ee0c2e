#pragma once

#include <compare>
#include <numeric>
#include <stdexcept>
#include <string>

#include "bivfactor/ffield.hpp"

namespace bivfactor {

// Exact rational with a +infinity sentinel (den == 0).
class Rat {
public:
    constexpr Rat() = default;
    Rat(i64 n) : num_(n), den_(1) {}  // NOLINT implicit
    Rat(i64 n, i64 d) {
        if (d == 0) throw std::invalid_argument("Rat: zero denominator");
        set(static_cast<i128>(n), static_cast<i128>(d));
    }
    static Rat infinity() {
        Rat r;
        r.num_ = 1;
        r.den_ = 0;
        return r;
    }

    i64 num() const { return num_; }
    i64 den() const { return den_; }
    bool is_inf() const { return den_ == 0; }
    bool is_integer() const { return den_ == 1; }

    i64 floor() const {
        if (is_inf()) throw std::domain_error("floor of infinity");
        i64 q = num_ / den_;
        if ((num_ % den_) != 0 && num_ < 0) --q;
        return q;
    }
    i64 ceil() const { return -(Rat(-num_, den_).floor()); }

    friend Rat operator+(const Rat& a, const Rat& b) {
        if (a.is_inf() || b.is_inf()) return infinity();
        Rat r;
        r.set(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
              static_cast<i128>(a.den_) * b.den_);
        return r;
    }
    friend Rat operator-(const Rat& a) {
        if (a.is_inf()) throw std::domain_error("negating infinity");
        Rat r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
    friend Rat operator*(const Rat& a, const Rat& b) {
        if (a.is_inf() || b.is_inf()) return infinity();
        Rat r;
        r.set(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
        return r;
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (a.is_inf() || b.is_inf()) throw std::domain_error("division with infinity");
        if (b.num_ == 0) throw std::domain_error("Rat division by zero");
        Rat r;
        r.set(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
        return r;
    }
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        if (a.is_inf() || b.is_inf()) {
            if (a.is_inf() && b.is_inf()) return std::strong_ordering::equal;
            return a.is_inf() ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        i128 l = static_cast<i128>(a.num_) * b.den_, r = static_cast<i128>(b.num_) * a.den_;
        return l <=> r;
    }

    std::string to_string() const {
        if (is_inf()) return "inf";
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    void set(i128 n, i128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        i128 a = n < 0 ? -n : n, b = d;
        while (b) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            n /= a;
            d /= a;
        }
        num_ = static_cast<i64>(n);
        den_ = static_cast<i64>(d);
    }

    i64 num_ = 0;
    i64 den_ = 1;
};

inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }
inline Rat min(const Rat& a, const Rat& b) { return a < b ? a : b; }

// lambda = m/q in lowest terms, q >= 1.
struct Slope {
    i64 m = 0;
    i64 q = 1;

    Slope() = default;
    Slope(i64 num, i64 den) {
        if (den == 0) throw std::invalid_argument("Slope: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        i64 g = std::gcd(num < 0 ? -num : num, den);
        m = num / g;
        q = den / g;
    }
    explicit Slope(const Rat& r) : Slope(r.num(), r.den()) {}

    Rat value() const { return Rat(m, q); }
    friend bool operator==(const Slope& a, const Slope& b) { return a.m == b.m && a.q == b.q; }
    friend std::strong_ordering operator<=>(const Slope& a, const Slope& b) { return a.value() <=> b.value(); }
    std::string to_string() const { return std::to_string(m) + "/" + std::to_string(q); }
};

}  // namespace bivfactor
