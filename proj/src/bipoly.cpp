#include "bivfactor/bipoly.hpp"

#include <algorithm>
#include <limits>
#include <tuple>
#include <sstream>

namespace bivfactor {

namespace {

bool key_less(const Term& a, const Term& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; }

void canonicalize(std::vector<Term>& t, u64 p) {
    std::sort(t.begin(), t.end(), key_less);
    std::size_t w = 0;
    for (std::size_t r = 0; r < t.size();) {
        Term acc = t[r];
        acc.c %= p;
        std::size_t s = r + 1;
        while (s < t.size() && t[s].i == acc.i && t[s].j == acc.j) {
            acc.c = fp::add(acc.c, t[s].c % p, p);
            ++s;
        }
        if (acc.c) t[w++] = acc;
        r = s;
    }
    t.resize(w);
}

// Merge two sorted term lists; sign = +1 adds, -1 subtracts b.
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract, u64 p) {
    std::vector<Term> r;
    r.reserve(a.size() + b.size());
    std::size_t ia = 0, ib = 0;
    while (ia < a.size() || ib < b.size()) {
        if (ib == b.size() || (ia < a.size() && key_less(a[ia], b[ib]))) {
            r.push_back(a[ia++]);
        } else if (ia == a.size() || key_less(b[ib], a[ia])) {
            Term t = b[ib++];
            if (subtract) t.c = fp::neg(t.c, p);
            r.push_back(t);
        } else {
            u64 c = subtract ? fp::sub(a[ia].c, b[ib].c, p) : fp::add(a[ia].c, b[ib].c, p);
            if (c) r.push_back({a[ia].i, a[ia].j, c});
            ++ia;
            ++ib;
        }
    }
    return r;
}

}  // namespace

BiPoly::BiPoly(u64 p, std::vector<Term> terms) : p_(p), t_(std::move(terms)) { canonicalize(t_, p_); }

BiPoly BiPoly::constant(u64 p, u64 c) { return BiPoly(p, {{0, 0, c}}); }

BiPoly BiPoly::monomial(u64 p, u64 c, i64 i, i64 j) { return BiPoly(p, {{i, j, c}}); }

BiPoly BiPoly::from_x_poly(const UniPoly& f, i64 i) {
    BiPoly r(f.modulus());
    for (std::size_t k = 0; k < f.coeffs().size(); ++k)
        if (f[k]) r.t_.push_back({i, static_cast<i64>(k), f[k]});
    return r;
}

BiPoly BiPoly::from_y_poly(const UniPoly& f, i64 j) {
    BiPoly r(f.modulus());
    for (std::size_t k = 0; k < f.coeffs().size(); ++k)
        if (f[k]) r.t_.push_back({static_cast<i64>(k), j, f[k]});
    return r;
}

u64 BiPoly::coeff(i64 i, i64 j) const {
    Term key{i, j, 0};
    auto it = std::lower_bound(t_.begin(), t_.end(), key, key_less);
    if (it != t_.end() && it->i == i && it->j == j) return it->c;
    return 0;
}

i64 BiPoly::min_x() const {
    i64 r = 0;
    bool first = true;
    for (const auto& t : t_) {
        if (first || t.j < r) r = t.j;
        first = false;
    }
    return r;
}

i64 BiPoly::max_x() const {
    i64 r = 0;
    bool first = true;
    for (const auto& t : t_) {
        if (first || t.j > r) r = t.j;
        first = false;
    }
    return r;
}

UniPoly BiPoly::coeff_y(i64 i, i64 shift) const {
    std::vector<u64> c;
    Term key{i, std::numeric_limits<i64>::min(), 0};
    for (auto it = std::lower_bound(t_.begin(), t_.end(), key, key_less); it != t_.end() && it->i == i; ++it) {
        i64 e = it->j - shift;
        if (e < 0) throw std::domain_error("coeff_y: negative exponent after shift");
        if (static_cast<std::size_t>(e) >= c.size()) c.resize(static_cast<std::size_t>(e) + 1, 0);
        c[static_cast<std::size_t>(e)] = it->c;
    }
    return UniPoly(p_, std::move(c));
}

BiPoly BiPoly::lc_y() const {
    i64 d = deg_y();
    return filter([d](const Term& t) { return t.i == d; });
}

BiPoly BiPoly::tc_y() const {
    i64 s = ord_y();
    return filter([s](const Term& t) { return t.i == s; });
}

UniPoly BiPoly::eval_x(u64 x0) const {
    std::vector<u64> c(t_.empty() ? 0 : static_cast<std::size_t>(deg_y() + 1), 0);
    for (const auto& t : t_) {
        if (t.i < 0 || t.j < 0) throw std::domain_error("eval_x: negative exponent");
        u64 v = fp::mul(t.c, fp::pow(x0 % p_, static_cast<u64>(t.j), p_), p_);
        c[static_cast<std::size_t>(t.i)] = fp::add(c[static_cast<std::size_t>(t.i)], v, p_);
    }
    return UniPoly(p_, std::move(c));
}

BiPoly BiPoly::shifted(i64 di, i64 dj) const {
    BiPoly r = *this;
    for (auto& t : r.t_) {
        t.i += di;
        t.j += dj;
    }
    return r;
}

BiPoly BiPoly::scaled(u64 s) const {
    s %= p_;
    BiPoly r(p_);
    if (!s) return r;
    r.t_ = t_;
    for (auto& t : r.t_) t.c = fp::mul(t.c, s, p_);
    return r;
}

BiPoly BiPoly::deriv_y() const {
    BiPoly r(p_);
    for (const auto& t : t_) {
        u64 k = fp::from_int(t.i, p_);
        u64 c = fp::mul(t.c, k, p_);
        if (c) r.t_.push_back({t.i - 1, t.j, c});
    }
    return r;
}

BiPoly BiPoly::deriv_x() const {
    BiPoly r(p_);
    for (const auto& t : t_) {
        u64 c = fp::mul(t.c, fp::from_int(t.j, p_), p_);
        if (c) r.t_.push_back({t.i, t.j - 1, c});
    }
    return r;
}

BiPoly BiPoly::filter(const std::function<bool(const Term&)>& keep) const {
    BiPoly r(p_);
    for (const auto& t : t_)
        if (keep(t)) r.t_.push_back(t);
    return r;
}

BiPoly BiPoly::map_exponents(const std::function<std::pair<i64, i64>(i64, i64)>& f) const {
    std::vector<Term> v;
    v.reserve(t_.size());
    for (const auto& t : t_) {
        auto [i, j] = f(t.i, t.j);
        v.push_back({i, j, t.c});
    }
    return BiPoly(p_, std::move(v));
}

BiPoly BiPoly::trunc_x(i64 n) const {
    return filter([n](const Term& t) { return t.j < n; });
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
    t_ = merge(t_, o.t_, false, p_);
    return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
    t_ = merge(t_, o.t_, true, p_);
    return *this;
}

namespace {

constexpr i128 kKroneckerPairs = i128(1) << 14;

// Accumulate products into a dense box when it is not much larger than the
// number of term pairs; otherwise collect and sort.
BiPoly mul_impl(const BiPoly& a, const BiPoly& b, i64 m, i64 q, i64 bound, bool bounded) {
    const u64 p = a.modulus();
    if (a.is_zero() || b.is_zero()) return BiPoly(p);
    const auto& ta = a.terms();
    std::vector<Term> tb = b.terms();
    auto w = [m, q](const Term& t) { return q * t.j + m * t.i; };
    if (bounded) std::sort(tb.begin(), tb.end(), [&](const Term& x, const Term& y) { return w(x) < w(y); });

    i64 i0 = a.ord_y() + b.ord_y(), i1 = a.deg_y() + b.deg_y();
    i64 j0 = a.min_x() + b.min_x(), j1 = a.max_x() + b.max_x();
    i128 box = static_cast<i128>(i1 - i0 + 1) * (j1 - j0 + 1);
    i128 pairs = static_cast<i128>(ta.size()) * tb.size();

    auto each_pair = [&](auto&& emit) {
        for (const auto& x : ta) {
            if (bounded) {
                i64 lim = bound - w(x);
                for (const auto& y : tb) {
                    if (w(y) > lim) break;
                    emit(x, y);
                }
            } else {
                for (const auto& y : tb) emit(x, y);
            }
        }
    };

    if (!bounded && pairs >= kKroneckerPairs && box <= 8 * pairs && box <= (i128(1) << 26)) {
        // Kronecker substitution (i, j) -> i W + j; the x-ranges add, so no carries
        const i64 W = j1 - j0 + 1;
        auto pack = [W](const BiPoly& f) {
            const i64 lo = f.min_x(), i_lo = f.ord_y();
            std::vector<u64> c(static_cast<std::size_t>((f.deg_y() - i_lo) * W + (f.max_x() - lo) + 1), 0);
            for (const auto& t : f.terms()) c[static_cast<std::size_t>((t.i - i_lo) * W + (t.j - lo))] = t.c;
            return UniPoly(f.modulus(), std::move(c));
        };
        const UniPoly prod = pack(a) * pack(b);
        std::vector<Term> out;
        const auto& pc = prod.coeffs();
        for (i64 k = 0; k < static_cast<i64>(pc.size()); ++k) {
            u64 c = pc[static_cast<std::size_t>(k)];
            if (c) out.push_back({i0 + k / W, j0 + k % W, c});
        }
        return BiPoly(p, std::move(out));
    }
    if (box <= 4 * pairs + 64 && box <= (i128(1) << 24)) {
        const i64 W = j1 - j0 + 1;
        std::vector<u64> acc(static_cast<std::size_t>(box), 0);
        if (p <= 0xFFFFFFFFull) {
            // small modulus: lazy reduction is safe for a bounded number of adds
            std::vector<u128> wide(static_cast<std::size_t>(box), 0);
            each_pair([&](const Term& x, const Term& y) {
                std::size_t k = static_cast<std::size_t>((x.i + y.i - i0) * W + (x.j + y.j - j0));
                wide[k] += static_cast<u128>(x.c * y.c);
            });
            for (std::size_t k = 0; k < acc.size(); ++k) acc[k] = static_cast<u64>(wide[k] % p);
        } else {
            each_pair([&](const Term& x, const Term& y) {
                std::size_t k = static_cast<std::size_t>((x.i + y.i - i0) * W + (x.j + y.j - j0));
                acc[k] = fp::add(acc[k], fp::mul(x.c, y.c, p), p);
            });
        }
        std::vector<Term> out;
        for (i64 i = i0; i <= i1; ++i)
            for (i64 j = j0; j <= j1; ++j) {
                u64 c = acc[static_cast<std::size_t>((i - i0) * W + (j - j0))];
                if (c) out.push_back({i, j, c});
            }
        BiPoly r(p);
        r = BiPoly(p, std::move(out));
        return r;
    }
    std::vector<Term> out;
    out.reserve(static_cast<std::size_t>(std::min<i128>(pairs, i128(1) << 26)));
    each_pair([&](const Term& x, const Term& y) { out.push_back({x.i + y.i, x.j + y.j, fp::mul(x.c, y.c, p)}); });
    return BiPoly(p, std::move(out));
}

}  // namespace

BiPoly operator*(const BiPoly& a, const BiPoly& b) { return mul_impl(a, b, 0, 1, 0, false); }

BiPoly mul_weight_bounded(const BiPoly& a, const BiPoly& b, i64 m, i64 q, i64 bound) {
    return mul_impl(a, b, m, q, bound, true);
}

BiPoly bi_pow(const BiPoly& f, u64 e) {
    BiPoly r = BiPoly::constant(f.modulus(), 1), b = f;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

bool support_less(const BiPoly& a, const BiPoly& b) {
    if (a.deg_y() != b.deg_y()) return a.deg_y() < b.deg_y();
    // graded lex on (i + j, i, j), scanning from the largest monomial
    auto key = [](const Term& t) { return std::make_tuple(t.i + t.j, t.i, t.j); };
    std::vector<Term> x = a.terms(), y = b.terms();
    auto desc = [&](const Term& s, const Term& t) { return key(s) > key(t); };
    std::sort(x.begin(), x.end(), desc);
    std::sort(y.begin(), y.end(), desc);
    for (std::size_t k = 0; k < std::min(x.size(), y.size()); ++k) {
        if (key(x[k]) != key(y[k])) return key(x[k]) < key(y[k]);
        if (x[k].c != y[k].c) return x[k].c < y[k].c;
    }
    return x.size() < y.size();
}

std::string BiPoly::to_string() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        bool bare = true;
        if (it->c != 1 || (it->i == 0 && it->j == 0)) {
            os << it->c;
            bare = false;
        }
        if (it->j != 0) {
            os << (bare ? "" : "*") << "x";
            if (it->j != 1) os << "^" << (it->j < 0 ? "(" + std::to_string(it->j) + ")" : std::to_string(it->j));
            bare = false;
        }
        if (it->i != 0) {
            os << (bare ? "" : "*") << "y";
            if (it->i != 1) os << "^" << it->i;
        }
    }
    return os.str();
}

}  // namespace bivfactor
