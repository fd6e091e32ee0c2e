#include "bivfactor/ffield.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "bivfactor/errors.hpp"

namespace bivfactor {

namespace {

u64 mulmod64(u64 a, u64 b, u64 m) { return static_cast<u64>((static_cast<u128>(a) * b) % m); }

u64 powmod64(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, a, m);
        a = mulmod64(a, a, m);
        e >>= 1;
    }
    return r;
}

constexpr std::size_t kKaratsubaThreshold = 32;

void add_into(std::vector<u64>& dst, std::size_t off, const std::vector<u64>& src, u64 p) {
    if (dst.size() < off + src.size()) dst.resize(off + src.size(), 0);
    for (std::size_t i = 0; i < src.size(); ++i) dst[off + i] = fp::add(dst[off + i], src[i], p);
}

void sub_into(std::vector<u64>& dst, std::size_t off, const std::vector<u64>& src, u64 p) {
    if (dst.size() < off + src.size()) dst.resize(off + src.size(), 0);
    for (std::size_t i = 0; i < src.size(); ++i) dst[off + i] = fp::sub(dst[off + i], src[i], p);
}

std::vector<u64> school(const u64* a, std::size_t na, const u64* b, std::size_t nb, u64 p) {
    std::vector<u64> r(na + nb - 1, 0);
    if (p <= 0xFFFFFFFFull) {
        // products fit in 64 bits; accumulate a few before reducing
        std::vector<u128> acc(na + nb - 1, 0);
        for (std::size_t i = 0; i < na; ++i) {
            if (!a[i]) continue;
            for (std::size_t j = 0; j < nb; ++j) acc[i + j] += a[i] * b[j];
        }
        for (std::size_t k = 0; k < acc.size(); ++k) r[k] = static_cast<u64>(acc[k] % p);
        return r;
    }
    for (std::size_t i = 0; i < na; ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < nb; ++j) r[i + j] = fp::add(r[i + j], fp::mul(a[i], b[j], p), p);
    }
    return r;
}

std::vector<u64> kara(const u64* a, std::size_t na, const u64* b, std::size_t nb, u64 p) {
    if (na == 0 || nb == 0) return {};
    if (na < kKaratsubaThreshold || nb < kKaratsubaThreshold) return school(a, na, b, nb, p);
    std::size_t h = std::max(na, nb) / 2;
    if (h >= na || h >= nb) {
        // very unbalanced: split the longer operand into blocks
        const u64* L = na >= nb ? a : b;
        const u64* S = na >= nb ? b : a;
        std::size_t nl = std::max(na, nb), ns = std::min(na, nb);
        std::vector<u64> r(nl + ns - 1, 0);
        for (std::size_t off = 0; off < nl; off += ns) {
            std::size_t len = std::min(ns, nl - off);
            auto part = kara(L + off, len, S, ns, p);
            add_into(r, off, part, p);
        }
        return r;
    }
    std::size_t la = std::min(h, na), lb = std::min(h, nb);
    auto z0 = kara(a, la, b, lb, p);
    auto z2 = kara(a + h, na - h, b + h, nb - h, p);
    std::vector<u64> sa(std::max(la, na - h), 0), sb(std::max(lb, nb - h), 0);
    for (std::size_t i = 0; i < la; ++i) sa[i] = a[i];
    for (std::size_t i = 0; i < na - h; ++i) sa[i] = fp::add(sa[i], a[h + i], p);
    for (std::size_t i = 0; i < lb; ++i) sb[i] = b[i];
    for (std::size_t i = 0; i < nb - h; ++i) sb[i] = fp::add(sb[i], b[h + i], p);
    auto z1 = kara(sa.data(), sa.size(), sb.data(), sb.size(), p);
    sub_into(z1, 0, z0, p);
    sub_into(z1, 0, z2, p);
    std::vector<u64> r(na + nb - 1, 0);
    add_into(r, 0, z0, p);
    add_into(r, h, z1, p);
    add_into(r, 2 * h, z2, p);
    r.resize(na + nb - 1);
    return r;
}

// Montgomery arithmetic modulo an odd m < 2^62, R = 2^64.
struct Mont {
    u64 m, neg_inv, r2;
    explicit Mont(u64 mod) : m(mod) {
        u64 x = m;
        for (int k = 0; k < 6; ++k) x *= 2 - m * x;
        neg_inv = 0 - x;
        u64 r1 = (0 - m) % m;
        r2 = mulmod64(r1, r1, m);
    }
    u64 mul(u64 a, u64 b) const {
        u128 t = static_cast<u128>(a) * b;
        u64 u = static_cast<u64>(t) * neg_inv;
        u64 r = static_cast<u64>((t + static_cast<u128>(u) * m) >> 64);
        return r >= m ? r - m : r;
    }
    u64 to(u64 a) const { return mul(a % m, r2); }
    u64 from(u64 a) const { return mul(a, 1); }
};

// Primes c * 2^40 + 1 below 2^62 with a primitive root; three of them cover
// every convolution coefficient (< len * p^2) of inputs modulo p < 2^62.
struct NttPrime {
    u64 m, g;
};
constexpr NttPrime kNttPrimes[3] = {{4611615649683210241ull, 11}, {4611613450659954689ull, 3}, {4611549678985543681ull, 19}};
// measured crossovers against Karatsuba; small moduli use the cheaper 64-bit schoolbook base
constexpr std::size_t kNttThresholdSmall = 2048, kNttThresholdLarge = 768;

// Twiddles in Montgomery form for every level up to length n; index len/2 + k holds w_len^k.
const std::vector<u64>& twiddles(int which, bool inverse, std::size_t n) {
    static thread_local std::vector<u64> cache[3][2];
    std::vector<u64>& tw = cache[which][inverse];
    if (tw.size() >= n) return tw;
    const Mont M(kNttPrimes[which].m);
    tw.assign(n, 0);
    for (std::size_t half = 1; half < n; half <<= 1) {
        u64 w = powmod64(kNttPrimes[which].g, (M.m - 1) / (2 * half), M.m);
        if (inverse) w = powmod64(w, M.m - 2, M.m);
        const u64 wm = M.to(w);
        tw[half] = M.to(1);
        for (std::size_t k = 1; k < half; ++k) tw[half + k] = M.mul(tw[half + k - 1], wm);
    }
    return tw;
}

void ntt(std::vector<u64>& a, bool inverse, const Mont& M, int which) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const std::vector<u64>& tw = twiddles(which, inverse, n);
    const u64 m = M.m;
    for (std::size_t half = 1; half < n; half <<= 1) {
        const u64* w = tw.data() + half;
        for (std::size_t i = 0; i < n; i += 2 * half)
            for (std::size_t k = 0; k < half; ++k) {
                u64 u = a[i + k], v = M.mul(a[i + k + half], w[k]);
                a[i + k] = u + v >= m ? u + v - m : u + v;
                a[i + k + half] = u >= v ? u - v : u + m - v;
            }
    }
    if (inverse) {
        const u64 ninv = M.to(powmod64(n % m, m - 2, m));
        for (auto& x : a) x = M.mul(x, ninv);
    }
}

std::vector<u64> ntt_mul(const u64* a, std::size_t na, const u64* b, std::size_t nb, u64 p) {
    const std::size_t out = na + nb - 1;
    std::size_t n = 1;
    while (n < out) n <<= 1;
    std::vector<u64> res[3];
    for (int k = 0; k < 3; ++k) {
        const Mont M(kNttPrimes[k].m);
        std::vector<u64> fa(n, 0), fb(n, 0);
        for (std::size_t i = 0; i < na; ++i) fa[i] = M.to(a[i]);
        for (std::size_t i = 0; i < nb; ++i) fb[i] = M.to(b[i]);
        ntt(fa, false, M, k);
        ntt(fb, false, M, k);
        // the product of two Montgomery forms loses one R; inverse transform and from() drop the rest
        for (std::size_t i = 0; i < n; ++i) fa[i] = M.mul(fa[i], fb[i]);
        ntt(fa, true, M, k);
        fa.resize(out);
        for (auto& x : fa) x = M.from(x);
        res[k] = std::move(fa);
    }
    // Garner: x = r0 + m0 (t1 + m1 t2), then reduced modulo p; mul(a, to(c)) = a c
    const u64 m0 = kNttPrimes[0].m, m1 = kNttPrimes[1].m, m2 = kNttPrimes[2].m;
    const Mont M1(m1), M2(m2);
    const u64 inv01 = M1.to(powmod64(m0 % m1, m1 - 2, m1));
    const u64 inv02 = M2.to(powmod64(m0 % m2, m2 - 2, m2)), inv12 = M2.to(powmod64(m1 % m2, m2 - 2, m2));
    std::vector<u64> r(out);
    auto sub = [](u64 x, u64 y, u64 m) { return x >= y ? x - y : x + m - y; };
    auto red = [](u64 x, u64 m) { return x >= m ? x % m : x; };
    if (p == 2) {
        // m0, m1 are odd, so x = r0 + t1 + t2 mod 2
        for (std::size_t i = 0; i < out; ++i) {
            u64 r0 = res[0][i];
            u64 t1 = M1.mul(sub(res[1][i], red(r0, m1), m1), inv01);
            u64 t2 = M2.mul(sub(res[2][i], red(r0, m2), m2), inv02);
            t2 = M2.mul(sub(t2, red(t1, m2), m2), inv12);
            r[i] = (r0 + t1 + t2) & 1;
        }
        return r;
    }
    const Mont P(p);
    const u64 m0p = P.to(m0 % p), m01p = P.to(P.mul(P.to(m0 % p), m1 % p));
    for (std::size_t i = 0; i < out; ++i) {
        u64 r0 = res[0][i];
        u64 t1 = M1.mul(sub(res[1][i], red(r0, m1), m1), inv01);
        u64 t2 = M2.mul(sub(res[2][i], red(r0, m2), m2), inv02);
        t2 = M2.mul(sub(t2, red(t1, m2), m2), inv12);
        u64 acc = red(r0, p);
        acc = fp::add(acc, P.mul(red(t1, p), m0p), p);
        acc = fp::add(acc, P.mul(red(t2, p), m01p), p);
        r[i] = acc;
    }
    return r;
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % sp == 0) return n == sp;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // deterministic witness set for 64-bit integers
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod64(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

void require_prime_modulus(u64 p) {
    if (p >= kMaxModulus) throw ModulusNotPrime("modulus " + std::to_string(p) + " is not below 2^62");
    if (!is_prime_u64(p)) throw ModulusNotPrime(std::to_string(p) + " is not prime");
}

namespace fp {

u64 pow(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    while (e) {
        if (e & 1) r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 inv(u64 a, u64 p) {
    if (a % p == 0) throw NotAUnit("inverse of zero");
    i128 t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        i128 q = r / nr;
        i128 tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0) t += p;
    return static_cast<u64>(t);
}

u64 from_int(i64 v, u64 p) {
    i128 r = static_cast<i128>(v) % static_cast<i128>(p);
    if (r < 0) r += p;
    return static_cast<u64>(r);
}

u64 from_i128(i128 v, u64 p) {
    i128 r = v % static_cast<i128>(p);
    if (r < 0) r += p;
    return static_cast<u64>(r);
}

}  // namespace fp

UniPoly::UniPoly(u64 p, std::vector<u64> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& v : c_) v %= p_;
    trim();
}

UniPoly UniPoly::constant(u64 p, u64 c) { return UniPoly(p, {c % p}); }

UniPoly UniPoly::monomial(u64 p, u64 c, std::size_t deg) {
    std::vector<u64> v(deg + 1, 0);
    v[deg] = c % p;
    return UniPoly(p, std::move(v));
}

void UniPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

u64 UniPoly::eval(u64 z) const {
    u64 r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = fp::add(fp::mul(r, z, p_), c_[i], p_);
    return r;
}

int UniPoly::valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i]) return static_cast<int>(i);
    return -1;
}

void UniPoly::set(std::size_t i, u64 v) {
    v %= p_;
    if (i >= c_.size()) {
        if (v == 0) return;
        c_.resize(i + 1, 0);
    }
    c_[i] = v;
    trim();
}

UniPoly UniPoly::truncated(std::size_t n) const {
    if (c_.size() <= n) return *this;
    UniPoly r(p_);
    r.c_.assign(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n));
    r.trim();
    return r;
}

UniPoly UniPoly::shifted(std::size_t k) const {
    if (is_zero() || k == 0) return *this;
    UniPoly r(p_);
    r.c_.assign(k, 0);
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
}

bool operator<(const UniPoly& a, const UniPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.c_.size(); i-- > 0;)
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = fp::add(c_[i], o.c_[i], p_);
    trim();
    return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = fp::sub(c_[i], o.c_[i], p_);
    trim();
    return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly(a.p_);
    UniPoly r(a.p_);
    if (std::min(a.c_.size(), b.c_.size()) >= (a.p_ <= 0xFFFFFFFFull ? kNttThresholdSmall : kNttThresholdLarge))
        r.c_ = ntt_mul(a.c_.data(), a.c_.size(), b.c_.data(), b.c_.size(), a.p_);
    else
        r.c_ = kara(a.c_.data(), a.c_.size(), b.c_.data(), b.c_.size(), a.p_);
    r.trim();
    return r;
}

UniPoly UniPoly::operator-() const {
    UniPoly r = *this;
    for (auto& v : r.c_) v = fp::neg(v, p_);
    return r;
}

UniPoly UniPoly::scaled(u64 s) const {
    s %= p_;
    if (s == 0) return UniPoly(p_);
    UniPoly r = *this;
    for (auto& v : r.c_) v = fp::mul(v, s, p_);
    return r;
}

std::string UniPoly::to_string(const char* var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (!c_[i]) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || c_[i] != 1) os << c_[i];
        if (i > 0) {
            if (c_[i] != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

UniPoly uni_mullow(const UniPoly& a, const UniPoly& b, std::size_t n) {
    return (a.truncated(n) * b.truncated(n)).truncated(n);
}

std::pair<UniPoly, UniPoly> uni_divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw NotAUnit("division by zero polynomial");
    const u64 p = a.modulus();
    if (a.degree() < b.degree()) return {UniPoly(p), a};
    std::vector<u64> r = a.coeffs();
    const auto& bc = b.coeffs();
    const std::size_t db = bc.size() - 1;
    const u64 il = fp::inv(b.lead(), p);
    std::vector<u64> q(r.size() - db, 0);
    for (std::size_t k = r.size(); k-- > db;) {
        u64 c = fp::mul(r[k], il, p);
        q[k - db] = c;
        if (!c) continue;
        for (std::size_t j = 0; j <= db; ++j) r[k - db + j] = fp::sub(r[k - db + j], fp::mul(c, bc[j], p), p);
    }
    r.resize(db);
    return {UniPoly(p, std::move(q)), UniPoly(p, std::move(r))};
}

UniPoly uni_rem(const UniPoly& a, const UniPoly& b) { return uni_divmod(a, b).second; }
UniPoly uni_quo(const UniPoly& a, const UniPoly& b) { return uni_divmod(a, b).first; }

UniPoly uni_monic(const UniPoly& f) {
    if (f.is_zero()) return f;
    return f.scaled(fp::inv(f.lead(), f.modulus()));
}

UniPoly uni_derivative(const UniPoly& f) {
    const u64 p = f.modulus();
    if (f.degree() < 1) return UniPoly(p);
    std::vector<u64> d(f.coeffs().size() - 1);
    for (std::size_t i = 1; i < f.coeffs().size(); ++i) d[i - 1] = fp::mul(f[i], i % p, p);
    return UniPoly(p, std::move(d));
}

UniPoly uni_gcd(const UniPoly& f, const UniPoly& g) {
    UniPoly a = f, b = g;
    while (!b.is_zero()) {
        UniPoly r = uni_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return uni_monic(a);
}

UniXgcd uni_xgcd(const UniPoly& a, const UniPoly& b) {
    const u64 p = a.modulus();
    UniPoly r0 = a, r1 = b;
    UniPoly s0 = UniPoly::constant(p, 1), s1(p);
    UniPoly t0(p), t1 = UniPoly::constant(p, 1);
    while (!r1.is_zero()) {
        auto [q, r] = uni_divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        UniPoly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        UniPoly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    u64 il = fp::inv(r0.lead(), p);
    return {r0.scaled(il), s0.scaled(il), t0.scaled(il)};
}

UniPoly uni_powmod(const UniPoly& base, u64 e, const UniPoly& mod) {
    const u64 p = base.modulus();
    UniPoly r = uni_rem(UniPoly::constant(p, 1), mod);
    UniPoly b = uni_rem(base, mod);
    while (e) {
        if (e & 1) r = uni_rem(r * b, mod);
        e >>= 1;
        if (e) b = uni_rem(b * b, mod);
    }
    return r;
}

UniPoly uni_pow(const UniPoly& base, u64 e) {
    UniPoly r = UniPoly::constant(base.modulus(), 1);
    UniPoly b = base;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

UniPoly uni_inv_series(const UniPoly& f, std::size_t n) {
    const u64 p = f.modulus();
    if (f[0] == 0) throw NotAUnit("series with zero constant term");
    UniPoly g = UniPoly::constant(p, fp::inv(f[0], p));
    std::size_t prec = 1;
    while (prec < n) {
        prec = std::min(2 * prec, n);
        // g <- g (2 - f g)
        UniPoly e = uni_mullow(f, g, prec);
        e = UniPoly::constant(p, 2) - e;
        g = uni_mullow(g, e, prec);
    }
    return g.truncated(n);
}

UniPoly uni_invmod(const UniPoly& a, const UniPoly& m) {
    auto x = uni_xgcd(a, m);
    if (!x.g.is_one()) throw NotAUnit("polynomial not invertible modulo m");
    return uni_rem(x.s, m);
}

bool uni_is_separable(const UniPoly& f) {
    if (f.degree() < 1) return true;
    return uni_gcd(f, uni_derivative(f)).is_one();
}

namespace {

// x^(p^k) mod f by k successive p-th powers
UniPoly frobenius_power(const UniPoly& h, const UniPoly& f) {
    return uni_powmod(h, f.modulus(), f);
}

UniPoly pth_root(const UniPoly& f) {
    const u64 p = f.modulus();
    std::vector<u64> r;
    for (std::size_t i = 0; i < f.coeffs().size(); i += p) r.push_back(f[i]);
    return UniPoly(p, std::move(r));
}

void sqf_rec(const UniPoly& f, int mult, std::vector<std::pair<UniPoly, int>>& out) {
    const u64 p = f.modulus();
    if (f.degree() < 1) return;
    UniPoly fd = uni_derivative(f);
    if (fd.is_zero()) {
        sqf_rec(pth_root(f), mult * static_cast<int>(p), out);
        return;
    }
    UniPoly c = uni_gcd(f, fd);
    UniPoly w = uni_quo(f, c);
    int i = 1;
    while (w.degree() > 0) {
        UniPoly y = uni_gcd(w, c);
        UniPoly z = uni_quo(w, y);
        if (z.degree() > 0) out.push_back({uni_monic(z), i * mult});
        ++i;
        w = y;
        c = uni_quo(c, y);
    }
    if (c.degree() > 0) sqf_rec(pth_root(c), mult * static_cast<int>(p), out);
}

// Distinct-degree factorization of a monic squarefree polynomial.
std::vector<std::pair<UniPoly, int>> ddf(const UniPoly& f) {
    const u64 p = f.modulus();
    std::vector<std::pair<UniPoly, int>> out;
    UniPoly g = f;
    UniPoly x = UniPoly::x(p);
    UniPoly h = uni_rem(x, g);
    int d = 0;
    while (g.degree() >= 2 * (d + 1)) {
        ++d;
        h = frobenius_power(h, g);
        UniPoly t = uni_gcd(g, h - x);
        if (t.degree() > 0) {
            out.push_back({t, d});
            g = uni_quo(g, t);
            h = uni_rem(h, g);
        }
    }
    if (g.degree() > 0) out.push_back({g, g.degree()});
    return out;
}

UniPoly random_poly(u64 p, int deg_below, std::mt19937_64& rng) {
    std::vector<u64> c(static_cast<std::size_t>(deg_below));
    std::uniform_int_distribution<u64> dist(0, p - 1);
    for (auto& v : c) v = dist(rng);
    return UniPoly(p, std::move(c));
}

// Equal-degree splitting (Cantor-Zassenhaus) of a product of degree-d irreducibles.
void edf(const UniPoly& f, int d, std::mt19937_64& rng, std::vector<UniPoly>& out) {
    const u64 p = f.modulus();
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    for (;;) {
        UniPoly a = random_poly(p, f.degree(), rng);
        if (a.degree() < 1) continue;
        UniPoly b;
        if (p == 2) {
            // trace map a + a^2 + ... + a^(2^(d-1))
            UniPoly t = a, acc = a;
            for (int i = 1; i < d; ++i) {
                t = uni_rem(t * t, f);
                acc += t;
            }
            b = acc;
        } else {
            // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
            UniPoly t = a, acc = a;
            for (int i = 1; i < d; ++i) {
                t = frobenius_power(t, f);
                acc = uni_rem(acc * t, f);
            }
            b = uni_powmod(acc, (p - 1) / 2, f) - UniPoly::constant(p, 1);
        }
        UniPoly g = uni_gcd(f, b);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            edf(g, d, rng, out);
            edf(uni_quo(f, g), d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<UniPoly, int>> uni_squarefree(const UniPoly& f) {
    if (f.is_zero()) throw ZeroPolynomial("squarefree decomposition of zero");
    std::vector<std::pair<UniPoly, int>> out;
    sqf_rec(uni_monic(f), 1, out);
    return out;
}

std::vector<std::pair<UniPoly, int>> uni_factor(const UniPoly& f, u64 rng_seed) {
    if (f.is_zero()) throw ZeroPolynomial("factorization of zero");
    std::mt19937_64 rng(rng_seed);
    std::vector<std::pair<UniPoly, int>> out;
    for (auto& [part, mult] : uni_squarefree(f)) {
        for (auto& [block, d] : ddf(part)) {
            std::vector<UniPoly> irr;
            edf(block, d, rng, irr);
            for (auto& g : irr) out.push_back({uni_monic(g), mult});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    // merge equal factors coming from different squarefree layers
    std::vector<std::pair<UniPoly, int>> merged;
    for (auto& fm : out) {
        if (!merged.empty() && merged.back().first == fm.first)
            merged.back().second += fm.second;
        else
            merged.push_back(fm);
    }
    return merged;
}

bool uni_is_irreducible(const UniPoly& f) {
    if (f.degree() < 1) return false;
    if (f.degree() == 1) return true;
    UniPoly g = uni_monic(f);
    if (!uni_is_separable(g)) return false;
    const u64 p = g.modulus();
    UniPoly x = UniPoly::x(p);
    UniPoly h = uni_rem(x, g);
    for (int i = 1; 2 * i <= g.degree(); ++i) {
        h = frobenius_power(h, g);
        if (!uni_gcd(g, h - x).is_one()) return false;
    }
    return true;
}

UniPoly uni_find_coprime_irreducible(const UniPoly& c0) {
    if (c0.is_zero()) throw ZeroPolynomial("uni_find_coprime_irreducible of zero");
    const u64 p = c0.modulus();
    // degree one: y - z with the smallest z such that c0(z) != 0
    u64 bound = std::min<u64>(p, static_cast<u64>(c0.degree()) + 1);
    for (u64 z = 0; z < bound; ++z) {
        if (c0.eval(z) != 0) return UniPoly(p, {fp::neg(z, p), 1});
    }
    for (int d = 2;; ++d) {
        // monic candidates, ordered by the coefficient vector read from degree d-1 down
        std::vector<u64> digits(static_cast<std::size_t>(d), 0);
        for (;;) {
            std::vector<u64> c(digits.rbegin(), digits.rend());
            c.push_back(1);
            UniPoly a(p, c);
            if (uni_is_irreducible(a) && uni_gcd(a, c0).is_one()) return a;
            std::size_t k = d;
            while (k > 0) {
                --k;
                if (++digits[k] < p) break;
                digits[k] = 0;
                if (k == 0) {
                    k = SIZE_MAX;
                    break;
                }
            }
            if (k == SIZE_MAX) break;
        }
    }
}

}  // namespace bivfactor
