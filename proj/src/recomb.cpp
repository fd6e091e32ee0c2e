#include "bivfactor/recomb.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "bivfactor/errors.hpp"
#include "bivfactor/slopecore.hpp"

namespace bivfactor {

namespace {

// y-coefficients as polynomials in x
using Dense = std::vector<UniPoly>;

void trim(Dense& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

Dense to_dense(const BiPoly& f) {
    Dense d;
    for (i64 i = 0; i <= f.deg_y(); ++i) d.push_back(f.coeff_y(i));
    trim(d);
    return d;
}

BiPoly from_dense(const Dense& d, u64 p) {
    BiPoly r(p);
    for (std::size_t i = 0; i < d.size(); ++i) r += BiPoly::from_x_poly(d[i], static_cast<i64>(i));
    return r;
}

UniPoly dense_content(const Dense& a, u64 p) {
    UniPoly g(p);
    for (const auto& c : a) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? uni_monic(c) : uni_gcd(g, c);
        if (g.degree() == 0) break;
    }
    return g;
}

void make_primitive(Dense& a, u64 p) {
    UniPoly c = dense_content(a, p);
    if (c.degree() <= 0) return;
    for (auto& x : a) x = uni_quo(x, c);
}

// Pseudo-remainder of A by B in K[x][y].
Dense prem(Dense A, const Dense& B) {
    const UniPoly& lb = B.back();
    while (!A.empty() && A.size() >= B.size()) {
        UniPoly la = A.back();
        std::size_t shift = A.size() - B.size();
        for (auto& c : A) c = c * lb;
        for (std::size_t k = 0; k < B.size(); ++k) A[k + shift] -= la * B[k];
        A.pop_back();
        trim(A);
    }
    return A;
}

// Degree in y of gcd(A, B) over K(x), via a primitive remainder sequence.
i64 gcd_degree_y(Dense A, Dense B, u64 p) {
    trim(A);
    trim(B);
    if (A.size() < B.size()) std::swap(A, B);
    make_primitive(A, p);
    make_primitive(B, p);
    while (!B.empty()) {
        Dense R = prem(A, B);
        make_primitive(R, p);
        A = std::move(B);
        B = std::move(R);
    }
    return static_cast<i64>(A.size()) - 1;
}

UniPoly compress(const UniPoly& c, i64 r, i64 q) {
    std::vector<u64> out;
    for (std::size_t k = 0; k < c.coeffs().size(); ++k) {
        if (!c[k]) continue;
        i64 e = static_cast<i64>(k) - r;
        if (e < 0 || e % q != 0) throw InternalError("coefficient outside its grade");
        std::size_t t = static_cast<std::size_t>(e / q);
        if (out.size() <= t) out.resize(t + 1, 0);
        out[t] = c[k];
    }
    return UniPoly(c.modulus(), std::move(out));
}

i64 mod_pos(i64 a, i64 n) {
    i64 r = a % n;
    return r < 0 ? r + n : r;
}

std::vector<u64> unit_vector(std::size_t s, std::size_t i) {
    std::vector<u64> e(s, 0);
    e[i] = 1;
    return e;
}

// Exact quotient of A by B in K[x][y]; B | A is assumed.
Dense exact_div(Dense A, const Dense& B) {
    trim(A);
    if (A.size() < B.size()) return {};
    const u64 p = B.back().modulus();
    Dense Q(A.size() - B.size() + 1, UniPoly(p));
    while (!A.empty() && A.size() >= B.size()) {
        std::size_t shift = A.size() - B.size();
        auto [t, r] = uni_divmod(A.back(), B.back());
        if (!r.is_zero()) throw InternalError("exact division failed");
        for (std::size_t k = 0; k < B.size(); ++k) A[k + shift] -= t * B[k];
        Q[shift] = t;
        trim(A);
    }
    if (!A.empty()) throw InternalError("exact division left a remainder");
    return Q;
}

std::string degeneracy_message(const DegeneracyReport& rep) {
    std::ostringstream os;
    bool first = true;
    for (const auto& e : rep.edges) {
        if (e.separable) continue;
        if (!first) os << "; ";
        first = false;
        os << "edge (" << e.edge.a.first << "," << e.edge.a.second << ")->(" << e.edge.b.first << ","
           << e.edge.b.second << ") has non-separable edge polynomial " << e.g.to_string("t");
    }
    return os.str();
}

}  // namespace

UniPoly content_x(const BiPoly& f) { return dense_content(to_dense(f), f.modulus()); }

BiPoly primitive_part(const BiPoly& f) {
    Dense d = to_dense(f);
    make_primitive(d, f.modulus());
    return from_dense(d, f.modulus());
}

bool is_separable_y(const BiPoly& f0) {
    if (f0.is_zero()) return false;
    BiPoly f = f0.shifted(0, -f0.min_x());
    BiPoly fy = f.deriv_y();
    if (fy.is_zero()) return false;
    const u64 p = f.modulus();
    UniPoly lc = f.coeff_y(f.deg_y());
    u64 tries = std::min<u64>(p, 32);
    for (u64 x0 = 0; x0 < tries; ++x0) {
        if (lc.eval(x0) == 0) continue;
        if (uni_gcd(f.eval_x(x0), fy.eval_x(x0)).degree() == 0) return true;
    }
    return gcd_degree_y(to_dense(f), to_dense(fy), p) == 0;
}

BiPoly normalize_factor(const BiPoly& f) {
    if (f.is_zero()) return f;
    BiPoly lc = f.lc_y();
    u64 c = f.coeff(f.deg_y(), lc.min_x());
    return f.scaled(fp::inv(c, f.modulus()));
}

BiPoly lambda_product(const std::vector<BiPoly>& fs, const Slope& lam, const Rat& bound) {
    if (fs.empty()) throw std::invalid_argument("lambda_product of nothing");
    const u64 p = fs[0].modulus();
    std::vector<Rat> rest(fs.size() + 1, Rat(0));
    for (std::size_t k = fs.size(); k-- > 0;) {
        if (fs[k].is_zero()) return BiPoly(p);
        rest[k] = rest[k + 1] + v_lambda(fs[k], lam);
    }
    auto qb = [&](std::size_t k) { return ((bound - rest[k + 1]) * Rat(lam.q)).floor(); };
    BiPoly acc = trunc_lambda(fs[0], lam, bound - rest[1]);
    for (std::size_t k = 1; k < fs.size(); ++k) acc = mul_weight_bounded(acc, fs[k], lam.m, lam.q, qb(k));
    return acc;
}

RecombinationProblem make_problem(const BiPoly& f, const std::vector<BiPoly>& analytic, const Slope& lam,
                                  i64 extra) {
    RecombinationProblem pr;
    pr.F = f;
    pr.analytic = analytic;
    pr.lambda = lam;
    pr.N = Rat(f.deg_y()) * (d_lambda(f, lam) - v_lambda(f, lam));
    pr.T = d_lambda(f, lam) + Rat(extra);
    return pr;
}

bool g_mu_injective(const RecombinationProblem& pr) {
    const std::size_t s = pr.analytic.size();
    const u64 p = pr.F.modulus();
    std::vector<BiPoly> G;
    std::map<std::pair<i64, i64>, std::size_t> col;
    for (std::size_t i = 0; i < s; ++i) {
        G.push_back(g_mu(pr, unit_vector(s, i)));
        for (const auto& t : G.back().terms()) col.emplace(std::make_pair(t.i, t.j), 0);
    }
    if (col.size() < s) return false;
    std::size_t n = 0;
    for (auto& [k, idx] : col) idx = n++;
    Matrix M(s, std::vector<u64>(n, 0));
    for (std::size_t i = 0; i < s; ++i)
        for (const auto& t : G[i].terms()) M[i][col[{t.i, t.j}]] = t.c;
    return rref(std::move(M), p).size() == s;
}

BiPoly g_mu(const RecombinationProblem& pr, const std::vector<u64>& mu) {
    const u64 p = pr.F.modulus();
    const std::size_t s = pr.analytic.size();
    if (mu.size() != s) throw std::invalid_argument("g_mu: wrong vector length");
    const Slope& lam = pr.lambda;
    const Rat T = pr.T;
    BiPoly lc = pr.F.lc_y().shifted(-pr.F.deg_y(), 0);
    std::vector<Rat> v(s);
    std::vector<BiPoly> der(s);
    Rat delta(0);
    for (std::size_t i = 0; i < s; ++i) {
        v[i] = v_lambda(pr.analytic[i], lam);
        der[i] = pr.analytic[i].deriv_y();
        if (!der[i].is_zero()) delta = min(delta, v_lambda(der[i], lam) - v[i]);
    }
    // prefix[i] = prod_{k<i}, suffix[i] = prod_{k>=i}, truncated where nothing can reach T anymore
    std::vector<Rat> vsum(s + 1, Rat(0));
    for (std::size_t i = s; i-- > 0;) vsum[i] = vsum[i + 1] + v[i];
    const Rat vlc = v_lambda(lc, lam);
    std::vector<BiPoly> prefix(s + 1), suffix(s + 1);
    prefix[0] = BiPoly::constant(p, 1);
    for (std::size_t i = 0; i < s; ++i) {
        Rat b = T - vlc - vsum[i + 1] - delta;
        prefix[i + 1] = mul_weight_bounded(prefix[i], pr.analytic[i], lam.m, lam.q, (b * Rat(lam.q)).floor());
    }
    suffix[s] = BiPoly::constant(p, 1);
    std::vector<Rat> vpre(s + 1, Rat(0));
    for (std::size_t i = 0; i < s; ++i) vpre[i + 1] = vpre[i] + v[i];
    for (std::size_t i = s; i-- > 0;) {
        Rat b = T - vlc - vpre[i] - delta;
        suffix[i] = mul_weight_bounded(pr.analytic[i], suffix[i + 1], lam.m, lam.q, (b * Rat(lam.q)).floor());
    }
    BiPoly out(p);
    for (std::size_t i = 0; i < s; ++i) {
        if (mu[i] % p == 0 || der[i].is_zero()) continue;
        BiPoly term = lambda_product({lc, prefix[i], suffix[i + 1], der[i]}, lam, T);
        out += term.scaled(mu[i] % p);
    }
    return out;
}

BiPoly d_operator(const BiPoly& g, const BiPoly& f) {
    BiPoly fx = f.deriv_x(), fy = f.deriv_y();
    BiPoly A = fy * fy, B = fx * fy, C = fx.deriv_y() * fy - fy.deriv_y() * fx;
    return g.deriv_x() * A - g.deriv_y() * B - g * C;
}

FTilde ftilde_normalize(const BiPoly& f, const Slope& lam) {
    if (f.is_zero()) throw ZeroPolynomial("ftilde_normalize of zero");
    const i64 q = lam.q, m = lam.m;
    i64 W = v_lambda(f, lam).num() * (q / v_lambda(f, lam).den());
    FTilde r;
    r.alpha = mod_pos(-f.deg_y(), q);
    i64 g = W + m * r.alpha;
    r.k = -(g >= 0 ? g / q : -((-g + q - 1) / q));
    r.F = tau_lambda(f.shifted(r.alpha, r.k), lam);
    return r;
}

std::vector<UniPoly> a_adic_expand(const UniPoly& u, const UniPoly& a, i64 lo, i64 hi) {
    if (a.degree() < 1) throw std::invalid_argument("a_adic_expand: a must have positive degree");
    std::vector<UniPoly> out;
    UniPoly r = u;
    for (i64 i = 0; i <= hi; ++i) {
        auto [qq, rr] = uni_divmod(r, a);
        if (i >= lo) out.push_back(rr);
        r = std::move(qq);
    }
    return out;
}

std::vector<BiPoly> a_adic_expand(const BiPoly& q, const UniPoly& a, i64 lo, i64 hi) {
    const u64 p = q.modulus();
    std::vector<BiPoly> out(static_cast<std::size_t>(std::max<i64>(hi - lo + 1, 0)), BiPoly(p));
    if (q.is_zero()) return out;
    if (q.min_x() < 0) throw std::invalid_argument("a_adic_expand: negative x-exponent");
    for (i64 i = q.ord_y(); i <= q.deg_y(); ++i) {
        auto digits = a_adic_expand(q.coeff_y(i), a, lo, hi);
        for (std::size_t k = 0; k < digits.size(); ++k) out[k] += BiPoly::from_x_poly(digits[k], i);
    }
    return out;
}

Matrix phi_map(const RecombinationProblem& pr, PhiWindow* window) {
    const u64 p = pr.F.modulus();
    const Slope& lam = pr.lambda;
    const i64 q = lam.q, m = lam.m;
    const std::size_t s = pr.analytic.size();
    FTilde ft = ftilde_normalize(pr.F, lam);
    const i64 dt = ft.F.deg_y();
    const i64 r0 = ft.F.min_x();
    auto grade = [&](i64 i) { return mod_pos(m * i, q); };

    std::vector<BiPoly> D(s);
    bool any = false;
    i64 minv = 0;
    for (std::size_t i = 0; i < s; ++i) {
        D[i] = tau_lambda(d_operator(g_mu(pr, unit_vector(s, i)), pr.F).shifted(ft.alpha, ft.k), lam);
        if (D[i].is_zero()) continue;
        minv = any ? std::min(minv, D[i].min_x()) : D[i].min_x();
        any = true;
    }
    // one x^(q t) for all rows so that v_0(D) >= v_0(F~): then F~ | D forces a polynomial quotient
    i64 t = 0;
    if (any) {
        i64 need = r0 - minv;
        t = need >= 0 ? (need + q - 1) / q : -((-need) / q);
    }
    i64 E = 0, ey = dt;
    for (auto& d : D) {
        if (d.is_zero()) continue;
        d = d.shifted(0, q * t);
        E = std::max(E, d.max_x());
        ey = std::max(ey, d.deg_y());
    }

    UniPoly c0 = compress(ft.F.coeff_y(dt), 0, q);
    UniPoly a0 = uni_find_coprime_irreducible(c0);
    const i64 da = static_cast<i64>(a0.degree()) * q;
    const i64 dx = ft.F.max_x();
    const i64 wm = std::max(2 * dx, E - dx) / da + 1;
    const i64 wn = std::max((3 * dx + da - 1) / da, std::max(E, wm * da + dx - 1) / da);
    if (window) *window = {a0, t, dx, wm, wn};

    const UniPoly A = uni_pow(a0, static_cast<u64>(wn + 1));
    const UniPoly cinv = uni_invmod(uni_rem(c0, A), A);
    std::vector<UniPoly> Fc(static_cast<std::size_t>(dt + 1));
    for (i64 i = 0; i <= dt; ++i) Fc[static_cast<std::size_t>(i)] = uni_rem(compress(ft.F.coeff_y(i), grade(i), q), A);
    const UniPoly X = UniPoly::x(p);
    const std::size_t deg0 = static_cast<std::size_t>(a0.degree());

    Matrix rows;
    for (std::size_t idx = 0; idx < s; ++idx) {
        std::vector<UniPoly> R(static_cast<std::size_t>(ey + 1), UniPoly(p));
        for (i64 i = 0; i <= ey; ++i) R[static_cast<std::size_t>(i)] = uni_rem(compress(D[idx].coeff_y(i), grade(i), q), A);
        std::vector<UniPoly> Q(static_cast<std::size_t>(ey - dt + 1), UniPoly(p));
        for (i64 k = ey; k >= dt; --k) {
            UniPoly tk = uni_rem(R[static_cast<std::size_t>(k)] * cinv, A);
            R[static_cast<std::size_t>(k)] = UniPoly(p);
            if (tk.is_zero()) continue;
            i64 gq = grade(k - dt);
            for (i64 i = 0; i < dt; ++i) {
                if (Fc[static_cast<std::size_t>(i)].is_zero()) continue;
                UniPoly prod = tk * Fc[static_cast<std::size_t>(i)];
                if (gq + grade(i) >= q) prod = prod * X;
                auto& target = R[static_cast<std::size_t>(k - dt + i)];
                target = uni_rem(target - prod, A);
            }
            Q[static_cast<std::size_t>(k - dt)] = std::move(tk);
        }
        std::vector<u64> row;
        auto flatten = [&](const UniPoly& u, i64 lo, i64 hi) {
            for (const auto& dgt : a_adic_expand(u, a0, lo, hi))
                for (std::size_t c = 0; c < deg0; ++c) row.push_back(dgt[c]);
        };
        for (const auto& qq : Q) flatten(qq, wm, wn);
        for (i64 i = 0; i < dt; ++i) flatten(R[static_cast<std::size_t>(i)], 0, wn);
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix psi_map(const RecombinationProblem& pr, const Matrix& basis) {
    const u64 p = pr.F.modulus();
    const BiPoly& F = pr.F;
    std::vector<BiPoly> G;
    bool laurent = false;
    // x^p-degree bound of psi from deg_x of G^p and of G F^(p-1)
    i64 K = 0;
    const i64 dxF = F.max_x();
    for (const auto& b : basis) {
        G.push_back(g_mu(pr, b));
        if (G.back().is_zero()) continue;
        if (G.back().min_x() < 0) laurent = true;
        const i64 dxG = G.back().max_x();
        const __int128 pp = p;
        const __int128 top = std::max(pp * dxG, dxG + (pp - 1) * dxF);
        K = std::max(K, static_cast<i64>(top / pp));
    }
    using Key = std::pair<i64, i64>;
    std::vector<std::map<Key, u64>> images(basis.size());
    const i64 pp = static_cast<i64>(p);

    if (laurent || static_cast<u64>(K) + 1 > p) {
        // bivariate: G^p + d^(p-1)/dy^(p-1) (G F^(p-1)), with F^(p-1) = F(x^p, y^p) / F
        BiPoly Fp = F.map_exponents([&](i64 i, i64 j) { return std::make_pair(i * pp, j * pp); });
        BiPoly Fpm1 = from_dense(exact_div(to_dense(Fp), to_dense(F)), p);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            BiPoly Gp = G[b].map_exponents([&](i64 i, i64 j) { return std::make_pair(i * pp, j * pp); });
            BiPoly h = G[b] * Fpm1;
            std::vector<Term> der;
            for (const auto& tm : h.terms())
                if (mod_pos(tm.i, pp) == pp - 1) der.push_back({tm.i - (pp - 1), tm.j, fp::neg(tm.c, p)});
            // d^(p-1) y^k = (p-1)! y^(k-p+1) = -y^(k-p+1) for k = -1 mod p
            BiPoly psi = Gp + BiPoly(p, std::move(der));
            for (const auto& tm : psi.terms()) {
                if (tm.i % pp != 0 || tm.j % pp != 0) throw NotInImageSpace("psi image has an exponent prime to p");
                images[b][{tm.i / pp, tm.j / pp}] = tm.c;
            }
        }
    } else {
        for (u64 x0 = 0; x0 <= static_cast<u64>(K); ++x0) {
            UniPoly f = F.eval_x(x0);
            if (f.is_zero()) continue;
            std::vector<u64> fp_c((f.coeffs().size() - 1) * p + 1, 0);
            for (std::size_t i = 0; i < f.coeffs().size(); ++i) fp_c[i * p] = f[i];
            UniPoly fpm1 = uni_quo(UniPoly(p, fp_c), f);
            for (std::size_t b = 0; b < basis.size(); ++b) {
                UniPoly g = G[b].eval_x(x0);
                std::map<i64, u64> img;
                for (std::size_t i = 0; i < g.coeffs().size(); ++i)
                    if (g[i]) img[static_cast<i64>(i) * pp] = g[i];
                // coefficients of g * f^(p-1) at y^k, k = -1 mod p
                std::size_t top = g.coeffs().size() + fpm1.coeffs().size();
                for (std::size_t k = p - 1; k + 1 < top + 1; k += p) {
                    u64 acc = 0;
                    for (std::size_t i = 0; i < g.coeffs().size() && i <= k; ++i)
                        if (g[i]) acc = fp::add(acc, fp::mul(g[i], fpm1[k - i], p), p);
                    if (!acc) continue;
                    i64 e = static_cast<i64>(k) - (pp - 1);
                    img[e] = fp::sub(img[e], acc, p);
                }
                for (const auto& [e, c] : img) {
                    if (!c) continue;
                    if (e % pp != 0) throw NotInImageSpace("psi image has a y-exponent prime to p");
                    images[b][{static_cast<i64>(x0), e / pp}] = c;
                }
            }
        }
    }
    std::map<Key, std::size_t> col;
    for (const auto& im : images)
        for (const auto& [k, c] : im) col.emplace(k, 0);
    std::size_t n = 0;
    for (auto& [k, idx] : col) idx = n++;
    Matrix M(basis.size(), std::vector<u64>(n, 0));
    for (std::size_t b = 0; b < basis.size(); ++b)
        for (const auto& [k, c] : images[b]) M[b][col[k]] = c;
    return M;
}

Matrix rref(Matrix M, u64 p) {
    std::size_t r = 0;
    const std::size_t ncols = M.empty() ? 0 : M[0].size();
    for (std::size_t c = 0; c < ncols && r < M.size(); ++c) {
        std::size_t piv = r;
        while (piv < M.size() && M[piv][c] == 0) ++piv;
        if (piv == M.size()) continue;
        std::swap(M[r], M[piv]);
        u64 inv = fp::inv(M[r][c], p);
        for (auto& v : M[r]) v = fp::mul(v, inv, p);
        for (std::size_t k = 0; k < M.size(); ++k) {
            if (k == r || M[k][c] == 0) continue;
            u64 f = M[k][c];
            for (std::size_t j = 0; j < ncols; ++j) M[k][j] = fp::sub(M[k][j], fp::mul(f, M[r][j], p), p);
        }
        ++r;
    }
    M.resize(r);
    return M;
}

Matrix transpose(const Matrix& M, std::size_t ncols) {
    Matrix T(ncols, std::vector<u64>(M.size(), 0));
    for (std::size_t i = 0; i < M.size(); ++i)
        for (std::size_t j = 0; j < ncols; ++j) T[j][i] = M[i][j];
    return T;
}

Matrix kernel_echelon(const Matrix& M, std::size_t ncols, u64 p) {
    Matrix R = rref(M, p);
    std::vector<long> pivot_of_col(ncols, -1);
    for (std::size_t r = 0; r < R.size(); ++r)
        for (std::size_t c = 0; c < ncols; ++c)
            if (R[r][c]) {
                pivot_of_col[c] = static_cast<long>(r);
                break;
            }
    Matrix basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (pivot_of_col[f] >= 0) continue;
        std::vector<u64> v(ncols, 0);
        v[f] = 1;
        for (std::size_t c = 0; c < ncols; ++c)
            if (pivot_of_col[c] >= 0) v[c] = fp::neg(R[static_cast<std::size_t>(pivot_of_col[c])][f], p);
        basis.push_back(std::move(v));
    }
    return rref(std::move(basis), p);
}

bool is_partition(const Matrix& basis, std::size_t s) {
    std::vector<int> hit(s, 0);
    for (const auto& v : basis) {
        if (v.size() != s) return false;
        bool nonzero = false;
        for (std::size_t i = 0; i < s; ++i) {
            if (v[i] > 1) return false;
            if (v[i] == 1) {
                ++hit[i];
                nonzero = true;
            }
        }
        if (!nonzero) return false;
    }
    return std::all_of(hit.begin(), hit.end(), [](int h) { return h == 1; });
}

std::vector<BiPoly> reconstruct_factors(const RecombinationProblem& pr, const Matrix& basis) {
    const std::size_t s = pr.analytic.size();
    if (!is_partition(basis, s)) throw NotAPartition("recombination vectors do not partition the analytic factors");
    const Slope& lam = pr.lambda;
    const Rat dl = d_lambda(pr.F, lam);
    BiPoly lc = pr.F.lc_y().shifted(-pr.F.deg_y(), 0);
    std::vector<BiPoly> out;
    for (const auto& v : basis) {
        std::vector<BiPoly> members{lc};
        i64 cofactor_deg = 0;
        for (std::size_t i = 0; i < s; ++i) {
            if (v[i]) members.push_back(pr.analytic[i]);
            else cofactor_deg += pr.analytic[i].deg_y();
        }
        // lc(F)/lc(F_j) F_j has lambda-degree at most d_lambda(F) - cofactor_deg * lambda
        BiPoly ft = lambda_product(members, lam, dl - Rat(cofactor_deg) * lam.value());
        if (ft.is_zero() || ft.min_x() < 0) throw InternalError("reconstructed factor is not a polynomial");
        out.push_back(normalize_factor(primitive_part(ft)));
    }
    return out;
}

bool equal_up_to_unit(const BiPoly& a, const BiPoly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (a.size() != b.size()) return false;
    const u64 p = a.modulus();
    u64 c = fp::mul(b.terms()[0].c, fp::inv(a.terms()[0].c, p), p);
    return a.scaled(c) == b;
}

FactorizationResult factorization(const BiPoly& f0, u64 rng_seed) {
    if (f0.is_zero()) throw ZeroPolynomial("factorization of zero");
    if (f0.min_x() < 0) throw std::invalid_argument("factorization: negative x-exponent");
    const u64 p = f0.modulus();
    FactorizationResult res;
    BiPoly F = f0;
    bool has_y = false;
    if (F.ord_y() > 0) {
        if (F.ord_y() > 1) throw NotSeparable("y^2 divides F");
        has_y = true;
        F = F.shifted(-1, 0);
    }
    auto finish = [&](std::vector<BiPoly> fs) {
        if (has_y) fs.push_back(BiPoly::y(p));
        std::sort(fs.begin(), fs.end(), support_less);
        res.factors = std::move(fs);
        return res;
    };
    if (F.deg_y() == 0) {
        if (F.is_monomial() && F.terms()[0].j == 0) return finish({});
        throw NotPrimitive("F has a non-constant factor in K[x]");
    }
    if (content_x(F).degree() > 0) throw NotPrimitive("F has a non-constant factor in K[x]");
    if (!is_separable_y(F)) throw NotSeparable("F and dF/dy have a common factor");
    DegeneracyReport rep = degeneracy_report(F);
    if (rep.degenerate) throw DegenerateInput(degeneracy_message(rep));

    LatticePolygon NP = newton_polygon(F);
    if (NP.dimension() <= 1) {
        // quasi-homogeneous: factors of the edge polynomial
        auto edges = lower_boundary(NP);
        EdgeUnivariate eu = edge_to_univariate(F, edges.front());
        std::vector<BiPoly> fs;
        for (const auto& [g, e] : uni_factor(eu.g, rng_seed)) {
            EdgeUnivariate part = eu;
            part.g = g;
            part.xexp = 0;
            part.yexp = 0;
            BiPoly h = univariate_to_edge(part);
            fs.push_back(normalize_factor(h.shifted(0, -h.min_x())));
        }
        res.s = static_cast<int>(fs.size());
        return finish(std::move(fs));
    }

    Slope lam = average_slope(F);
    if (lam.m < 0) {
        F = reciprocal(F);
        lam = average_slope(F);
        res.flipped = true;
    }
    const Rat v = v_lambda(F, lam), dl = d_lambda(F, lam), ml = m_lambda(F, lam);
    const Rat base = dl - v + ml + lam.value();
    res.lambda = lam;

    std::vector<BiPoly> fs;
    // extra > 0 only when d/dy kills initial terms (p | degree), making G_mu lose injectivity
    const i64 max_extra = 2 * (dl - v).ceil() + 8;
    for (i64 extra = 0;; ++extra) {
        const Rat sigma = base + Rat(extra);
        res.sigma = sigma;
        res.extra_precision = extra;
        AnalyticFactorization af = facto(monic_series(F, lam, sigma), lam, sigma, rng_seed);
        res.s = static_cast<int>(af.factors.size());
        res.recursion_depth = af.recursion_depth();
        if (af.factors.size() == 1) {
            fs.push_back(normalize_factor(F));
            res.analytic = std::move(af);
            break;
        }
        RecombinationProblem pr = make_problem(F, af.factors, lam, extra);
        if (!g_mu_injective(pr)) {
            if (extra >= max_extra) throw InternalError("G_mu stays degenerate at every tried precision");
            continue;
        }
        const std::size_t s = af.factors.size();
        Matrix phi = phi_map(pr);
        std::size_t ncols = phi.empty() ? 0 : phi[0].size();
        Matrix basis = kernel_echelon(transpose(phi, ncols), s, p);
        // phi alone is exact only for p > 2N: y^2 + y + x over F_2 has p = 2N and is irreducible
        if (Rat(static_cast<i64>(p)) <= Rat(2) * pr.N && basis.size() > 1) {
            res.used_psi = true;
            Matrix psi = psi_map(pr, basis);
            std::size_t pc = psi.empty() ? 0 : psi[0].size();
            Matrix coeffs = kernel_echelon(transpose(psi, pc), basis.size(), p);
            Matrix combined;
            for (const auto& c : coeffs) {
                std::vector<u64> vec(s, 0);
                for (std::size_t b = 0; b < basis.size(); ++b)
                    for (std::size_t i = 0; i < s; ++i) vec[i] = fp::add(vec[i], fp::mul(c[b], basis[b][i], p), p);
                combined.push_back(std::move(vec));
            }
            basis = rref(std::move(combined), p);
        }
        fs = reconstruct_factors(pr, basis);
        res.analytic = std::move(af);
        break;
    }

    BiPoly prod = BiPoly::constant(p, 1);
    for (const auto& h : fs) prod = prod * h;
    if (!equal_up_to_unit(prod, F)) throw InternalError("product of the computed factors differs from F");
    if (res.flipped)
        for (auto& h : fs) h = normalize_factor(reciprocal(h));
    return finish(std::move(fs));
}

MinimalResult factor_minimal(const BiPoly& f0, u64 rng_seed) {
    if (f0.is_zero()) throw ZeroPolynomial("factorization of zero");
    if (f0.min_x() < 0) throw std::invalid_argument("factor_minimal: negative x-exponent");
    const u64 p = f0.modulus();
    MinimalResult res;
    BiPoly F = f0;
    bool has_y = false;
    if (F.ord_y() > 0) {
        if (F.ord_y() > 1) throw NotSeparable("y^2 divides F");
        has_y = true;
        F = F.shifted(-1, 0);
    }
    if (F.deg_y() == 0 || content_x(F).degree() > 0 || newton_polygon(F).dimension() <= 1) {
        res.inner = factorization(f0, rng_seed);
        res.factors = res.inner.factors;
        return res;
    }
    if (!is_separable_y(F)) throw NotSeparable("F and dF/dy have a common factor");

    MinimalLength ml = minimal_lattice_length(newton_polygon(F));
    for (const AffineMap& tau : ml.maps) {
        BiPoly T = apply_affine(tau, F);
        UniPoly c = content_x(T);
        BiPoly P = primitive_part(T);
        if (P.deg_y() < 1 || !is_separable_y(P) || is_degenerate(P)) continue;
        std::vector<BiPoly> images;
        if (c.degree() > 0) {
            bool repeated = false;
            for (const auto& [g, e] : uni_factor(c, rng_seed)) {
                if (e > 1) repeated = true;
                images.push_back(BiPoly::from_x_poly(g));
            }
            if (repeated) continue;
        }
        FactorizationResult inner = factorization(P, rng_seed);
        for (const auto& h : inner.factors) images.push_back(h);
        AffineMap inv = tau.inverse();
        std::vector<BiPoly> fs;
        for (const auto& h : images) fs.push_back(normalize_factor(apply_affine(inv, h)));
        BiPoly prod = BiPoly::constant(p, 1);
        for (const auto& h : fs) prod = prod * h;
        if (!equal_up_to_unit(prod, F)) throw InternalError("pulled-back factors do not multiply to F");
        if (has_y) fs.push_back(BiPoly::y(p));
        std::sort(fs.begin(), fs.end(), support_less);
        res.factors = std::move(fs);
        res.tau = tau;
        res.inner = std::move(inner);
        return res;
    }
    throw MinimallyDegenerate("every transform reaching the minimal lattice length gives a degenerate polynomial");
}

}  // namespace bivfactor
