#pragma once

#include <optional>
#include <vector>

#include "bivfactor/bipoly.hpp"
#include "bivfactor/facto.hpp"
#include "bivfactor/polygon.hpp"
#include "bivfactor/rat.hpp"

namespace bivfactor {

using Matrix = std::vector<std::vector<u64>>;  // row-major over F_p

// Bivariate helpers over K[x][y].
UniPoly content_x(const BiPoly& f);  // monic gcd of the y-coefficients; needs j >= 0
BiPoly primitive_part(const BiPoly& f);
bool is_separable_y(const BiPoly& f);
// Coefficient at the right end point of the lower boundary scaled to 1.
BiPoly normalize_factor(const BiPoly& f);
// Product of the factors, each term of every partial product kept only while it can
// still reach lambda-weight <= bound.
BiPoly lambda_product(const std::vector<BiPoly>& fs, const Slope& lam, const Rat& bound);

struct RecombinationProblem {
    BiPoly F;                       // primitive, separable, lambda >= 0
    std::vector<BiPoly> analytic;   // monic in y, product ~ F / lc_y(F)
    Slope lambda;
    Rat N;                          // d (d_lambda(F) - v_lambda(F))
    Rat T;                          // lambda-truncation of G_mu, d_lambda(F) + extra
};
RecombinationProblem make_problem(const BiPoly& f, const std::vector<BiPoly>& analytic, const Slope& lam,
                                  i64 extra = 0);
// mu -> G_mu must be injective for the kernel to equal the recombination space.
bool g_mu_injective(const RecombinationProblem& pr);

BiPoly g_mu(const RecombinationProblem& pr, const std::vector<u64>& mu);
// (G_x F_y - G_y F_x) F_y - (F_xy F_y - F_yy F_x) G
BiPoly d_operator(const BiPoly& g, const BiPoly& f);

struct FTilde {
    BiPoly F;  // tau_lambda(x^k y^alpha F)
    i64 alpha = 0;
    i64 k = 0;
};
FTilde ftilde_normalize(const BiPoly& f, const Slope& lam);

// Digits u_lo..u_hi of u = sum u_i a^i with deg u_i < deg a.
std::vector<UniPoly> a_adic_expand(const UniPoly& u, const UniPoly& a, i64 lo, i64 hi);
// Same on every y-coefficient; needs exponents j >= 0.
std::vector<BiPoly> a_adic_expand(const BiPoly& q, const UniPoly& a, i64 lo, i64 hi);

struct PhiWindow {
    UniPoly a0;   // a = a0(x^q)
    i64 shift = 0;  // extra x-power applied before tau_lambda
    i64 dx = 0, m = 0, n = 0;
};
// One row per analytic factor.
Matrix phi_map(const RecombinationProblem& pr, PhiWindow* window = nullptr);

// One row per kernel basis vector. Throws NotInImageSpace.
Matrix psi_map(const RecombinationProblem& pr, const Matrix& ker_phi_basis);

// Reduced echelon basis of {v : M v = 0}; M has rows of equal length ncols.
Matrix kernel_echelon(const Matrix& M, std::size_t ncols, u64 p);
Matrix rref(Matrix M, u64 p);
Matrix transpose(const Matrix& M, std::size_t ncols);
bool is_partition(const Matrix& basis, std::size_t s);

std::vector<BiPoly> reconstruct_factors(const RecombinationProblem& pr, const Matrix& basis);

struct FactorizationResult {
    std::vector<BiPoly> factors;  // sorted, each normalized
    Slope lambda;                 // slope the analytic factorization ran at
    Rat sigma;
    int s = 0;                    // number of analytic factors
    int recursion_depth = 0;
    i64 extra_precision = 0;      // raised when the G_mu of the analytic factors are dependent
    bool flipped = false;
    bool used_psi = false;
    std::optional<AnalyticFactorization> analytic;
};
FactorizationResult factorization(const BiPoly& f, u64 rng_seed);

struct MinimalResult {
    std::vector<BiPoly> factors;
    AffineMap tau;
    FactorizationResult inner;
};
MinimalResult factor_minimal(const BiPoly& f, u64 rng_seed);

// Product of factors equals f up to a nonzero constant.
bool equal_up_to_unit(const BiPoly& prod, const BiPoly& f);

}  // namespace bivfactor
