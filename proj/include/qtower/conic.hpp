#pragma once

#include <numeric>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "qtower/arith.hpp"
#include "qtower/multiquad.hpp"
#include "qtower/units.hpp"

namespace qtower {

inline constexpr i64 default_conic_bound = 10000;

// a^2 = b^2 delta1 + c^2 delta2, a > 0, gcd(a, b, c) = 1
struct ConicSolution {
    i64 a = 0, b = 0, c = 0;
    i64 delta1 = 0, delta2 = 0;

    bool satisfied() const
    {
        return static_cast<i128>(a) * a ==
               static_cast<i128>(b) * b * delta1 + static_cast<i128>(c) * c * delta2;
    }

    bool primitive() const { return std::gcd(std::gcd(a, b), c) == 1; }
};

// local solvability of x^2 = delta1 y^2 + delta2 z^2 at every place
inline std::optional<i64> conic_obstruction(i64 delta1, i64 delta2)
{
    if (hilbert_symbol(delta1, delta2, 0) < 0) return 0;
    for (auto [p, e] : factor_integer(2 * delta1 * delta2)) {
        if (hilbert_symbol(delta1, delta2, p) < 0) return p;
    }
    return std::nullopt;
}

// bounded search ordered by max(|b|, |c|); first hit is automatically primitive
inline ConicSolution solve_conic(i64 delta1, i64 delta2, i64 bound = default_conic_bound)
{
    if (delta1 == 0 || delta2 == 0) throw error(errc::zero_input, "conic coefficient is 0");
    if (auto p = conic_obstruction(delta1, delta2)) {
        std::string place = *p == 0 ? std::string("the real place") : "p = " + std::to_string(*p);
        throw error(errc::insoluble, "x^2 = " + std::to_string(delta1) + " y^2 + " + std::to_string(delta2) +
                                         " z^2 has no rational point at " + place);
    }
    auto try_pair = [&](i64 b, i64 c, ConicSolution& out) {
        i128 v = static_cast<i128>(b) * b * delta1 + static_cast<i128>(c) * c * delta2;
        if (v <= 0 || v > static_cast<i128>(INT64_MAX)) return false;
        i64 a;
        if (!is_square(static_cast<i64>(v), &a)) return false;
        out = {a, b, c, delta1, delta2};
        return true;
    };
    ConicSolution s;
    for (i64 m = 1; m <= bound; ++m) {
        for (i64 b = 1; b <= m; ++b) {
            if (try_pair(b, m, s)) return s;
        }
        for (i64 c = 1; c < m; ++c) {
            if (try_pair(m, c, s)) return s;
        }
    }
    throw error(errc::no_solution, "no point with max(|b|,|c|) <= " + std::to_string(bound));
}

enum class SignRule { force_positive, force_negative, from_h2 };

// alpha = a_signed + c sqrt(D), alpha alpha' = b^2 d1
struct AlphaElement {
    i64 D = 0;
    i64 a = 0, c = 0; // a carries the chosen sign
    i64 b = 0, d1 = 0, d3 = 1;
    int alpha_sign = 0, conj_sign = 0;
    i64 gamma_factor = 1; // gamma = gamma_factor * alpha

    mpz_class norm() const { return mpz_class(a) * a - mpz_class(c) * c * D; }

    std::string str() const
    {
        return std::to_string(a) + (c < 0 ? "" : "+") + (c == 1 ? std::string() : std::to_string(c)) + "sqrt(" +
               std::to_string(D) + ")";
    }

    std::string gamma_str() const { return gamma_factor == 1 ? str() : std::to_string(gamma_factor) + "*(" + str() + ")"; }
};

namespace detail {

// exact sign of x + y sqrt(D), D > 0 nonsquare
inline int quad_sign(i64 x, i64 y, i64 D)
{
    int sx = (x > 0) - (x < 0), sy = (y > 0) - (y < 0);
    if (sx == 0) return sy;
    if (sy == 0 || sx == sy) return sx;
    i128 lhs = static_cast<i128>(x) * x, rhs = static_cast<i128>(y) * y * D;
    return lhs > rhs ? sx : (lhs < rhs ? sy : 0);
}

} // namespace detail

inline AlphaElement build_alpha(const ConicSolution& sol, i64 D, i64 d1, i64 d3, SignRule rule,
                                std::optional<i64> h2F = std::nullopt)
{
    if (sol.c == 0) throw error(errc::degenerate, "c = 0 makes alpha rational");
    if (sol.delta1 != d1 || sol.delta2 != D)
        throw error(errc::inconsistent, "solution is for (" + std::to_string(sol.delta1) + ", " + std::to_string(sol.delta2) +
                                            "), not (" + std::to_string(d1) + ", " + std::to_string(D) + ")");
    if (!sol.satisfied()) throw error(errc::inconsistent, "solution does not satisfy its equation");
    if (D <= 0 || is_square(D)) throw error(errc::undefined_input, "D must be a positive nonsquare");
    bool positive;
    switch (rule) {
    case SignRule::force_positive: positive = true; break;
    case SignRule::force_negative: positive = false; break;
    default:
        if (!h2F) throw error(errc::sign_rule, "automatic sign needs h2(F)");
        if (*h2F == 2)
            positive = false;
        else if (*h2F >= 4)
            positive = true;
        else
            throw error(errc::sign_rule, "h2(F) = " + std::to_string(*h2F) + " selects no sign");
    }
    AlphaElement al;
    al.D = D;
    al.a = positive ? abs64(sol.a) : -abs64(sol.a);
    al.c = abs64(sol.c);
    al.b = sol.b;
    al.d1 = d1;
    al.d3 = d3;
    al.alpha_sign = detail::quad_sign(al.a, al.c, D);
    al.conj_sign = detail::quad_sign(al.a, -al.c, D);
    al.gamma_factor = al.alpha_sign < 0 ? 1 : d3;
    if (al.norm() != mpz_class(sol.b) * sol.b * d1) throw error(errc::inconsistent, "alpha alpha' != b^2 d1");
    return al;
}

// Q(sqrt alpha)/Q is normal iff alpha'/alpha is a square in Q(sqrt D); alpha'/alpha = (b sqrt(d1)/alpha)^2,
// so normality needs d1 or d1 D to be a rational square
inline bool alpha_non_normal(const AlphaElement& al)
{
    i64 k = squarefree_kernel(al.d1);
    i64 kD = squarefree_kernel(al.D);
    return k != 1 && k != kD;
}

// --- H8 element mu = beta u2 --------------------------------------------------

// x1^2 d1 - x2^2 d2 = -d3d4 x3^2
struct MuElement {
    i64 x1 = 0, x2 = 0, x3 = 0;
    i64 d1 = 0, d2 = 0, d3d4 = 0;
    i64 p = 0;       // prime = 1 mod 4 carrying the unit
    i64 s = 0, t = 0; // p = s^2 + t^2
    QuadUnit u2;     // over disc p, norm -1

    bool satisfied() const
    {
        return static_cast<i128>(x1) * x1 * d1 - static_cast<i128>(x2) * x2 * d2 ==
               -static_cast<i128>(d3d4) * x3 * x3;
    }

    std::string beta_str() const
    {
        return std::to_string(x1) + "sqrt(" + std::to_string(d1) + ")+" + std::to_string(x2) + "sqrt(" +
               std::to_string(d2) + ")";
    }
};

// (d1d2/p3) = (d1d2/p4) = (d2d3d4/p1) = (d3d4d1/p2) = +1
inline bool h8_predicate(i64 d1, i64 d2, i64 d3, i64 d4)
{
    i64 p1 = prime_of(d1), p2 = prime_of(d2), p3 = prime_of(d3), p4 = prime_of(d4);
    return kronecker(d1 * d2, p3) == 1 && kronecker(d1 * d2, p4) == 1 && kronecker(d2 * d3 * d4, p1) == 1 &&
           kronecker(d3 * d4 * d1, p2) == 1;
}

// eps or eps^3 of Q(sqrt p), whichever lies in Z[sqrt p]
inline QuadUnit unit_in_order(i64 p)
{
    QuadUnit e = fundamental_unit(p);
    if (e.norm != -1) throw error(errc::hypothesis_violation, "unit of " + std::to_string(p) + " has norm +1");
    if (e.x % 2 == 0 && e.y % 2 == 0) return e;
    // ((x + y r)/2)^3 = (x^3 + 3 x y^2 p + (3 x^2 y + y^3 p) r) / 8
    QuadUnit c = e;
    mpz_class X = e.x * e.x * e.x + 3 * e.x * e.y * e.y * p;
    mpz_class Y = 3 * e.x * e.x * e.y + e.y * e.y * e.y * p;
    c.x = X / 4;
    c.y = Y / 4;
    c.norm = -1;
    return c;
}

inline MuElement solve_h8(i64 d1, i64 d2, i64 d3d4, i64 bound = default_conic_bound)
{
    if (d1 == 0 || d2 == 0 || d3d4 == 0) throw error(errc::zero_input, "zero discriminant");
    auto f34 = factor_discriminant(d3d4);
    if (f34.factors.size() != 2) throw error(errc::hypothesis_violation, "d3d4 must be a product of two prime discriminants");
    if (!is_prime_discriminant(d1) || !is_prime_discriminant(d2))
        throw error(errc::hypothesis_violation, "d1 and d2 must be prime discriminants");
    if (!h8_predicate(d1, d2, f34.factors[0], f34.factors[1]) && !h8_predicate(d1, d2, f34.factors[1], f34.factors[0]))
        throw error(errc::hypothesis_violation, "the H8 Kronecker conditions fail");
    MuElement mu;
    mu.d1 = d1;
    mu.d2 = d2;
    mu.d3d4 = d3d4;
    mu.p = (d2 > 0 && d2 % 4 == 1) ? d2 : ((d1 > 0 && d1 % 4 == 1) ? d1 : 0);
    if (mu.p == 0) throw error(errc::hypothesis_violation, "neither d1 nor d2 is a prime = 1 mod 4");

    // x2^2 d2 = x1^2 d1 + d3d4 x3^2, x1, x3 nonzero
    bool found = false;
    for (i64 m = 1; m <= bound && !found; ++m) {
        auto test = [&](i64 x1, i64 x3) {
            i128 v = static_cast<i128>(x1) * x1 * d1 + static_cast<i128>(d3d4) * x3 * x3;
            if (v == 0 || v % d2 != 0) return false;
            v /= d2;
            if (v <= 0 || v > static_cast<i128>(INT64_MAX)) return false;
            i64 x2;
            if (!is_square(static_cast<i64>(v), &x2)) return false;
            mu.x1 = x1;
            mu.x2 = x2;
            mu.x3 = x3;
            return true;
        };
        for (i64 x1 = 1; x1 <= m && !found; ++x1) found = test(x1, m);
        for (i64 x3 = 1; x3 < m && !found; ++x3) found = test(m, x3);
    }
    if (!found) throw error(errc::no_solution, "no H8 point with max(|x1|,|x3|) <= " + std::to_string(bound));
    if (!mu.satisfied() || mu.x3 == 0) throw error(errc::inconsistent, "H8 identity check failed");

    auto [s, t] = two_square_decomposition(mu.p);
    mu.s = s;
    mu.t = t;
    mu.u2 = unit_in_order(mu.p);
    // (s + sqrt p) u2 must be a square in Q(sqrt p)
    MultiQuad K({mu.p});
    auto lhs = K.mul(K.from_pair(s, 1, 1), K.from_pair(mpq_class(mu.u2.x, 2), mpq_class(mu.u2.y, 2), 1));
    for (auto& v : lhs) v.canonicalize();
    if (!K.sqrt(lhs)) throw error(errc::hypothesis_violation, "(s + sqrt p) u2 is not a square");
    return mu;
}

} // namespace qtower
