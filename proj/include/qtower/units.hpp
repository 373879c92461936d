#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qtower/arith.hpp"
#include "qtower/multiquad.hpp"

namespace qtower {

inline constexpr i64 default_cf_cap = 1000000;

// (x + y sqrt(d)) / 2
struct QuadUnit {
    i64 d = 0;
    mpz_class x, y;
    int norm = 0;

    std::string str() const
    {
        // prefer a + b sqrt(d/4) when d = 4m and x, y even
        if (d % 4 == 0) {
            mpz_class a = x / 2;
            if (x % 2 == 0) return a.get_str() + "+" + (y == 1 ? std::string() : y.get_str()) + "sqrt(" + std::to_string(d / 4) + ")";
        }
        if (x % 2 == 0 && y % 2 == 0) {
            mpz_class a = x / 2, b = y / 2;
            return a.get_str() + "+" + (b == 1 ? std::string() : b.get_str()) + "sqrt(" + std::to_string(d) + ")";
        }
        return "(" + x.get_str() + "+" + (y == 1 ? std::string() : y.get_str()) + "sqrt(" + std::to_string(d) + "))/2";
    }
};

// continued fraction of (P0 + sqrt d)/2 until the first return of Q to 2
inline QuadUnit fundamental_unit(i64 d, i64 cap = default_cf_cap)
{
    if (d <= 0 || !is_fundamental_discriminant(d))
        throw error(errc::not_fundamental, std::to_string(d) + " is not a positive fundamental discriminant");
    const i64 q = isqrt(d);
    i64 P = (d & 1) ? 1 : 0, Q = 2;
    mpz_class G2 = -P, G1 = Q, B2 = 1, B1 = 0;
    for (i64 i = 0; i < cap; ++i) {
        i64 a = (P + q) / Q;
        mpz_class G = a * G1 + G2;
        mpz_class B = a * B1 + B2;
        i64 Pn = a * Q - P;
        i64 Qn = (d - Pn * Pn) / Q;
        if (Qn == 2) {
            QuadUnit u;
            u.d = d;
            u.x = G;
            u.y = B;
            mpz_class n = G * G - mpz_class(static_cast<long>(d)) * B * B;
            u.norm = n > 0 ? 1 : -1;
            if (abs(n) != 4) throw error(errc::inconsistent, "continued fraction produced a non-unit");
            return u;
        }
        P = Pn;
        Q = Qn;
        G2 = G1;
        G1 = G;
        B2 = B1;
        B1 = B;
    }
    throw error(errc::bound_exceeded, "continued fraction period of " + std::to_string(d) + " exceeds " + std::to_string(cap));
}

inline std::vector<i64> prime_divisors(i64 n)
{
    std::vector<i64> ps;
    for (auto [p, e] : factor_integer(n)) ps.push_back(p);
    return ps;
}

struct DeltaInvariant {
    i64 delta = 0;
};

// sfk N(1 + eps) = sfk(x + 2) for norm +1
inline DeltaInvariant delta_invariant(const QuadUnit& u)
{
    if (u.norm != 1) throw error(errc::norm_minus_one, "delta needs a unit of norm +1 (d = " + std::to_string(u.d) + ")");
    mpz_class n = u.x + 2;
    mpz_class k = squarefree_kernel_over(n, prime_divisors(u.d));
    return {static_cast<i64>(k.get_si())};
}

enum class LemmaCase { pq, two_p, p, other };

// sqrt(eps) = (a sqrt(u) + b sqrt(v)) / denom
struct SqrtUnitDecomposition {
    mpz_class a, b;
    i64 u = 1, v = 1;
    int denom = 2;
    LemmaCase lemma = LemmaCase::other;

    // (a^2 u - b^2 v) / denom^2, the norm down to Q(sqrt u)
    mpq_class relative_norm() const
    {
        mpq_class n = mpq_class(a * a * static_cast<long>(u) - b * b * static_cast<long>(v));
        return n / (denom * denom);
    }

    SqrtUnitDecomposition swapped() const
    {
        SqrtUnitDecomposition s = *this;
        std::swap(s.a, s.b);
        std::swap(s.u, s.v);
        return s;
    }

    // put `first` as u
    SqrtUnitDecomposition ordered(i64 first) const
    {
        if (u == first) return *this;
        if (v == first) return swapped();
        throw error(errc::no_decomposition, "basis does not contain " + std::to_string(first));
    }

    std::string str() const
    {
        std::string s = "(" + a.get_str() + "*sqrt(" + std::to_string(u) + ")+" + b.get_str() + "*sqrt(" + std::to_string(v) + "))";
        return denom == 1 ? s : s + "/" + std::to_string(denom);
    }
};

// Expected value of relative_norm() in the canonical basis order for the three lemma shapes
inline std::optional<int> lemma_expected_value(const SqrtUnitDecomposition& s)
{
    switch (s.lemma) {
    case LemmaCase::pq: return kronecker(s.u, s.v);
    case LemmaCase::two_p: return kronecker(2, s.v);
    case LemmaCase::p: return -kronecker(-(s.u / 2), 2);
    case LemmaCase::other: return std::nullopt;
    }
    return std::nullopt;
}

inline SqrtUnitDecomposition sqrt_unit_decomposition(const QuadUnit& e)
{
    i64 delta = delta_invariant(e).delta;
    i64 m0 = squarefree_kernel(e.d);
    i64 f = (e.d == m0) ? 1 : 2;
    mpz_class n = e.x + 2;
    if (n % delta != 0) throw error(errc::no_decomposition, "delta does not divide N(1+eps)");
    mpz_class m2 = n / delta, m;
    if (!is_square(m2)) throw error(errc::no_decomposition, "N(1+eps)/delta is not a square");
    mpz_sqrt(m.get_mpz_t(), m2.get_mpz_t());
    // sqrt(m0/delta) = g sqrt(v) / delta with m0*delta = g^2 v
    i64 v = squarefree_kernel(m0 * delta);
    i64 g = isqrt(m0 * delta / v);
    mpz_class num = e.y * f * g;
    mpz_class den = m * delta;
    if (num % den != 0) throw error(errc::no_decomposition, "second coefficient is not integral for d = " + std::to_string(e.d));
    SqrtUnitDecomposition s;
    s.a = m;
    s.b = num / den;
    s.u = delta;
    s.v = v;
    s.denom = 2;
    if (s.a % 2 == 0 && s.b % 2 == 0) {
        s.a /= 2;
        s.b /= 2;
        s.denom = 1;
    }
    // exact check: (a^2 u + b^2 v) / denom^2 = x/2 and 2ab sqrt(uv)/denom^2 = y sqrt(d)/2
    mpz_class dd = s.denom * s.denom;
    if (2 * (s.a * s.a * static_cast<long>(s.u) + s.b * s.b * static_cast<long>(s.v)) != dd * e.x ||
        16 * s.a * s.a * s.b * s.b * static_cast<long>(s.u) * static_cast<long>(s.v) != dd * dd * e.y * e.y * static_cast<long>(e.d) ||
        sgn(s.a) * sgn(s.b) != sgn(e.y))
        throw error(errc::inconsistent, "square of the decomposition does not reproduce eps");

    auto fac = factor_integer(m0);
    auto is3 = [](i64 p) { return p % 4 == 3; };
    if (fac.size() == 2 && fac[0].first != 2 && is3(fac[0].first) && is3(fac[1].first)) {
        s.lemma = LemmaCase::pq;
        s = s.ordered(std::min(s.u, s.v));
    } else if (fac.size() == 2 && fac[0].first == 2 && is3(fac[1].first)) {
        s.lemma = LemmaCase::two_p;
        s = s.ordered(2);
    } else if (fac.size() == 1 && is3(fac[0].first)) {
        s.lemma = LemmaCase::p;
        s = s.ordered(2 * fac[0].first);
    }
    if (auto want = lemma_expected_value(s)) {
        if (s.relative_norm() != *want)
            throw error(errc::hypothesis_violation, "sign identity fails for d = " + std::to_string(e.d));
    }
    return s;
}

// --- conjugate signs -------------------------------------------------------

// a product of terms, each (a sqrt(u) + b sqrt(v)) / denom with u, v squarefree and positive
struct TwoTerm {
    mpz_class a, b;
    i64 u = 1, v = 1;
    int denom = 1;
};

inline TwoTerm as_term(const SqrtUnitDecomposition& s) { return {s.a, s.b, s.u, s.v, s.denom}; }

inline TwoTerm as_term(const QuadUnit& e)
{
    i64 m0 = squarefree_kernel(e.d);
    mpz_class yf = e.y * ((e.d == m0) ? 1 : 2);
    return {e.x, yf, 1, m0, 2};
}

using Embedding = std::map<i64, int>; // prime -> sign of its square root

namespace detail {

inline int radical_sign(i64 u, const Embedding& emb)
{
    int s = 1;
    for (i64 p : prime_divisors(u)) {
        auto it = emb.find(p);
        if (it != emb.end()) s *= it->second;
    }
    return s;
}

inline int term_sign(const TwoTerm& t, const Embedding& emb)
{
    int sa = sgn(t.a) * (t.u == 1 ? 1 : radical_sign(t.u, emb));
    int sb = sgn(t.b) * (t.v == 1 ? 1 : radical_sign(t.v, emb));
    if (sa == 0) return sb;
    if (sb == 0 || sa == sb) return sa;
    mpz_class lhs = t.a * t.a * static_cast<long>(t.u), rhs = t.b * t.b * static_cast<long>(t.v);
    return lhs > rhs ? sa : sb;
}

} // namespace detail

inline std::vector<std::vector<int>> conjugate_sign_table(const std::vector<std::vector<TwoTerm>>& units,
                                                          const std::vector<Embedding>& embeddings)
{
    if (embeddings.empty()) throw error(errc::undefined_input, "no embeddings given");
    std::vector<std::vector<int>> out;
    for (const auto& prod : units) {
        std::vector<int> row;
        for (const auto& emb : embeddings) {
            int s = 1;
            for (const auto& t : prod) s *= detail::term_sign(t, emb);
            row.push_back(s);
        }
        out.push_back(row);
    }
    return out;
}

// --- unit index of a real multiquadratic field -------------------------------

struct KubotaResult {
    i64 q = 1;
    int steps = 0;
    std::vector<std::string> roots; // square roots found, in field notation
};

// q = (E_K : <-1, units of the quadratic subfields>); generators are discriminants or
// squarefree values, all positive. Index grown by repeated square-root extraction.
inline KubotaResult kubota_index_detail(const std::vector<i64>& generators)
{
    std::vector<i64> gens;
    for (i64 g : generators) {
        if (g <= 0) throw error(errc::not_applicable, "only totally real multiquadratic fields are handled");
        gens.push_back(squarefree_kernel(g));
    }
    MultiQuad K(gens);
    int r = K.rank();
    size_t n = K.size();
    for (size_t s = 1; s < n; ++s) {
        if (is_square(K.radicand(s))) throw error(errc::undefined_input, "generators are not independent");
    }
    std::vector<MultiQuad::Elem> basis;
    for (size_t s = 1; s < n; ++s) {
        mpz_class prod = K.radicand(s);
        i64 m = squarefree_kernel(prod.get_si());
        i64 disc = (m % 4 == 1) ? m : 4 * m;
        QuadUnit e = fundamental_unit(disc);
        mpz_class g2 = prod / m, g;
        mpz_sqrt(g.get_mpz_t(), g2.get_mpz_t());
        // sqrt(m) = b_s / g
        mpq_class y = mpq_class(e.y * (disc == m ? 1 : 2)) / (2 * g);
        mpq_class x(e.x, 2);
        x.canonicalize();
        basis.push_back(K.from_pair(x, y, static_cast<unsigned>(s)));
    }
    int nb = static_cast<int>(basis.size());
    std::vector<int> ident(r, 1);
    KubotaResult res;
    for (int step = 0; step < 16; ++step) {
        std::map<unsigned, MultiQuad::Elem> roots;
        for (unsigned e = 1; e < (1u << nb); ++e) {
            MultiQuad::Elem eta = K.one();
            for (int i = 0; i < nb; ++i) {
                if ((e >> i) & 1u) eta = K.mul(eta, basis[i]);
            }
            auto xi = K.sqrt(eta);
            if (!xi) continue;
            if (K.sign(*xi, ident) < 0) *xi = K.scale(*xi, -1);
            if (K.mul(*xi, *xi) != eta) throw error(errc::inconsistent, "square root check failed");
            roots[e] = *xi;
        }
        if (roots.empty()) break;
        // reduced echelon basis of the found subspace; swap pivots for roots
        std::vector<unsigned> vecs;
        for (auto& [e, x] : roots) vecs.push_back(e);
        std::vector<unsigned> ech;
        for (unsigned v : vecs) {
            for (unsigned b : ech) {
                unsigned piv = b & (~b + 1);
                if (v & piv) v ^= b;
            }
            if (!v) continue;
            unsigned piv = v & (~v + 1);
            for (auto& b : ech) {
                if (b & piv) b ^= v;
            }
            ech.push_back(v);
        }
        res.q <<= ech.size();
        ++res.steps;
        for (unsigned v : ech) {
            unsigned piv = v & (~v + 1);
            int idx = __builtin_ctz(piv);
            basis[idx] = roots.at(v);
            res.roots.push_back(K.str(basis[idx]));
        }
    }
    return res;
}

inline i64 kubota_index(const std::vector<i64>& generators) { return kubota_index_detail(generators).q; }

inline i64 kubota_index(i64 m1, i64 m2) { return kubota_index(std::vector<i64>{m1, m2}); }

inline i64 kubota_index(i64 m1, i64 m2, i64 m3) { return kubota_index(std::vector<i64>{m1, m2, m3}); }

// class number formula for real multiquadratic fields of degree 4 or 8
inline i64 multiquadratic_h2(const std::vector<i64>& subfield_h2, i64 q, int degree)
{
    int shift;
    if (degree == 4 && subfield_h2.size() == 3)
        shift = 2;
    else if (degree == 8 && subfield_h2.size() == 7)
        shift = 9;
    else
        throw error(errc::undefined_input, "degree 4 needs 3 subfield values, degree 8 needs 7");
    mpz_class num = q;
    for (i64 h : subfield_h2) num *= h;
    mpz_class den = mpz_class(1) << shift;
    if (num % den != 0)
        throw error(errc::non_integer_result, num.get_str() + "/" + den.get_str() + " is not an integer");
    mpz_class out = num / den;
    return out.get_si();
}

} // namespace qtower
