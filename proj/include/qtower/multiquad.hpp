#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qtower/arith.hpp"

namespace qtower {

// Q(sqrt m_0, ..., sqrt m_{r-1}) with basis b_S = prod_{i in S} sqrt(m_i), S a bitmask.
// b_S * b_T = b_{S xor T} * prod_{i in S and T} m_i.
// Real embeddings are sign vectors on the sqrt(m_i).
class MultiQuad {
public:
    using Elem = std::vector<mpq_class>;

    explicit MultiQuad(std::vector<i64> gens) : gens_(std::move(gens))
    {
        for (i64 m : gens_) {
            if (m <= 0 || is_square(m)) throw error(errc::undefined_input, "generator must be a positive nonsquare");
        }
        size_t n = size();
        mprod_.resize(n);
        for (size_t s = 0; s < n; ++s) {
            mpz_class p = 1;
            for (int i = 0; i < rank(); ++i) {
                if ((s >> i) & 1u) p *= static_cast<long>(gens_[i]);
            }
            mprod_[s] = p;
        }
    }

    int rank() const { return static_cast<int>(gens_.size()); }
    size_t size() const { return size_t{1} << gens_.size(); }
    const std::vector<i64>& gens() const { return gens_; }

    // prod_{i in mask} m_i, the square of the basis element b_mask
    const mpz_class& radicand(size_t mask) const { return mprod_[mask]; }

    Elem zero() const { return Elem(size(), mpq_class(0)); }
    Elem one() const
    {
        Elem e = zero();
        e[0] = 1;
        return e;
    }

    // element x + y*sqrt(prod_{i in mask} m_i)
    Elem from_pair(const mpq_class& x, const mpq_class& y, unsigned mask) const
    {
        Elem e = zero();
        e[0] += x;
        e[mask] += y;
        return e;
    }

    Elem mul(const Elem& x, const Elem& y) const
    {
        size_t n = size();
        Elem z = zero();
        for (size_t s = 0; s < n; ++s) {
            if (sgn(x[s]) == 0) continue;
            for (size_t t = 0; t < n; ++t) {
                if (sgn(y[t]) == 0) continue;
                z[s ^ t] += x[s] * y[t] * mprod_[s & t];
            }
        }
        return z;
    }

    Elem add(const Elem& x, const Elem& y) const
    {
        Elem z = x;
        for (size_t s = 0; s < size(); ++s) z[s] += y[s];
        return z;
    }

    Elem sub(const Elem& x, const Elem& y) const
    {
        Elem z = x;
        for (size_t s = 0; s < size(); ++s) z[s] -= y[s];
        return z;
    }

    Elem scale(const Elem& x, const mpq_class& c) const
    {
        Elem z = x;
        for (auto& v : z) v *= c;
        return z;
    }

    static bool is_zero(const Elem& x)
    {
        for (const auto& v : x) {
            if (sgn(v) != 0) return false;
        }
        return true;
    }

    // exact sign of x under the embedding sqrt(m_i) -> sign[i]*sqrt(m_i)
    int sign(const Elem& x, const std::vector<int>& signs) const { return sign_rec(x, signs, rank()); }

    // exact square root in the field, if any
    std::optional<Elem> sqrt(const Elem& x) const { return sqrt_rec(x, rank()); }

    std::string str(const Elem& x) const
    {
        std::string out;
        for (size_t s = 0; s < size(); ++s) {
            if (sgn(x[s]) == 0) continue;
            if (!out.empty()) out += " + ";
            out += x[s].get_str();
            if (s) out += "*sqrt(" + mprod_[s].get_str() + ")";
        }
        return out.empty() ? "0" : out;
    }

private:
    std::vector<i64> gens_;
    std::vector<mpz_class> mprod_;

    // restrict to the first r generators
    Elem low(const Elem& x, int r) const
    {
        Elem z(size_t{1} << (r - 1));
        for (size_t s = 0; s < z.size(); ++s) z[s] = x[s];
        return z;
    }

    Elem high(const Elem& x, int r) const
    {
        size_t h = size_t{1} << (r - 1);
        Elem z(h);
        for (size_t s = 0; s < h; ++s) z[s] = x[s | h];
        return z;
    }

    Elem join(const Elem& lo, const Elem& hi) const
    {
        Elem z(lo.size() * 2);
        for (size_t s = 0; s < lo.size(); ++s) {
            z[s] = lo[s];
            z[s | lo.size()] = hi[s];
        }
        return z;
    }

    // arithmetic within the subfield on the first r generators (vectors of length 2^r)
    Elem mul_r(const Elem& x, const Elem& y) const
    {
        size_t n = x.size();
        Elem z(n, mpq_class(0));
        for (size_t s = 0; s < n; ++s) {
            if (sgn(x[s]) == 0) continue;
            for (size_t t = 0; t < n; ++t) {
                if (sgn(y[t]) == 0) continue;
                z[s ^ t] += x[s] * y[t] * mprod_[s & t];
            }
        }
        return z;
    }

    int sign_rec(const Elem& x, const std::vector<int>& signs, int r) const
    {
        if (r == 0) return sgn(x[0]);
        Elem A = low(x, r), B = high(x, r);
        int sa = sign_rec(A, signs, r - 1);
        int sb = sign_rec(B, signs, r - 1) * signs[r - 1];
        if (sa == 0) return sb;
        if (sb == 0 || sa == sb) return sa;
        // A + B sqrt(m) with opposite signs: compare A^2 and m B^2
        Elem a2 = mul_r(A, A), b2 = mul_r(B, B);
        mpq_class m = mprod_[size_t{1} << (r - 1)];
        for (size_t s = 0; s < a2.size(); ++s) a2[s] -= m * b2[s];
        return sa * sign_rec(a2, signs, r - 1);
    }

    std::optional<Elem> sqrt_rec(const Elem& x, int r) const
    {
        if (r == 0) {
            if (sgn(x[0]) < 0) return std::nullopt;
            mpz_class n = x[0].get_num(), d = x[0].get_den();
            if (!is_square(n) || !is_square(d)) return std::nullopt;
            mpz_class sn, sd;
            mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
            mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
            return Elem{mpq_class(sn, sd)};
        }
        // x = P + Q sqrt(m); sqrt = A + B sqrt(m) with A^2 + m B^2 = P, 2AB = Q
        Elem P = low(x, r), Q = high(x, r);
        mpq_class m = mprod_[size_t{1} << (r - 1)];
        Elem N = mul_r(P, P);
        Elem Q2 = mul_r(Q, Q);
        for (size_t s = 0; s < N.size(); ++s) N[s] -= m * Q2[s];
        auto n = sqrt_rec(N, r - 1);
        if (!n) return std::nullopt;
        for (int sgn_n : {1, -1}) {
            Elem a2(P.size()), b2(P.size());
            for (size_t s = 0; s < P.size(); ++s) {
                mpq_class ns = sgn_n * (*n)[s];
                a2[s] = (P[s] + ns) / 2;
                b2[s] = (P[s] - ns) / (2 * m);
            }
            auto A = sqrt_rec(a2, r - 1);
            if (!A) continue;
            auto B = sqrt_rec(b2, r - 1);
            if (!B) continue;
            Elem twoab = mul_r(*A, *B);
            for (auto& v : twoab) v *= 2;
            if (twoab == Q) return join(*A, *B);
            for (auto& v : *B) v = -v;
            for (auto& v : twoab) v = -v;
            if (twoab == Q) return join(*A, *B);
        }
        return std::nullopt;
    }
};

} // namespace qtower
