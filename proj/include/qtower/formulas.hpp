#pragma once

#include <array>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "qtower/arith.hpp"

namespace qtower {

inline bool is_power_of_two(i64 n) { return n > 0 && (n & (n - 1)) == 0; }

// Kuroda: 2^(d - kappa - 2 - v) q h_a h_b h_c / h(base)^2 for a V4-extension of the base,
// d = infinite places of the base ramified in the extension, kappa = unit rank of the base
// (d = 8, kappa = 7 gives the 1/2^(1+v) of the octic CM case)
struct KurodaInput {
    int d = 0;
    int kappa = 0;
    int v = 0;
    i64 q = 1;
    std::array<i64, 3> subfield_h2{1, 1, 1};
    i64 base_h2 = 1;

    int prefactor_exponent() const { return d - kappa - 2 - v; }
};

inline void validate(const KurodaInput& in)
{
    if (in.v != 0 && in.v != 1) throw error(errc::inconsistent, "v must be 0 or 1");
    if (in.d < 0 || in.kappa < 0) throw error(errc::inconsistent, "d and kappa are nonnegative");
    if (!is_power_of_two(in.q)) throw error(errc::inconsistent, "unit index must be a power of 2");
    for (i64 h : in.subfield_h2) {
        if (h < 1) throw error(errc::inconsistent, "2-class numbers are >= 1");
    }
    if (in.base_h2 < 1) throw error(errc::inconsistent, "2-class numbers are >= 1");
}

inline mpq_class kuroda_ratio(const KurodaInput& in)
{
    validate(in);
    mpq_class r = in.q;
    for (i64 h : in.subfield_h2) r *= h;
    r /= mpz_class(in.base_h2) * in.base_h2;
    int e = in.prefactor_exponent();
    if (e >= 0)
        r *= mpz_class(1) << e;
    else
        r /= mpz_class(1) << (-e);
    r.canonicalize();
    return r;
}

// real biquadratic over Q: 1/4 q h h h
inline KurodaInput kuroda_biquadratic(i64 q, i64 h1, i64 h2v, i64 h3)
{
    KurodaInput in;
    in.q = q;
    in.subfield_h2 = {h1, h2v, h3};
    return in;
}

// h2(M) = 1/2 h2(Q(sqrt gamma)) h2(Q(sqrt D1 gamma)): CM quartic over Q with one real subfield of odd class number
inline KurodaInput kuroda_quartic_cm(i64 h_gamma, i64 h_d1gamma)
{
    KurodaInput in;
    in.d = 1;
    in.subfield_h2 = {h_gamma, h_d1gamma, 1};
    return in;
}

struct AmbiguousInput {
    int t_fin = 0;
    int t_inf = 0;
    i64 unit_index = 1;
};

// 2^(t-1) / (E : H)
inline i64 ambiguous_number(const AmbiguousInput& in)
{
    int t = in.t_fin + in.t_inf;
    if (in.t_fin < 0 || in.t_inf < 0 || t < 1) throw error(errc::inconsistent, "need at least one ramified place");
    if (!is_power_of_two(in.unit_index)) throw error(errc::inconsistent, "(E:H) must be a power of 2");
    if (t - 1 > 62) throw error(errc::bound_exceeded, "too many ramified places");
    i64 num = i64{1} << (t - 1);
    if (num % in.unit_index != 0)
        throw error(errc::inconsistent, "2^" + std::to_string(t - 1) + " is not divisible by " + std::to_string(in.unit_index));
    return num / in.unit_index;
}

inline int log2_exact(i64 n)
{
    if (!is_power_of_two(n)) throw error(errc::non_integer_result, std::to_string(n) + " is not a power of 2");
    return __builtin_ctzll(static_cast<u64>(n));
}

enum class GType { Qg, D, S, Q, V4 };

inline const char* gtype_name(GType g)
{
    switch (g) {
    case GType::Qg: return "Qg";
    case GType::D: return "D";
    case GType::S: return "S";
    case GType::Q: return "Q";
    case GType::V4: return "V4";
    }
    return "?";
}

// h2(L)/h2(k+^1) = ell h2(N)/h2(k^1)
inline mpq_class ell_factor(GType g)
{
    switch (g) {
    case GType::Qg: return mpq_class(1, 4);
    case GType::D:
    case GType::S: return mpq_class(1, 8);
    default: throw error(errc::not_applicable, std::string("no ell factor for type ") + gtype_name(g));
    }
}

// h2(N)/h2(k^1) = 1/(8 ell) h2(M)^2
inline mpq_class n_over_k1(GType g, i64 h2_M)
{
    mpq_class r = mpq_class(1) / (8 * ell_factor(g));
    r *= mpz_class(h2_M) * h2_M;
    r.canonicalize();
    return r;
}

struct MainChainResult {
    mpq_class value;
    bool length_at_least_3 = false;
};

// h2(L)/h2(k+^1) = h2(M)^2 / 8
inline MainChainResult main_chain(GType g, i64 h2_M)
{
    if (h2_M < 1) throw error(errc::inconsistent, "h2(M) >= 1");
    MainChainResult r;
    r.value = ell_factor(g) * n_over_k1(g, h2_M);
    r.value.canonicalize();
    r.length_at_least_3 = r.value >= 2;
    return r;
}

// #Am2 of Q(sqrt alpha)/Q(sqrt D) with alpha > 0: t_inf = 2, (E:H) = 4;
// t_fin counts 1 for the prime carrying b sqrt(d1) and 2 or 1 for p3, p4 by (d2/p)
inline int ambiguous_t_fin(int d2_p3, int d2_p4)
{
    return 1 + (d2_p3 == 1 ? 2 : 1) + (d2_p4 == 1 ? 2 : 1);
}

struct AmbiguousRank {
    int t = 0;
    int rank = 0;
};

inline AmbiguousRank ambiguous_rank(int d2_p3, int d2_p4)
{
    AmbiguousInput in{ambiguous_t_fin(d2_p3, d2_p4), 2, 4};
    return {in.t_fin + in.t_inf, log2_exact(ambiguous_number(in))};
}

} // namespace qtower
