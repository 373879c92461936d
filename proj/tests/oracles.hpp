#pragma once

// Reference implementations for the tests. None of these call into qtower.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

namespace oracle {

using i64 = std::int64_t;

inline i64 powmod(i64 b, i64 e, i64 m)
{
    __int128 r = 1, x = ((b % m) + m) % m;
    while (e > 0) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<i64>(r);
}

inline bool is_prime(i64 n)
{
    if (n < 2) return false;
    for (i64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

// Euler's criterion, odd prime p
inline int legendre(i64 a, i64 p)
{
    i64 r = powmod(a, (p - 1) / 2, p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

// Kronecker symbol as the completely multiplicative extension over the factorization of n
inline int kronecker(i64 a, i64 n)
{
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int s = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) s = -s;
    }
    for (i64 p = 2; n > 1; ++p) {
        if (p * p > n) p = n;
        while (n % p == 0) {
            n /= p;
            if (p == 2) {
                if (a % 2 == 0) return 0;
                i64 r = ((a % 8) + 8) % 8;
                s *= (r == 1 || r == 7) ? 1 : -1;
            } else {
                s *= legendre(a, p);
            }
        }
    }
    return s;
}

inline bool is_fundamental(i64 d)
{
    if (d == 0 || d == 1) return false;
    auto sqfree = [](i64 m) {
        m = m < 0 ? -m : m;
        for (i64 p = 2; p * p <= m; ++p)
            if (m % (p * p) == 0) return false;
        return true;
    };
    i64 r = ((d % 4) + 4) % 4;
    if (r == 1) return sqfree(d);
    if (r != 0) return false;
    i64 m = d / 4;
    i64 mr = ((m % 4) + 4) % 4;
    return (mr == 2 || mr == 3) && sqfree(m);
}

// Dirichlet class number formula, d < 0
inline i64 class_number_negative(i64 d)
{
    i64 n = -d;
    i64 w = d == -3 ? 6 : (d == -4 ? 4 : 2);
    i64 s = 0;
    for (i64 a = 1; a < n; ++a) s += kronecker(d, a) * a;
    // h = -w/(2|d|) * sum
    return -w * s / (2 * n);
}

// log of the fundamental unit from the continued fraction of (b + sqrt d)/2:
// eps = prod over one period of (P_i + sqrt d) / Q_i with Q_0 = 2
inline long double log_fundamental_unit(i64 d)
{
    i64 P = (d % 2 != 0) ? 1 : 0, Q = 2;
    long double sq = std::sqrt(static_cast<long double>(d));
    long double log_eps = 0;
    for (int guard = 0; guard < 10000000; ++guard) {
        i64 a = static_cast<i64>(std::floor((P + sq) / Q));
        i64 Pn = a * Q - P;
        i64 Qn = (d - Pn * Pn) / Q;
        log_eps += std::log((Pn + sq) / Qn);
        P = Pn;
        Q = Qn;
        if (Q == 2) return log_eps;
    }
    return -1;
}

// norm of the fundamental unit: each factor (P_i + sqrt d)/Q_i has norm -Q_{i+1}/Q_i, so N(eps) = (-1)^period
inline int unit_norm(i64 d)
{
    i64 P = (d % 2 != 0) ? 1 : 0, Q = 2;
    long double sq = std::sqrt(static_cast<long double>(d));
    for (int len = 1; len < 10000000; ++len) {
        i64 a = static_cast<i64>(std::floor((P + sq) / Q));
        P = a * Q - P;
        Q = (d - P * P) / Q;
        if (Q == 2) return (len % 2) ? -1 : 1;
    }
    return 0;
}

// analytic class number, d > 0: h log eps = -1/2 sum chi(a) log sin(pi a / d)
inline std::optional<i64> class_number_positive(i64 d)
{
    long double s = 0;
    for (i64 a = 1; a < d; ++a) {
        int c = kronecker(d, a);
        if (c != 0) s += c * std::log(std::sin(std::numbers::pi_v<long double> * a / d));
    }
    long double h = -0.5L * s / log_fundamental_unit(d);
    long double r = std::round(h);
    if (std::fabs(h - r) > 1e-6L) return std::nullopt;
    return static_cast<i64>(r);
}

// smallest x, y > 0 with x^2 - d y^2 = +-4, by direct search on y
inline std::optional<std::pair<i64, i64>> pell_brute(i64 d, i64 ymax)
{
    for (i64 y = 1; y <= ymax; ++y) {
        for (int sgn : {-4, 4}) {
            __int128 t = static_cast<__int128>(d) * y * y + sgn;
            if (t <= 0) continue;
            i64 x = static_cast<i64>(std::sqrt(static_cast<long double>(t)));
            while (static_cast<__int128>(x) * x > t) --x;
            while (static_cast<__int128>(x + 1) * (x + 1) <= t) ++x;
            if (static_cast<__int128>(x) * x == t) return std::pair{x, y};
        }
    }
    return std::nullopt;
}

// (a, b)_p from the explicit formulas, p prime or 0 for the real place
inline int hilbert(i64 a, i64 b, i64 p)
{
    if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
    int va = 0, vb = 0;
    while (a % p == 0) {
        a /= p;
        ++va;
    }
    while (b % p == 0) {
        b /= p;
        ++vb;
    }
    if (p == 2) {
        auto e = [](i64 u) { return ((((u % 8) + 8) % 8) % 4 == 3) ? 1 : 0; };
        auto w = [](i64 u) {
            i64 r = ((u % 8) + 8) % 8;
            return (r == 3 || r == 5) ? 1 : 0;
        };
        int t = e(a) * e(b) + va * w(b) + vb * w(a);
        return (t % 2) ? -1 : 1;
    }
    int s = (va % 2 && vb % 2 && p % 4 == 3) ? -1 : 1;
    if (vb % 2) s *= legendre(a, p);
    if (va % 2) s *= legendre(b, p);
    return s;
}

inline std::vector<i64> prime_factors(i64 n)
{
    n = n < 0 ? -n : n;
    std::vector<i64> ps;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        ps.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

// n is a norm from Q(sqrt d) iff every local Hilbert symbol (n, d)_v is +1
inline bool is_local_norm_everywhere(i64 n, i64 d)
{
    if (hilbert(n, d, 0) != 1) return false;
    std::vector<i64> ps = prime_factors(2 * n * d);
    for (i64 p : ps)
        if (hilbert(n, d, p) != 1) return false;
    return true;
}

} // namespace oracle
