#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qtower/error.hpp"

namespace qtower {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

inline constexpr i64 default_factor_bound = 1000000;

inline i64 abs64(i64 x) { return x < 0 ? -x : x; }

// floor(sqrt(n)) for n >= 0
inline i64 isqrt(i64 n)
{
    if (n < 0) throw error(errc::undefined_input, "isqrt of negative");
    i64 r = static_cast<i64>(__builtin_sqrtl(static_cast<long double>(n)));
    while (r > 0 && static_cast<i128>(r) * r > n) --r;
    while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_square(i64 n, i64* root = nullptr)
{
    if (n < 0) return false;
    i64 r = isqrt(n);
    if (root) *root = r;
    return r * r == n;
}

inline bool is_square(const mpz_class& n)
{
    return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline i64 mod_floor(i64 a, i64 m)
{
    i64 r = a % m;
    return r < 0 ? r + (m < 0 ? -m : m) : r;
}

namespace detail {

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 b, u64 e, u64 m)
{
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

} // namespace detail

// deterministic for all 64-bit n
inline bool is_prime(u64 n)
{
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = detail::powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// beyond 64 bits: GMP's probabilistic test with the requested number of rounds
inline bool is_probable_prime(const mpz_class& n, int rounds = 32)
{
    if (n.fits_ulong_p()) return is_prime(n.get_ui());
    return mpz_probab_prime_p(n.get_mpz_t(), rounds) != 0;
}

// Kronecker symbol (a/n), all sign and parity conventions
inline int kronecker(i64 a, i64 n)
{
    if (a == 0 && n == 0) throw error(errc::undefined_input, "kronecker(0, 0)");
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int k = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) k = -k;
    }
    int v = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++v;
    }
    if (v > 0) {
        if ((a & 1) == 0) return 0;
        if (v & 1) {
            i64 r = mod_floor(a, 8);
            if (r == 3 || r == 5) k = -k;
        }
    }
    // n odd positive
    a = mod_floor(a, n);
    while (a != 0) {
        int t = 0;
        while ((a & 1) == 0) {
            a >>= 1;
            ++t;
        }
        if (t & 1) {
            i64 r = n & 7;
            if (r == 3 || r == 5) k = -k;
        }
        if ((a & 3) == 3 && (n & 3) == 3) k = -k;
        i64 tmp = a;
        a = n % tmp;
        n = tmp;
    }
    return n == 1 ? k : 0;
}

// trial division up to `bound`; a leftover cofactor must be prime (checked) or the bound is exceeded
inline std::vector<std::pair<i64, int>> factor_integer(i64 n, i64 bound = default_factor_bound)
{
    if (n == 0) throw error(errc::zero_input, "factor 0");
    u64 m = static_cast<u64>(n < 0 ? -static_cast<i128>(n) : n);
    std::vector<std::pair<i64, int>> out;
    auto strip = [&](u64 p) {
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e) out.emplace_back(static_cast<i64>(p), e);
    };
    strip(2);
    strip(3);
    for (u64 p = 5; p * p <= m; p += 6) {
        if (static_cast<i64>(p) > bound) break;
        strip(p);
        strip(p + 2);
    }
    if (m > 1) {
        if (!is_prime(m)) {
            u64 r = static_cast<u64>(isqrt(static_cast<i64>(m)));
            if (r * r == m && is_prime(r)) {
                out.emplace_back(static_cast<i64>(r), 2);
                m = 1;
            } else {
                throw error(errc::bound_exceeded,
                            "cofactor " + std::to_string(m) + " of " + std::to_string(n) +
                                " is composite beyond trial bound " + std::to_string(bound));
            }
        } else {
            out.emplace_back(static_cast<i64>(m), 1);
        }
    }
    return out;
}

inline i64 squarefree_kernel(i64 n, i64 bound = default_factor_bound)
{
    if (n == 0) throw error(errc::zero_input, "squarefree kernel of 0");
    i64 r = 1;
    for (auto [p, e] : factor_integer(n, bound)) {
        if (e & 1) r *= p;
    }
    return n < 0 ? -r : r;
}

// squarefree kernel of n when its odd-exponent primes are known to lie in `primes`;
// throws if a square cofactor is not left behind
inline mpz_class squarefree_kernel_over(mpz_class n, const std::vector<i64>& primes)
{
    if (n == 0) throw error(errc::zero_input, "squarefree kernel of 0");
    int s = sgn(n);
    n = abs(n);
    mpz_class r = 1;
    for (i64 p : primes) {
        mpz_class pp = static_cast<long>(p);
        unsigned long e = mpz_remove(n.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t());
        if (e & 1) r *= pp;
    }
    if (!is_square(n))
        throw error(errc::hypothesis_violation, "squarefree kernel has a prime outside the given set");
    return s < 0 ? mpz_class(-r) : r;
}

inline bool is_fundamental_discriminant(i64 d)
{
    if (d == 0 || d == 1) return false;
    i64 r = mod_floor(d, 4);
    auto squarefree = [](i64 m) {
        if (m == 0) return false;
        for (auto [p, e] : factor_integer(m)) {
            if (e > 1) return false;
        }
        return true;
    };
    if (r == 1) return squarefree(d);
    if (r != 0) return false;
    i64 m = d / 4;
    i64 mr = mod_floor(m, 4);
    return (mr == 2 || mr == 3) && squarefree(m);
}

inline bool is_prime_discriminant(i64 v)
{
    if (v == -4 || v == 8 || v == -8) return true;
    if (mod_floor(v, 4) != 1) return false;
    return is_prime(static_cast<u64>(abs64(v)));
}

// the prime below a prime discriminant (2 for -4, 8, -8)
inline i64 prime_of(i64 prime_disc)
{
    return (prime_disc % 2 == 0) ? 2 : abs64(prime_disc);
}

// prime discriminant attached to an odd prime
inline i64 prime_discriminant_of(i64 p) { return (p % 4 == 1) ? p : -p; }

struct DiscriminantFactorization {
    std::vector<i64> factors; // ascending |value|
    i64 product = 0;

    std::vector<i64> primes() const
    {
        std::vector<i64> ps;
        for (i64 f : factors) ps.push_back(prime_of(f));
        return ps;
    }
};

inline DiscriminantFactorization factor_discriminant(i64 d, i64 bound = default_factor_bound)
{
    if (!is_fundamental_discriminant(d)) {
        // squarefree check may have thrown bound_exceeded already
        throw error(errc::not_fundamental, std::to_string(d) + " is not a fundamental discriminant");
    }
    DiscriminantFactorization f;
    f.product = d;
    i64 odd = 1;
    for (auto [p, e] : factor_integer(d, bound)) {
        if (p == 2) continue;
        i64 pd = prime_discriminant_of(p);
        f.factors.push_back(pd);
        odd *= pd;
    }
    i64 two = d / odd;
    if (two != 1) f.factors.push_back(two);
    std::sort(f.factors.begin(), f.factors.end(), [](i64 x, i64 y) {
        return abs64(x) < abs64(y) || (abs64(x) == abs64(y) && x < y);
    });
    return f;
}

inline bool is_sum_of_two_squares(i64 d, i64 bound = default_factor_bound)
{
    if (d <= 0) throw error(errc::undefined_input, "is_sum_of_two_squares needs d > 0");
    for (auto [p, e] : factor_integer(d, bound)) {
        if (p % 4 == 3 && (e & 1)) return false;
    }
    return true;
}

// p = s^2 + t^2 with t odd, both positive (Cornacchia)
inline std::pair<i64, i64> two_square_decomposition(i64 p)
{
    if (p <= 0 || p % 4 != 1 || !is_prime(static_cast<u64>(p)))
        throw error(errc::not_applicable, std::to_string(p) + " is not a prime = 1 mod 4");
    u64 up = static_cast<u64>(p);
    u64 x = 0;
    for (u64 c = 2;; ++c) {
        if (kronecker(static_cast<i64>(c), p) == -1) {
            x = detail::powmod(c, (up - 1) / 4, up);
            break;
        }
    }
    i64 a = p, b = static_cast<i64>(x);
    i64 lim = isqrt(p);
    while (b > lim) {
        i64 r = a % b;
        a = b;
        b = r;
    }
    i64 s = b;
    i64 t2 = p - s * s;
    i64 t = 0;
    if (!is_square(t2, &t)) throw error(errc::inconsistent, "Cornacchia failed");
    if (t % 2 == 0) std::swap(s, t);
    return {s, t};
}

// Hilbert symbol (a, b)_p; p = 0 means the real place
inline int hilbert_symbol(i64 a, i64 b, i64 p)
{
    if (a == 0 || b == 0) throw error(errc::zero_input, "hilbert symbol of 0");
    if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
    auto split = [p](i64 x, int& v) {
        v = 0;
        while (x % p == 0) {
            x /= p;
            ++v;
        }
        return x;
    };
    int va = 0, vb = 0;
    i64 u = split(a, va);
    i64 w = split(b, vb);
    if (p != 2) {
        int s = ((va * vb) & 1) && (p % 4 == 3) ? -1 : 1;
        if (vb & 1) s *= kronecker(u, p);
        if (va & 1) s *= kronecker(w, p);
        return s;
    }
    auto eps = [](i64 x) { return static_cast<int>(((mod_floor(x, 8) - 1) / 2) & 1); };
    auto omg = [](i64 x) {
        i64 r = mod_floor(x, 8);
        return static_cast<int>(((r * r - 1) / 8) & 1);
    };
    int e = eps(u) * eps(w) + va * omg(w) + vb * omg(u);
    return (e & 1) ? -1 : 1;
}

inline std::string to_string(const mpz_class& z) { return z.get_str(); }

} // namespace qtower
