#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <ostream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qtower/arith.hpp"

namespace qtower {

inline constexpr i64 default_class_group_bound = 10000000;

struct BQForm {
    i64 a = 0, b = 0, c = 0;

    i64 disc() const { return b * b - 4 * a * c; }
    friend bool operator==(const BQForm&, const BQForm&) = default;
    friend auto operator<=>(const BQForm&, const BQForm&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const BQForm& f)
{
    return os << '(' << f.a << ',' << f.b << ',' << f.c << ')';
}

inline std::string to_string(const BQForm& f)
{
    return "(" + std::to_string(f.a) + "," + std::to_string(f.b) + "," + std::to_string(f.c) + ")";
}

inline BQForm principal_form(i64 d)
{
    i64 b = mod_floor(d, 4) == 1 ? 1 : 0;
    return {1, b, (b * b - d) / 4};
}

// (-1, b0, -c0): same discriminant as the principal form, negated values
inline BQForm negated_principal_form(i64 d)
{
    BQForm p = principal_form(d);
    return {-p.a, p.b, -p.c};
}

inline BQForm inverse(const BQForm& f) { return {f.a, -f.b, f.c}; }

namespace detail {

inline void check_nonsquare(i64 d)
{
    if (d == 0 || is_square(d))
        throw error(errc::square_discriminant, "discriminant " + std::to_string(d) + " is a square");
}

// a*x + b*y = g >= 0
inline i64 xgcd(i64 a, i64 b, i64& x, i64& y)
{
    i64 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        i64 q = a / b;
        std::tie(a, b) = std::make_pair(b, a - q * b);
        std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
        std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    x = x0;
    y = y0;
    return a;
}

inline BQForm reduce_definite(BQForm f)
{
    for (;;) {
        i64 a2 = 2 * f.a;
        if (f.b <= -f.a || f.b > f.a) {
            // b <- b mod 2a into (-a, a]
            i64 r = mod_floor(f.b, a2);
            if (r > f.a) r -= a2;
            i64 k = (r - f.b) / a2;
            f.c = f.c + k * f.b + k * k * f.a;
            f.b = r;
        }
        if (f.a > f.c) {
            f = {f.c, -f.b, f.a};
            continue;
        }
        break;
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
}

inline bool is_reduced_indefinite(const BQForm& f, i64 q)
{
    // |sqrt(D) - 2|a|| < b < sqrt(D), sqrt(D) irrational
    i64 A = abs64(f.a);
    return f.b > 0 && f.b <= q && q < f.b + 2 * A && 2 * A - f.b <= q;
}

inline BQForm rho(const BQForm& f, i64 D, i64 q)
{
    i64 c = f.c;
    i64 C = abs64(c);
    i64 m = 2 * C;
    i64 r;
    if (C > q) {
        r = mod_floor(-f.b, m);
        if (r > C) r -= m;
    } else {
        r = q - mod_floor(q + f.b, m);
    }
    return {c, r, (r * r - D) / (4 * c)};
}

} // namespace detail

inline bool is_reduced(const BQForm& f)
{
    i64 d = f.disc();
    if (d < 0) {
        if (f.a <= 0) return false;
        if (abs64(f.b) > f.a || f.a > f.c) return false;
        if ((abs64(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
        return true;
    }
    return detail::is_reduced_indefinite(f, isqrt(d));
}

inline BQForm reduce(const BQForm& f)
{
    i64 d = f.disc();
    detail::check_nonsquare(d);
    if (d < 0) {
        BQForm g = f;
        if (g.a < 0) throw error(errc::undefined_input, "negative definite form");
        return detail::reduce_definite(g);
    }
    i64 q = isqrt(d);
    BQForm g = f;
    for (int it = 0; !detail::is_reduced_indefinite(g, q); ++it) {
        if (it > 100000) throw error(errc::inconsistent, "indefinite reduction did not terminate");
        g = detail::rho(g, d, q);
    }
    return g;
}

// Dirichlet composition followed by reduction
inline BQForm compose(const BQForm& f, const BQForm& g)
{
    i64 D = f.disc();
    if (g.disc() != D) throw error(errc::discriminant_mismatch, to_string(f) + " vs " + to_string(g));
    detail::check_nonsquare(D);
    i64 s = (f.b + g.b) / 2;
    i64 u1, v1;
    i64 g1 = detail::xgcd(f.a, g.a, u1, v1);
    i64 x, w;
    i64 e = detail::xgcd(g1, s, x, w);
    i128 u = static_cast<i128>(x) * u1, v = static_cast<i128>(x) * v1;
    i128 a3 = static_cast<i128>(f.a) * g.a / (static_cast<i128>(e) * e);
    i128 num = u * f.a * g.b + v * g.a * f.b + static_cast<i128>(w) * ((static_cast<i128>(f.b) * g.b + D) / 2);
    i128 b3 = num / e;
    i128 m = 2 * (a3 < 0 ? -a3 : a3);
    b3 %= m;
    if (b3 < 0) b3 += m;
    if (b3 > m / 2) b3 -= m;
    i128 c3 = (b3 * b3 - D) / (4 * a3);
    return reduce({static_cast<i64>(a3), static_cast<i64>(b3), static_cast<i64>(c3)});
}

inline std::vector<BQForm> reduced_forms(i64 d)
{
    detail::check_nonsquare(d);
    std::vector<BQForm> out;
    if (d < 0) {
        i64 N = -d;
        for (i64 a = 1; 3 * a * a <= N; ++a) {
            for (i64 b = -a + 1; b <= a; ++b) {
                if (mod_floor(b - d, 2) != 0) continue;
                i64 num = b * b - d;
                if (num % (4 * a)) continue;
                i64 c = num / (4 * a);
                if (c < a) continue;
                if (a == c && b < 0) continue;
                if (std::gcd(std::gcd(a, abs64(b)), c) != 1) continue;
                out.push_back({a, b, c});
            }
        }
        return out;
    }
    i64 q = isqrt(d);
    for (i64 b = (d & 1) ? 1 : 2; b <= q; b += 2) {
        i64 N = (d - b * b) / 4; // = -ac > 0
        for (i64 A = 1; A * A <= N; ++A) {
            if (N % A) continue;
            for (i64 AA : {A, N / A}) {
                if (!(q < b + 2 * AA && 2 * AA - b <= q)) continue;
                for (i64 a : {AA, -AA}) {
                    i64 c = -N / a;
                    if (std::gcd(std::gcd(AA, b), abs64(c)) != 1) continue;
                    out.push_back({a, b, c});
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace detail {

// p-primary decomposition from element orders -> invariant factors d1 | d2 | ...
inline std::vector<i64> invariants_from_orders(const std::vector<i64>& orders)
{
    i64 n = static_cast<i64>(orders.size());
    std::vector<i64> result;
    if (n <= 1) return result;
    std::vector<std::vector<i64>> by_prime; // cyclic p-power factors, descending
    for (auto [p, e] : factor_integer(n)) {
        std::vector<i64> cnt; // cnt[k] = #{x : x^(p^k) = 1}
        i64 pk = 1;
        for (int k = 0; k <= e; ++k) {
            i64 c = 0;
            for (i64 o : orders) {
                if (pk % o == 0) ++c;
            }
            cnt.push_back(c);
            pk *= p;
        }
        // number of cyclic factors of order >= p^k is log_p(cnt[k]/cnt[k-1])
        std::vector<int> ge(e + 2, 0);
        for (int k = 1; k <= e; ++k) {
            i64 ratio = cnt[k] / cnt[k - 1];
            int l = 0;
            while (ratio > 1) {
                ratio /= p;
                ++l;
            }
            ge[k] = l;
        }
        std::vector<i64> factors;
        for (int k = e; k >= 1; --k) {
            int exact = ge[k] - ge[k + 1];
            i64 v = 1;
            for (int t = 0; t < k; ++t) v *= p;
            for (int t = 0; t < exact; ++t) factors.push_back(v);
        }
        by_prime.push_back(factors);
    }
    size_t len = 0;
    for (auto& f : by_prime) len = std::max(len, f.size());
    result.assign(len, 1);
    for (auto& f : by_prime) {
        for (size_t i = 0; i < f.size(); ++i) result[len - 1 - i] *= f[i];
    }
    return result;
}

struct ClassData {
    i64 d = 0;
    std::vector<BQForm> reps;                  // one per narrow class
    std::map<std::pair<i64, i64>, int> index;  // reduced form (a,b) -> narrow class
    std::vector<int> coset;                    // narrow class -> ordinary class (identity map when narrow)
    std::vector<int> coset_rep;                // ordinary class -> narrow class
};

} // namespace detail

class FormClassGroup {
public:
    i64 discriminant = 0;
    std::vector<i64> elementary_divisors;
    std::vector<BQForm> class_representatives;
    bool narrow = true;

    i64 order() const
    {
        i64 h = 1;
        for (i64 e : elementary_divisors) h *= e;
        return h;
    }

    // class index of any form of this discriminant
    int index_of(const BQForm& f) const
    {
        BQForm r = reduce(f);
        auto it = data_->index.find({r.a, r.b});
        if (it == data_->index.end()) throw error(errc::inconsistent, "form not found in class list: " + to_string(r));
        return data_->coset[it->second];
    }

    int multiply(int i, int j) const
    {
        return index_of(compose(class_representatives[i], class_representatives[j]));
    }

    int identity() const { return index_of(principal_form(discriminant)); }

    i64 element_order(int i) const
    {
        int e = identity();
        int x = i;
        i64 o = 1;
        while (x != e) {
            x = multiply(x, i);
            ++o;
        }
        return o;
    }

    std::shared_ptr<const detail::ClassData> data_;
};

namespace detail {

inline std::shared_ptr<ClassData> build_classes(i64 d)
{
    auto cd = std::make_shared<ClassData>();
    cd->d = d;
    std::vector<BQForm> forms = reduced_forms(d);
    if (d < 0) {
        for (const auto& f : forms) {
            cd->index[{f.a, f.b}] = static_cast<int>(cd->reps.size());
            cd->reps.push_back(f);
        }
    } else {
        i64 q = isqrt(d);
        for (const auto& f : forms) {
            if (cd->index.count({f.a, f.b})) continue;
            int id = static_cast<int>(cd->reps.size());
            cd->reps.push_back(f);
            BQForm g = f;
            do {
                cd->index[{g.a, g.b}] = id;
                g = rho(g, d, q);
            } while (!(g == f));
        }
    }
    cd->coset.resize(cd->reps.size());
    std::iota(cd->coset.begin(), cd->coset.end(), 0);
    cd->coset_rep = cd->coset;
    return cd;
}

inline void check_class_group_input(i64 d, i64 bound)
{
    if (abs64(d) > bound)
        throw error(errc::bound_exceeded, "|d| = " + std::to_string(abs64(d)) + " exceeds " + std::to_string(bound));
    if (!is_fundamental_discriminant(d))
        throw error(errc::not_fundamental, std::to_string(d) + " is not a fundamental discriminant");
}

} // namespace detail

// number of classes only: reduced-form count (d < 0) or rho-cycle count (d > 0)
inline i64 class_number(i64 d, bool narrow, i64 bound = default_class_group_bound)
{
    detail::check_class_group_input(d, bound);
    auto cd = detail::build_classes(d);
    i64 h = static_cast<i64>(cd->reps.size());
    if (d < 0 || narrow) return h;
    BQForm np = reduce(negated_principal_form(d));
    BQForm pr = reduce(principal_form(d));
    return cd->index.at({np.a, np.b}) == cd->index.at({pr.a, pr.b}) ? h : h / 2;
}

// true iff the negated principal form is principal, i.e. a unit of norm -1 exists
inline bool has_norm_minus_one_unit(i64 d)
{
    if (d <= 0) throw error(errc::undefined_input, "needs d > 0");
    return class_number(d, true) == class_number(d, false);
}

inline FormClassGroup class_group(i64 d, bool narrow, i64 bound = default_class_group_bound)
{
    detail::check_class_group_input(d, bound);
    auto cd = detail::build_classes(d);
    FormClassGroup g;
    g.discriminant = d;
    g.narrow = narrow || d < 0;
    g.data_ = cd;
    g.class_representatives = cd->reps;
    int n = static_cast<int>(cd->reps.size());
    int e = g.identity();
    if (d > 0 && !narrow) {
        int j = g.index_of(negated_principal_form(d));
        if (j != e) {
            // quotient by {1, [negated principal]}
            std::vector<int> coset(n, -1), rep;
            for (int x = 0; x < n; ++x) {
                if (coset[x] >= 0) continue;
                int y = g.multiply(x, j);
                int id = static_cast<int>(rep.size());
                rep.push_back(x);
                coset[x] = coset[y] = id;
            }
            auto qd = std::make_shared<detail::ClassData>(*cd);
            qd->coset = coset;
            qd->coset_rep = rep;
            std::vector<BQForm> reps;
            for (int x : rep) reps.push_back(cd->reps[x]);
            g.class_representatives = reps;
            g.data_ = qd;
        }
    }
    std::vector<i64> orders;
    for (int i = 0; i < static_cast<int>(g.class_representatives.size()); ++i) orders.push_back(g.element_order(i));
    g.elementary_divisors = detail::invariants_from_orders(orders);
    return g;
}

inline std::vector<i64> two_part(const std::vector<i64>& divisors)
{
    std::vector<i64> out;
    for (i64 e : divisors) {
        i64 t = 1;
        while (e % 2 == 0) {
            e /= 2;
            t *= 2;
        }
        if (t > 1) out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline FormClassGroup two_sylow(const FormClassGroup& g)
{
    FormClassGroup s;
    s.discriminant = g.discriminant;
    s.narrow = g.narrow;
    s.elementary_divisors = two_part(g.elementary_divisors);
    s.data_ = g.data_;
    if (g.data_) {
        for (int i = 0; i < static_cast<int>(g.class_representatives.size()); ++i) {
            i64 o = g.element_order(i);
            if ((o & (o - 1)) == 0) s.class_representatives.push_back(g.class_representatives[i]);
        }
    }
    return s;
}

inline FormClassGroup two_sylow(const std::vector<i64>& divisors)
{
    FormClassGroup g;
    g.elementary_divisors = divisors;
    return two_sylow(g);
}

// 2-class number h_2 of the ordinary (or narrow) class group
inline i64 h2(i64 d, bool narrow = false)
{
    i64 h = class_number(d, narrow);
    i64 t = 1;
    while (h % 2 == 0) {
        h /= 2;
        t *= 2;
    }
    return t;
}

// chi attached to a prime discriminant factor of disc, extended to the ramified primes
// by chi(p_i) = (disc / d_i  /  p_i)
struct GenusCharacter {
    i64 prime_disc;
    i64 disc;

    int operator()(i64 n) const
    {
        if (n == 0) throw error(errc::zero_input, "genus character at 0");
        int s = (n < 0 && prime_disc < 0) ? -1 : 1;
        for (auto [p, e] : factor_integer(n)) {
            if (!(e & 1)) continue;
            s *= (p == prime_of(prime_disc)) ? kronecker(disc / prime_disc, p) : kronecker(prime_disc, p);
        }
        return s;
    }
};

inline std::vector<GenusCharacter> genus_characters(i64 d)
{
    std::vector<GenusCharacter> out;
    for (i64 f : factor_discriminant(d).factors) out.push_back({f, d});
    return out;
}

struct C4Splitting {
    i64 delta1 = 0, delta2 = 0;
    friend bool operator==(const C4Splitting&, const C4Splitting&) = default;
};

inline std::vector<C4Splitting> c4_splittings(i64 d)
{
    auto fac = factor_discriminant(d);
    const auto& f = fac.factors;
    int n = static_cast<int>(f.size());
    std::vector<C4Splitting> out;
    if (n < 2) return out;
    for (unsigned mask = 1; mask < (1u << n) - 1; ++mask) {
        if (!(mask & 1u)) continue; // delta1 carries the smallest factor
        i64 d1 = 1, d2 = 1;
        for (int i = 0; i < n; ++i) ((mask >> i) & 1u ? d1 : d2) *= f[i];
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            i64 p = prime_of(f[i]);
            if ((mask >> i) & 1u)
                ok = kronecker(d2, p) == 1;
            else
                ok = kronecker(d1, p) == 1;
        }
        if (ok) out.push_back({d1, d2});
    }
    return out;
}

} // namespace qtower
