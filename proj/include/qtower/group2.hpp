#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qtower/arith.hpp"
#include "qtower/formulas.hpp"
#include "qtower/qform.hpp"

namespace qtower {

// a subgroup is its sorted list of element indices
using Subgroup = std::vector<int>;

class TableGroup {
public:
    TableGroup() = default;

    TableGroup(int n, std::vector<int> table, std::string name = {}) : n_(n), t_(std::move(table)), name_(std::move(name))
    {
        validate();
    }

    int order() const { return n_; }
    const std::string& name() const { return name_; }
    void set_name(std::string s) { name_ = std::move(s); }

    int mul(int a, int b) const { return t_[static_cast<size_t>(a) * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    int comm(int a, int b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }

    int pow(int a, i64 e) const
    {
        int r = 0;
        for (i64 i = 0; i < e; ++i) r = mul(r, a);
        return r;
    }

    int element_order(int a) const
    {
        int k = 1;
        for (int x = a; x != 0; x = mul(x, a)) ++k;
        return k;
    }

    Subgroup all() const
    {
        Subgroup s(n_);
        for (int i = 0; i < n_; ++i) s[i] = i;
        return s;
    }

    Subgroup trivial() const { return {0}; }

    // closure of the given generators
    Subgroup generate(const std::vector<int>& gens) const
    {
        std::vector<char> in(n_, 0);
        std::vector<int> elems{0};
        in[0] = 1;
        for (size_t i = 0; i < elems.size(); ++i) {
            for (int g : gens) {
                int x = mul(elems[i], g);
                if (!in[x]) {
                    in[x] = 1;
                    elems.push_back(x);
                }
            }
        }
        std::sort(elems.begin(), elems.end());
        return elems;
    }

    const std::vector<int>& table() const { return t_; }

private:
    int n_ = 0;
    std::vector<int> t_;
    std::vector<int> inv_;
    std::string name_;

    void validate()
    {
        if (n_ < 1) throw error(errc::invalid_group, "order must be positive");
        if (t_.size() != static_cast<size_t>(n_) * n_) throw error(errc::invalid_group, "table is not n x n");
        for (int v : t_) {
            if (v < 0 || v >= n_) throw error(errc::invalid_group, "entry out of range");
        }
        for (int a = 0; a < n_; ++a) {
            if (mul(0, a) != a || mul(a, 0) != a) throw error(errc::invalid_group, "element 0 is not the identity");
        }
        inv_.assign(n_, -1);
        for (int a = 0; a < n_; ++a) {
            std::vector<char> row(n_, 0);
            for (int b = 0; b < n_; ++b) {
                int x = mul(a, b);
                if (row[x]) throw error(errc::invalid_group, "row " + std::to_string(a) + " is not a permutation");
                row[x] = 1;
                if (x == 0) inv_[a] = b;
            }
        }
        for (int a = 0; a < n_; ++a) {
            if (mul(inv_[a], a) != 0) throw error(errc::invalid_group, "missing two-sided inverse");
        }
        for (int a = 0; a < n_; ++a) {
            for (int b = 0; b < n_; ++b) {
                int ab = mul(a, b);
                for (int c = 0; c < n_; ++c) {
                    if (mul(ab, c) != mul(a, mul(b, c)))
                        throw error(errc::invalid_group, "not associative at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                                             std::to_string(c) + ")");
                }
            }
        }
    }
};

// --- table files ------------------------------------------------------------------

inline TableGroup read_table(std::istream& in, const std::string& name = {})
{
    int n = 0;
    if (!(in >> n) || n < 1) throw error(errc::invalid_group, "first line must be the order");
    std::vector<int> t(static_cast<size_t>(n) * n);
    for (auto& v : t) {
        if (!(in >> v)) throw error(errc::invalid_group, "table has fewer than n*n entries");
    }
    std::string extra;
    if (in >> extra) throw error(errc::invalid_group, "trailing data after the table");
    return TableGroup(n, std::move(t), name);
}

inline TableGroup load_table(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw error(errc::io, "cannot open " + path);
    return read_table(f, path);
}

inline void write_table(std::ostream& out, const TableGroup& g)
{
    out << g.order() << '\n';
    for (int a = 0; a < g.order(); ++a) {
        for (int b = 0; b < g.order(); ++b) out << (b ? " " : "") << g.mul(a, b);
        out << '\n';
    }
}

// --- constructors -------------------------------------------------------------------

inline TableGroup cyclic(int n)
{
    std::vector<int> t(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a * n + b] = (a + b) % n;
    return TableGroup(n, std::move(t), "C" + std::to_string(n));
}

// <r, s : r^m, s^2 = r^z, s r s^-1 = r^t>, element r^i s^j stored as i + m j
inline TableGroup metacyclic(int m, int t, int z, std::string name)
{
    int n = 2 * m;
    std::vector<int> tab(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        int i1 = a % m, j1 = a / m;
        for (int b = 0; b < n; ++b) {
            int i2 = b % m, j2 = b / m;
            int i = i1 + (j1 ? i2 * t : i2);
            int j = j1 + j2;
            if (j == 2) {
                i += z;
                j = 0;
            }
            tab[a * n + b] = static_cast<int>(mod_floor(i, m)) + m * j;
        }
    }
    return TableGroup(n, std::move(tab), std::move(name));
}

inline TableGroup dihedral(int order) { return metacyclic(order / 2, -1, 0, "D" + std::to_string(order / 2)); }

inline TableGroup semidihedral(int order)
{
    int m = order / 2;
    return metacyclic(m, m / 2 - 1, 0, "SD" + std::to_string(order));
}

inline TableGroup generalized_quaternion(int order)
{
    int m = order / 2;
    return metacyclic(m, -1, m / 2, "Q" + std::to_string(order));
}

inline TableGroup quaternion() { return generalized_quaternion(8); }

inline TableGroup direct_product(const TableGroup& A, const TableGroup& B)
{
    int na = A.order(), nb = B.order(), n = na * nb;
    std::vector<int> t(static_cast<size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) t[x * n + y] = A.mul(x % na, y % na) + na * B.mul(x / na, y / na);
    return TableGroup(n, std::move(t), A.name() + "x" + B.name());
}

inline TableGroup abelian(const std::vector<int>& invariants)
{
    if (invariants.empty()) return TableGroup(1, {0}, "1");
    TableGroup g = cyclic(invariants[0]);
    std::string name = "C" + std::to_string(invariants[0]);
    for (size_t i = 1; i < invariants.size(); ++i) {
        g = direct_product(g, cyclic(invariants[i]));
        name += "xC" + std::to_string(invariants[i]);
    }
    g.set_name(name);
    return g;
}

// --- class-2 central extensions ----------------------------------------------------

// elements (x, y), x in F2^r, y in F2^s; (x,y)(x',y') = (x+x', y+y'+f(x,x')) with
// f bilinear, f(e_i, e_j) = cocycle[i][j]. Squares are f(x,x), commutators f(x,x')+f(x',x).
struct Class2Extension {
    int r = 0, s = 0;
    std::vector<std::vector<unsigned>> cocycle;

    unsigned f(unsigned x, unsigned x2) const
    {
        unsigned v = 0;
        for (int i = 0; i < r; ++i) {
            if (!((x >> i) & 1u)) continue;
            for (int j = 0; j < r; ++j) {
                if ((x2 >> j) & 1u) v ^= cocycle[i][j];
            }
        }
        return v;
    }

    unsigned square_map(unsigned x) const { return f(x, x); }
    unsigned commutator_map(unsigned x, unsigned x2) const { return f(x, x2) ^ f(x2, x); }

    int order() const { return 1 << (r + s); }
    int index(unsigned x, unsigned y) const { return static_cast<int>(x | (y << r)); }

    int mul(int a, int b) const
    {
        unsigned mask = (1u << r) - 1;
        unsigned x1 = a & mask, y1 = static_cast<unsigned>(a) >> r;
        unsigned x2 = b & mask, y2 = static_cast<unsigned>(b) >> r;
        return index(x1 ^ x2, y1 ^ y2 ^ f(x1, x2));
    }

    // generators e_i of F2^r as group elements
    int generator(int i) const { return index(1u << i, 0); }

    TableGroup to_table(std::string name = {}) const
    {
        int n = order();
        std::vector<int> t(static_cast<size_t>(n) * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) t[a * n + b] = mul(a, b);
        return TableGroup(n, std::move(t), std::move(name));
    }
};

// a1^2 = c12, a2^2 = c23, a3^2 = c13, [a_i, a_j] = c_ij; y-basis (c12, c23, c13)
inline Class2Extension build_64_150()
{
    const unsigned c12 = 1, c23 = 2, c13 = 4;
    Class2Extension e;
    e.r = 3;
    e.s = 3;
    e.cocycle.assign(3, std::vector<unsigned>(3, 0));
    e.cocycle[0][0] = c12;
    e.cocycle[1][1] = c23;
    e.cocycle[2][2] = c13;
    e.cocycle[0][1] = c12;
    e.cocycle[1][2] = c23;
    e.cocycle[0][2] = c13;
    return e;
}

// --- subgroup calculus --------------------------------------------------------------

inline bool contains(const Subgroup& H, int x) { return std::binary_search(H.begin(), H.end(), x); }

inline bool is_subset(const Subgroup& A, const Subgroup& B)
{
    return std::includes(B.begin(), B.end(), A.begin(), A.end());
}

inline Subgroup intersect(const Subgroup& A, const Subgroup& B)
{
    Subgroup out;
    std::set_intersection(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(out));
    return out;
}

inline Subgroup commutator_subgroup(const TableGroup& G, const Subgroup& A, const Subgroup& B)
{
    std::vector<int> gens;
    std::vector<char> seen(G.order(), 0);
    for (int a : A)
        for (int b : B) {
            int c = G.comm(a, b);
            if (!seen[c]) {
                seen[c] = 1;
                gens.push_back(c);
            }
        }
    return G.generate(gens);
}

inline Subgroup derived_subgroup(const TableGroup& G, const Subgroup& H)
{
    return commutator_subgroup(G, H, H);
}

inline Subgroup derived_subgroup(const TableGroup& G) { return derived_subgroup(G, G.all()); }

// subgroup generated by the k-th powers of the elements of H
inline Subgroup power_subgroup(const TableGroup& G, const Subgroup& H, i64 k)
{
    std::vector<int> gens;
    for (int h : H) gens.push_back(G.pow(h, k));
    return G.generate(gens);
}

// G_1 = G, G_{j+1} = [G_j, G], until the series stabilizes
inline std::vector<Subgroup> lower_central_series(const TableGroup& G)
{
    std::vector<Subgroup> s{G.all()};
    for (;;) {
        Subgroup next = commutator_subgroup(G, s.back(), G.all());
        if (next == s.back()) break;
        s.push_back(next);
    }
    return s;
}

inline Subgroup frattini(const TableGroup& G)
{
    Subgroup d = derived_subgroup(G);
    std::vector<int> gens(d.begin(), d.end());
    for (int g = 0; g < G.order(); ++g) gens.push_back(G.mul(g, g));
    return G.generate(gens);
}

inline bool is_normal(const TableGroup& G, const Subgroup& N)
{
    for (int g = 0; g < G.order(); ++g)
        for (int n : N) {
            if (!contains(N, G.mul(G.mul(G.inv(g), n), g))) return false;
        }
    return true;
}

struct Quotient {
    TableGroup group;
    std::vector<int> image; // element of G -> coset index
    std::vector<int> rep;   // coset index -> smallest representative
};

inline Quotient quotient(const TableGroup& G, const Subgroup& N)
{
    if (!is_normal(G, N)) throw error(errc::invalid_group, "quotient by a non-normal subgroup");
    int n = G.order();
    std::vector<int> image(n, -1), rep;
    for (int g = 0; g < n; ++g) {
        if (image[g] >= 0) continue;
        int c = static_cast<int>(rep.size());
        rep.push_back(g);
        for (int x : N) image[G.mul(g, x)] = c;
    }
    int m = static_cast<int>(rep.size());
    std::vector<int> t(static_cast<size_t>(m) * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) t[a * m + b] = image[G.mul(rep[a], rep[b])];
    Quotient q{TableGroup(m, std::move(t), G.name() + "/N"), std::move(image), std::move(rep)};
    return q;
}

// invariant factors of an abelian group given by table
inline std::vector<i64> abelian_invariants(const TableGroup& A)
{
    std::vector<i64> orders;
    for (int a = 0; a < A.order(); ++a) orders.push_back(A.element_order(a));
    return detail::invariants_from_orders(orders);
}

inline bool is_abelian(const TableGroup& G)
{
    for (int a = 0; a < G.order(); ++a)
        for (int b = a + 1; b < G.order(); ++b) {
            if (G.mul(a, b) != G.mul(b, a)) return false;
        }
    return true;
}

inline Subgroup center(const TableGroup& G)
{
    Subgroup z;
    for (int a = 0; a < G.order(); ++a) {
        bool central = true;
        for (int b = 0; b < G.order() && central; ++b) central = G.mul(a, b) == G.mul(b, a);
        if (central) z.push_back(a);
    }
    return z;
}

// subgroup as a table group on its own indices
inline TableGroup restrict_to(const TableGroup& G, const Subgroup& H)
{
    int m = static_cast<int>(H.size());
    std::vector<int> pos(G.order(), -1);
    for (int i = 0; i < m; ++i) pos[H[i]] = i;
    std::vector<int> t(static_cast<size_t>(m) * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) t[a * m + b] = pos[G.mul(H[a], H[b])];
    return TableGroup(m, std::move(t));
}

// F2-coordinates of G/Phi(G)
struct FrattiniQuotient {
    int rank = 0;
    std::vector<unsigned> coords; // per element of G
    std::vector<int> basis;       // elements of G mapping to e_1, ..., e_rank
};

inline FrattiniQuotient frattini_quotient(const TableGroup& G)
{
    if (!is_power_of_two(G.order())) throw error(errc::not_applicable, "group order is not a power of 2");
    Subgroup phi = frattini(G);
    FrattiniQuotient fq;
    fq.coords.assign(G.order(), ~0u);
    for (int x : phi) fq.coords[x] = 0;
    std::vector<int> span_elems(phi.begin(), phi.end());
    for (int g = 0; g < G.order(); ++g) {
        if (fq.coords[g] != ~0u) continue;
        unsigned bit = 1u << fq.rank;
        fq.basis.push_back(g);
        ++fq.rank;
        std::vector<int> added;
        for (int x : span_elems) {
            int y = G.mul(x, g);
            fq.coords[y] = fq.coords[x] ^ bit;
            added.push_back(y);
        }
        span_elems.insert(span_elems.end(), added.begin(), added.end());
    }
    return fq;
}

// kernels of the 2^k - 1 nonzero maps G -> C2
inline std::vector<Subgroup> maximal_subgroups(const TableGroup& G, const FrattiniQuotient& fq)
{
    std::vector<Subgroup> out;
    for (unsigned chi = 1; chi < (1u << fq.rank); ++chi) {
        Subgroup H;
        for (int g = 0; g < G.order(); ++g) {
            if (__builtin_popcount(chi & fq.coords[g]) % 2 == 0) H.push_back(g);
        }
        out.push_back(H);
    }
    return out;
}

inline std::vector<Subgroup> maximal_subgroups(const TableGroup& G) { return maximal_subgroups(G, frattini_quotient(G)); }

// --- checkers -----------------------------------------------------------------------

enum class CheckStatus { holds, not_applicable, counterexample, hypothesis_not_met };

inline const char* check_status_name(CheckStatus s)
{
    switch (s) {
    case CheckStatus::holds: return "holds";
    case CheckStatus::not_applicable: return "not-applicable";
    case CheckStatus::counterexample: return "counterexample";
    case CheckStatus::hypothesis_not_met: return "hypothesis-not-met";
    }
    return "?";
}

struct Prop10Report {
    CheckStatus status = CheckStatus::not_applicable;
    int rank = 0;
    int derived_order = 0;
    int maximal_count = 0;
    int qualifying_triples = 0;
    std::vector<int> counterexample; // indices into the maximal-subgroup list
    std::string note;
};

// triples of distinct maximal subgroups with H1 n H2 in H3 and H_j' = G'
inline Prop10Report check_prop10(const TableGroup& G)
{
    Prop10Report rep;
    if (!is_power_of_two(G.order())) {
        rep.note = "order is not a power of 2";
        return rep;
    }
    auto fq = frattini_quotient(G);
    rep.rank = fq.rank;
    Subgroup gd = derived_subgroup(G);
    rep.derived_order = static_cast<int>(gd.size());
    if (fq.rank != 3) {
        rep.note = "rank of G/G' is " + std::to_string(fq.rank);
        return rep;
    }
    auto maxes = maximal_subgroups(G, fq);
    rep.maximal_count = static_cast<int>(maxes.size());
    std::vector<char> same_derived;
    for (const auto& H : maxes) same_derived.push_back(derived_subgroup(G, H) == gd);
    int m = rep.maximal_count;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                if (i == j || j == k || i == k) continue;
                if (!same_derived[i] || !same_derived[j] || !same_derived[k]) continue;
                if (!is_subset(intersect(maxes[i], maxes[j]), maxes[k])) continue;
                ++rep.qualifying_triples;
                if (gd.size() != 1 && rep.counterexample.empty()) rep.counterexample = {i, j, k};
            }
    rep.status = rep.counterexample.empty() ? CheckStatus::holds : CheckStatus::counterexample;
    if (gd.size() == 1)
        rep.note = "G' = 1; " + std::to_string(rep.qualifying_triples) + " qualifying triples";
    else
        rep.note = rep.qualifying_triples == 0 ? "G' != 1 and no qualifying triple" : "qualifying triple with G' != 1";
    return rep;
}

// generators a1, a2, a3 with a1^2 = [a1,a2], a2^2 = [a2,a3], a3^2 = [a1,a3] mod G_3 and |G/G_3| = 64
struct PresentationMatch {
    int a[3] = {0, 0, 0};
};

inline std::optional<PresentationMatch> match_64_150(const TableGroup& G)
{
    if (!is_power_of_two(G.order())) return std::nullopt;
    auto lcs = lower_central_series(G);
    Subgroup g3 = lcs.size() > 2 ? lcs[2] : G.trivial();
    if (G.order() / static_cast<int>(g3.size()) != 64) return std::nullopt;
    Quotient q = quotient(G, g3);
    const TableGroup& Q = q.group;
    auto fq = frattini_quotient(Q);
    if (fq.rank != 3) return std::nullopt;
    if (derived_subgroup(Q).size() != 8) return std::nullopt;
    int n = Q.order();
    for (int x = 0; x < n; ++x) {
        if (fq.coords[x] == 0) continue;
        for (int y = 0; y < n; ++y) {
            unsigned cx = fq.coords[x], cy = fq.coords[y];
            if (cy == 0 || cy == cx) continue;
            if (Q.mul(x, x) != Q.comm(x, y)) continue;
            for (int z = 0; z < n; ++z) {
                unsigned cz = fq.coords[z];
                if (cz == 0 || cz == cx || cz == cy || cz == (cx ^ cy)) continue;
                if (Q.mul(y, y) != Q.comm(y, z) || Q.mul(z, z) != Q.comm(x, z)) continue;
                PresentationMatch m;
                m.a[0] = q.rep[x];
                m.a[1] = q.rep[y];
                m.a[2] = q.rep[z];
                return m;
            }
        }
    }
    return std::nullopt;
}

struct Prop11Step {
    int j = 0;
    int order = 0;
    bool matches_powers = false;    // G_j = <a_i^(2^(j-1))>
    bool matches_g2_power = false;  // G_j = G_2^(2^(j-2))
};

struct Prop11Report {
    CheckStatus status = CheckStatus::not_applicable;
    PresentationMatch gens;
    bool derived_is_squares = false;     // G' = <a1^2, a2^2, a3^2>
    bool derived_is_commutators = false; // G' = <c12, c23, c13>
    int derived_rank = 0;
    std::vector<Prop11Step> steps;
    std::string note;
};

inline Prop11Report check_prop11(const TableGroup& G)
{
    Prop11Report rep;
    auto m = match_64_150(G);
    if (!m) {
        rep.note = "G/G_3 does not match the 64.150 presentation";
        return rep;
    }
    rep.gens = *m;
    const int* a = m->a;
    auto lcs = lower_central_series(G);
    Subgroup gd = lcs.size() > 1 ? lcs[1] : G.trivial();
    rep.derived_is_squares = G.generate({G.mul(a[0], a[0]), G.mul(a[1], a[1]), G.mul(a[2], a[2])}) == gd;
    rep.derived_is_commutators = G.generate({G.comm(a[0], a[1]), G.comm(a[1], a[2]), G.comm(a[0], a[2])}) == gd;
    rep.derived_rank = frattini_quotient(restrict_to(G, gd)).rank;
    bool ok = rep.derived_is_squares && rep.derived_is_commutators && rep.derived_rank == 3;
    const std::vector<Subgroup>& series = lcs;
    if (series.back().size() != 1) {
        rep.note = "lower central series does not reach 1";
        rep.status = CheckStatus::hypothesis_not_met;
        return rep;
    }
    for (int j = 2; j <= static_cast<int>(series.size()); ++j) {
        const Subgroup& gj = series[j - 1];
        i64 e = i64{1} << (j - 1);
        Prop11Step st;
        st.j = j;
        st.order = static_cast<int>(gj.size());
        st.matches_powers = G.generate({G.pow(a[0], e), G.pow(a[1], e), G.pow(a[2], e)}) == gj;
        st.matches_g2_power = power_subgroup(G, gd, i64{1} << (j - 2)) == gj;
        ok = ok && st.matches_powers && st.matches_g2_power;
        rep.steps.push_back(st);
    }
    rep.status = ok ? CheckStatus::holds : CheckStatus::counterexample;
    return rep;
}

struct Prop12Report {
    CheckStatus status = CheckStatus::not_applicable;
    std::vector<i64> derived_quotient; // invariants of G'/G''
    int second_derived_order = 0;
    std::string note;
};

inline Prop12Report check_prop12(const TableGroup& G)
{
    Prop12Report rep;
    if (!match_64_150(G)) {
        rep.note = "G/G_3 does not match the 64.150 presentation";
        return rep;
    }
    Subgroup gd = derived_subgroup(G);
    Subgroup gdd = derived_subgroup(G, gd);
    rep.second_derived_order = static_cast<int>(gdd.size());
    TableGroup D = restrict_to(G, gd);
    Subgroup dd_local;
    for (int x : gdd) dd_local.push_back(static_cast<int>(std::lower_bound(gd.begin(), gd.end(), x) - gd.begin()));
    rep.derived_quotient = abelian_invariants(quotient(D, dd_local).group);
    bool eight_rank_zero = std::all_of(rep.derived_quotient.begin(), rep.derived_quotient.end(), [](i64 e) { return e <= 4; });
    if (!eight_rank_zero) {
        rep.status = CheckStatus::hypothesis_not_met;
        rep.note = "8-rank of G'/G'' is positive";
        return rep;
    }
    rep.status = gdd.size() == 1 ? CheckStatus::holds : CheckStatus::counterexample;
    return rep;
}

// --- built-in library ---------------------------------------------------------------

inline std::vector<TableGroup> central_quotients_64_150()
{
    TableGroup G = build_64_150().to_table("64.150");
    Subgroup Z = center(G);
    std::vector<TableGroup> out;
    std::vector<Subgroup> seen;
    // every nontrivial subgroup of the (elementary abelian) center
    int zn = static_cast<int>(Z.size());
    for (int mask = 1; mask < (1 << zn); ++mask) {
        std::vector<int> gens;
        for (int i = 0; i < zn; ++i) {
            if ((mask >> i) & 1) gens.push_back(Z[i]);
        }
        Subgroup N = G.generate(gens);
        if (N.size() == 1 || std::find(seen.begin(), seen.end(), N) != seen.end()) continue;
        seen.push_back(N);
        TableGroup q = quotient(G, N).group;
        q.set_name("64.150/Z" + std::to_string(seen.size()) + "(order " + std::to_string(N.size()) + ")");
        out.push_back(std::move(q));
    }
    return out;
}

inline std::vector<TableGroup> group_library()
{
    std::vector<TableGroup> lib;
    for (const auto& inv : std::vector<std::vector<int>>{
             {2, 2, 2}, {4, 2, 2}, {4, 4, 2}, {8, 2, 2}, {4, 4, 4}, {8, 4, 2}, {16, 2, 2}})
        lib.push_back(abelian(inv));
    lib.push_back(direct_product(dihedral(8), cyclic(2)));
    lib.push_back(direct_product(quaternion(), cyclic(2)));
    lib.push_back(direct_product(dihedral(16), cyclic(2)));
    lib.push_back(direct_product(semidihedral(16), cyclic(2)));
    lib.push_back(build_64_150().to_table("64.150"));
    for (auto& q : central_quotients_64_150()) lib.push_back(std::move(q));
    return lib;
}

} // namespace qtower
