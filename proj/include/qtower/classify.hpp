#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qtower/arith.hpp"
#include "qtower/conic.hpp"
#include "qtower/qform.hpp"
#include "qtower/tables.hpp"
#include "qtower/units.hpp"

namespace qtower {

struct Assignment {
    std::array<i64, 4> d{}; // d1..d4
    std::array<i64, 4> p{}; // primes below them

    i64 sym(int i, int j) const { return kronecker(d[i - 1], p[j - 1]); }

    std::string str() const
    {
        std::string s;
        for (int i = 0; i < 4; ++i) s += (i ? "*" : "") + std::to_string(d[i]);
        return s;
    }

    auto key() const
    {
        return std::array<i64, 4>{abs64(d[0]), abs64(d[1]), abs64(d[2]), abs64(d[3])};
    }
};

inline Assignment make_assignment(const std::array<i64, 4>& d)
{
    Assignment a;
    a.d = d;
    for (int i = 0; i < 4; ++i) a.p[i] = prime_of(d[i]);
    return a;
}

// (nu12, nu13, nu23, nu14, nu24, nu34), (-1)^nu_ij = (d_i/p_j)
inline std::array<int, 6> nu_bits(const Assignment& a)
{
    static constexpr int idx[6][2] = {{1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}, {3, 4}};
    std::array<int, 6> out{};
    for (int k = 0; k < 6; ++k) {
        int s = static_cast<int>(a.sym(idx[k][0], idx[k][1]));
        if (s == 0) throw error(errc::inconsistent, "vanishing symbol in " + a.str());
        out[k] = s < 0 ? 1 : 0;
    }
    return out;
}

struct CaseRecord {
    i64 dk = 0;
    CaseType type = CaseType::I;
    std::string label;
    Assignment assignment;
    std::vector<int> symbols; // the row's column values
    std::array<int, 6> nu{};
    std::string g_type;
    std::string gplus;
    std::string order_formula;
    std::vector<Assignment> matching_assignments; // all labelings hitting the row, chosen one first
};

struct Preconditions {
    DiscriminantFactorization factors;
    std::vector<i64> cl2;
};

inline Preconditions check_preconditions(i64 dk)
{
    if (dk <= 0) throw error(errc::precondition, "d_k must be positive");
    if (!is_fundamental_discriminant(dk)) throw error(errc::precondition, std::to_string(dk) + " is not a fundamental discriminant");
    Preconditions pc;
    pc.factors = factor_discriminant(dk);
    if (pc.factors.factors.size() != 4)
        throw error(errc::precondition, std::to_string(dk) + " has " + std::to_string(pc.factors.factors.size()) +
                                            " prime discriminant factors, not 4");
    if (is_sum_of_two_squares(dk)) throw error(errc::precondition, std::to_string(dk) + " is a sum of two squares");
    pc.cl2 = two_part(class_group(dk, false).elementary_divisors);
    if (pc.cl2 != std::vector<i64>{2, 2}) {
        std::string s;
        for (i64 e : pc.cl2) s += (s.empty() ? "" : ",") + std::to_string(e);
        throw error(errc::precondition, "Cl2(k) = (" + s + "), not (2,2)");
    }
    return pc;
}

namespace detail {

inline bool sign_pattern_ok(const TypeTable& t, const Assignment& a)
{
    if (t.d1_d2_positive) {
        if (!(a.d[0] > 0 && a.d[1] > 0 && a.d[2] < 0 && a.d[3] < 0)) return false;
    } else {
        for (i64 v : a.d) {
            if (v > 0) return false;
        }
    }
    bool has_m4 = std::find(a.d.begin(), a.d.end(), i64{-4}) != a.d.end();
    if (t.d4_is_minus4) return a.d[3] == -4;
    return !has_m4;
}

} // namespace detail

inline CaseRecord classify(i64 dk)
{
    Preconditions pc = check_preconditions(dk);
    std::array<i64, 4> f{};
    std::copy(pc.factors.factors.begin(), pc.factors.factors.end(), f.begin());
    std::sort(f.begin(), f.end());

    struct Hit {
        const TypeTable* table;
        const TypeRow* row;
        Assignment a;
        std::vector<int> vals;
    };
    std::vector<Hit> hits;
    do {
        Assignment a = make_assignment(f);
        for (const auto& t : appendix_i()) {
            if (!detail::sign_pattern_ok(t, a)) continue;
            bool fixed_ok = true;
            for (const auto& fx : t.fixed) {
                if (a.sym(fx.ref.i, fx.ref.j) != fx.value) fixed_ok = false;
            }
            if (!fixed_ok) continue;
            std::vector<int> vals;
            for (const auto& c : t.columns) vals.push_back(static_cast<int>(a.sym(c.i, c.j)));
            for (const auto& r : t.rows) {
                if (r.values == vals) hits.push_back({&t, &r, a, vals});
            }
        }
    } while (std::next_permutation(f.begin(), f.end()));

    if (hits.empty()) throw error(errc::no_row_match, std::to_string(dk) + " matches no table row under any labeling");
    for (const auto& h : hits) {
        if (h.row->label != hits.front().row->label)
            throw error(errc::multiple_match, std::to_string(dk) + " matches both " + hits.front().row->label + " and " + h.row->label);
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) { return x.a.key() < y.a.key(); });
    const Hit& best = hits.front();

    CaseRecord rec;
    rec.dk = dk;
    rec.type = best.table->type;
    rec.label = best.row->label;
    rec.assignment = best.a;
    rec.symbols = best.vals;
    rec.nu = nu_bits(best.a);
    rec.g_type = best.row->g_type;
    rec.gplus = best.row->gplus;
    if (const auto* r2 = appendix_ii_row(rec.label))
        rec.order_formula = r2->order;
    else
        rec.order_formula = "4";
    for (const auto& h : hits) rec.matching_assignments.push_back(h.a);
    return rec;
}

inline bool h8_predicate(const Assignment& a) { return h8_predicate(a.d[0], a.d[1], a.d[2], a.d[3]); }

// --- tower verdicts -------------------------------------------------------------------

enum class Verdict { Exactly2, AtLeast3, Unknown64_150, Exactly2_By8Rank };

inline const char* verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Exactly2: return "Exactly2";
    case Verdict::AtLeast3: return "AtLeast3";
    case Verdict::Unknown64_150: return "Unknown64_150";
    case Verdict::Exactly2_By8Rank: return "Exactly2_By8Rank";
    }
    return "?";
}

struct TowerVerdict {
    Verdict verdict = Verdict::AtLeast3;
    std::string justification;
};

inline int label_order(const std::string& gplus)
{
    auto dot = gplus.find('.');
    if (dot == std::string::npos) throw error(errc::undefined_input, "bad group label " + gplus);
    return std::stoi(gplus.substr(0, dot));
}

inline TowerVerdict tower_verdict(const std::string& gplus, const std::optional<std::vector<i64>>& octic_cl2 = std::nullopt)
{
    static const std::vector<std::string> at_least_3{"32.033", "64.144", "64.146", "64.147"};
    if (gplus == "64.150") {
        if (octic_cl2) {
            bool rank8_zero = std::all_of(octic_cl2->begin(), octic_cl2->end(), [](i64 e) { return e <= 4; });
            if (rank8_zero)
                return {Verdict::Exactly2_By8Rank, "G+/G3+ = 64.150 and the supplied Cl2(k+^1) has 8-rank 0, so G+ is metabelian"};
        }
        return {Verdict::Unknown64_150, "G+/G3+ = 64.150; decided only through the three quadratic extensions L0, L1, L2 of k+^1"};
    }
    if (std::find(at_least_3.begin(), at_least_3.end(), gplus) != at_least_3.end())
        return {Verdict::AtLeast3, "G+/G3+ = " + gplus + " is 32.033 or of order 64 other than 64.150"};
    if (label_order(gplus) == 32) return {Verdict::Exactly2, "G+/G3+ = " + gplus + " has order 32 and is not 32.033"};
    throw error(errc::inconsistent, "no verdict rule for " + gplus);
}

inline TowerVerdict tower_verdict(const CaseRecord& rec, const std::optional<std::vector<i64>>& octic_cl2 = std::nullopt)
{
    return tower_verdict(rec.gplus, octic_cl2);
}

// --- the 64.150 family: labeling, alpha_1, alpha_2, and the L_j test ---------------------

// negative d_j with (d1/p2) = (d2/p3) = (d3/p1) = -1, (d1/p4) = (d2/p4) = (d3/p4) = +1, d4 = -4 when 4 || d_k
inline std::optional<Assignment> family_64_150_labeling(i64 dk)
{
    auto fac = factor_discriminant(dk);
    if (fac.factors.size() != 4) return std::nullopt;
    std::array<i64, 4> f{};
    std::copy(fac.factors.begin(), fac.factors.end(), f.begin());
    std::sort(f.begin(), f.end());
    std::optional<Assignment> best;
    do {
        Assignment a = make_assignment(f);
        if (std::any_of(a.d.begin(), a.d.end(), [](i64 v) { return v > 0; })) continue;
        if (mod_floor(dk, 8) == 4 && a.d[3] != -4) continue;
        if (a.sym(1, 2) != -1 || a.sym(2, 3) != -1 || a.sym(3, 1) != -1) continue;
        if (a.sym(1, 4) != 1 || a.sym(2, 4) != 1 || a.sym(3, 4) != 1) continue;
        if (!best || a.key() < best->key()) best = a;
    } while (std::next_permutation(f.begin(), f.end()));
    return best;
}

struct LjTest {
    std::vector<i64> cl2_k1plus;
    std::array<std::vector<i64>, 3> cl2_L; // L0, L1, L2
};

struct Prop13Report {
    Assignment labeling;
    ConicSolution sol1, sol2;
    AlphaElement alpha1, alpha2;
    std::optional<std::array<mpq_class, 3>> ratios;
    std::optional<bool> terminates_at_k2;
};

inline i64 group_order(const std::vector<i64>& divisors)
{
    i64 n = 1;
    for (i64 e : divisors) n *= e;
    return n;
}

inline Prop13Report prop13_report(i64 dk, const std::optional<LjTest>& lj = std::nullopt)
{
    auto lab = family_64_150_labeling(dk);
    if (!lab) throw error(errc::hypothesis_violation, std::to_string(dk) + " admits no labeling of the 64.150 family");
    Prop13Report r;
    r.labeling = *lab;
    const auto& d = lab->d;
    // a1^2 = d1 b1^2 + d3d4 c1^2, a2^2 = d2 b2^2 + d1d4 c2^2, alpha_j > 0
    r.sol1 = solve_conic(d[0], d[2] * d[3]);
    r.sol2 = solve_conic(d[1], d[0] * d[3]);
    r.alpha1 = build_alpha(r.sol1, d[2] * d[3], d[0], d[2], SignRule::force_positive);
    r.alpha2 = build_alpha(r.sol2, d[0] * d[3], d[1], d[2], SignRule::force_positive);
    if (lj) {
        i64 hk = group_order(lj->cl2_k1plus);
        std::array<mpq_class, 3> q;
        bool all_half = true;
        for (int j = 0; j < 3; ++j) {
            q[j] = mpq_class(group_order(lj->cl2_L[j]), hk);
            q[j].canonicalize();
            if (q[j] != mpq_class(1, 2)) all_half = false;
        }
        r.ratios = q;
        r.terminates_at_k2 = all_half;
    }
    return r;
}

// --- unit-lemma checks on the octic fields of c2, d5, d8 ------------------------------

struct LemmaDeltaCheck {
    i64 delta = 0;
    i64 expected = 0;
    bool genus_positive = false;
    mpq_class relative_norm;
    bool matches() const { return delta == expected && genus_positive && relative_norm == -1; }
};

// c2: delta(eps_k) = p1p3p4 with (a^2 p2 - b^2 p1p3p4)/4 = -1; d5, d8: delta = p1p2 with (a^2 p3 - b^2 p1p2)/4 = -1
inline LemmaDeltaCheck lemma_delta_check(const CaseRecord& rec)
{
    const auto& p = rec.assignment.p;
    LemmaDeltaCheck c;
    i64 other;
    if (rec.label == "c2") {
        c.expected = p[0] * p[2] * p[3];
        other = p[1];
    } else if (rec.label == "d5" || rec.label == "d8") {
        c.expected = p[0] * p[1];
        other = p[2];
    } else {
        throw error(errc::not_applicable, "unit lemma check covers c2, d5, d8 only");
    }
    QuadUnit e = fundamental_unit(rec.dk);
    c.delta = delta_invariant(e).delta;
    c.genus_positive = true;
    for (const auto& chi : genus_characters(rec.dk)) {
        if (chi(c.delta) != 1) c.genus_positive = false;
    }
    auto s = sqrt_unit_decomposition(e);
    if ((s.u == other && s.v == c.expected) || (s.v == other && s.u == c.expected))
        c.relative_norm = s.ordered(other).relative_norm();
    else
        c.relative_norm = 0;
    return c;
}

// --- second appendix verification -------------------------------------------------------

namespace detail {

// integer value of a pattern term: products of 2, p_i, d_i with an optional coefficient,
// or coef * h2(Q(sqrt m)) for "h2(...)"
inline i64 eval_product(const std::string& s, const Assignment& a)
{
    i64 v = 1;
    size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        if (s[i] == '-') v = -1;
        ++i;
    }
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) v *= std::stoll(s.substr(start, i - start));
    while (i < s.size()) {
        if ((s[i] == 'p' || s[i] == 'd') && i + 1 < s.size() && s[i + 1] >= '1' && s[i + 1] <= '4') {
            int k = s[i + 1] - '1';
            v *= (s[i] == 'p') ? a.p[k] : a.d[k];
            i += 2;
        } else {
            throw error(errc::undefined_input, "bad pattern term " + s);
        }
    }
    return v;
}

inline i64 field_disc(i64 m)
{
    i64 k = squarefree_kernel(m);
    return mod_floor(k, 4) == 1 ? k : 4 * k;
}

inline i64 eval_term(const std::string& s, const Assignment& a)
{
    auto pos = s.find("h2(");
    if (pos == std::string::npos) return eval_product(s, a);
    i64 coef = pos == 0 ? 1 : eval_product(s.substr(0, pos), a);
    if (s.back() != ')') throw error(errc::undefined_input, "bad pattern term " + s);
    i64 m = eval_product(s.substr(pos + 3, s.size() - pos - 4), a);
    return coef * h2(field_disc(m));
}

} // namespace detail

struct ReportEntry {
    std::string column;
    std::string expected; // options in force, joined by " or "
    std::string computed;
    bool match = false;
    bool derived = false; // resolved from the branch rather than computed
};

struct AppendixIIReport {
    i64 dk = 0;
    std::string label;
    Assignment assignment;
    int nu34 = 0;
    int branch = -1; // -1: no correlated branch in this row
    std::string g_type;
    std::vector<ReportEntry> entries;

    bool all_match() const
    {
        return std::all_of(entries.begin(), entries.end(), [](const ReportEntry& e) { return e.match; });
    }
};

struct ComputedRowData {
    std::array<int, 6> nu{};
    std::optional<i64> delta[4]; // eps_k, eps_234, eps_134, eps_34
    std::string delta_note[4];
    int norm_e12 = 0;
    i64 q[3]{};
    i64 h2k[3]{};
    i64 order = 0;
};

inline ComputedRowData compute_row_data(const Assignment& a)
{
    ComputedRowData c;
    const auto& d = a.d;
    c.nu = nu_bits(a);
    const i64 discs[4] = {d[0] * d[1] * d[2] * d[3], d[1] * d[2] * d[3], d[0] * d[2] * d[3], d[2] * d[3]};
    for (int i = 0; i < 4; ++i) {
        QuadUnit e = fundamental_unit(discs[i]);
        if (e.norm == 1)
            c.delta[i] = delta_invariant(e).delta;
        else
            c.delta_note[i] = "unit of norm -1";
    }
    c.norm_e12 = fundamental_unit(d[0] * d[1]).norm;
    // k1 = k(sqrt d1), k2 = k(sqrt d2), k3 = k(sqrt d1d2)
    const i64 gens[3][2] = {{d[0], d[1] * d[2] * d[3]}, {d[1], d[0] * d[2] * d[3]}, {d[0] * d[1], d[2] * d[3]}};
    i64 hk = h2(discs[0]);
    for (int i = 0; i < 3; ++i) {
        c.q[i] = kubota_index(gens[i][0], gens[i][1]);
        c.h2k[i] = multiquadratic_h2({h2(gens[i][0]), h2(gens[i][1]), hk}, c.q[i], 4);
    }
    c.order = 2 * std::max({c.h2k[0], c.h2k[1], c.h2k[2]});
    return c;
}

namespace detail {

inline std::string join_or(const std::vector<std::string>& v)
{
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " or ") + x;
    return s;
}

inline AppendixIIReport evaluate_row(const AppendixIIRow& row, const Assignment& a, const ComputedRowData& c, i64 dk)
{
    AppendixIIReport rep;
    rep.dk = dk;
    rep.label = row.label;
    rep.assignment = a;
    rep.nu34 = c.nu[5];

    std::vector<std::pair<std::string, Cell>> numeric = {
        {"delta", parse_cell(row.delta)},       {"delta1", parse_cell(row.delta1)}, {"delta2", parse_cell(row.delta2)},
        {"delta3", parse_cell(row.delta3)},     {"N(eps12)", parse_cell(row.norm_e12)},
        {"q(k1)", parse_cell(row.q[0])},        {"q(k2)", parse_cell(row.q[1])},    {"q(k3)", parse_cell(row.q[2])},
        {"h2(k1)", parse_cell(row.h2k[0])},     {"h2(k2)", parse_cell(row.h2k[1])}, {"h2(k3)", parse_cell(row.h2k[2])},
        {"order(G)", parse_cell(row.order)},
    };
    Cell gcell = parse_cell(row.g_type);
    auto computed_of = [&](size_t k) -> std::optional<i64> {
        if (k < 4) return c.delta[k];
        if (k == 4) return c.norm_e12;
        if (k < 8) return c.q[k - 5];
        if (k < 11) return c.h2k[k - 8];
        return c.order;
    };
    bool has_branch = gcell.has_branch();
    for (auto& [n, cell] : numeric) has_branch = has_branch || cell.has_branch();

    auto build = [&](int br) {
        std::vector<ReportEntry> out;
        // nu vector
        {
            std::string want = row.nu;
            std::string got;
            for (int k = 0; k < 6; ++k) got += (k ? "," : "") + std::to_string(c.nu[k]);
            std::string resolved = want;
            if (auto pos = want.find('['); pos != std::string::npos) resolved = want.substr(0, pos) + std::to_string(c.nu[5]);
            out.push_back({"nu", want, got, resolved == got, false});
        }
        for (size_t k = 0; k < numeric.size(); ++k) {
            const auto& opts = numeric[k].second.resolve(c.nu[5], br);
            ReportEntry e;
            e.column = numeric[k].first;
            e.expected = join_or(opts);
            auto v = computed_of(k);
            if (!v) {
                e.computed = c.delta_note[k];
                e.match = false;
            } else {
                e.computed = (k == 4 && *v > 0 ? "+" : "") + std::to_string(*v);
                for (const auto& o : opts) {
                    if (detail::eval_term(o, a) == *v) e.match = true;
                }
            }
            out.push_back(e);
        }
        const auto& g = gcell.resolve(c.nu[5], br);
        out.push_back({"G type", join_or(g), join_or(g), true, true});
        out.push_back({"G+/G3+", row.gplus, row.gplus, true, true});
        return out;
    };

    if (!has_branch) {
        rep.entries = build(0);
    } else {
        auto top = build(0), bottom = build(1);
        auto score = [](const std::vector<ReportEntry>& v) {
            return std::count_if(v.begin(), v.end(), [](const ReportEntry& e) { return e.match; });
        };
        rep.branch = score(top) >= score(bottom) ? 0 : 1;
        rep.entries = rep.branch == 0 ? top : bottom;
    }
    rep.g_type = rep.entries[rep.entries.size() - 2].expected;
    return rep;
}

} // namespace detail

// Verifies the computed invariants of d_k against its second-appendix row. The classifier's
// labeling is tried first; other labelings matching the same row are tried if it falls short.
inline AppendixIIReport verify_appendix_row(i64 dk)
{
    CaseRecord rec = classify(dk);
    const AppendixIIRow* row = appendix_ii_row(rec.label);
    if (!row) throw error(errc::not_applicable, "case " + rec.label + " has no second-appendix row");
    std::optional<AppendixIIReport> first;
    for (const auto& a : rec.matching_assignments) {
        ComputedRowData c = compute_row_data(a);
        AppendixIIReport rep = detail::evaluate_row(*row, a, c, dk);
        if (rep.all_match()) return rep;
        if (!first) first = rep;
    }
    return *first;
}

} // namespace qtower
