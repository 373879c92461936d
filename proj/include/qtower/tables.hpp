#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qtower/error.hpp"

namespace qtower {

inline constexpr const char* case_tables_version = "1";

enum class CaseType { I, II, III, IV };

inline const char* case_type_name(CaseType t)
{
    switch (t) {
    case CaseType::I: return "I";
    case CaseType::II: return "II";
    case CaseType::III: return "III";
    case CaseType::IV: return "IV";
    }
    return "?";
}

// (d_i / p_j), 1-based
struct SymbolRef {
    int i = 0, j = 0;
};

struct FixedSymbol {
    SymbolRef ref;
    int value = 0;
};

struct TypeRow {
    std::string label;
    std::vector<int> values; // one per column
    std::string g_type;      // "Qg|D", "D", "S|D", "Q", "V4"
    std::string gplus;
};

struct TypeTable {
    CaseType type;
    bool d1_d2_positive; // else all four negative
    bool d4_is_minus4;
    std::vector<FixedSymbol> fixed;
    std::vector<SymbolRef> columns;
    std::vector<TypeRow> rows;
};

inline const std::vector<TypeTable>& appendix_i()
{
    static const std::vector<TypeTable> tables = [] {
        std::vector<TypeTable> t;
        const std::vector<SymbolRef> cols_i{{1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}};
        t.push_back({CaseType::I, true, false, {{{3, 4}, +1}}, cols_i,
                     {
                         {"a1", {+1, +1, +1, -1, -1}, "Qg|D", "64.144"},
                         {"a2", {+1, -1, -1, +1, +1}, "Qg|D", "64.144"},
                         {"a3", {-1, +1, -1, +1, +1}, "Qg|D", "64.144"},
                         {"a4", {-1, +1, +1, +1, -1}, "Qg|D", "64.144"},
                         {"a5", {+1, -1, +1, -1, -1}, "D", "32.033"},
                         {"a6", {+1, -1, -1, +1, -1}, "D", "32.033"},
                         {"a7", {+1, -1, +1, +1, -1}, "D", "64.144"},
                         {"a8", {-1, +1, -1, +1, -1}, "S|D", "32.033"},
                         {"a9", {-1, +1, +1, -1, -1}, "Q", "64.147"},
                         {"a10", {-1, -1, -1, +1, +1}, "Q", "64.147"},
                         {"a11", {-1, -1, +1, -1, -1}, "V4", "32.039"},
                         {"a12", {-1, -1, -1, +1, -1}, "V4", "32.039"},
                         {"a13", {-1, -1, +1, +1, -1}, "V4", "32.034"},
                     }});
        // p4 = 2, so (d_i/2) is column (i, 4); (d3/2) is unconstrained
        t.push_back({CaseType::II, true, true, {}, cols_i,
                     {
                         {"b1", {+1, -1, -1, -1, -1}, "Qg|D", "32.036"},
                         {"b2", {+1, -1, -1, +1, +1}, "Qg|D", "64.144"},
                         {"b3", {-1, +1, -1, +1, +1}, "Qg|D", "64.144"},
                         {"b4", {-1, +1, -1, +1, -1}, "Qg|D", "32.033"},
                         {"b5", {+1, -1, +1, -1, -1}, "D", "64.146"},
                         {"b6", {+1, -1, -1, +1, -1}, "D", "32.033"},
                         {"b7", {+1, -1, +1, +1, -1}, "D", "64.144"},
                         {"b8", {-1, +1, +1, +1, -1}, "S|D", "64.144"},
                         {"b9", {-1, -1, -1, -1, -1}, "Q", "32.037"},
                         {"b10", {-1, -1, -1, +1, +1}, "Q", "64.147"},
                         {"b11", {-1, -1, +1, -1, -1}, "V4", "32.036"},
                         {"b12", {-1, -1, -1, +1, -1}, "V4", "32.039"},
                         {"b13", {-1, -1, +1, +1, -1}, "V4", "32.034"},
                     }});
        t.push_back({CaseType::III, false, false, {{{1, 2}, -1}, {{1, 4}, -1}, {{4, 3}, -1}}, {{1, 3}, {2, 3}, {2, 4}},
                     {
                         {"c1", {+1, -1, +1}, "V4", "32.036"},
                         {"c2", {+1, +1, +1}, "V4", "32.033"},
                         {"c3", {-1, +1, -1}, "V4", "64.150"},
                     }});
        t.push_back({CaseType::IV, false, true, {{{1, 2}, -1}, {{2, 3}, -1}}, {{1, 3}, {1, 4}, {2, 4}, {3, 4}},
                     {
                         {"d1", {+1, +1, +1, +1}, "V4", "64.150"},
                         {"d2", {+1, +1, -1, +1}, "V4", "32.036"},
                         {"d3", {+1, -1, -1, +1}, "V4", "32.037"},
                         {"d4", {+1, -1, -1, -1}, "V4", "32.041"},
                         {"d5", {-1, +1, -1, +1}, "V4", "32.033"},
                         {"d6", {-1, +1, +1, -1}, "V4", "32.036"},
                         {"d7", {-1, -1, +1, -1}, "V4", "32.036"},
                         {"d8", {-1, -1, -1, +1}, "V4", "32.033"},
                     }});
        return t;
    }();
    return tables;
}

// --- row cells ------------------------------------------------------------------
//
// cell := alts | "(" cell ";" cell ")" | "[" cell ";" cell "]"
// alts := term ("|" term)*
// Round brackets are the correlated two-way branch shared by all cells of a row;
// square brackets select by nu34 (top: nu34 = 1, bottom: nu34 = 0).

struct Cell {
    enum Kind { leaf, branch, by_nu34 } kind = leaf;
    std::vector<std::string> options;
    std::shared_ptr<Cell> top, bottom;

    bool has_branch() const
    {
        if (kind == branch) return true;
        if (kind == by_nu34) return top->has_branch() || bottom->has_branch();
        return false;
    }

    // options in force for the given nu34 bit and branch (0 = top, 1 = bottom)
    const std::vector<std::string>& resolve(int nu34, int br) const
    {
        switch (kind) {
        case branch: return (br == 0 ? top : bottom)->resolve(nu34, br);
        case by_nu34: return (nu34 == 1 ? top : bottom)->resolve(nu34, br);
        default: return options;
        }
    }
};

namespace detail {

class CellParser {
public:
    explicit CellParser(std::string_view s) : s_(s) {}

    Cell parse()
    {
        Cell c = cell();
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        return c;
    }

private:
    std::string_view s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const
    {
        throw error(errc::undefined_input, "cell \"" + std::string(s_) + "\": " + what);
    }

    void skip()
    {
        while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
    }

    void expect(char c)
    {
        skip();
        if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    Cell cell()
    {
        skip();
        if (pos_ < s_.size() && (s_[pos_] == '(' || s_[pos_] == '[')) {
            char open = s_[pos_++];
            Cell c;
            c.kind = open == '(' ? Cell::branch : Cell::by_nu34;
            c.top = std::make_shared<Cell>(cell());
            expect(';');
            c.bottom = std::make_shared<Cell>(cell());
            expect(open == '(' ? ')' : ']');
            return c;
        }
        Cell c;
        for (;;) {
            skip();
            size_t start = pos_;
            int depth = 0;
            while (pos_ < s_.size()) {
                char ch = s_[pos_];
                if (ch == '(') ++depth;
                if (ch == ')') {
                    if (depth == 0) break;
                    --depth;
                }
                if (depth == 0 && (ch == '|' || ch == ';' || ch == ']' || ch == ' ')) break;
                ++pos_;
            }
            if (pos_ == start) fail("empty term");
            c.options.emplace_back(s_.substr(start, pos_ - start));
            skip();
            if (pos_ < s_.size() && s_[pos_] == '|') {
                ++pos_;
                continue;
            }
            break;
        }
        return c;
    }
};

} // namespace detail

inline Cell parse_cell(std::string_view s) { return detail::CellParser(s).parse(); }

// one row of the second appendix, cells in the syntax above
struct AppendixIIRow {
    std::string label;
    std::string nu;     // (nu12, nu13, nu23, nu14, nu24, nu34)
    std::string delta;  // delta(eps_k)
    std::string delta1; // delta(eps_234)
    std::string delta2; // delta(eps_134)
    std::string delta3; // delta(eps_34), from the table description
    std::string norm_e12;
    std::string q[3];
    std::string h2k[3];
    std::string g_type;
    std::string gplus;
    std::string order;
};

inline const std::vector<AppendixIIRow>& appendix_ii()
{
    static const std::vector<AppendixIIRow> rows = {
        {"a1", "0,0,0,1,1,0", "p1p2p4", "p2p4", "p1p4", "p4", "(-1 ; +1)", {"2", "2", "2"}, {"4", "4", "2h2(d1d2)"}, "(Qg ; D)", "64.144", "4h2(d1d2)"},
        {"a2", "0,1,1,0,0,0", "p4", "p4", "p4", "p4", "(-1 ; +1)", {"2", "2", "2"}, {"4", "4", "2h2(d1d2)"}, "(Qg ; D)", "64.144", "4h2(d1d2)"},
        {"a3", "1,0,1,0,0,0", "p4", "p4", "(p4 ; p1|p1p4)", "p4", "-1", {"2", "(2 ; 1)", "2"}, {"4", "(2h2(d1d3d4) ; h2(d1d3d4))", "4"}, "(Qg ; D)", "64.144", "(4h2(d1d3d4) ; 2h2(d1d3d4))"},
        {"a4", "1,0,0,0,1,0", "p1p2p4", "p2p4", "(p1p4 ; p1|p4)", "p4", "-1", {"2", "(2 ; 1)", "2"}, {"4", "(2h2(d1d3d4) ; h2(d1d3d4))", "4"}, "(Qg ; D)", "64.144", "(4h2(d1d3d4) ; 2h2(d1d3d4))"},
        {"a5", "0,1,0,1,1,0", "p2p3p4", "p2p4", "p3p4", "p4", "(-1 ; +1)", {"2", "2", "(1 ; 2)"}, {"4", "4", "(h2(d1d2) ; 2h2(d1d2))"}, "D", "32.033", "(2h2(d1d2) ; 4h2(d1d2))"},
        {"a6", "0,1,1,0,1,0", "p1p3p4", "p3p4", "p4", "p4", "(-1 ; +1)", {"2", "2", "(1 ; 2)"}, {"4", "4", "(h2(d1d2) ; 2h2(d1d2))"}, "D", "32.033", "(2h2(d1d2) ; 4h2(d1d2))"},
        {"a7", "0,1,0,0,1,0", "p2p4", "p2p4", "p4", "p4", "(-1 ; +1)", {"2", "2", "(1 ; 2)"}, {"4", "4", "(h2(d1d2) ; 2h2(d1d2))"}, "D", "64.144", "(2h2(d1d2) ; 4h2(d1d2))"},
        {"a8", "1,0,1,0,1,0", "p3p4", "p3p4", "(p1 ; p4|p1p4)", "p4", "-1", {"2", "(2 ; 1)", "2"}, {"4", "(2h2(d1d3d4) ; h2(d1d3d4))", "4"}, "(S ; D)", "32.033", "(4h2(d1d3d4) ; 2h2(d1d3d4))"},
        {"a9", "1,0,0,1,1,0", "p1p2p4", "p2p4", "p1p4", "p4", "-1", {"2", "2", "2"}, {"4", "4", "4"}, "Q", "64.147", "8"},
        {"a10", "1,1,1,0,0,0", "p4", "p4", "p4", "p4", "-1", {"2", "2", "2"}, {"4", "4", "4"}, "Q", "64.147", "8"},
        {"a11", "1,1,0,1,1,0", "p2p3", "p2p4", "p3p4", "p4", "-1", {"1", "1", "1"}, {"2", "2", "2"}, "V4", "32.039", "4"},
        {"a12", "1,1,1,0,1,0", "p2p3", "p3p4", "p4", "p4", "-1", {"1", "1", "1"}, {"2", "2", "2"}, "V4", "32.039", "4"},
        {"a13", "1,1,0,0,1,0", "p2p3", "p2p4", "p4", "p4", "-1", {"1", "1", "1"}, {"2", "2", "2"}, "V4", "32.034", "4"},
        {"b1", "0,1,1,1,1,[1;0]", "[2p3 ; 2p1p2]", "[2p2 ; 2p3]", "[2p1 ; 2p3]", "[2p3 ; 2]", "(-1 ; +1)", {"2", "2", "2"}, {"4", "4", "2h2(p1p2)"}, "(Qg ; D)", "32.036", "4h2(p1p2)"},
        {"b2", "0,1,1,0,0,[1;0]", "[2p1p2p3 ; 2]", "[2p2p3 ; 2]", "[2p1p3 ; 2]", "[2p3 ; 2]", "(-1 ; +1)", {"2", "2", "2"}, {"4", "4", "2h2(p1p2)"}, "(Qg ; D)", "64.144", "4h2(p1p2)"},
        {"b3", "1,0,1,0,0,[1;0]", "[2p1p2p3 ; 2]", "[2p2p3 ; 2]", "[(2p1p3 ; p1|2p3) ; (2 ; p1|2p1)]", "[2p3 ; 2]", "-1", {"2", "(2 ; 1)", "2"}, {"4", "(2h2(p1p3) ; h2(p1p3))", "4"}, "(Qg ; D)", "64.144", "(4h2(p1p3) ; 2h2(p1p3))"},
        {"b4", "1,0,1,0,1,[1;0]", "[2p1p2 ; 2p3]", "[2p2 ; 2p3]", "[(2p3 ; p1|2p1p3) ; (2p1 ; 2|p1)]", "[2p3 ; 2]", "-1", {"2", "(2 ; 1)", "2"}, {"4", "(2h2(p1p3) ; h2(p1p3))", "4"}, "(Qg ; D)", "32.033", "(4h2(p1p3) ; 2h2(p1p3))"},
        {"b5", "0,1,0,1,1,[1;0]", "p2", "p2", "[2p1 ; 2p3]", "[2p3 ; 2]", "(-1 ; +1)", {"2", "2", "(1 ; 2)"}, {"4", "4", "(h2(p1p2) ; 2h2(p1p2))"}, "D", "64.146", "(2h2(p1p2) ; 4h2(p1p2))"},
        {"b6", "0,1,1,0,1,[1;0]", "[2p2 ; 2p1p3]", "[2p2 ; 2p3]", "[2p1p3 ; 2]", "[2p3 ; 2]", "(-1 ; +1)", {"2", "2", "(1 ; 2)"}, {"4", "4", "(h2(p1p2) ; 2h2(p1p2))"}, "D", "32.033", "(2h2(p1p2) ; 4h2(p1p2))"},
        {"b7", "0,1,0,0,1,[1;0]", "p2", "p2", "[2p1p3 ; 2]", "[2p3 ; 2]", "(-1 ; +1)", {"2", "2", "(1 ; 2)"}, {"4", "4", "(h2(p1p2) ; 2h2(p1p2))"}, "D", "64.144", "(2h2(p1p2) ; 4h2(p1p2))"},
        {"b8", "1,0,0,0,1,[1;0]", "p1p2", "p2", "[(p1 ; 2p3|2p1p3) ; (p1 ; 2|2p1)]", "[2p3 ; 2]", "-1", {"2", "(2 ; 1)", "2"}, {"4", "(2h2(p1p3) ; h2(p1p3))", "4"}, "(S ; D)", "64.144", "(4h2(p1p3) ; 2h2(p1p3))"},
        {"b9", "1,1,1,1,1,[1;0]", "[2p3 ; 2p1p2]", "[2p2 ; 2p3]", "[2p1 ; 2p3]", "[2p3 ; 2]", "-1", {"2", "2", "2"}, {"4", "4", "4"}, "Q", "32.037", "8"},
        {"b10", "1,1,1,0,0,[1;0]", "[2p1p2p3 ; 2]", "[2p2p3 ; 2]", "[2p1p3 ; 2]", "[2p3 ; 2]", "-1", {"2", "2", "2"}, {"4", "4", "4"}, "Q", "64.147", "8"},
        {"b11", "1,1,0,1,1,[1;0]", "[2p1p3 ; 2p2]", "p2", "[2p1 ; 2p3]", "[2p3 ; 2]", "-1", {"1", "1", "1"}, {"2", "2", "2"}, "V4", "32.036", "4"},
        {"b12", "1,1,1,0,1,[1;0]", "[2p1 ; 2p2p3]", "[2p2 ; 2p3]", "[2p1p3 ; 2]", "[2p3 ; 2]", "-1", {"1", "1", "1"}, {"2", "2", "2"}, "V4", "32.039", "4"},
        {"b13", "1,1,0,0,1,[1;0]", "[2p1 ; 2p2p3]", "p2", "[2p1p3 ; 2]", "[2p3 ; 2]", "-1", {"1", "1", "1"}, {"2", "2", "2"}, "V4", "32.034", "4"},
    };
    return rows;
}

inline const AppendixIIRow* appendix_ii_row(const std::string& label)
{
    for (const auto& r : appendix_ii()) {
        if (r.label == label) return &r;
    }
    return nullptr;
}

inline const TypeRow* appendix_i_row(const std::string& label, CaseType* type = nullptr)
{
    for (const auto& t : appendix_i()) {
        for (const auto& r : t.rows) {
            if (r.label == label) {
                if (type) *type = t.type;
                return &r;
            }
        }
    }
    return nullptr;
}

} // namespace qtower
