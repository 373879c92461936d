#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qtower/arith.hpp"
#include "qtower/classify.hpp"
#include "qtower/tables.hpp"

namespace qtower {

using json = nlohmann::ordered_json;

// process exit codes of the command-line tool
enum exit_code : int { exit_ok = 0, exit_precondition = 2, exit_no_row = 3, exit_internal = 4, exit_bound = 5 };

inline int exit_code_for(errc e)
{
    switch (e) {
    case errc::precondition:
    case errc::not_fundamental:
    case errc::undefined_input:
    case errc::zero_input:
    case errc::square_discriminant:
    case errc::not_applicable:
    case errc::degenerate:
    case errc::insoluble:
    case errc::hypothesis_violation:
    case errc::invalid_group:
    case errc::io: return exit_precondition;
    case errc::no_row_match: return exit_no_row;
    case errc::bound_exceeded:
    case errc::no_solution:
    case errc::search_exhausted: return exit_bound;
    default: return exit_internal;
    }
}

// "19176", "8*17*-3*-47", "(-7)(-3)(-43)(-31)"; factors, when given, must be the prime discriminants of the product
struct ParsedDiscriminant {
    i64 value = 0;
    std::vector<i64> factors;
};

inline ParsedDiscriminant parse_discriminant(const std::string& text)
{
    std::vector<i64> parts;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        size_t used = 0;
        i64 v = 0;
        try {
            v = std::stoll(cur, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != cur.size()) throw error(errc::undefined_input, "cannot read \"" + cur + "\" in " + text);
        parts.push_back(v);
        cur.clear();
    };
    for (char ch : text) {
        if (ch == '*' || ch == '(' || ch == ')' || ch == ' ' || ch == 'x')
            flush();
        else
            cur += ch;
    }
    flush();
    if (parts.empty()) throw error(errc::undefined_input, "empty discriminant");
    ParsedDiscriminant out;
    i128 prod = 1;
    for (i64 p : parts) {
        prod *= p;
        if (prod > INT64_MAX || prod < INT64_MIN) throw error(errc::bound_exceeded, text + " overflows 64 bits");
    }
    out.value = static_cast<i64>(prod);
    if (parts.size() > 1) {
        for (i64 p : parts) {
            if (!is_prime_discriminant(p)) throw error(errc::precondition, std::to_string(p) + " is not a prime discriminant");
        }
        auto fac = factor_discriminant(out.value).factors;
        auto given = parts;
        auto cmp = [](i64 x, i64 y) { return abs64(x) < abs64(y) || (abs64(x) == abs64(y) && x < y); };
        std::sort(given.begin(), given.end(), cmp);
        if (given != fac) throw error(errc::precondition, text + " does not match the factorization of " + std::to_string(out.value));
        out.factors = parts;
    }
    return out;
}

inline std::vector<i64> parse_int_list(const std::string& text)
{
    std::vector<i64> out;
    std::string cur;
    for (char ch : text + ",") {
        if (ch == ',' || ch == ' ') {
            if (!cur.empty()) out.push_back(parse_discriminant(cur).value);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    return out;
}

// --- scan records ---------------------------------------------------------------------

struct ScanRecord {
    i64 dk = 0;
    std::vector<i64> factorization;
    std::string label;   // empty when no row matched
    std::string gplus;
    std::string verdict;
    std::string assignment;
    std::string verification; // "", "match", "mismatch", "skipped", or an error name
    std::optional<double> millis;

    bool operator==(const ScanRecord& o) const
    {
        return dk == o.dk && factorization == o.factorization && label == o.label && gplus == o.gplus && verdict == o.verdict &&
               assignment == o.assignment && verification == o.verification && millis == o.millis;
    }
};

inline json to_json(const ScanRecord& r)
{
    json j;
    j["d_k"] = r.dk;
    j["factors"] = r.factorization;
    j["case"] = r.label.empty() ? json(nullptr) : json(r.label);
    j["gplus"] = r.gplus.empty() ? json(nullptr) : json(r.gplus);
    j["verdict"] = r.verdict.empty() ? json(nullptr) : json(r.verdict);
    j["labeling"] = r.assignment;
    j["verification"] = r.verification;
    if (r.millis) j["ms"] = *r.millis;
    return j;
}

inline ScanRecord scan_record_from_json(const json& j)
{
    ScanRecord r;
    auto str = [&](const char* k) { return j.at(k).is_null() ? std::string() : j.at(k).get<std::string>(); };
    r.dk = j.at("d_k").get<i64>();
    r.factorization = j.at("factors").get<std::vector<i64>>();
    r.label = str("case");
    r.gplus = str("gplus");
    r.verdict = str("verdict");
    r.assignment = j.at("labeling").get<std::string>();
    r.verification = j.at("verification").get<std::string>();
    if (j.contains("ms")) r.millis = j.at("ms").get<double>();
    return r;
}

inline std::string csv_header() { return "d_k,factors,case,gplus,verdict,labeling,verification"; }

inline std::string to_csv(const ScanRecord& r)
{
    std::string f;
    for (size_t i = 0; i < r.factorization.size(); ++i) f += (i ? "*" : "") + std::to_string(r.factorization[i]);
    return std::to_string(r.dk) + "," + f + "," + r.label + "," + r.gplus + "," + r.verdict + "," + r.assignment + "," +
           r.verification;
}

// --- case tables as data ----------------------------------------------------------------

inline json case_tables_json()
{
    json out;
    out["version"] = case_tables_version;
    json types = json::array();
    for (const auto& t : appendix_i()) {
        json jt;
        jt["type"] = case_type_name(t.type);
        jt["signs"] = t.d1_d2_positive ? "d1,d2 > 0 > d3,d4" : "all negative";
        jt["d4_is_minus4"] = t.d4_is_minus4;
        json fixed = json::array();
        for (const auto& f : t.fixed) fixed.push_back({{"symbol", {f.ref.i, f.ref.j}}, {"value", f.value}});
        jt["fixed"] = fixed;
        json cols = json::array();
        for (const auto& c : t.columns) cols.push_back({c.i, c.j});
        jt["columns"] = cols;
        json rows = json::array();
        for (const auto& r : t.rows) rows.push_back({{"case", r.label}, {"values", r.values}, {"G", r.g_type}, {"gplus", r.gplus}});
        jt["rows"] = rows;
        types.push_back(jt);
    }
    out["types"] = types;
    json second = json::array();
    for (const auto& r : appendix_ii()) {
        second.push_back({{"case", r.label},
                          {"nu", r.nu},
                          {"delta", r.delta},
                          {"delta1", r.delta1},
                          {"delta2", r.delta2},
                          {"delta3", r.delta3},
                          {"norm_eps12", r.norm_e12},
                          {"q", {r.q[0], r.q[1], r.q[2]}},
                          {"h2", {r.h2k[0], r.h2k[1], r.h2k[2]}},
                          {"G", r.g_type},
                          {"gplus", r.gplus},
                          {"order", r.order}});
    }
    out["invariants"] = second;
    return out;
}

} // namespace qtower
