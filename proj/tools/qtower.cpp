#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "qtower/qtower.hpp"

using namespace qtower;
namespace fs = std::filesystem;

namespace {

bool text_output = false;

void emit(const json& j)
{
    if (!text_output) {
        std::cout << j.dump() << '\n';
        return;
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::cout << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << '\n';
    }
}

json cell_report(const AppendixIIReport& r)
{
    json j;
    j["d_k"] = r.dk;
    j["case"] = r.label;
    j["labeling"] = r.assignment.str();
    j["nu34"] = r.nu34;
    j["branch"] = r.branch < 0 ? json(nullptr) : json(r.branch == 0 ? "top" : "bottom");
    j["all_match"] = r.all_match();
    json cols = json::array();
    for (const auto& e : r.entries)
        cols.push_back({{"column", e.column}, {"expected", e.expected}, {"computed", e.computed}, {"match", e.match}, {"derived", e.derived}});
    j["columns"] = cols;
    return j;
}

json conic_json(const ConicSolution& s)
{
    return {{"delta1", s.delta1}, {"delta2", s.delta2}, {"a", s.a}, {"b", s.b}, {"c", s.c}};
}

json alpha_json(const AlphaElement& a)
{
    return {{"alpha", a.str()}, {"sign", a.alpha_sign}, {"conjugate_sign", a.conj_sign}, {"gamma", a.gamma_str()}};
}

// --- classify -------------------------------------------------------------------------

struct ClassifyOpts {
    std::string d;
    std::string octic;
    std::vector<std::string> lj;
    bool verify = false;
};

int cmd_classify(const ClassifyOpts& o)
{
    auto pd = parse_discriminant(o.d);
    CaseRecord rec = classify(pd.value);
    std::optional<std::vector<i64>> octic;
    if (!o.octic.empty()) octic = parse_int_list(o.octic);
    TowerVerdict v = tower_verdict(rec, octic);
    json j;
    j["d_k"] = rec.dk;
    j["factors"] = factor_discriminant(rec.dk).factors;
    j["type"] = case_type_name(rec.type);
    j["case"] = rec.label;
    j["labeling"] = rec.assignment.str();
    j["symbols"] = rec.symbols;
    j["G"] = rec.g_type;
    j["gplus"] = rec.gplus;
    j["verdict"] = verdict_name(v.verdict);
    j["reason"] = v.justification;
    if (v.verdict == Verdict::Unknown64_150) {
        std::optional<LjTest> lj;
        if (!o.lj.empty()) {
            if (!octic) throw error(errc::undefined_input, "--l-cl2 needs --octic-cl2 for Cl2(k+^1)");
            if (o.lj.size() != 3) throw error(errc::undefined_input, "--l-cl2 takes L0, L1, L2 in order");
            lj = LjTest{*octic, {parse_int_list(o.lj[0]), parse_int_list(o.lj[1]), parse_int_list(o.lj[2])}};
        }
        auto p = prop13_report(rec.dk, lj);
        json q;
        q["labeling"] = p.labeling.str();
        q["conic1"] = conic_json(p.sol1);
        q["conic2"] = conic_json(p.sol2);
        q["alpha1"] = alpha_json(p.alpha1);
        q["alpha2"] = alpha_json(p.alpha2);
        q["alpha0"] = "(" + p.alpha1.str() + ")(" + p.alpha2.str() + ")";
        if (p.ratios) {
            json r = json::array();
            for (const auto& x : *p.ratios) r.push_back(x.get_str());
            q["ratios"] = r;
            q["terminates_at_k2"] = *p.terminates_at_k2;
        }
        j["quadratic_extensions"] = q;
    }
    if (o.verify) {
        if (appendix_ii_row(rec.label))
            j["verification"] = cell_report(verify_appendix_row(rec.dk));
        else if (rec.label == "c2" || rec.label == "d5" || rec.label == "d8") {
            auto c = lemma_delta_check(rec);
            j["verification"] = {{"delta", c.delta},
                                 {"expected", c.expected},
                                 {"genus_positive", c.genus_positive},
                                 {"relative_norm", c.relative_norm.get_str()},
                                 {"match", c.matches()}};
        }
    }
    emit(j);
    return exit_ok;
}

// --- scan -------------------------------------------------------------------------------

struct ScanOpts {
    i64 min = 5, max = 30000;
    i64 bound = 10000000;
    std::vector<std::string> cases;
    std::string out, csv, checkpoint;
    int threads = 0;
    bool verify = false, timing = false, histogram = true;
};

std::optional<ScanRecord> scan_one(i64 d, const ScanOpts& o)
{
    if (d <= 0 || !is_fundamental_discriminant(d)) return std::nullopt;
    auto t0 = std::chrono::steady_clock::now();
    ScanRecord r;
    r.dk = d;
    try {
        check_preconditions(d);
    } catch (const error& e) {
        if (e.code() == errc::precondition) return std::nullopt;
        throw;
    }
    r.factorization = factor_discriminant(d).factors;
    try {
        CaseRecord rec = classify(d);
        r.label = rec.label;
        r.gplus = rec.gplus;
        r.assignment = rec.assignment.str();
        r.verdict = verdict_name(tower_verdict(rec).verdict);
        if (o.verify) {
            try {
                if (appendix_ii_row(rec.label))
                    r.verification = verify_appendix_row(d).all_match() ? "match" : "mismatch";
                else if (rec.label == "c2" || rec.label == "d5" || rec.label == "d8")
                    r.verification = lemma_delta_check(rec).matches() ? "match" : "mismatch";
                else
                    r.verification = "skipped";
            } catch (const error& e) {
                r.verification = errc_name(e.code());
            }
        }
    } catch (const error& e) {
        if (e.code() != errc::no_row_match && e.code() != errc::multiple_match) throw;
        r.verification = errc_name(e.code());
    }
    if (!o.cases.empty() && std::find(o.cases.begin(), o.cases.end(), r.label) == o.cases.end()) return std::nullopt;
    if (o.timing) r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

fs::path checkpoint_path(const std::string& name)
{
    fs::path p(name);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("QTOWER_CHECKPOINT_DIR")) p = fs::path(dir) / p;
    }
    return p;
}

// checkpoint: one JSON object {"min","max","next","histogram"}; "next" is the first d not yet written
struct Checkpoint {
    i64 min = 0, max = 0, next = 0;
    std::map<std::string, i64> histogram;
};

void write_checkpoint(const fs::path& p, const Checkpoint& c)
{
    json j{{"min", c.min}, {"max", c.max}, {"next", c.next}, {"histogram", c.histogram}};
    fs::path tmp = p;
    tmp += ".tmp";
    {
        std::ofstream f(tmp);
        if (!f) throw error(errc::io, "cannot write " + tmp.string());
        f << j.dump() << '\n';
    }
    fs::rename(tmp, p);
}

std::optional<Checkpoint> read_checkpoint(const fs::path& p)
{
    std::ifstream f(p);
    if (!f) return std::nullopt;
    json j;
    try {
        f >> j;
    } catch (const std::exception&) {
        throw error(errc::io, "unreadable checkpoint " + p.string());
    }
    Checkpoint c;
    c.min = j.at("min").get<i64>();
    c.max = j.at("max").get<i64>();
    c.next = j.at("next").get<i64>();
    c.histogram = j.at("histogram").get<std::map<std::string, i64>>();
    return c;
}

int cmd_scan(const ScanOpts& o)
{
    if (o.min >= o.max) throw error(errc::precondition, "scan needs min < max");
    if (o.max > o.bound) throw error(errc::bound_exceeded, "max " + std::to_string(o.max) + " exceeds the scan bound " + std::to_string(o.bound));

    Checkpoint cp{o.min, o.max, o.min, {}};
    fs::path cpath;
    bool resuming = false;
    if (!o.checkpoint.empty()) {
        cpath = checkpoint_path(o.checkpoint);
        if (auto old = read_checkpoint(cpath)) {
            if (old->min != o.min || old->max != o.max) throw error(errc::precondition, "checkpoint " + cpath.string() + " is for another range");
            cp = *old;
            resuming = true;
        }
    }

    auto mode = resuming ? std::ios::app : std::ios::trunc;
    std::ofstream out_file, csv_file;
    std::ostream* out = &std::cout;
    if (!o.out.empty()) {
        out_file.open(o.out, std::ios::out | mode);
        if (!out_file) throw error(errc::io, "cannot open " + o.out);
        out = &out_file;
    }
    if (!o.csv.empty()) {
        csv_file.open(o.csv, std::ios::out | mode);
        if (!csv_file) throw error(errc::io, "cannot open " + o.csv);
        if (!resuming) csv_file << csv_header() << '\n';
    }

    const i64 block = 2048;
    int nthreads = o.threads > 0 ? o.threads : std::max(1u, std::thread::hardware_concurrency());
    for (i64 lo = cp.next; lo <= o.max; lo += block) {
        i64 hi = std::min(o.max, lo + block - 1);
        std::vector<std::optional<ScanRecord>> results(static_cast<size_t>(hi - lo + 1));
        std::atomic<i64> cursor{lo};
        std::mutex err_mu;
        std::optional<error> failure;
        auto worker = [&] {
            for (;;) {
                i64 d = cursor.fetch_add(1);
                if (d > hi) return;
                try {
                    results[static_cast<size_t>(d - lo)] = scan_one(d, o);
                } catch (const error& e) {
                    std::lock_guard<std::mutex> g(err_mu);
                    if (!failure) failure = error(e.code(), "d = " + std::to_string(d) + ": " + e.what());
                }
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        if (failure) throw *failure;
        for (const auto& r : results) {
            if (!r) continue;
            *out << to_json(*r).dump() << '\n';
            if (csv_file.is_open()) csv_file << to_csv(*r) << '\n';
            ++cp.histogram[r->label.empty() ? std::string("none") : r->label];
        }
        out->flush();
        if (csv_file.is_open()) csv_file.flush();
        cp.next = hi + 1;
        if (!cpath.empty()) write_checkpoint(cpath, cp);
    }
    if (o.histogram) {
        json h{{"summary", true}, {"min", o.min}, {"max", o.max}, {"histogram", cp.histogram}};
        std::cerr << h.dump() << '\n';
    }
    return exit_ok;
}

// --- small wrappers -------------------------------------------------------------------

int cmd_verify_row(const std::string& d)
{
    auto r = verify_appendix_row(parse_discriminant(d).value);
    emit(cell_report(r));
    return r.all_match() ? exit_ok : exit_internal;
}

int cmd_conic(i64 d1, i64 d2, i64 bound)
{
    auto s = solve_conic(d1, d2, bound);
    json j = conic_json(s);
    j["satisfied"] = s.satisfied();
    j["primitive"] = s.primitive();
    emit(j);
    return exit_ok;
}

int cmd_unit(const std::string& text)
{
    i64 d = parse_discriminant(text).value;
    QuadUnit e = fundamental_unit(d);
    json j;
    j["d"] = d;
    j["unit"] = e.str();
    j["x"] = e.x.get_str();
    j["y"] = e.y.get_str();
    j["norm"] = e.norm;
    if (e.norm == 1) {
        j["delta"] = delta_invariant(e).delta;
        try {
            auto s = sqrt_unit_decomposition(e);
            j["sqrt_unit"] = s.str();
            j["relative_norm"] = s.relative_norm().get_str();
        } catch (const error& err) {
            j["sqrt_unit"] = nullptr;
            j["sqrt_unit_error"] = err.what();
        }
    }
    emit(j);
    return exit_ok;
}

int cmd_classgroup(const std::string& text, bool narrow)
{
    i64 d = parse_discriminant(text).value;
    auto g = class_group(d, narrow);
    json j;
    j["d"] = d;
    j["narrow"] = g.narrow;
    j["h"] = g.order();
    j["structure"] = g.elementary_divisors;
    j["two_part"] = two_part(g.elementary_divisors);
    json reps = json::array();
    for (const auto& f : g.class_representatives) reps.push_back(to_string(f));
    j["forms"] = reps;
    emit(j);
    return exit_ok;
}

// --- group ----------------------------------------------------------------------------

std::vector<TableGroup> pick_groups(const std::string& table, bool library)
{
    if (!table.empty()) return {load_table(table)};
    if (library) return group_library();
    return {build_64_150().to_table("64.150")};
}

json prop10_json(const TableGroup& g)
{
    auto r = check_prop10(g);
    json j{{"group", g.name()}, {"order", g.order()}, {"check", "prop10"}, {"status", check_status_name(r.status)},
           {"rank", r.rank}, {"derived_order", r.derived_order}, {"maximal_subgroups", r.maximal_count},
           {"qualifying_triples", r.qualifying_triples}, {"note", r.note}};
    if (!r.counterexample.empty()) j["counterexample"] = r.counterexample;
    return j;
}

json prop11_json(const TableGroup& g)
{
    auto r = check_prop11(g);
    json j{{"group", g.name()}, {"order", g.order()}, {"check", "prop11"}, {"status", check_status_name(r.status)}};
    if (r.status == CheckStatus::not_applicable) {
        j["note"] = r.note;
        return j;
    }
    j["generators"] = {r.gens.a[0], r.gens.a[1], r.gens.a[2]};
    j["derived_is_squares"] = r.derived_is_squares;
    j["derived_is_commutators"] = r.derived_is_commutators;
    j["derived_rank"] = r.derived_rank;
    json steps = json::array();
    for (const auto& s : r.steps)
        steps.push_back({{"j", s.j}, {"order", s.order}, {"powers", s.matches_powers}, {"g2_power", s.matches_g2_power}});
    j["series"] = steps;
    return j;
}

json prop12_json(const TableGroup& g)
{
    auto r = check_prop12(g);
    json j{{"group", g.name()}, {"order", g.order()}, {"check", "prop12"}, {"status", check_status_name(r.status)}};
    if (r.status != CheckStatus::not_applicable) {
        j["derived_quotient"] = r.derived_quotient;
        j["second_derived_order"] = r.second_derived_order;
    }
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

int run_checks(const std::vector<TableGroup>& groups, const std::string& which)
{
    int rc = exit_ok;
    for (const auto& g : groups) {
        json j = which == "prop10" ? prop10_json(g) : which == "prop11" ? prop11_json(g) : prop12_json(g);
        if (j["status"] == "counterexample") rc = exit_internal;
        emit(j);
    }
    return rc;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"2-class field towers of real quadratic fields with 2-class group (2,2)"};
    app.set_config("--config", "", "TOML/INI file with default options; command-line flags win");
    app.require_subcommand(1);
    app.add_flag("--text", text_output, "human-readable key: value output instead of JSON lines");

    ClassifyOpts copts;
    auto* c = app.add_subcommand("classify", "case label, G+/G3+ and tower verdict");
    c->add_option("d", copts.d, "discriminant or factor expression such as 8*17*-3*-47")->required();
    c->add_option("--octic-cl2", copts.octic, "externally computed Cl2(k+^1), e.g. 2,4,4");
    c->add_option("--l-cl2", copts.lj, "Cl2 of L0, L1, L2 (repeat three times, in that order)");
    c->add_flag("--verify", copts.verify, "check the invariant row against computed units and class numbers");

    ScanOpts sopts;
    auto* s = app.add_subcommand("scan", "classify every qualifying discriminant in a range");
    s->add_option("--min", sopts.min, "first discriminant");
    s->add_option("--max", sopts.max, "last discriminant");
    s->add_option("--bound", sopts.bound, "largest allowed --max");
    s->add_option("--case", sopts.cases, "keep only these case labels");
    s->add_option("--out", sopts.out, "JSON-lines output file (default stdout)");
    s->add_option("--csv", sopts.csv, "also write comma-separated records here");
    s->add_option("--checkpoint", sopts.checkpoint, "resume file; relative names go under $QTOWER_CHECKPOINT_DIR");
    s->add_option("--threads", sopts.threads, "worker threads (0: hardware concurrency)");
    s->add_flag("--verify", sopts.verify, "verify each record's invariant row");
    s->add_flag("--timing", sopts.timing, "add per-record milliseconds (output is then not reproducible)");
    s->add_flag("!--no-histogram", sopts.histogram, "suppress the summary on stderr");

    std::string vd;
    auto* vr = app.add_subcommand("verify-row", "compare computed invariants with the table row");
    vr->add_option("d", vd)->required();

    i64 cd1 = 0, cd2 = 0, cbound = default_conic_bound;
    auto* cn = app.add_subcommand("conic", "primitive solution of a^2 = delta1 b^2 + delta2 c^2");
    cn->add_option("delta1", cd1)->required();
    cn->add_option("delta2", cd2)->required();
    cn->add_option("--bound", cbound, "search bound on max(b, c)");

    std::string ud;
    auto* un = app.add_subcommand("unit", "fundamental unit of a real quadratic field");
    un->add_option("d", ud, "positive fundamental discriminant")->required();

    std::string gd;
    bool narrow = false;
    auto* cg = app.add_subcommand("classgroup", "class group by reduced binary quadratic forms");
    cg->add_option("d", gd)->required()->allow_extra_args(false);
    cg->add_flag("--narrow", narrow, "narrow class group");

    auto* grp = app.add_subcommand("group", "finite 2-group checks");
    grp->require_subcommand(1);
    std::string gtable;
    bool glib = false;
    std::string gcheck, gwrite;
    std::map<std::string, CLI::App*> checks;
    for (const char* name : {"check-prop10", "check-prop11", "check-prop12"}) {
        auto* sc = grp->add_subcommand(name, "run the check on 64.150, a table file, or the built-in library");
        sc->add_option("--table", gtable, "multiplication-table file");
        sc->add_flag("--library", glib, "every group of the built-in library");
        checks[name] = sc;
    }
    auto* b64 = grp->add_subcommand("build-64150", "construct 64.150 from its presentation");
    b64->add_option("--check", gcheck, "prop10, prop11 or prop12")->check(CLI::IsMember({"prop10", "prop11", "prop12"}));
    b64->add_option("--write", gwrite, "write the multiplication table here");
    std::string lpath;
    auto* ld = grp->add_subcommand("load", "validate a multiplication-table file");
    ld->add_option("file", lpath)->required();

    auto* tb = app.add_subcommand("tables", "case tables");
    tb->require_subcommand(1);
    std::string tout;
    auto* tex = tb->add_subcommand("export", "write the compiled tables as JSON");
    tex->add_option("--out", tout, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_precondition;
    }

    try {
        if (*c) return cmd_classify(copts);
        if (*s) return cmd_scan(sopts);
        if (*vr) return cmd_verify_row(vd);
        if (*cn) return cmd_conic(cd1, cd2, cbound);
        if (*un) return cmd_unit(ud);
        if (*cg) return cmd_classgroup(gd, narrow);
        if (*grp) {
            for (auto& [name, sc] : checks) {
                if (*sc) return run_checks(pick_groups(gtable, glib), name.substr(6));
            }
            if (*b64) {
                TableGroup g = build_64_150().to_table("64.150");
                if (!gwrite.empty()) {
                    std::ofstream f(gwrite);
                    if (!f) throw error(errc::io, "cannot write " + gwrite);
                    write_table(f, g);
                }
                auto lcs = lower_central_series(g);
                json j{{"group", g.name()}, {"order", g.order()}, {"derived_order", derived_subgroup(g).size()},
                       {"center_order", center(g).size()}, {"maximal_subgroups", maximal_subgroups(g).size()}};
                json series = json::array();
                for (const auto& t : lcs) series.push_back(t.size());
                j["lower_central_series"] = series;
                emit(j);
                return gcheck.empty() ? exit_ok : run_checks({g}, gcheck);
            }
            if (*ld) {
                TableGroup g = load_table(lpath);
                emit({{"group", lpath}, {"order", g.order()}, {"valid", true}, {"abelian", is_abelian(g)},
                      {"derived_order", derived_subgroup(g).size()}});
                return exit_ok;
            }
        }
        if (*tex) {
            std::string text = case_tables_json().dump(2) + "\n";
            if (tout.empty()) {
                std::cout << text;
            } else {
                std::ofstream f(tout);
                if (!f) throw error(errc::io, "cannot write " + tout);
                f << text;
            }
            return exit_ok;
        }
    } catch (const error& e) {
        std::cerr << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "internal: " << e.what() << '\n';
        return exit_internal;
    }
    return exit_internal;
}
