#include "t310/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "t310/analysis.hpp"
#include "t310/fe.hpp"
#include "t310/lzs.hpp"
#include "t310/poly.hpp"
#include "t310/round.hpp"
#include "t310/solve.hpp"
#include "t310/spaces.hpp"

namespace t310::cli {

namespace {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Keys are referenced as `file#id`; polynomials inline or `@file`.
LzsKey load_key(const std::string& spec) {
    auto hash = spec.find('#');
    if (hash == std::string::npos) return parse_lzs(read_file(spec));
    std::string id = spec.substr(hash + 1);
    for (const auto& k : parse_lzs_file(read_file(spec.substr(0, hash))))
        if (k.id == id) return k;
    throw Error("key '" + id + "' not found in " + spec.substr(0, hash));
}

std::string load_text_arg(const std::string& spec) {
    if (!spec.empty() && spec[0] == '@') return read_file(spec.substr(1));
    return spec;
}

Polynomial load_poly(const std::string& spec) { return parse_poly(load_text_arg(spec)); }

// A Boolean function given as ANF over the formal letters a..f or as 16 hex digits.
BooleanFunc load_z(const std::string& spec) {
    std::string text = load_text_arg(spec);
    if (text.size() == 16 && text.find_first_not_of("0123456789abcdefABCDEF") == std::string::npos)
        return BooleanFunc::from_hex(text);
    return BooleanFunc::from_anf(parse_poly(text));
}

std::vector<EventFix> parse_event(const std::string& text) {
    std::vector<EventFix> ev;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string part = text.substr(pos, (comma == std::string::npos ? text.size() : comma) - pos);
        auto eq = part.find('=');
        if (eq == std::string::npos || eq + 2 != part.size() ||
            (part[eq + 1] != '0' && part[eq + 1] != '1'))
            throw ParseError("bad event component '" + part + "' (want e.g. e=1)");
        std::string name = part.substr(0, eq);
        VarId v = name.size() == 1 ? var_from_letter(name[0]) : kInvalidVar;
        if (v == kInvalidVar || !is_state(v))
            throw ParseError("event variables must be state letters, got '" + name + "'");
        ev.push_back({v, part[eq + 1] - '0'});
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return ev;
}

Schedule parse_schedule(const std::string& path) {
    json j = json::parse(read_file(path));
    Schedule sch;
    if (j.contains("s"))
        for (auto& pair : j["s"]) sch.s_bits.push_back({pair[0].get<int>(), pair[1].get<int>()});
    if (j.contains("f"))
        for (auto& b : j["f"]) sch.f_bits.push_back(b.get<int>());
    return sch;
}

std::uint64_t fnv1a(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

struct Report {
    json j;
    std::uint64_t digest = 0xcbf29ce484222325ull;

    explicit Report(const std::vector<std::string>& argv) {
        j["schema"] = 1;
        j["command"] = argv;
    }
    void input(std::string_view label, std::string_view value) {
        digest = fnv1a(label, digest);
        digest = fnv1a("=", digest);
        digest = fnv1a(value, digest);
    }
    std::string finish(int status, json result) {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
        j["inputs_digest"] = std::string("fnv1a64:") + buf;
        j["result"] = std::move(result);
        j["status"] = status;
        return j.dump(2) + "\n";
    }
};

json case_results_json(const std::vector<std::pair<CaseSpec, bool>>& verdicts) {
    json arr = json::array();
    for (const auto& [c, ok] : verdicts) arr.push_back({{"case", c.str()}, {"holds", ok}});
    return arr;
}

json solution_set_json(const SolutionSet& sol) {
    json r;
    switch (sol.kind) {
        case SolutionSet::Kind::Affine: r["kind"] = "affine-subspace"; break;
        case SolutionSet::Kind::Explicit: r["kind"] = "explicit-list"; break;
        case SolutionSet::Kind::Unsat: r["kind"] = "unsatisfiable"; break;
        case SolutionSet::Kind::Partial: r["kind"] = "partial"; break;
    }
    r["count_exact"] = sol.count_exact;
    if (sol.kind == SolutionSet::Kind::Affine) {
        r["dimension"] = sol.dimension();
        r["count_log2"] = sol.count_log2;
    }
    if (sol.count || sol.kind != SolutionSet::Kind::Affine) r["count"] = sol.count;
    r["excludes_zero"] = sol.excludes_zero;
    if (!sol.note.empty()) r["note"] = sol.note;
    json members = json::array();
    for (const auto& m : sol.members) {
        json e;
        e["tt"] = m.z.hex();
        e["anf"] = format_poly(m.z.anf());
        members.push_back(std::move(e));
    }
    if (!members.empty()) r["members"] = std::move(members);
    if (sol.kind == SolutionSet::Kind::Affine) {
        BooleanFunc part;
        std::uint64_t coeffs = 0;
        for (std::size_t i = 0; i < sol.unknowns.size(); ++i)
            if (is_coeff(sol.unknowns[i]) && sol.particular.get(i))
                coeffs |= std::uint64_t{1} << (sol.unknowns[i] - kCoeffBase);
        part.tt = moebius64(coeffs);
        r["particular"] = {{"tt", part.hex()}, {"anf", format_poly(part.anf())}};
    }
    return r;
}

struct Options {
    // shared option storage for all subcommands
    std::string lzs, z, inv, poly, mode = "opaque", cases = "all", event, probe, out, schedule;
    std::string constraints, space, seeds, ignore, eliminate, state, rb, caze;
    int cond = 0, rounds = 100, samples = 100, maxn = 6, count = 1, tier = -1;
    int degree_cap = -1, workers = 1;
    std::uint64_t seed = 0;
    std::uint64_t enumerate_cap = std::uint64_t{1} << 24;
    std::uint64_t budget = 1000000;
    std::uint64_t term_guard = std::uint64_t{1} << 22;
    bool exclude_zero = false, placeholder_taps = false, require_seed = false;
    bool seed_given = false;
};

FeMode parse_mode(const std::string& m) {
    if (m == "opaque") return FeMode::Opaque;
    if (m == "expanded") return FeMode::Expanded;
    if (m == "concrete") return FeMode::Concrete;
    throw ParseError("mode must be opaque|expanded|concrete");
}

}  // namespace

RunResult dispatch(const std::vector<std::string>& argv) {
    CLI::App app{"T-310 polynomial invariant workbench"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--term-guard", o.term_guard, "polynomial term-count guard");
        cmd->add_option("--workers", o.workers,
                        "data-parallel worker count (results are independent of it)");
    };

    // lzs --------------------------------------------------------------
    auto* lzs = app.add_subcommand("lzs", "long-term key tools");
    auto* lzs_parse = lzs->add_subcommand("parse", "parse and reprint a key");
    lzs_parse->add_option("--lzs", o.lzs, "key file[#id]")->required();
    auto* lzs_val = lzs->add_subcommand("validate", "tiered structural validation");
    lzs_val->add_option("--lzs", o.lzs)->required();
    lzs_val->add_option("--require-tier", o.tier, "exit 1 below this tier");
    auto* lzs_kt1 = lzs->add_subcommand("kt1-check", "single 9-cycle condition");
    lzs_kt1->add_option("--lzs", o.lzs)->required();
    auto* lzs_gen = lzs->add_subcommand("keygen", "constraint-driven key generation");
    lzs_gen->add_option("--constraints", o.constraints, "JSON constraint file")->required();
    lzs_gen->add_option("--count", o.count);
    lzs_gen->add_option("--budget", o.budget, "backtrack nodes per requested key");
    lzs_gen->add_option("--seed", o.seed)->each([&](const std::string&) { o.seed_given = true; });

    // round ------------------------------------------------------------
    auto* round = app.add_subcommand("round", "one-round evaluation and ANF");
    auto* round_eval_cmd = round->add_subcommand("eval", "apply one round to a state");
    round_eval_cmd->add_option("--lzs", o.lzs)->required();
    round_eval_cmd->add_option("--z", o.z, "Boolean function (ANF over a..f, or 16 hex)")->required();
    round_eval_cmd->add_option("--state", o.state, "36 bits or 9 hex digits")->required();
    round_eval_cmd->add_option("--rb", o.rb, "round bits F,S1,S2")->required();
    auto* round_anf_cmd = round->add_subcommand("anf", "print the 36 output ANFs");
    round_anf_cmd->add_option("--lzs", o.lzs)->required();
    round_anf_cmd->add_option("--mode", o.mode, "opaque|concrete");
    round_anf_cmd->add_option("--z", o.z);
    round_anf_cmd->add_flag("--placeholder-taps", o.placeholder_taps);
    add_common(round_anf_cmd);

    // fe ---------------------------------------------------------------
    auto* fe = app.add_subcommand("fe", "fundamental equation tools");
    auto* fe_build_cmd = fe->add_subcommand("build", "P(in) + P(out) for a candidate");
    fe_build_cmd->add_option("--lzs", o.lzs)->required();
    fe_build_cmd->add_option("--inv", o.inv)->required();
    fe_build_cmd->add_option("--mode", o.mode);
    fe_build_cmd->add_option("--z", o.z);
    fe_build_cmd->add_flag("--placeholder-taps", o.placeholder_taps);
    add_common(fe_build_cmd);
    auto* fe_spec = fe->add_subcommand("specialize", "fix F/K/L in the FE");
    fe_spec->add_option("--lzs", o.lzs)->required();
    fe_spec->add_option("--inv", o.inv)->required();
    fe_spec->add_option("--mode", o.mode);
    fe_spec->add_option("--z", o.z);
    fe_spec->add_option("--case", o.caze, "e.g. F=0 or F=1,K=0,L=1")->required();
    add_common(fe_spec);
    auto* fe_sys = fe->add_subcommand("system", "constraint system on Z00..Z63");
    fe_sys->add_option("--lzs", o.lzs)->required();
    fe_sys->add_option("--inv", o.inv)->required();
    fe_sys->add_option("--cases", o.cases, "'all' or ';'-separated case list");
    add_common(fe_sys);
    auto* fe_solve_cmd = fe->add_subcommand("solve", "solve the system for Z");
    fe_solve_cmd->add_option("--lzs", o.lzs)->required();
    fe_solve_cmd->add_option("--inv", o.inv)->required();
    fe_solve_cmd->add_option("--cases", o.cases);
    fe_solve_cmd->add_option("--degree-cap", o.degree_cap);
    fe_solve_cmd->add_option("--enumerate-cap", o.enumerate_cap);
    fe_solve_cmd->add_flag("--exclude-zero", o.exclude_zero, "require Z != 0");
    add_common(fe_solve_cmd);
    auto* fe_check_cmd = fe->add_subcommand("check", "verify a concrete Z per case");
    fe_check_cmd->add_option("--lzs", o.lzs)->required();
    fe_check_cmd->add_option("--inv", o.inv)->required();
    fe_check_cmd->add_option("--z", o.z)->required();
    fe_check_cmd->add_option("--cases", o.cases);
    add_common(fe_check_cmd);
    auto* fe_dimacs = fe->add_subcommand("dimacs", "export the system as CNF");
    fe_dimacs->add_option("--lzs", o.lzs)->required();
    fe_dimacs->add_option("--inv", o.inv)->required();
    fe_dimacs->add_option("--cases", o.cases);
    fe_dimacs->add_flag("--exclude-zero", o.exclude_zero);
    fe_dimacs->add_option("--out", o.out, "CNF output file (default: payload on stdout)");
    add_common(fe_dimacs);

    // spaces -----------------------------------------------------------
    auto* spaces = app.add_subcommand("spaces", "polynomial space reduction");
    auto* sp_red = spaces->add_subcommand("reduce", "eliminate monomials containing symbols");
    sp_red->add_option("--space", o.space, "file, one polynomial per line")->required();
    sp_red->add_option("--eliminate", o.eliminate, "','-separated symbols, e.g. F,P6");
    auto* sp_scan = spaces->add_subcommand("scan", "combinations passing the solvability filter");
    sp_scan->add_option("--space", o.space)->required();
    auto* sp_orbit = spaces->add_subcommand("orbit", "monomial transition graph");
    sp_orbit->add_option("--lzs", o.lzs)->required();
    sp_orbit->add_option("--seed-monomials", o.seeds, "','-separated monomials")->required();
    sp_orbit->add_option("--degree-cap", o.degree_cap);
    sp_orbit->add_option("--ignore", o.ignore, "','-separated symbols to delete");
    add_common(sp_orbit);

    // inv ----------------------------------------------------------------
    auto* inv = app.add_subcommand("inv", "invariant analysis");
    auto* inv_verify = inv->add_subcommand("verify", "one-round symbolic verification");
    inv_verify->add_option("--lzs", o.lzs)->required();
    inv_verify->add_option("--z", o.z)->required();
    inv_verify->add_option("--inv", o.inv)->required();
    inv_verify->add_option("--cases", o.cases);
    add_common(inv_verify);
    auto* inv_bias = inv->add_subcommand("bias", "zero-set and event counts");
    inv_bias->add_option("--inv", o.inv)->required();
    inv_bias->add_option("--event", o.event, "e.g. e=1,f=1,g=1");
    inv_bias->add_option("--cond", o.cond, "condition bit (default 0)");
    auto* inv_minbias = inv->add_subcommand("minbias", "smallest biased N-tuple");
    inv_minbias->add_option("--inv", o.inv)->required();
    inv_minbias->add_option("--max-n", o.maxn);
    auto* inv_factor = inv->add_subcommand("factor", "affine functional factors");
    inv_factor->add_option("--inv", o.inv)->required();
    auto* inv_sim = inv->add_subcommand("simulate", "multi-round empirical runs");
    inv_sim->add_option("--lzs", o.lzs)->required();
    inv_sim->add_option("--z", o.z)->required();
    inv_sim->add_option("--inv", o.inv)->required();
    inv_sim->add_option("--rounds", o.rounds);
    inv_sim->add_option("--samples", o.samples);
    inv_sim->add_option("--seed", o.seed)->each([&](const std::string&) { o.seed_given = true; });
    inv_sim->add_option("--probe", o.probe, "track this polynomial instead of verifying");
    inv_sim->add_option("--cond", o.cond, "sample initial states from {inv = cond}");
    inv_sim->add_option("--schedule", o.schedule, "JSON schedule file");
    inv_sim->add_option("--out", o.out, "CSV output file for probe series");
    add_common(inv_sim);

    // lc -----------------------------------------------------------------
    auto* lc = app.add_subcommand("lc", "linear cryptanalysis checks");
    auto* lc_scan = lc->add_subcommand("scan", "all probability-1 linear invariants");
    lc_scan->add_option("--lzs", o.lzs)->required();
    lc_scan->add_option("--z", o.z)->required();
    lc_scan->add_option("--case", o.caze, "full case, e.g. F=0,K=0,L=0")->required();
    add_common(lc_scan);

    RunResult res;
    Report rep(argv);
    try {
        std::vector<const char*> cargv;
        cargv.push_back("t310");
        for (const auto& a : argv) cargv.push_back(a.c_str());
        try {
            app.parse(static_cast<int>(cargv.size()), cargv.data());
        } catch (const CLI::CallForHelp&) {
            res.exit_code = 0;
            res.payload = app.help("", CLI::AppFormatMode::All);
            res.report = rep.finish(0, json{{"help", true}});
            return res;
        } catch (const CLI::ParseError& e) {
            std::ostringstream usage;
            usage << "usage error: " << e.what();
            res.exit_code = 2;
            res.report = rep.finish(2, json{{"error", usage.str()}});
            return res;
        }
        Limits lim{o.term_guard};

        json result;
        int code = 0;

        if (lzs_parse->parsed()) {
            LzsKey key = load_key(o.lzs);
            rep.input("lzs", format_lzs(key));
            result["key"] = format_lzs(key);
        } else if (lzs_val->parsed()) {
            LzsKey key = load_key(o.lzs);
            rep.input("lzs", format_lzs(key));
            Validation v = validate(key);
            result["tier"] = v.tier;
            result["violations"] = v.violations;
            if (o.tier >= 0 && v.tier < o.tier) code = 1;
        } else if (lzs_kt1->parsed()) {
            LzsKey key = load_key(o.lzs);
            rep.input("lzs", format_lzs(key));
            auto r = kt1_cycle_check(key);
            result["pass"] = r.pass;
            result["cycle"] = r.cycle;
            if (!r.pass) result["reason"] = r.reason;
            code = r.pass ? 0 : 1;
        } else if (lzs_gen->parsed()) {
            if (!o.seed_given) throw ParseError("--seed is required for keygen");
            std::string ctext = read_file(o.constraints);
            rep.input("constraints", ctext);
            rep.input("seed", std::to_string(o.seed));
            auto keys = keygen(parse_constraints_json(ctext), o.count, o.seed, o.budget);
            json arr = json::array();
            for (const auto& k : keys) arr.push_back(format_lzs(k));
            result["keys"] = std::move(arr);
            result["requested"] = o.count;
            if (static_cast<int>(keys.size()) < o.count) {
                code = 3;
                result["note"] = "search budget exhausted";
            }
        } else if (round_eval_cmd->parsed()) {
            LzsKey key = load_key(o.lzs);
            BooleanFunc z = load_z(o.z);
            State s = parse_state(o.state);
            RoundBits rb = parse_round_bits(o.rb);
            rep.input("lzs", format_lzs(key));
            rep.input("z", z.hex());
            rep.input("state", format_state(s));
            rep.input("rb", o.rb);
            State out = round_eval(key, z, s, rb);
            result["state"] = format_state(out);
            result["hex"] = format_state_hex(out);
        } else if (round_anf_cmd->parsed()) {
            LzsKey key = load_key(o.lzs);
            rep.input("lzs", format_lzs(key));
            rep.input("mode", o.mode);
            std::optional<BooleanFunc> z;
            if (!o.z.empty()) z = load_z(o.z);
            auto anf = round_anf(key, o.mode == "concrete" ? ZMode::Concrete : ZMode::Opaque,
                                 z ? &*z : nullptr, {o.placeholder_taps});
            json arr = json::array();
            for (int i = 36; i >= 1; --i)
                arr.push_back({{"bit", i}, {"anf", format_poly(anf[i - 1])}});
            result["outputs"] = std::move(arr);
        } else if (fe_build_cmd->parsed() || fe_spec->parsed()) {
            LzsKey key = load_key(o.lzs);
            InvariantCandidate cand(load_poly(o.inv));
            rep.input("lzs", format_lzs(key));
            rep.input("inv", format_poly(cand.poly));
            rep.input("mode", o.mode);
            std::optional<BooleanFunc> z;
            if (!o.z.empty()) z = load_z(o.z);
            Polynomial fe_poly = fe_build(key, cand, parse_mode(o.mode), z ? &*z : nullptr,
                                          {o.placeholder_taps}, lim);
            if (fe_spec->parsed()) {
                rep.input("case", o.caze);
                fe_poly = fe_specialize(fe_poly, parse_case(o.caze));
            }
            result["fe"] = format_poly(fe_poly);
            result["terms"] = fe_poly.term_count();
        } else if (fe_sys->parsed() || fe_solve_cmd->parsed() || fe_dimacs->parsed()) {
            LzsKey key = load_key(o.lzs);
            InvariantCandidate cand(load_poly(o.inv));
            rep.input("lzs", format_lzs(key));
            rep.input("inv", format_poly(cand.poly));
            rep.input("cases", o.cases);
            FeSystem sys = fe_extract_system(key, cand, parse_cases(o.cases), {}, lim);
            if (fe_sys->parsed()) {
                result["fe_zero"] = sys.fe_zero();
                result["constraint_count"] = sys.constraints.size();
                json arr = json::array();
                for (const auto& [mono, poly] : sys.constraints)
                    arr.push_back({{"monomial", format_monomial(mono)}, {"poly", format_poly(poly)}});
                result["constraints"] = std::move(arr);
                result["text"] = sys.text_report();
            } else if (fe_solve_cmd->parsed()) {
                SolveOptions so;
                if (o.degree_cap >= 0) so.degree_cap = o.degree_cap;
                so.enumerate_cap = o.enumerate_cap;
                so.exclude_constant_zero = o.exclude_zero;
                SolutionSet sol = fe_solve(sys, so);
                result = solution_set_json(sol);
                if (sol.kind == SolutionSet::Kind::Partial) code = 3;
                else if (sol.kind == SolutionSet::Kind::Unsat) code = 1;
            } else {
                std::string cnf = dimacs_export(sys, {o.exclude_zero});
                result["vars"] = 64;
                result["constraints"] = sys.constraints.size();
                if (!o.out.empty()) {
                    std::ofstream f(o.out, std::ios::binary);
                    f << cnf;
                    result["out"] = o.out;
                } else {
                    res.payload = cnf;
                    result["payload"] = "cnf";
                }
            }
        } else if (fe_check_cmd->parsed() || inv_verify->parsed()) {
            LzsKey key = load_key(o.lzs);
            InvariantCandidate cand(load_poly(o.inv));
            BooleanFunc z = load_z(o.z);
            rep.input("lzs", format_lzs(key));
            rep.input("inv", format_poly(cand.poly));
            rep.input("z", z.hex());
            rep.input("cases", o.cases);
            auto verdicts = fe_check(key, cand, z, parse_cases(o.cases), lim);
            result["cases"] = case_results_json(verdicts);
            bool all = true;
            for (const auto& [c, ok] : verdicts) all = all && ok;
            result["holds"] = all;
            code = all ? 0 : 1;
        } else if (sp_red->parsed() || sp_scan->parsed()) {
            std::string text = read_file(o.space);
            rep.input("space", text);
            std::vector<Polynomial> gens;
            std::istringstream in(text);
            std::string line;
            while (std::getline(in, line)) {
                std::string trimmed;
                for (char c : line) if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
                if (trimmed.empty() || trimmed[0] == '#') continue;
                gens.push_back(parse_poly(trimmed));
            }
            PolySpace space(std::move(gens));
            if (sp_red->parsed()) {
                rep.input("eliminate", o.eliminate);
                json steps = json::array();
                steps.push_back({{"dimension", space.dimension()}});
                std::istringstream syms(o.eliminate);
                std::string name;
                while (std::getline(syms, name, ',')) {
                    VarId v;
                    if (name == "P6") v = kVarP6;
                    else if (name == "P13") v = kVarP13;
                    else if (name == "P20") v = kVarP20;
                    else if (name.size() == 1 && var_from_letter(name[0]) != kInvalidVar)
                        v = var_from_letter(name[0]);
                    else throw ParseError("unknown symbol '" + name + "'");
                    EliminationReport er = eliminate_symbol_report(space, v);
                    space = er.space;
                    json pivots = json::array();
                    for (const auto& m : er.pivot_monomials) pivots.push_back(format_monomial(m));
                    steps.push_back({{"eliminated", name},
                                     {"block_rank", er.block_rank},
                                     {"pivot_monomials", std::move(pivots)},
                                     {"dimension", space.dimension()}});
                }
                result["steps"] = std::move(steps);
                json basis = json::array();
                for (const auto& b : space.basis()) basis.push_back(format_poly(b));
                result["basis"] = std::move(basis);
            } else {
                auto combos = combo_scan(space, solvability_filter);
                result["dimension"] = space.dimension();
                result["total_combinations"] = (std::uint64_t{1} << space.dimension()) - 1;
                json arr = json::array();
                for (const auto& p : combos) arr.push_back(format_poly(p));
                result["passing"] = std::move(arr);
            }
        } else if (sp_orbit->parsed()) {
            LzsKey key = load_key(o.lzs);
            rep.input("lzs", format_lzs(key));
            rep.input("seeds", o.seeds);
            rep.input("ignore", o.ignore);
            std::vector<Monomial> seeds;
            std::istringstream in(o.seeds);
            std::string tok;
            while (std::getline(in, tok, ',')) {
                Polynomial p = parse_poly(tok);
                if (p.term_count() != 1) throw ParseError("seed '" + tok + "' is not a monomial");
                seeds.push_back(p.terms()[0]);
            }
            std::vector<VarId> ignore;
            if (!o.ignore.empty()) {
                std::istringstream ign(o.ignore);
                while (std::getline(ign, tok, ',')) {
                    if (tok == "P6") ignore.push_back(kVarP6);
                    else if (tok == "P13") ignore.push_back(kVarP13);
                    else if (tok == "P20") ignore.push_back(kVarP20);
                    else if (tok.size() == 1 && var_from_letter(tok[0]) != kInvalidVar)
                        ignore.push_back(var_from_letter(tok[0]));
                    else throw ParseError("unknown symbol '" + tok + "'");
                }
            }
            int cap = o.degree_cap >= 0 ? o.degree_cap : 6;
            OrbitReport orep = monomial_orbit(key, seeds, cap, ignore, lim);
            json edges = json::array();
            for (const auto& e : orep.edges)
                edges.push_back({{"from", format_monomial(e.from)}, {"to", format_monomial(e.to)}});
            result["nodes"] = orep.nodes.size();
            result["edges"] = std::move(edges);
            json cycles = json::array();
            for (const auto& cyc : orep.cycles) {
                json c = json::array();
                for (const auto& m : cyc) c.push_back(format_monomial(m));
                cycles.push_back(std::move(c));
            }
            result["cycles"] = std::move(cycles);
            json clusters = json::array();
            for (const auto& cl : orep.clusters) {
                json c = json::array();
                for (const auto& m : cl) c.push_back(format_monomial(m));
                clusters.push_back(std::move(c));
            }
            result["clusters"] = std::move(clusters);
        } else if (inv_bias->parsed()) {
            Polynomial p = load_poly(o.inv);
            rep.input("inv", format_poly(p));
            rep.input("event", o.event);
            rep.input("cond", std::to_string(o.cond));
            result["support_size"] = p.support_vars().size();
            result["zero_count"] = zero_count(p);
            if (!o.event.empty()) {
                auto ev = parse_event(o.event);
                std::int64_t c = event_count(p, ev, o.cond);
                result["event"] = o.event;
                result["cond"] = o.cond;
                result["count"] = c;
                std::int64_t condc = o.cond ? (std::int64_t{1} << p.support_vars().size()) -
                                                  zero_count(p)
                                            : zero_count(p);
                result["expected"] =
                    static_cast<double>(condc) / static_cast<double>(1ll << ev.size());
            }
        } else if (inv_minbias->parsed()) {
            Polynomial p = load_poly(o.inv);
            rep.input("inv", format_poly(p));
            rep.input("max_n", std::to_string(o.maxn));
            BiasReport br = min_biased_n(p, o.maxn);
            result["support_size"] = br.support_size;
            result["zero_count"] = br.zeros;
            result["searched_max_n"] = br.searched_max_n;
            if (br.min_biased_n > 0) {
                result["min_biased_n"] = br.min_biased_n;
                json w;
                json vars = json::array();
                for (VarId v : br.witness->vars) vars.push_back(builtin_name(v));
                w["vars"] = std::move(vars);
                w["pattern"] = br.witness->pattern;
                w["count"] = br.witness->count;
                w["expected"] = br.witness->expected;
                result["witness"] = std::move(w);
            } else {
                result["min_biased_n"] = nullptr;
                result["balanced_up_to_max_n"] = true;
            }
        } else if (inv_factor->parsed()) {
            Polynomial p = load_poly(o.inv);
            rep.input("inv", format_poly(p));
            FactorReport fr = linear_factors(p);
            json arr = json::array();
            for (const auto& f : fr.factors) arr.push_back(format_poly(f));
            result["factors"] = std::move(arr);
            result["irreducible"] = fr.irreducible;
        } else if (inv_sim->parsed()) {
            if (!o.seed_given) throw ParseError("--seed is required for simulate");
            LzsKey key = load_key(o.lzs);
            BooleanFunc z = load_z(o.z);
            Polynomial p = load_poly(o.inv);
            rep.input("lzs", format_lzs(key));
            rep.input("z", z.hex());
            rep.input("inv", format_poly(p));
            rep.input("seed", std::to_string(o.seed));
            rep.input("rounds", std::to_string(o.rounds));
            rep.input("samples", std::to_string(o.samples));
            std::optional<Schedule> sch;
            if (!o.schedule.empty()) {
                rep.input("schedule", read_file(o.schedule));
                sch = parse_schedule(o.schedule);
            }
            if (o.probe.empty()) {
                std::uint64_t failures = empirical_verify(key, z, p, o.rounds, o.samples, o.seed,
                                                          sch ? &*sch : nullptr, o.workers);
                result["rounds"] = o.rounds;
                result["samples"] = o.samples;
                result["failures"] = failures;
                code = failures == 0 ? 0 : 1;
            } else {
                Polynomial probe = load_poly(o.probe);
                rep.input("probe", format_poly(probe));
                rep.input("cond", std::to_string(o.cond));
                auto series = bias_propagation(key, z, p, probe, o.cond, o.rounds, o.samples,
                                               o.seed, sch ? &*sch : nullptr);
                std::ostringstream csv;
                csv << "round,count,frequency\n";
                json arr = json::array();
                for (const auto& pt : series) {
                    csv << pt.round << "," << pt.count << "," << pt.frequency << "\n";
                    arr.push_back({{"round", pt.round}, {"count", pt.count},
                                   {"frequency", pt.frequency}});
                }
                result["series"] = std::move(arr);
                if (!o.out.empty()) {
                    std::ofstream f(o.out, std::ios::binary);
                    f << csv.str();
                    result["out"] = o.out;
                } else {
                    res.payload = csv.str();
                    result["payload"] = "csv";
                }
            }
        } else if (lc_scan->parsed()) {
            LzsKey key = load_key(o.lzs);
            BooleanFunc z = load_z(o.z);
            rep.input("lzs", format_lzs(key));
            rep.input("z", z.hex());
            rep.input("case", o.caze);
            CaseSpec c = parse_case(o.caze);
            auto scan = linear_invariant_scan(key, z, c);
            json arr = json::array();
            for (const auto& b : scan.basis) arr.push_back(format_poly(b));
            result["case"] = c.str();
            result["basis"] = std::move(arr);
            result["dimension"] = scan.basis.size();
        }

        res.exit_code = code;
        res.report = rep.finish(code, std::move(result));
        return res;
    } catch (const CapacityError& e) {
        res.exit_code = 3;
        res.report = rep.finish(3, json{{"error", e.what()}});
        return res;
    } catch (const ParseError& e) {
        res.exit_code = 2;
        res.report = rep.finish(2, json{{"error", e.what()}});
        return res;
    } catch (const std::exception& e) {
        res.exit_code = 2;
        res.report = rep.finish(2, json{{"error", e.what()}});
        return res;
    }
}

int run_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    RunResult r = dispatch(args);
    std::cout << r.report;
    if (!r.payload.empty()) std::cout << r.payload;
    return r.exit_code;
}

}  // namespace t310::cli
