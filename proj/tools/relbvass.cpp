// relbvass: provers, translations and solvers for relevance logic and
// branching vector addition systems.
//
// Exit codes: 0 positive verdict or success, 1 negative verdict, 2 usage,
// parse, IO or format error, 3 resource limit.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "relb/fr.hpp"
#include "relb/io.hpp"
#include "relb/lr.hpp"
#include "relb/reductions.hpp"
#include "relb/solvers.hpp"

using namespace relb;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
    if (!out.flush()) throw UsageError("cannot write '" + path + "'");
}

std::string trim(std::string s) {
    auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
    while (!s.empty() && ws(s.back())) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && ws(s[i])) ++i;
    return s.substr(i);
}

bool is_bvas_text(const std::string& text) {
    // BVAS files have no state names: every rule line is "unary <vec>".
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto w = split_ws(strip_comment(line));
        if (w.empty()) continue;
        if (w[0] == "unary" || w[0] == "split") return w.size() == 2;
        if (w[0] == "state" || w[0] == "mode") return false;
    }
    // no rules: a BVAS root is a vector, a BVASS root is a name
    std::istringstream again(text);
    while (std::getline(again, line)) {
        auto w = split_ws(strip_comment(line));
        if (w.size() == 2 && w[0] == "root") return !w[1].empty() && (std::isdigit(static_cast<unsigned char>(w[1][0])) || w[1] == "()");
    }
    return false;
}

struct Output {
    bool json_mode = false;

    int verdict(const std::string& word, int code, json extra = json::object()) const {
        if (json_mode) {
            json j;
            j["verdict"] = word;
            for (auto& [k, v] : extra.items()) j[k] = v;
            std::cout << j.dump() << "\n";
        } else {
            std::cout << word << "\n";
        }
        return code;
    }
};

// ------------------------------------------------------------------ prove

struct ProveArgs {
    std::string formula;
    std::string calculus = "fr";
    std::string emit;
    std::size_t budget = ProveOptions{}.node_budget;
};

int run_prove(const ProveArgs& a, const Output& out) {
    Formula f = parse_formula(a.formula);
    ProveOptions opt;
    opt.node_budget = a.budget;
    bool provable = false;
    std::size_t nodes = 0;
    std::string proof_text;
    json proof_json;
    if (a.calculus == "lr") {
        auto r = lr_prove(theorem_sequent(f), opt);
        provable = r.provable;
        nodes = r.nodes;
        if (r.proof) {
            proof_text = render_lr_proof(*r.proof);
            proof_json = lr_proof_to_json(*r.proof);
        }
    } else {
        auto r = fr_prove(focus_theorem_sequent(f), opt);
        provable = r.provable;
        nodes = r.nodes;
        if (r.proof) {
            proof_text = render_fr_proof(*r.proof);
            proof_json = fr_proof_to_json(*r.proof);
        }
    }
    if (!a.emit.empty() && provable) write_file(a.emit, proof_text);
    json extra;
    extra["formula"] = render_formula(f);
    extra["calculus"] = a.calculus;
    extra["nodes"] = nodes;
    if (provable) extra["proof"] = proof_json;
    return out.verdict(provable ? "PROVABLE" : "NOT_PROVABLE", provable ? 0 : 1, extra);
}

// -------------------------------------------------------------- translate

struct TranslateArgs {
    std::string kind, in, out, map;
};

int run_translate(const TranslateArgs& a, const Output& out) {
    std::string text = read_file(a.in);
    std::string result;
    SideMap map;
    if (a.kind == "formula-to-bvass") {
        auto t = formula_to_bvass(parse_formula(trim(text)));
        result = render_instance(t.instance);
        map = t.map;
    } else if (a.kind == "exp-to-cov") {
        auto t = expansive_to_coverability(parse_bvass_text(text));
        result = render_instance(t.instance);
        map = t.map;
    } else if (a.kind == "cov-to-compr") {
        auto t = coverability_to_comprehensive(as_cover(parse_bvass_text(text)));
        result = render_instance(t.instance);
        map = t.map;
    } else if (a.kind == "compr-to-formula") {
        auto t = comprehensive_to_formula(parse_bvass_text(text));
        result = render_formula(t.formula) + "\n";
        map = t.map;
    } else if (a.kind == "bvass-to-bvas") {
        auto t = bvass_to_bvas(as_cover(parse_bvass_text(text)));
        result = render_bvas(t.instance);
        map = t.map;
    } else if (a.kind == "bvas-to-bvass") {
        auto t = bvas_to_bvass(parse_bvas_text(text));
        result = render_instance(t.instance);
        map = t.map;
    } else if (a.kind == "to-ordinary") {
        auto r = parse_bvass_text(text);
        Bvass b = to_ordinary(r.system, &map);
        result = render_instance(ReachInstance{b, r.root, r.leaf, r.mode});
    } else {
        throw UsageError("unknown translation '" + a.kind + "'");
    }
    write_file(a.out, result);
    std::string map_path = a.map.empty() ? a.out + ".map" : a.map;
    write_file(map_path, map.render());
    json extra;
    extra["kind"] = a.kind;
    extra["output"] = a.out;
    extra["map"] = map_path;
    return out.verdict("OK", 0, extra);
}

// ------------------------------------------------------------------ solve

struct SolveArgs {
    std::string problem, in, mode, emit;
    int cap = -1;
    std::size_t budget = SolveOptions{}.budget_bytes;
};

int run_solve(const SolveArgs& a, const Output& out) {
    auto inst = parse_bvass_text(read_file(a.in));
    if (!a.mode.empty()) inst.mode = *mode_from_name(a.mode);
    SolveOptions opt;
    opt.budget_bytes = a.budget;
    SolveResult r;
    if (a.problem == "cover") {
        if (inst.mode != Mode::Plain) throw UsageError("coverability is solved in plain mode");
        r = solve_coverability(as_cover(inst), a.cap, opt);
    } else {
        r = solve_reachability(inst, a.cap, opt);
    }
    if (r.found && !a.emit.empty()) write_file(a.emit, render_deduction_tree(inst.system, *r.witness));
    json extra;
    extra["problem"] = a.problem;
    extra["mode"] = mode_name(inst.mode);
    extra["cap"] = a.cap;
    extra["complete"] = r.complete;
    extra["explored"] = r.explored;
    if (r.found) extra["witness"] = deduction_tree_to_json(inst.system, *r.witness);
    return out.verdict(r.found ? "WITNESS" : "NOT_FOUND_WITHIN_CAP", r.found ? 0 : 1, extra);
}

// ------------------------------------------------------------------ check

struct CheckArgs {
    std::string what, file, system, mode, goal = "cover";
};

int invalid(const Output& out, const std::string& why) {
    if (!out.json_mode) {
        std::cout << "INVALID: " << why << "\n";
        return 1;
    }
    json extra;
    extra["reason"] = why;
    return out.verdict("INVALID", 1, extra);
}

int check_proof_file(const CheckArgs& a, const Output& out) {
    std::string text = read_file(a.file);
    CheckResult c;
    std::string calculus;
    try {
        c = check_lr_proof(parse_lr_proof_text(text));
        calculus = "lr";
    } catch (const FormatError&) {
        c = check_fr_proof(parse_fr_proof_text(text));
        calculus = "fr";
    }
    if (!c.ok) return invalid(out, c.message);
    json extra;
    extra["calculus"] = calculus;
    return out.verdict("VALID", 0, extra);
}

int check_witness_file(const CheckArgs& a, const Output& out) {
    if (a.system.empty()) throw UsageError("check witness needs --system");
    std::string sys_text = read_file(a.system);
    std::string text = read_file(a.file);
    if (is_bvas_text(sys_text)) {
        auto b = parse_bvas_text(sys_text);
        std::istringstream in(text);
        BvasTree t = parse_bvas_tree(in, b.system.dim);
        std::string why;
        if (!check_bvas_tree(b.system, t, b.leaf, &why)) return invalid(out, why);
        if (t.label != b.root) return invalid(out, "root label is not the root vector");
        return out.verdict("VALID", 0);
    }
    auto inst = parse_bvass_text(sys_text);
    if (!a.mode.empty()) inst.mode = *mode_from_name(a.mode);
    DeductionTree t = parse_deduction_tree_text(text, inst.system);
    auto c = check_deduction_tree(inst.system, t, inst.leaf, mode_expansive(inst.mode));
    if (!c.valid) return invalid(out, c.message);
    if (t.node.state != inst.root) return invalid(out, "tree is not rooted at the root state");
    if (a.goal == "reach" && !vec_zero(t.node.vec)) return invalid(out, "root vector is not zero");
    if (inst.mode == Mode::Comprehensive && a.goal == "reach" && c.used.count() != inst.system.num_rules())
        return invalid(out, "not every rule is used");
    json extra;
    extra["mode"] = mode_name(inst.mode);
    extra["goal"] = a.goal;
    return out.verdict("VALID", 0, extra);
}

// ----------------------------------------------------------------- bounds

int run_bounds(const std::string& path, const Output& out) {
    std::string text = read_file(path);
    BvasInstance b;
    if (is_bvas_text(text)) {
        b = parse_bvas_text(text);
    } else {
        b = bvass_to_bvas(as_cover(parse_bvass_text(text))).instance;
    }
    auto t = appendix_b_bounds(b.system, b.root);
    if (out.json_mode) {
        json j;
        j["dim"] = t.dim;
        j["L"] = t.L.get_str();
        j["exponent"] = t.exponent.get_str();
        j["H"] = t.H_text;
        j["B"] = t.B_text;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "dim " << t.dim << "\nL " << t.L.get_str() << "\nexponent " << t.exponent.get_str() << "\nH "
                  << t.H_text << "\nB " << t.B_text << "\n";
    }
    return 0;
}

// -------------------------------------------------------------- roundtrip

int run_roundtrip(const std::string& path, int cap, std::size_t budget, const Output& out) {
    auto inst = parse_bvass_text(read_file(path));
    if (inst.mode == Mode::Comprehensive) throw UsageError("roundtrip takes a plain or expansive instance");
    CoverInstance cover = as_cover(inst);
    if (!cover.system.ordinary()) cover = to_ordinary(cover);
    if (inst.mode == Mode::Expansive) cover = expansive_to_coverability(as_reach(cover, Mode::Expansive)).instance;
    SolveOptions sopt;
    sopt.budget_bytes = budget;
    auto solved = solve_coverability(cover, cap, sopt);
    auto comp = coverability_to_comprehensive(cover);
    auto enc = comprehensive_to_formula(comp.instance);
    auto proved = fr_prove(focus_theorem_sequent(enc.formula));
    bool agree = solved.found == proved.provable;
    std::string detail = std::string("cover=") + (solved.found ? "YES" : "NO") +
                         " formula=" + (proved.provable ? "PROVABLE" : "NOT_PROVABLE");
    if (out.json_mode) {
        json extra;
        extra["cover"] = solved.found;
        extra["formula"] = proved.provable;
        extra["cap"] = cap;
        extra["complete"] = solved.complete;
        return out.verdict(agree ? "AGREE" : "DISAGREE", agree ? 0 : 1, extra);
    }
    std::cout << (agree ? "AGREE " : "DISAGREE ") << detail << "\n";
    return agree ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relbvass: relevance logic provers and branching VASS tools"};
    app.require_subcommand(1, 1);
    std::string format = "text";
    app.add_option("--format", format, "Verdict format")->check(CLI::IsMember({"text", "json"}));

    ProveArgs pa;
    auto* prove = app.add_subcommand("prove", "Decide provability of an implicational formula");
    prove->add_option("formula", pa.formula, "Formula")->required();
    prove->add_option("--calculus", pa.calculus)->check(CLI::IsMember({"lr", "fr"}));
    prove->add_option("--emit-proof", pa.emit, "Write the proof tree here");
    prove->add_option("--budget", pa.budget, "Search node budget");

    TranslateArgs ta;
    auto* translate = app.add_subcommand("translate", "Apply a reduction");
    translate->add_option("kind", ta.kind)
        ->required()
        ->check(CLI::IsMember({"formula-to-bvass", "exp-to-cov", "cov-to-compr", "compr-to-formula", "bvass-to-bvas",
                               "bvas-to-bvass", "to-ordinary"}));
    translate->add_option("IN", ta.in)->required();
    translate->add_option("OUT", ta.out)->required();
    translate->add_option("--map", ta.map, "Side map path (default OUT.map)");

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "Search for a witness within a value cap");
    solve->add_option("problem", sa.problem)->required()->check(CLI::IsMember({"cover", "reach"}));
    solve->add_option("IN", sa.in)->required();
    solve->add_option("--cap", sa.cap)->required()->check(CLI::NonNegativeNumber);
    solve->add_option("--mode", sa.mode)->check(CLI::IsMember({"plain", "expansive", "comprehensive"}));
    solve->add_option("--emit-witness", sa.emit);
    solve->add_option("--budget", sa.budget, "Memory budget in bytes");

    CheckArgs ca;
    auto* check = app.add_subcommand("check", "Validate a proof or witness file");
    check->add_option("what", ca.what)->required()->check(CLI::IsMember({"proof", "witness"}));
    check->add_option("FILE", ca.file)->required();
    check->add_option("--system", ca.system, "System the witness belongs to");
    check->add_option("--mode", ca.mode)->check(CLI::IsMember({"plain", "expansive", "comprehensive"}));
    check->add_option("--goal", ca.goal, "cover: any root vector; reach: zero root vector")
        ->check(CLI::IsMember({"cover", "reach"}));

    std::string bounds_in;
    auto* bounds = app.add_subcommand("bounds", "Print the completeness bounds L, H, B");
    bounds->add_option("IN", bounds_in)->required();

    std::string rt_in;
    int rt_cap = -1;
    std::size_t rt_budget = SolveOptions{}.budget_bytes;
    auto* roundtrip = app.add_subcommand("roundtrip", "Compare coverability with provability of the encoding");
    roundtrip->add_option("IN", rt_in)->required();
    roundtrip->add_option("--cap", rt_cap)->required()->check(CLI::NonNegativeNumber);
    roundtrip->add_option("--budget", rt_budget, "Memory budget in bytes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Output out{format == "json"};
    try {
        if (*prove) return run_prove(pa, out);
        if (*translate) return run_translate(ta, out);
        if (*solve) return run_solve(sa, out);
        if (*check) return ca.what == "proof" ? check_proof_file(ca, out) : check_witness_file(ca, out);
        if (*bounds) return run_bounds(bounds_in, out);
        if (*roundtrip) return run_roundtrip(rt_in, rt_cap, rt_budget, out);
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const CapOverflow& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const std::length_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const std::bad_alloc&) {
        std::cerr << "resource limit: out of memory\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
