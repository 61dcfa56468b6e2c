// Acceptance run: prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails. Witness and proof artifacts of criteria 3 to 5 go
// to --artifacts; criterion 8 regenerates them and compares bytes.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "relb/fr.hpp"
#include "relb/generators.hpp"
#include "relb/io.hpp"
#include "relb/lr.hpp"
#include "relb/reductions.hpp"
#include "relb/solvers.hpp"

using namespace relb;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Report {
    int failed = 0;
    void line(int n, bool ok, const std::string& detail) {
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << detail << std::endl;
        failed += ok ? 0 : 1;
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void dump(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << text;
}

bool covered(const Enumeration& en, int root) { return !en.at_state(root).empty(); }

bool reached(const Enumeration& en, int root) {
    for (int i : en.at_state(root))
        if (vec_zero(en.entries[static_cast<std::size_t>(i)].config.vec)) return true;
    return false;
}

// ------------------------------------------------------------- corpus runs

struct CorpusResult {
    Formula formula;
    LrResult lr;
    FrResult fr;
};

struct Criterion1 {
    std::vector<CorpusResult> runs;
    int disagreements = 0;
    int provable = 0;
    double seconds = 0;
};

Criterion1 run_calculus_equivalence() {
    Criterion1 c;
    auto t0 = Clock::now();
    for (const auto& f : enumerate_implicational({"a", "b"}, 9)) {
        CorpusResult r{f, lr_prove(theorem_sequent(f)), fr_prove(focus_theorem_sequent(f))};
        c.disagreements += r.lr.provable != r.fr.provable;
        c.provable += r.lr.provable;
        c.runs.push_back(std::move(r));
    }
    c.seconds = seconds_since(t0);
    return c;
}

// ---------------------------------------------------------- criteria 3 to 5

struct PipelineOutcome {
    bool ok = true;
    std::string detail;
};

// Witnesses for every provable formula of the corpus, one block per formula.
PipelineOutcome run_formula_pipeline(const std::vector<CorpusResult>& corpus, const fs::path& dir) {
    std::ostringstream art;
    int found = 0, missing = 0, spurious = 0, invalid = 0;
    for (const auto& r : corpus) {
        auto t = expansive_to_coverability(formula_to_bvass(r.formula).instance);
        auto s = solve_coverability(t.instance, 8);
        if (r.lr.provable) {
            if (!s.found) {
                ++missing;
                continue;
            }
            ++found;
            if (!check_deduction_tree(t.instance.system, *s.witness, t.instance.leaf, false).valid ||
                s.witness->node.state != t.instance.root)
                ++invalid;
            art << "# " << render_formula(r.formula) << "\n" << render_deduction_tree(t.instance.system, *s.witness);
        } else if (s.found) {
            ++spurious;
        }
    }
    dump(dir / "formula_pipeline_witnesses.txt", art.str());
    PipelineOutcome o;
    o.ok = missing == 0 && spurious == 0 && invalid == 0;
    o.detail = std::to_string(found) + " witnesses at cap 8, " + std::to_string(missing) + " missing, " +
               std::to_string(spurious) + " for unprovable formulas, " + std::to_string(invalid) + " invalid";
    return o;
}

PipelineOutcome run_expansive_equivalence(std::uint64_t seed, const fs::path& dir) {
    auto t0 = Clock::now();
    std::mt19937_64 rng(seed);
    RandomShape shape{3, 4, 8};
    std::ostringstream art;
    int decided = 0, disagree = 0, oracle_disagree = 0, invalid = 0, positive = 0;
    for (int k = 0; k < 200; ++k) {
        auto inst = random_reach_instance(rng, shape, Mode::Expansive);
        auto en = enumerate_trees(inst.system, inst.leaf, true, 8, 6, false);
        bool pos = reached(en, inst.root);
        auto reach = solve_reachability(inst, 6);
        auto tr = expansive_to_coverability(inst);
        auto cover = solve_coverability(tr.instance, 6);
        art << "# instance " << k << "\n";
        if (reach.found) {
            auto c = check_deduction_tree(inst.system, *reach.witness, inst.leaf, true);
            if (!c.valid || reach.witness->node.state != inst.root || !vec_zero(reach.witness->node.vec)) ++invalid;
            art << render_deduction_tree(inst.system, *reach.witness);
        }
        if (cover.found) {
            auto c = check_deduction_tree(tr.instance.system, *cover.witness, tr.instance.leaf, false);
            if (!c.valid || cover.witness->node.state != tr.instance.root) ++invalid;
            art << "# translation\n" << render_deduction_tree(tr.instance.system, *cover.witness);
        }
        if (!pos && !en.exact()) continue;
        ++decided;
        positive += pos;
        disagree += reach.found != cover.found;
        oracle_disagree += reach.found != pos;
    }
    dump(dir / "expansive_equivalence_witnesses.txt", art.str());
    double secs = seconds_since(t0);
    PipelineOutcome o;
    o.ok = disagree == 0 && oracle_disagree == 0 && invalid == 0 && decided > 0 && secs < 600;
    std::ostringstream d;
    d << decided << "/200 decided (" << positive << " reachable), " << disagree << " disagreements, " << oracle_disagree
      << " against the oracle, " << invalid << " invalid witnesses, " << secs << "s";
    o.detail = d.str();
    return o;
}

PipelineOutcome run_round_trip(std::uint64_t seed, const fs::path& dir) {
    std::mt19937_64 rng(seed);
    RandomShape shape{2, 3, 5};
    std::ostringstream proofs, witnesses;
    int decided = 0, disagree = 0, invalid = 0, limited = 0, positive = 0;
    for (int k = 0; k < 100; ++k) {
        auto inst = random_cover_instance(rng, shape);
        auto en = enumerate_trees(inst.system, inst.leaf, false, 8, 6, false);
        bool pos = covered(en, inst.root);
        if (!pos && !en.exact()) continue;
        ++decided;
        positive += pos;
        auto cover = solve_coverability(inst, 6);
        auto enc = comprehensive_to_formula(coverability_to_comprehensive(inst).instance);
        FrResult fr;
        try {
            fr = fr_prove(focus_theorem_sequent(enc.formula));
        } catch (const ResourceLimitError&) {
            ++limited;
            continue;
        }
        if (fr.provable != cover.found || cover.found != pos) ++disagree;
        proofs << "# instance " << k << "\n";
        witnesses << "# instance " << k << "\n";
        if (fr.provable) {
            if (!check_fr_proof(*fr.proof).ok || fr.proof->conclusion != focus_theorem_sequent(enc.formula)) ++invalid;
            proofs << render_fr_proof(*fr.proof);
        }
        if (cover.found) {
            if (!check_deduction_tree(inst.system, *cover.witness, inst.leaf, false).valid) ++invalid;
            witnesses << render_deduction_tree(inst.system, *cover.witness);
        }
    }
    dump(dir / "round_trip_proofs.txt", proofs.str());
    dump(dir / "round_trip_witnesses.txt", witnesses.str());
    PipelineOutcome o;
    o.ok = disagree == 0 && invalid == 0 && limited == 0 && decided > 0;
    o.detail = std::to_string(decided) + "/100 decided (" + std::to_string(positive) + " coverable), " +
               std::to_string(disagree) + " disagreements, " + std::to_string(limited) + " hit the search budget, " +
               std::to_string(invalid) + " invalid artifacts";
    return o;
}

// ---------------------------------------------------------------- others

PipelineOutcome run_known_verdicts() {
    struct Known {
        const char* formula;
        bool provable;
        bool bounded_check;
    };
    const Known cases[] = {{"a->a", true, false},
                           {"b->a->b", false, true},
                           {"(a->a->b)->a->b", true, true},
                           {"((a->b)->a)->a", false, true},
                           {"a->a->a", false, true}};
    PipelineOutcome o;
    for (const auto& c : cases) {
        Formula f = parse_formula(c.formula);
        bool lr = lr_prove(theorem_sequent(f)).provable;
        bool fr = fr_prove(focus_theorem_sequent(f)).provable;
        bool good = lr == c.provable && fr == c.provable;
        if (c.bounded_check)
            good = good && (lr_prove_bounded(theorem_sequent(f), 14) == BoundedVerdict::Provable) == c.provable;
        if (!good) {
            o.ok = false;
            o.detail += std::string(o.detail.empty() ? "" : ", ") + "wrong verdict for " + c.formula;
        }
    }
    if (o.ok) o.detail = "5 verdicts match, 4 confirmed by the depth-14 oracle";
    return o;
}

PipelineOutcome run_bvas_encoding_checks(std::uint64_t seed) {
    PipelineOutcome o;
    int clashes = 0;
    for (int n = 1; n <= 50; ++n)
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    clashes += vec_leq(state_code(i, n, k, 0), state_code(j, n, k, 0)) != (i == j);

    std::mt19937_64 rng(seed);
    RandomShape shape{2, 3, 4};
    int decided = 0, disagree = 0;
    for (int k = 0; k < 100; ++k) {
        auto inst = random_cover_instance(rng, shape);
        auto a = enumerate_trees(inst.system, inst.leaf, false, 10, 6, false);
        auto t = bvass_to_bvas(inst);
        auto b = enumerate_bvas(t.instance.system, t.instance.leaf, 20, 8);
        bool pa = covered(a, inst.root), pb = b.covering(t.instance.root).has_value();
        if ((pa || a.exact()) && (pb || b.exact())) {
            ++decided;
            disagree += pa != pb;
        }
    }
    for (int k = 0; k < 100; ++k) {
        auto inst = random_bvas_instance(rng, 1, 2, 1, 1);
        auto a = enumerate_bvas(inst.system, inst.leaf, 6, 6);
        auto back = bvas_to_bvass(inst);
        auto b = enumerate_trees(back.instance.system, back.instance.leaf, false, 12, 6, false);
        bool pa = a.covering(inst.root).has_value(), pb = covered(b, back.instance.root);
        if ((pa || a.exact()) && (pb || b.exact())) {
            ++decided;
            disagree += pa != pb;
        }
    }

    auto ex = parse_bvas_text("dim 1\nunary -1\nunary 3\nroot 2\nleaf 0\n");
    auto bt = appendix_b_bounds(ex.system, ex.root);
    bool bounds_ok = bt.L == 7 && bt.H_text == "117649" && bt.B_text == "13841287201";

    o.ok = clashes == 0 && disagree == 0 && decided > 0 && bounds_ok;
    o.detail = "(a) " + std::to_string(clashes) + " code clashes for |Q| <= 50; (b) " + std::to_string(decided) +
               "/200 decided, " + std::to_string(disagree) + " disagreements; (c) L=" + bt.L.get_str() + " H=" + bt.H_text +
               " B=" + bt.B_text;
    return o;
}

PipelineOutcome run_transformations(const std::vector<CorpusResult>& corpus, std::uint64_t seed) {
    int defocused = 0, focalized = 0, bad = 0;
    for (const auto& r : corpus) {
        if (r.fr.proof) {
            ++defocused;
            LrProof p = defocus(*r.fr.proof);
            if (!check_lr_proof(p).ok || p.conclusion != theorem_sequent(r.formula)) ++bad;
        }
        if (r.lr.proof) {
            ++focalized;
            FrProof p = focalize(*r.lr.proof);
            if (!check_fr_proof(p).ok || p.conclusion != focus_theorem_sequent(r.formula)) ++bad;
        }
    }

    std::mt19937_64 rng(seed);
    for (int i = 0; i < 500; ++i) {
        Formula f = random_implicational(rng, {"a", "b", "c"}, 1 + static_cast<int>(rng() % 10));
        FrProof p = admissible_identity(f);
        Multiset m;
        ms_add(m, f);
        if (!check_fr_proof(p).ok || p.conclusion != FocusSequent{m, std::nullopt, f}) ++bad;
    }

    std::vector<std::string> atoms = {"a", "b"};
    int mixed = 0;
    for (int tries = 0; mixed < 200 && tries < 200000; ++tries) {
        Formula cut = random_implicational(rng, atoms, 1 + 2 * static_cast<int>(rng() % 3));
        Multiset gamma;
        int ng = static_cast<int>(rng() % 3);
        for (int i = 0; i < ng; ++i) ms_add(gamma, random_implicational(rng, atoms, 1 + 2 * static_cast<int>(rng() % 2)));
        auto left = fr_prove(FocusSequent{gamma, std::nullopt, cut});
        if (!left.provable) continue;
        Multiset delta;
        ms_add(delta, cut, 1 + static_cast<int>(rng() % 2));
        int nd = static_cast<int>(rng() % 2);
        for (int i = 0; i < nd; ++i) ms_add(delta, random_implicational(rng, atoms, 1 + 2 * static_cast<int>(rng() % 2)));
        Formula goal = Formula::atom(atoms[rng() % 2]);
        auto right = fr_prove(FocusSequent{delta, std::nullopt, goal});
        if (!right.provable) continue;
        int copies = 1 + static_cast<int>(rng() % static_cast<unsigned>(ms_count(delta, cut)));
        FrProof out = eliminate_mix(*left.proof, *right.proof, MixForm::Context, copies - 1);
        Multiset want = delta;
        ms_add(want, cut, -copies);
        want = ms_sum(want, gamma);
        if (!check_fr_proof(out).ok || out.conclusion != FocusSequent{want, std::nullopt, goal}) ++bad;
        ++mixed;
    }

    PipelineOutcome o;
    o.ok = bad == 0 && mixed == 200;
    o.detail = std::to_string(defocused) + " defocused, " + std::to_string(focalized) + " focalized, 500 identities, " +
               std::to_string(mixed) + " mix pairs; " + std::to_string(bad) + " checker failures";
    return o;
}

bool same_files(const fs::path& a, const fs::path& b, std::string& detail) {
    int files = 0;
    for (const auto& e : fs::directory_iterator(a)) {
        if (!e.is_regular_file()) continue;
        ++files;
        fs::path other = b / e.path().filename();
        if (!fs::exists(other) || slurp(e.path()) != slurp(other)) {
            detail = e.path().filename().string() + " differs";
            return false;
        }
    }
    detail = std::to_string(files) + " artifact files byte-identical on rerun";
    return files > 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance run"};
    std::string artifacts = "acceptance_artifacts";
    std::uint64_t seed = 0;
    app.add_option("--artifacts", artifacts, "Directory for witness and proof files");
    app.add_option("--seed", seed, "Base seed; criterion n draws from seed + n");
    CLI11_PARSE(app, argc, argv);

    fs::path first = fs::path(artifacts) / "first", second = fs::path(artifacts) / "rerun";
    fs::create_directories(first);
    fs::create_directories(second);

    Report rep;
    auto c1 = run_calculus_equivalence();
    {
        std::ostringstream d;
        d << c1.runs.size() << " formulas, " << c1.provable << " provable, " << c1.disagreements << " disagreements, "
          << c1.seconds << "s";
        rep.line(1, c1.disagreements == 0 && c1.seconds < 300, d.str());
    }
    auto c2 = run_known_verdicts();
    rep.line(2, c2.ok, c2.detail);

    auto c3 = run_formula_pipeline(c1.runs, first);
    rep.line(3, c3.ok, c3.detail);
    auto c4 = run_expansive_equivalence(seed + 4, first);
    rep.line(4, c4.ok, c4.detail);
    auto c5 = run_round_trip(seed + 5, first);
    rep.line(5, c5.ok, c5.detail);

    auto c6 = run_bvas_encoding_checks(seed + 6);
    rep.line(6, c6.ok, c6.detail);
    auto c7 = run_transformations(c1.runs, seed + 7);
    rep.line(7, c7.ok, c7.detail);

    // Criterion 8: recompute everything from scratch, corpus proofs included.
    auto again = run_calculus_equivalence();
    run_formula_pipeline(again.runs, second);
    run_expansive_equivalence(seed + 4, second);
    run_round_trip(seed + 5, second);
    std::string detail;
    bool same = same_files(first, second, detail);
    rep.line(8, same, detail);

    return rep.failed == 0 ? 0 : 1;
}
