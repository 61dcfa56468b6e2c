#include <gtest/gtest.h>

#include <random>

#include "relb/fr.hpp"

using namespace relb;

namespace {

FrResult fprove(const std::string& f) { return fr_prove(focus_theorem_sequent(parse_formula(f))); }

FrProof atomic_id(const std::string& a) {
    FrProof p;
    p.rule = FrRule::AtomicId;
    p.conclusion = parse_focus_sequent("[" + a + "] ||- " + a);
    return p;
}

// |- a->a as ImpRf over Focus over AtomicId
FrProof aa_proof() {
    FrProof f;
    f.rule = FrRule::Focus;
    f.conclusion = parse_focus_sequent("a ||- a");
    f.premises.push_back(atomic_id("a"));
    FrProof r;
    r.rule = FrRule::ImpRf;
    r.conclusion = parse_focus_sequent("||- a->a");
    r.premises.push_back(f);
    return r;
}

}  // namespace

TEST(FrCheck, IdentityProof) { EXPECT_TRUE(check_fr_proof(aa_proof()).ok); }

TEST(FrCheck, LeftRuleNeedsAtomicSuccedent) {
    // a, [a->b] ||- c->b is not a legal focused sequent
    FrProof p;
    p.rule = FrRule::ImpLf;
    p.conclusion = FocusSequent{ms_of({parse_formula("a")}), parse_formula("a->b"), parse_formula("c->b")};
    FrProof l;
    l.rule = FrRule::Focus;
    l.conclusion = parse_focus_sequent("a ||- a");
    l.premises.push_back(atomic_id("a"));
    p.premises.push_back(l);
    FrProof r;
    r.rule = FrRule::AtomicId;
    r.conclusion = FocusSequent{{}, parse_formula("b"), parse_formula("c->b")};
    p.premises.push_back(r);
    EXPECT_FALSE(check_fr_proof(p).ok);
}

TEST(FrCheck, FocusedAtomMismatch) {
    FrProof p;
    p.rule = FrRule::AtomicId;
    p.conclusion = parse_focus_sequent("[a] ||- b");
    EXPECT_FALSE(check_fr_proof(p).ok);
    p.conclusion = parse_focus_sequent("c, [a] ||- a");
    EXPECT_FALSE(check_fr_proof(p).ok);
}

TEST(FrCheck, ContextSplitArithmetic) {
    // a, a->b ||- b with the a on the wrong side
    FrProof leaf;
    leaf.rule = FrRule::Focus;
    leaf.conclusion = parse_focus_sequent("a ||- a");
    leaf.premises.push_back(atomic_id("a"));
    FrProof imp;
    imp.rule = FrRule::ImpLf;
    imp.conclusion = parse_focus_sequent("a, [a->b] ||- b");
    imp.premises.push_back(leaf);
    imp.premises.push_back(atomic_id("b"));
    EXPECT_TRUE(check_fr_proof(imp).ok);
    imp.conclusion = parse_focus_sequent("a, a, [a->b] ||- b");
    auto res = check_fr_proof(imp);
    EXPECT_FALSE(res.ok);
    EXPECT_TRUE(res.path.empty());
}

TEST(FrProve, Examples) {
    auto r = fprove("a->a");
    ASSERT_TRUE(r.provable);
    EXPECT_TRUE(check_fr_proof(*r.proof).ok);
    EXPECT_FALSE(fprove("b->a->b").provable);
    EXPECT_FALSE(fprove("((a->b)->a)->a").provable);
    EXPECT_FALSE(fprove("a->a->a").provable);
    auto c = fprove("(a->a->b)->a->b");
    ASSERT_TRUE(c.provable);
    EXPECT_TRUE(check_fr_proof(*c.proof).ok);
    EXPECT_GE(c.proof->count(FrRule::Cf), 1u);
}

TEST(FrProve, RejectsFusion) { EXPECT_THROW(fprove("a o b -> a o b"), UnsupportedConnective); }

TEST(FrProve, AgreesWithLrOnSmallCorpus) {
    for (const auto& f : enumerate_implicational({"a", "b"}, 7)) {
        auto l = lr_prove(theorem_sequent(f));
        auto r = fr_prove(focus_theorem_sequent(f));
        ASSERT_EQ(l.provable, r.provable) << render_formula(f);
        if (r.proof) {
            ASSERT_TRUE(check_fr_proof(*r.proof).ok) << render_formula(f);
            EXPECT_EQ(r.proof->conclusion, focus_theorem_sequent(f));
        }
    }
}

TEST(FrProve, EncodedIncrementDecrement) {
    // q_l, (e->q1)->q, q1->e->q2... : a two-step counter run q -> q1 -> ql
    auto s = parse_focus_sequent("ql, (e->q1)->q, ql->e->q1 ||- q");
    auto r = fr_prove(s);
    ASSERT_TRUE(r.provable);
    EXPECT_TRUE(check_fr_proof(*r.proof).ok);
    // the decrement alone cannot fire at zero
    EXPECT_FALSE(fr_prove(parse_focus_sequent("ql, ql->e->q ||- q")).provable);
    EXPECT_TRUE(fr_prove(parse_focus_sequent("ql, e, ql->e->q ||- q")).provable);
}

TEST(FrProve, FocusedAtomicRigidity) {
    std::vector<std::string> pool = {"a", "b", "a->a", "a->b", "b->a"};
    std::vector<std::string> succs = {"a", "b", "a->a"};
    for (std::size_t mask = 0; mask < (1u << pool.size()); ++mask) {
        for (int twice = 0; twice < 2; ++twice) {
            Multiset g;
            for (std::size_t i = 0; i < pool.size(); ++i)
                if (mask & (1u << i)) ms_add(g, parse_formula(pool[i]), 1 + (twice && i == 0));
            for (const auto& focus : {"a", "b"})
                for (const auto& s : succs) {
                    FocusSequent q{g, parse_formula(focus), parse_formula(s)};
                    bool expect = g.empty() && s == std::string(focus);
                    EXPECT_EQ(fr_prove(q).provable, expect) << render_focus_sequent(q);
                }
        }
    }
}

TEST(Defocus, IdentityLosesFocusNode) {
    FrProof p = aa_proof();
    LrProof l = defocus(p);
    EXPECT_EQ(l.size(), 2u);
    EXPECT_TRUE(check_lr_proof(l).ok);
    FrProof bad = p;
    bad.conclusion = parse_focus_sequent("||- b->b");
    EXPECT_THROW(defocus(bad), InvalidProof);
}

TEST(Defocus, CorpusProofs) {
    for (const auto& f : enumerate_implicational({"a", "b"}, 9)) {
        auto r = fr_prove(focus_theorem_sequent(f));
        if (!r.proof) continue;
        LrProof l = defocus(*r.proof);
        ASSERT_TRUE(check_lr_proof(l).ok) << render_formula(f);
        EXPECT_EQ(l.conclusion, theorem_sequent(f));
        EXPECT_EQ(l.size(), r.proof->size() - r.proof->count(FrRule::Focus));
    }
}

TEST(Identity, BaseAndStep) {
    FrProof a = admissible_identity(parse_formula("a"));
    EXPECT_EQ(a.size(), 2u);
    EXPECT_EQ(a.rule, FrRule::Focus);
    EXPECT_TRUE(check_fr_proof(a).ok);
    FrProof ab = admissible_identity(parse_formula("a->b"));
    EXPECT_TRUE(check_fr_proof(ab).ok);
    // ImpRf, Focus, ImpLf, identity on a (2 nodes), AtomicId on b
    EXPECT_EQ(ab.size(), 6u);
    FrProof big = admissible_identity(parse_formula("(a->b)->(a->b)"));
    EXPECT_TRUE(check_fr_proof(big).ok);
    EXPECT_EQ(big.conclusion, parse_focus_sequent("(a->b)->a->b ||- (a->b)->a->b"));
    EXPECT_THROW(admissible_identity(parse_formula("a o b")), UnsupportedConnective);
}

TEST(Identity, RandomFormulas) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        Formula f = random_implicational(rng, {"a", "b", "c"}, 1 + static_cast<int>(rng() % 10));
        FrProof p = admissible_identity(f);
        ASSERT_TRUE(check_fr_proof(p).ok) << render_formula(f);
        Multiset m;
        ms_add(m, f);
        EXPECT_EQ(p.conclusion, (FocusSequent{m, std::nullopt, f}));
    }
}

TEST(InvertImpR, PeelsRoot) {
    FrProof p = invert_impr(aa_proof());
    EXPECT_EQ(p.conclusion, parse_focus_sequent("a ||- a"));
    EXPECT_TRUE(check_fr_proof(p).ok);
    EXPECT_THROW(invert_impr(p), InvalidProof);
}

TEST(Mix, AtomicCaseReturnsLeft) {
    auto left = fr_prove(parse_focus_sequent("a ||- a"));
    ASSERT_TRUE(left.provable);
    FrProof out = eliminate_mix(*left.proof, atomic_id("a"), MixForm::Focused, 0);
    EXPECT_TRUE(check_fr_proof(out).ok);
    EXPECT_EQ(out.conclusion, left.proof->conclusion);
    EXPECT_EQ(out.size(), left.proof->size());
}

TEST(Mix, IdentityCut) {
    // |- a->a against a->a, a ||- a (the identity on a->a, inverted)
    FrProof left = aa_proof();
    FrProof right = invert_impr(admissible_identity(parse_formula("a->a")));
    FrProof out = eliminate_mix(left, right, MixForm::Context, 0);
    ASSERT_TRUE(check_fr_proof(out).ok);
    EXPECT_EQ(out.conclusion, parse_focus_sequent("a ||- a"));
    EXPECT_THROW(eliminate_mix(left, right, MixForm::Context, 1), ShapeMismatch);
    EXPECT_THROW(eliminate_mix(left, right, MixForm::Focused, 0), ShapeMismatch);
}

TEST(Mix, RandomPairs) {
    std::mt19937_64 rng(11);
    std::vector<std::string> atoms = {"a", "b"};
    int done = 0;
    for (int tries = 0; done < 200 && tries < 200000; ++tries) {
        Formula cut = random_implicational(rng, atoms, 1 + 2 * static_cast<int>(rng() % 3));
        Multiset gamma;
        int ng = static_cast<int>(rng() % 3);
        for (int i = 0; i < ng; ++i) ms_add(gamma, random_implicational(rng, atoms, 1 + 2 * static_cast<int>(rng() % 2)));
        auto left = fr_prove(FocusSequent{gamma, std::nullopt, cut});
        if (!left.provable) continue;
        Multiset delta;
        int k = 1 + static_cast<int>(rng() % 2);
        ms_add(delta, cut, k);
        int nd = static_cast<int>(rng() % 2);
        for (int i = 0; i < nd; ++i) ms_add(delta, random_implicational(rng, atoms, 1 + 2 * static_cast<int>(rng() % 2)));
        Formula goal = Formula::atom(atoms[rng() % 2]);
        auto right = fr_prove(FocusSequent{delta, std::nullopt, goal});
        if (!right.provable) continue;
        int cut_copies = 1 + static_cast<int>(rng() % static_cast<unsigned>(ms_count(delta, cut)));
        FrProof out = eliminate_mix(*left.proof, *right.proof, MixForm::Context, cut_copies - 1);
        Multiset want = delta;
        ms_add(want, cut, -cut_copies);
        want = ms_sum(want, gamma);
        ASSERT_TRUE(check_fr_proof(out).ok);
        ASSERT_EQ(out.conclusion, (FocusSequent{want, std::nullopt, goal}));
        ++done;
    }
    EXPECT_EQ(done, 200);
}

TEST(Focalize, SmallProofs) {
    for (const char* f : {"a->a", "(a->a->b)->a->b", "(a->b)->(b->c)->a->c", "((a->a)->b)->b"}) {
        auto l = lr_prove(theorem_sequent(parse_formula(f)));
        ASSERT_TRUE(l.provable) << f;
        FrProof p = focalize(*l.proof);
        ASSERT_TRUE(check_fr_proof(p).ok) << f;
        EXPECT_EQ(p.conclusion, focus_theorem_sequent(parse_formula(f)));
    }
}

TEST(Focalize, CorpusProofs) {
    for (const auto& f : enumerate_implicational({"a", "b"}, 9)) {
        auto l = lr_prove(theorem_sequent(f));
        if (!l.proof) continue;
        FrProof p = focalize(*l.proof);
        ASSERT_TRUE(check_fr_proof(p).ok) << render_formula(f);
        EXPECT_EQ(p.conclusion, focus_theorem_sequent(f));
    }
}

TEST(Focalize, RejectsExtensionRules) {
    auto l = lr_prove(theorem_sequent(parse_formula("a o b -> a o b")));
    ASSERT_TRUE(l.provable);
    EXPECT_THROW(focalize(*l.proof), UnsupportedConnective);
}
