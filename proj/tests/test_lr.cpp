#include <gtest/gtest.h>

#include "relb/lr.hpp"

using namespace relb;

namespace {

LrResult prove_text(const std::string& f) { return lr_prove(theorem_sequent(parse_formula(f))); }

LrProof id_node(const std::string& f) {
    LrProof p;
    p.rule = LrRule::Id;
    p.conclusion = parse_sequent(f + " |- " + f);
    return p;
}

}  // namespace

TEST(Check, IdentityUnderImpR) {
    LrProof r;
    r.rule = LrRule::ImpR;
    r.conclusion = parse_sequent("|- a->a");
    r.premises.push_back(id_node("a"));
    EXPECT_TRUE(check_lr_proof(r).ok);
}

TEST(Check, ImpLLosingAFormula) {
    // a, a->b, c |- b claimed from a |- a and b |- b: c is unaccounted for
    LrProof p;
    p.rule = LrRule::ImpL;
    p.conclusion = parse_sequent("a, a->b, c |- b");
    p.premises.push_back(id_node("a"));
    p.premises.push_back(id_node("b"));
    auto res = check_lr_proof(p);
    EXPECT_FALSE(res.ok);
    EXPECT_TRUE(res.path.empty());
    p.conclusion = parse_sequent("a, a->b |- b");
    EXPECT_TRUE(check_lr_proof(p).ok);
}

TEST(Check, WeakeningRejected) {
    // b, a |- b from b |- b with no rule accounting for a
    for (LrRule r : {LrRule::C, LrRule::ImpR, LrRule::TruthL, LrRule::FusL}) {
        LrProof p;
        p.rule = r;
        p.conclusion = parse_sequent("b, a |- b");
        p.premises.push_back(id_node("b"));
        EXPECT_FALSE(check_lr_proof(p).ok) << lr_rule_name(r);
    }
    LrProof top;
    top.rule = LrRule::ImpR;
    top.conclusion = parse_sequent("b |- a->b");
    LrProof w;
    w.rule = LrRule::C;
    w.conclusion = parse_sequent("b, a |- b");
    w.premises.push_back(id_node("b"));
    top.premises.push_back(w);
    auto res = check_lr_proof(top);
    EXPECT_FALSE(res.ok);
    EXPECT_EQ(res.path, std::vector<std::size_t>{0});
}

TEST(Check, ExtensionRules) {
    LrProof t;
    t.rule = LrRule::TruthR;
    t.conclusion = parse_sequent("|- T");
    EXPECT_TRUE(check_lr_proof(t).ok);
    t.conclusion = parse_sequent("a |- T");
    EXPECT_FALSE(check_lr_proof(t).ok);

    LrProof fr;
    fr.rule = LrRule::FusR;
    fr.conclusion = parse_sequent("a, b |- a o b");
    fr.premises = {id_node("a"), id_node("b")};
    EXPECT_TRUE(check_lr_proof(fr).ok);
    LrProof fl;
    fl.rule = LrRule::FusL;
    fl.conclusion = parse_sequent("a o b |- a o b");
    fl.premises = {fr};
    EXPECT_TRUE(check_lr_proof(fl).ok);
    LrProof tl;
    tl.rule = LrRule::TruthL;
    tl.conclusion = parse_sequent("T, a |- a");
    tl.premises = {id_node("a")};
    EXPECT_TRUE(check_lr_proof(tl).ok);
}

TEST(Prove, Examples) {
    for (const char* f : {"a->a", "(a->a->b)->a->b", "(a->b)->(b->c)->a->c", "(a->a->b)->a->b",
                          "a->(a->b)->b", "((a->a)->b)->b"}) {
        auto r = prove_text(f);
        ASSERT_TRUE(r.provable) << f;
        EXPECT_TRUE(check_lr_proof(*r.proof).ok) << f;
        EXPECT_EQ(r.proof->conclusion, theorem_sequent(parse_formula(f)));
    }
    for (const char* f : {"b->a->b", "((a->b)->a)->a", "a->a->a", "a->b->a"}) EXPECT_FALSE(prove_text(f).provable) << f;
}

TEST(Prove, ContractionIsUsed) {
    auto r = prove_text("(a->a->b)->a->b");
    ASSERT_TRUE(r.provable);
    std::function<bool(const LrProof&)> has_c = [&](const LrProof& p) {
        if (p.rule == LrRule::C) return true;
        for (const auto& q : p.premises)
            if (has_c(q)) return true;
        return false;
    };
    EXPECT_TRUE(has_c(*r.proof));
}

TEST(Prove, ExtensionConnectives) {
    for (const char* f : {"a o b -> b o a", "T", "T -> a -> a", "a -> T o a", "(a o b -> c) -> a -> b -> c",
                          "(a -> b -> c) -> a o b -> c", "T -> T -> T", "a -> a o a"}) {
        auto r = prove_text(f);
        ASSERT_TRUE(r.provable) << f;
        EXPECT_TRUE(check_lr_proof(*r.proof).ok) << f;
    }
    for (const char* f : {"a o b -> a", "a -> T", "T -> a", "a o a -> a"})
        EXPECT_FALSE(prove_text(f).provable) << f;
}

TEST(Prove, Budget) {
    ProveOptions o;
    o.node_budget = 3;
    EXPECT_THROW(lr_prove(theorem_sequent(parse_formula("(a->a->b)->a->b")), o), ResourceLimitError);
}

TEST(Bounded, Examples) {
    auto s = [](const char* f) { return theorem_sequent(parse_formula(f)); };
    EXPECT_EQ(lr_prove_bounded(s("a->a"), 3), BoundedVerdict::Provable);
    EXPECT_EQ(lr_prove_bounded(s("a->a"), 2), BoundedVerdict::Provable);
    EXPECT_EQ(lr_prove_bounded(s("a->a"), 1), BoundedVerdict::NotProvableWithinDepth);
    EXPECT_EQ(lr_prove_bounded(s("a->a"), 0), BoundedVerdict::NotProvableWithinDepth);
    EXPECT_EQ(lr_prove_bounded(s("b->a->b"), 12), BoundedVerdict::NotProvableWithinDepth);
    EXPECT_EQ(lr_prove_bounded(s("(a->a->b)->a->b"), 8), BoundedVerdict::Provable);
}

TEST(Prove, ContractionAdmissibleOnSmallSequents) {
    auto corpus = enumerate_implicational({"a", "b"}, 5);
    for (const auto& x : corpus)
        for (const auto& g : corpus) {
            Sequent twice{ms_of({x, x}), g};
            Sequent once{ms_of({x}), g};
            if (lr_prove(twice).provable) EXPECT_TRUE(lr_prove(once).provable) << render_sequent(twice);
        }
}
