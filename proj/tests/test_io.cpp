#include <gtest/gtest.h>

#include "relb/io.hpp"
#include "relb/reductions.hpp"
#include "relb/solvers.hpp"

using namespace relb;

TEST(ProofText, LrRoundTrip) {
    for (const char* s : {"a->a", "(a->a->b)->a->b", "(a->b)->(b->c)->a->c"}) {
        auto r = lr_prove(theorem_sequent(parse_formula(s)));
        ASSERT_TRUE(r.provable) << s;
        std::string text = render_lr_proof(*r.proof);
        auto back = parse_lr_proof_text(text);
        EXPECT_EQ(render_lr_proof(back), text);
        EXPECT_TRUE(check_lr_proof(back).ok);
    }
}

TEST(ProofText, FrRoundTrip) {
    auto r = fr_prove(focus_theorem_sequent(parse_formula("(a->a->b)->a->b")));
    ASSERT_TRUE(r.provable);
    std::string text = render_fr_proof(*r.proof);
    auto back = parse_fr_proof_text(text);
    EXPECT_EQ(render_fr_proof(back), text);
    EXPECT_TRUE(check_fr_proof(back).ok);
}

TEST(ProofJson, RoundTrip) {
    auto l = lr_prove(theorem_sequent(parse_formula("(a->b)->a->b")));
    ASSERT_TRUE(l.provable);
    auto j = lr_proof_to_json(*l.proof);
    EXPECT_EQ(render_lr_proof(lr_proof_from_json(nlohmann::ordered_json::parse(j.dump()))), render_lr_proof(*l.proof));
    auto f = fr_prove(focus_theorem_sequent(parse_formula("(a->b)->a->b")));
    ASSERT_TRUE(f.provable);
    auto k = fr_proof_to_json(*f.proof);
    EXPECT_EQ(render_fr_proof(fr_proof_from_json(k)), render_fr_proof(*f.proof));
}

TEST(ProofText, Errors) {
    EXPECT_THROW(parse_lr_proof_text(""), FormatError);
    EXPECT_THROW(parse_lr_proof_text("Id ; a ; a |- a\n   Id ; a ; a |- a\n"), FormatError);       // odd indent
    EXPECT_THROW(parse_lr_proof_text("Id ; a ; a |- a\n    Id ; a ; a |- a\n"), FormatError);      // skipped level
    EXPECT_THROW(parse_lr_proof_text("Id ; a ; a |- a\nId ; a ; a |- a\n"), FormatError);          // two roots
    EXPECT_THROW(parse_lr_proof_text("Nope ; a ; a |- a\n"), FormatError);
    EXPECT_THROW(parse_lr_proof_text("Id a |- a\n"), FormatError);
}

TEST(WitnessText, RoundTrip) {
    auto inst = parse_bvass_text("dim 1\nroot qr\nleaf ql\nunary qr +1 p\nunary s -1 ql\nsplit p s s\n");
    auto r = solve_reachability(ReachInstance{inst.system, inst.root, inst.leaf, Mode::Expansive}, 3);
    ASSERT_TRUE(r.found);
    std::string text = render_deduction_tree(inst.system, *r.witness);
    auto back = parse_deduction_tree_text(text, inst.system);
    EXPECT_EQ(render_deduction_tree(inst.system, back), text);
    EXPECT_TRUE(check_deduction_tree(inst.system, back, inst.leaf, true).valid);
    auto j = deduction_tree_to_json(inst.system, back);
    EXPECT_EQ(j["state"], "qr");
    EXPECT_EQ(j["children"].size(), 1u);
}

TEST(WitnessText, Errors) {
    auto inst = parse_bvass_text("dim 1\nroot qr\nleaf ql\nunary qr -1 ql\n");
    EXPECT_THROW(parse_deduction_tree_text("UNARY 0 nowhere (1)\n", inst.system), FormatError);
    EXPECT_THROW(parse_deduction_tree_text("JUMP 0 qr (1)\n", inst.system), FormatError);
    EXPECT_THROW(parse_deduction_tree_text("UNARY x qr (1)\n", inst.system), FormatError);
    EXPECT_THROW(parse_deduction_tree_text("LEAF - ql (0,0)\n", inst.system), FormatError);
}

TEST(BvasTreeText, RoundTrip) {
    BvasTree t{{3}, 1, {BvasTree{{1}, -1, {}}, BvasTree{{2}, 0, {BvasTree{{1}, -1, {}}}}}};
    std::string text = render_bvas_tree(t);
    std::istringstream in(text);
    EXPECT_EQ(render_bvas_tree(parse_bvas_tree(in, 1)), text);
}

TEST(SideMap, RendersRows) {
    auto out = coverability_to_comprehensive(as_cover(parse_bvass_text("dim 1\nroot qr\nleaf ql\nunary qr -1 ql\n")));
    std::string m = out.map.render();
    EXPECT_NE(m.find("coord 2 root"), std::string::npos);
    EXPECT_NE(m.find("coord 3 rule 1"), std::string::npos);
}
