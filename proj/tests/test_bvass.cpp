#include <gtest/gtest.h>

#include <random>

#include "relb/bvass.hpp"
#include "relb/generators.hpp"

using namespace relb;

namespace {

// q_r -(-e1)-> q_l
ReachInstance two_state() {
    return parse_bvass_text("dim 1\nroot qr\nleaf ql\nunary qr -1 ql\n");
}

// q_r -(+e1)-> p ; p -> s + s ; s -(-e1)-> q_l
ReachInstance duplication() {
    return parse_bvass_text("dim 1\nroot qr\nleaf ql\nunary qr +1 p\nunary s -1 ql\nsplit p s s\n");
}

DeductionTree node(int q, Vec v, StepKind k = StepKind::Leaf, int idx = -1, std::vector<DeductionTree> kids = {}) {
    return DeductionTree{Config{q, std::move(v)}, k, idx, std::move(kids)};
}

}  // namespace

TEST(Bvass, ParsesShorthandAndGeneralVectors) {
    auto r = parse_bvass_text("dim 2\nroot a\nleaf b\nunary a +2 b\nunary b 1,-3 a # comment\nsplit a b b\n");
    ASSERT_EQ(r.system.dim, 2);
    EXPECT_EQ(r.system.unary[0].vec, (Vec{0, 1}));
    EXPECT_EQ(r.system.unary[1].vec, (Vec{1, -3}));
    EXPECT_FALSE(r.system.ordinary());
    EXPECT_EQ(r.system.num_rules(), 3);
    EXPECT_TRUE(r.system.is_split(2));
}

TEST(Bvass, RenderRoundTrips) {
    auto r = duplication();
    r.mode = Mode::Expansive;
    auto again = parse_bvass_text(render_instance(r));
    EXPECT_EQ(render_instance(again), render_instance(r));
    EXPECT_EQ(again.mode, Mode::Expansive);
}

TEST(Bvass, RejectsMalformedInput) {
    EXPECT_THROW(parse_bvass_text("root a\nleaf a\n"), FormatError);
    EXPECT_THROW(parse_bvass_text("dim 1\nroot a\nleaf a\nunary a 1,1 a\n"), FormatError);
    EXPECT_THROW(parse_bvass_text("dim 1\nroot a\nleaf a\nfrobnicate a\n"), FormatError);
    EXPECT_THROW(parse_bvass_text("dim 1\nleaf a\n"), FormatError);
    EXPECT_THROW(parse_bvass_text("dim 2\nroot a\nleaf a\nunary a +3 a\n"), FormatError);
    // in dimension 1 a signed token is the integer itself
    EXPECT_EQ(parse_bvass_text("dim 1\nroot a\nleaf a\nunary a +2 a\n").system.unary[0].vec, Vec{2});
}

TEST(Bvass, CheckerAcceptsTwoNodeTree) {
    auto r = two_state();
    auto t = node(r.root, {1}, StepKind::Unary, 0, {node(r.leaf, {0})});
    auto c = check_deduction_tree(r.system, t, r.leaf, false);
    ASSERT_TRUE(c.valid) << c.message;
    EXPECT_EQ(c.used.members(), std::vector<int>{0});
}

TEST(Bvass, CheckerRejectsNonAdditiveSplit) {
    auto r = parse_bvass_text("dim 1\nroot q\nleaf l\nsplit q l l\n");
    auto t = node(r.root, {2}, StepKind::Split, 0, {node(r.leaf, {1}), node(r.leaf, {2})});
    EXPECT_FALSE(check_deduction_tree(r.system, t, r.leaf, false).valid);
}

TEST(Bvass, CheckerGatesExpansionOnMode) {
    auto r = duplication();
    int p = r.system.state("p"), st = r.system.state("s");
    auto branch = [&] { return node(st, {1}, StepKind::Unary, 1, {node(r.leaf, {0})}); };
    auto t = node(r.root, {0}, StepKind::Unary, 0,
                  {node(p, {1}, StepKind::Expansion, 0, {node(p, {2}, StepKind::Split, 2, {branch(), branch()})})});
    auto c = check_deduction_tree(r.system, t, r.leaf, true);
    ASSERT_TRUE(c.valid) << c.message;
    EXPECT_EQ(c.used.count(), 3);
    EXPECT_FALSE(check_deduction_tree(r.system, t, r.leaf, false).valid);
}

TEST(Bvass, CheckerRejectsWrongLeafAndNegativeVectors) {
    auto r = two_state();
    EXPECT_FALSE(check_deduction_tree(r.system, node(r.root, {0}), r.leaf, false).valid);
    EXPECT_FALSE(check_deduction_tree(r.system, node(r.root, {0}, StepKind::Unary, 0, {node(r.leaf, {-1})}), r.leaf, false).valid);
}

TEST(Bvass, EnumerationOfTwoStateSystem) {
    auto r = two_state();
    auto en = enumerate_trees(r.system, r.leaf, false, 2, 2);
    auto roots = en.roots(r.root);
    ASSERT_EQ(roots.size(), 1u);
    EXPECT_EQ(roots.begin()->first, Vec{1});
    EXPECT_EQ(roots.begin()->second, std::vector<int>{0});
}

TEST(Bvass, EnumerationTrivialCases) {
    auto r = two_state();
    auto en = enumerate_trees(r.system, r.leaf, false, 0, 0);
    auto roots = en.roots(r.leaf);
    ASSERT_EQ(roots.size(), 1u);
    EXPECT_EQ(roots.begin()->first, Vec{0});
    EXPECT_TRUE(roots.begin()->second.empty());

    auto empty = parse_bvass_text("dim 1\nstate qr\nroot qr\nleaf ql\n");
    EXPECT_TRUE(enumerate_trees(empty.system, empty.leaf, false, 4, 4).at_state(empty.root).empty());
}

TEST(Bvass, DuplicationNeedsExpansion) {
    auto r = duplication();
    auto plain = enumerate_trees(r.system, r.leaf, false, 6, 2);
    auto exp = enumerate_trees(r.system, r.leaf, true, 6, 2);
    EXPECT_EQ(plain.roots(r.root).count({Vec{0}, {0, 1, 2}}), 0u);
    EXPECT_EQ(exp.roots(r.root).count({Vec{0}, {0, 1, 2}}), 1u);
}

TEST(Bvass, EnumeratedLabelsMaterializeToValidTrees) {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 40; ++k) {
        auto inst = random_cover_instance(rng, RandomShape{2, 3, 5});
        for (bool expansive : {false, true}) {
            auto en = enumerate_trees(inst.system, inst.leaf, expansive, 5, 3);
            for (std::size_t i = 0; i < en.entries.size(); ++i) {
                auto t = en.materialize(static_cast<int>(i));
                auto c = check_deduction_tree(inst.system, t, inst.leaf, expansive);
                ASSERT_TRUE(c.valid) << c.message;
                EXPECT_EQ(c.used, en.entries[i].used);
                EXPECT_EQ(t.node.vec, en.entries[i].config.vec);
            }
        }
    }
}

TEST(Bvass, ExpansiveContainsPlain) {
    std::mt19937_64 rng(12);
    for (int k = 0; k < 40; ++k) {
        auto inst = random_cover_instance(rng, RandomShape{2, 3, 5});
        auto plain = enumerate_trees(inst.system, inst.leaf, false, 5, 3);
        auto exp = enumerate_trees(inst.system, inst.leaf, true, 5, 3);
        for (int q = 0; q < inst.system.num_states(); ++q) {
            auto big = exp.roots(q);
            for (const auto& p : plain.roots(q)) EXPECT_TRUE(big.count(p));
        }
    }
}

// q -(-e_i)-> q_i -(+e_i)-> q'_i -(+e_i)-> q replaces each expansion.
TEST(Bvass, ExpansionIsSimulatedByUnaryChains) {
    std::mt19937_64 rng(13);
    for (int k = 0; k < 30; ++k) {
        auto inst = random_cover_instance(rng, RandomShape{2, 3, 4});
        Bvass sim = inst.system;
        const int n = sim.num_states();
        for (int q = 0; q < n; ++q)
            for (int i = 0; i < sim.dim; ++i) {
                std::string base = "@x" + std::to_string(q) + "_" + std::to_string(i);
                int a = sim.add_state(base + "a");
                int b = sim.add_state(base + "b");
                sim.add_unary(q, unit(sim.dim, i, -1), a);
                sim.add_unary(a, unit(sim.dim, i, 1), b);
                sim.add_unary(b, unit(sim.dim, i, 1), q);
            }
        // Each expansion costs three unary levels, so give the plain side the
        // room and compare vectors only inside the common bound.
        auto exp = enumerate_trees(inst.system, inst.leaf, true, 3, 3, false);
        auto simd = enumerate_trees(sim, inst.leaf, false, 12, 4, false);
        for (int q = 0; q < n; ++q) {
            std::set<Vec> want, got;
            for (const auto& [v, u] : exp.roots(q)) want.insert(v);
            for (const auto& [v, u] : simd.roots(q))
                if (vec_max(v) <= 3) got.insert(v);
            for (const auto& v : want) EXPECT_TRUE(got.count(v)) << "state " << q << " " << render_vec(v);
        }
        // and the other way: plain trees of the augmented system stay expansive-derivable
        auto exp_wide = enumerate_trees(inst.system, inst.leaf, true, 12, 4, false);
        for (int q = 0; q < n; ++q) {
            auto ok = exp_wide.roots(q);
            for (const auto& [v, u] : simd.roots(q)) EXPECT_TRUE(ok.count({v, {}})) << "state " << q << " " << render_vec(v);
        }
    }
}

TEST(Bvas, CheckerExamples) {
    Bvas s;
    s.dim = 1;
    s.unary = {{-1}};
    s.split = {{0}};
    BvasTree unary{{0}, 0, {BvasTree{{1}, -1, {}}}};
    EXPECT_TRUE(check_bvas_tree(s, unary, {1}));
    EXPECT_FALSE(check_bvas_tree(s, unary, {2}));  // leaf must be exactly v_leaf
    BvasTree split{{3}, 1, {BvasTree{{1}, -1, {}}, BvasTree{{2}, -1, {}}}};
    EXPECT_FALSE(check_bvas_tree(s, split, {1}));  // right leaf is (2)
    BvasTree split_ok{{3}, 1, {BvasTree{{1}, -1, {}}, BvasTree{{2}, 0, {BvasTree{{3}, -1, {}}}}}};
    EXPECT_FALSE(check_bvas_tree(s, split_ok, {1}));
    BvasTree split_inner{{3}, 1, {BvasTree{{1}, -1, {}}, BvasTree{{2}, 1, {BvasTree{{1}, -1, {}}, BvasTree{{1}, -1, {}}}}}};
    EXPECT_TRUE(check_bvas_tree(s, split_inner, {1}));
}

TEST(Bvas, ParseRenderRoundTrip) {
    auto b = parse_bvas_text("dim 2\nunary -1,2\nsplit 0,0\nroot 2,0\nleaf 0,0\n");
    EXPECT_EQ(b.system.unary.size(), 1u);
    EXPECT_EQ(render_bvas(parse_bvas_text(render_bvas(b))), render_bvas(b));
    EXPECT_THROW(parse_bvas_text("dim 1\nroot -1\nleaf 0\n"), FormatError);
}

TEST(Bvas, EnumerationMaterializesValidTrees) {
    std::mt19937_64 rng(14);
    for (int k = 0; k < 30; ++k) {
        auto inst = random_bvas_instance(rng, 2, 2, 1, 1);
        auto en = enumerate_bvas(inst.system, inst.leaf, 4, 3);
        for (std::size_t i = 0; i < en.entries.size(); ++i) {
            std::string why;
            EXPECT_TRUE(check_bvas_tree(inst.system, en.materialize(static_cast<int>(i)), inst.leaf, &why)) << why;
        }
    }
}

TEST(Bvass, NormIsInfinityNormOfAbsoluteValues) {
    EXPECT_EQ(norm(std::vector<Vec>{{-1, 2}, {0, 0}}), 2);
    EXPECT_EQ(norm(Vec{-5, 3}), 5);
}
