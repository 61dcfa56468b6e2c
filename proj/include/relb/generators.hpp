#pragma once
// Seeded random instances for the property tests. Draws use plain modulo on
// mt19937_64 output rather than <random> distributions, whose results vary
// between standard libraries.

#include <cstdint>
#include <random>
#include <string>

#include "relb/bvass.hpp"

namespace relb {

inline int draw(std::mt19937_64& rng, int lo, int hi) {
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(rng() % span);
}

struct RandomShape {
    int max_dim = 3;
    int max_states = 4;
    int max_rules = 8;
    int split_percent = 30;  // chance that a rule is a split
    int max_entry = 1;       // general rules: entries in [-max_entry, max_entry]
    bool ordinary = true;
};

inline Vec random_rule_vec(std::mt19937_64& rng, int dim, const RandomShape& shape) {
    if (shape.ordinary) return unit(dim, draw(rng, 0, dim - 1), draw(rng, 0, 1) ? 1 : -1);
    Vec v(static_cast<std::size_t>(dim));
    for (auto& x : v) x = draw(rng, -shape.max_entry, shape.max_entry);
    return v;
}

// States are named q0..q{n-1}; the root is q0 and the leaf is the last state
// (they coincide when n = 1).
inline CoverInstance random_cover_instance(std::mt19937_64& rng, const RandomShape& shape) {
    CoverInstance inst;
    Bvass& b = inst.system;
    b.dim = draw(rng, 1, shape.max_dim);
    int n = draw(rng, 1, shape.max_states);
    for (int i = 0; i < n; ++i) b.add_state("q" + std::to_string(i));
    int rules = draw(rng, 1, shape.max_rules);
    for (int r = 0; r < rules; ++r) {
        int src = draw(rng, 0, n - 1);
        if (draw(rng, 0, 99) < shape.split_percent)
            b.add_split(src, draw(rng, 0, n - 1), draw(rng, 0, n - 1));
        else
            b.add_unary(src, random_rule_vec(rng, b.dim, shape), draw(rng, 0, n - 1));
    }
    inst.root = 0;
    inst.leaf = n - 1;
    return inst;
}

inline ReachInstance random_reach_instance(std::mt19937_64& rng, const RandomShape& shape, Mode mode) {
    return as_reach(random_cover_instance(rng, shape), mode);
}

inline BvasInstance random_bvas_instance(std::mt19937_64& rng, int max_dim, int max_unary, int max_split, int max_entry) {
    BvasInstance inst;
    inst.system.dim = draw(rng, 1, max_dim);
    auto d = inst.system.dim;
    auto vec = [&](int lo, int hi) {
        Vec v(static_cast<std::size_t>(d));
        for (auto& x : v) x = draw(rng, lo, hi);
        return v;
    };
    int nu = draw(rng, 1, max_unary);
    for (int i = 0; i < nu; ++i) inst.system.unary.push_back(vec(-max_entry, max_entry));
    int ns = draw(rng, 0, max_split);
    for (int i = 0; i < ns; ++i) inst.system.split.push_back(vec(-max_entry, max_entry));
    inst.root = vec(0, max_entry);
    inst.leaf = vec(0, 1);
    return inst;
}

}  // namespace relb
