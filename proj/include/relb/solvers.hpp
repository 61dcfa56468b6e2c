#pragma once
// Cap-bounded bottom-up saturation for BVASS coverability and (expansive,
// comprehensive) reachability, with witness reconstruction, and the BVAS
// completeness-threshold calculator.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "relb/bvass.hpp"

namespace relb {

class CapOverflow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SolveOptions {
    std::size_t budget_bytes = std::size_t{2} << 30;
    bool prune = true;  // root-directed pruning in solve_coverability
};

// Least fixpoint of the root-judgement rules read bottom-up, every vector
// kept within [0, cap]. One derivation (the first found) is stored per
// member; the worklist is FIFO, so the result does not depend on anything
// but the input.
struct DerivableSet {
    struct Entry {
        Config config;
        RuleSet used;  // only filled by the comprehensive solver
        StepKind step = StepKind::Leaf;
        int index = -1;
        int child[2] = {-1, -1};
        bool dominated = false;
    };
    int cap = 0;
    bool expansive = false;
    int leaf = -1;
    bool complete = false;  // false when stopped early on reaching the goal
    std::vector<Entry> entries;
    std::vector<std::vector<int>> by_state;

    std::optional<int> find(int q, const Vec& v) const {
        for (int id : by_state[static_cast<std::size_t>(q)])
            if (entries[static_cast<std::size_t>(id)].config.vec == v) return id;
        return std::nullopt;
    }
    std::vector<Vec> vectors(int q) const {
        std::vector<Vec> out;
        for (int id : by_state[static_cast<std::size_t>(q)]) out.push_back(entries[static_cast<std::size_t>(id)].config.vec);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
    DeductionTree materialize(int id) const {
        const auto& e = entries[static_cast<std::size_t>(id)];
        DeductionTree t{e.config, e.step, e.index, {}};
        for (int c : e.child)
            if (c >= 0) t.children.push_back(materialize(c));
        return t;
    }
};

namespace detail {

inline std::string config_key(int q, const Vec& v) {
    std::string k(sizeof(int) + v.size(), '\0');
    std::memcpy(k.data(), &q, sizeof(int));
    for (std::size_t i = 0; i < v.size(); ++i) k[sizeof(int) + i] = static_cast<char>(v[i]);
    return k;
}

inline std::size_t entry_bytes(int dim) { return 96 + 6 * static_cast<std::size_t>(dim); }

// Goal-directed restrictions for root-state queries. `relevant` keeps only
// states reachable from the root. `monotone[q]` flags coordinates that no
// increment on any root-to-q path touches: there a smaller value can only
// help the ancestors, so a label is dropped when another one at the same
// state agrees elsewhere and is pointwise smaller on those coordinates.
struct Pruning {
    std::vector<char> relevant;
    std::vector<std::vector<char>> monotone;
    bool active() const { return !relevant.empty(); }
};

inline Pruning root_pruning(const Bvass& sys, int root) {
    auto n = static_cast<std::size_t>(sys.num_states());
    auto d = static_cast<std::size_t>(sys.dim);
    Pruning p;
    p.relevant.assign(n, 0);
    std::vector<std::vector<int>> out_unary(n), out_split(n);
    for (std::size_t r = 0; r < sys.unary.size(); ++r) out_unary[static_cast<std::size_t>(sys.unary[r].source)].push_back(static_cast<int>(r));
    for (std::size_t r = 0; r < sys.split.size(); ++r) out_split[static_cast<std::size_t>(sys.split[r].source)].push_back(static_cast<int>(r));
    // inc[q]: coordinates incremented somewhere on a path from the root to q
    std::vector<std::vector<char>> inc(n, std::vector<char>(d, 0));
    std::deque<int> work{root};
    p.relevant[static_cast<std::size_t>(root)] = 1;
    std::vector<char> queued(n, 0);
    queued[static_cast<std::size_t>(root)] = 1;
    auto push = [&](int q, const std::vector<char>& from, const Vec* u) {
        auto& target = inc[static_cast<std::size_t>(q)];
        bool changed = !p.relevant[static_cast<std::size_t>(q)];
        p.relevant[static_cast<std::size_t>(q)] = 1;
        for (std::size_t i = 0; i < d; ++i) {
            char want = from[i] || (u && (*u)[i] > 0);
            if (want && !target[i]) {
                target[i] = 1;
                changed = true;
            }
        }
        if (changed && !queued[static_cast<std::size_t>(q)]) {
            queued[static_cast<std::size_t>(q)] = 1;
            work.push_back(q);
        }
    };
    while (!work.empty()) {
        int q = work.front();
        work.pop_front();
        queued[static_cast<std::size_t>(q)] = 0;
        const auto cur = inc[static_cast<std::size_t>(q)];
        for (int r : out_unary[static_cast<std::size_t>(q)]) {
            const auto& rule = sys.unary[static_cast<std::size_t>(r)];
            push(rule.target, cur, &rule.vec);
        }
        for (int r : out_split[static_cast<std::size_t>(q)]) {
            const auto& rule = sys.split[static_cast<std::size_t>(r)];
            push(rule.left, cur, nullptr);
            push(rule.right, cur, nullptr);
        }
    }
    p.monotone.assign(n, std::vector<char>(d, 0));
    for (std::size_t q = 0; q < n; ++q)
        for (std::size_t i = 0; i < d; ++i) p.monotone[q][i] = !inc[q][i];
    return p;
}

// Generic worklist saturation. `comprehensive` switches on usage sets with
// superset subsumption. `goal(entry)` returning true stops the search.
template <class Goal>
DerivableSet saturate_impl(const Bvass& sys, int leaf, int cap, bool expansive, bool comprehensive, const SolveOptions& opt,
                           const Pruning& prune, Goal&& goal, std::optional<int>& hit) {
    if (cap < 0 || cap > 250) throw std::invalid_argument("cap must lie in [0, 250]");
    if (prune.active() && (expansive || comprehensive)) throw std::logic_error("pruning is only valid for plain coverability");
    DerivableSet D;
    D.cap = cap;
    D.expansive = expansive;
    D.leaf = leaf;
    D.by_state.assign(static_cast<std::size_t>(sys.num_states()), {});
    std::unordered_map<std::string, std::vector<int>> index;
    std::vector<std::vector<int>> processed(static_cast<std::size_t>(sys.num_states()));
    std::vector<std::vector<int>> unary_into(static_cast<std::size_t>(sys.num_states()));
    for (int r = 0; r < sys.unary_count(); ++r) unary_into[static_cast<std::size_t>(sys.unary[static_cast<std::size_t>(r)].target)].push_back(r);
    std::vector<std::vector<int>> split_left(static_cast<std::size_t>(sys.num_states())), split_right(static_cast<std::size_t>(sys.num_states()));
    for (std::size_t s = 0; s < sys.split.size(); ++s) {
        split_left[static_cast<std::size_t>(sys.split[s].left)].push_back(static_cast<int>(s));
        split_right[static_cast<std::size_t>(sys.split[s].right)].push_back(static_cast<int>(s));
    }
    const std::size_t per = entry_bytes(sys.dim);
    std::deque<int> work;

    // a dominates b: same state, equal on non-monotone coordinates (the
    // bucket key), smaller on monotone ones, and at least b's rule usage.
    auto dominates = [&](const DerivableSet::Entry& a, const DerivableSet::Entry& b) {
        if (prune.active()) {
            const auto& mono = prune.monotone[static_cast<std::size_t>(a.config.state)];
            for (std::size_t i = 0; i < mono.size(); ++i)
                if (mono[i] && a.config.vec[i] > b.config.vec[i]) return false;
        }
        return !comprehensive || b.used.subset_of(a.used);
    };
    auto bucket_key = [&](const Config& c) {
        if (!prune.active()) return config_key(c.state, c.vec);
        Vec v = c.vec;
        const auto& mono = prune.monotone[static_cast<std::size_t>(c.state)];
        for (std::size_t i = 0; i < v.size(); ++i)
            if (mono[i]) v[i] = 0;
        return config_key(c.state, v);
    };

    auto offer = [&](DerivableSet::Entry e) -> bool {
        for (int x : e.config.vec)
            if (x < 0 || x > cap) return false;
        if (prune.active() && !prune.relevant[static_cast<std::size_t>(e.config.state)]) return false;
        auto& bucket = index[bucket_key(e.config)];
        for (int id : bucket) {
            const auto& old = D.entries[static_cast<std::size_t>(id)];
            if (!old.dominated && dominates(old, e)) return false;
        }
        int id = static_cast<int>(D.entries.size());
        if ((static_cast<std::size_t>(id) + 1) * per > opt.budget_bytes)
            throw CapOverflow("saturation exceeded the memory budget of " + std::to_string(opt.budget_bytes) + " bytes");
        for (int old : bucket) {
            auto& o = D.entries[static_cast<std::size_t>(old)];
            if (!o.dominated && dominates(e, o)) o.dominated = true;
        }
        bucket.push_back(id);
        D.by_state[static_cast<std::size_t>(e.config.state)].push_back(id);
        D.entries.push_back(std::move(e));
        work.push_back(id);
        if (goal(D.entries.back())) {
            hit = id;
            return true;
        }
        return false;
    };

    DerivableSet::Entry base;
    base.config = Config{leaf, Vec(static_cast<std::size_t>(sys.dim), 0)};
    if (offer(base)) return D;
    while (!work.empty()) {
        int x = work.front();
        work.pop_front();
        if (D.entries[static_cast<std::size_t>(x)].dominated) continue;
        const Config cx = D.entries[static_cast<std::size_t>(x)].config;
        const RuleSet ux = D.entries[static_cast<std::size_t>(x)].used;
        auto qx = static_cast<std::size_t>(cx.state);
        processed[qx].push_back(x);

        for (int r : unary_into[qx]) {
            const auto& rule = sys.unary[static_cast<std::size_t>(r)];
            DerivableSet::Entry e;
            e.config = Config{rule.source, vec_sub(cx.vec, rule.vec)};
            e.step = StepKind::Unary;
            e.index = r;
            e.child[0] = x;
            if (comprehensive) {
                e.used = ux;
                e.used.insert(r);
            }
            if (offer(std::move(e))) return D;
        }
        auto combine = [&](int s, int left, int right) -> bool {
            const auto& rule = sys.split[static_cast<std::size_t>(s)];
            const auto& el = D.entries[static_cast<std::size_t>(left)];
            const auto& er = D.entries[static_cast<std::size_t>(right)];
            if (el.dominated || er.dominated) return false;
            DerivableSet::Entry e;
            e.config = Config{rule.source, vec_add(el.config.vec, er.config.vec)};
            e.step = StepKind::Split;
            e.index = sys.unary_count() + s;
            e.child[0] = left;
            e.child[1] = right;
            if (comprehensive) {
                e.used = el.used;
                e.used |= er.used;
                e.used.insert(e.index);
            }
            return offer(std::move(e));
        };
        for (int s : split_left[qx]) {
            auto partners = processed[static_cast<std::size_t>(sys.split[static_cast<std::size_t>(s)].right)];
            for (int y : partners)
                if (combine(s, x, y)) return D;
        }
        for (int s : split_right[qx]) {
            auto partners = processed[static_cast<std::size_t>(sys.split[static_cast<std::size_t>(s)].left)];
            for (int y : partners)
                if (y != x && combine(s, y, x)) return D;
        }
        if (expansive) {
            for (std::size_t i = 0; i < cx.vec.size(); ++i) {
                if (cx.vec[i] < 2) continue;
                DerivableSet::Entry e;
                e.config = cx;
                e.config.vec[i] -= 1;
                e.step = StepKind::Expansion;
                e.index = static_cast<int>(i);
                e.child[0] = x;
                e.used = ux;
                if (offer(std::move(e))) return D;
            }
        }
    }
    D.complete = true;
    return D;
}

}  // namespace detail

inline DerivableSet saturate(const Bvass& sys, int leaf, int cap, bool expansive, const SolveOptions& opt = {}) {
    std::optional<int> hit;
    return detail::saturate_impl(sys, leaf, cap, expansive, false, opt, detail::Pruning{}, [](const DerivableSet::Entry&) { return false; }, hit);
}

struct SolveResult {
    bool found = false;
    std::optional<DeductionTree> witness;
    bool complete = false;  // the capped fixpoint was fully computed
    std::size_t explored = 0;
};

inline SolveResult solve_coverability(const CoverInstance& inst, int cap, const SolveOptions& opt = {}) {
    std::optional<int> hit;
    int root = inst.root;
    auto D = detail::saturate_impl(inst.system, inst.leaf, cap, false, false, opt,
                                   opt.prune ? detail::root_pruning(inst.system, root) : detail::Pruning{},
                                   [&](const DerivableSet::Entry& e) { return e.config.state == root; }, hit);
    SolveResult r;
    r.complete = D.complete;
    r.explored = D.entries.size();
    if (hit) {
        r.found = true;
        r.witness = D.materialize(*hit);
    }
    return r;
}

inline SolveResult solve_comprehensive(const ReachInstance& inst, int cap, const SolveOptions& opt = {}) {
    std::optional<int> hit;
    RuleSet all = RuleSet::all(inst.system.num_rules());
    int root = inst.root;
    auto D = detail::saturate_impl(inst.system, inst.leaf, cap, true, true, opt, detail::Pruning{},
                                   [&](const DerivableSet::Entry& e) {
                                       return e.config.state == root && vec_zero(e.config.vec) && all.subset_of(e.used);
                                   },
                                   hit);
    SolveResult r;
    r.complete = D.complete;
    r.explored = D.entries.size();
    if (hit) {
        r.found = true;
        r.witness = D.materialize(*hit);
    }
    return r;
}

inline SolveResult solve_reachability(const ReachInstance& inst, int cap, const SolveOptions& opt = {}) {
    if (inst.mode == Mode::Comprehensive) return solve_comprehensive(inst, cap, opt);
    std::optional<int> hit;
    int root = inst.root;
    auto D = detail::saturate_impl(inst.system, inst.leaf, cap, inst.mode == Mode::Expansive, false, opt, detail::Pruning{},
                                   [&](const DerivableSet::Entry& e) { return e.config.state == root && vec_zero(e.config.vec); },
                                   hit);
    SolveResult r;
    r.complete = D.complete;
    r.explored = D.entries.size();
    if (hit) {
        r.found = true;
        r.witness = D.materialize(*hit);
    }
    return r;
}

// ---------------------------------------------------------------------------

struct BoundTriple {
    int dim = 0;
    mpz_class L;
    mpz_class exponent;             // (3d)!
    std::optional<mpz_class> H, B;  // exact when small enough to evaluate
    std::string H_text, B_text;     // decimal, or a symbolic description

    bool cap_meets(const mpz_class& cap) const { return B && cap >= *B; }
};

inline BoundTriple appendix_b_bounds(const Bvas& sys, const Vec& v_root, std::size_t max_bits = std::size_t{1} << 24) {
    BoundTriple t;
    t.dim = sys.dim;
    int rules = std::max(norm(sys.unary), norm(sys.split));
    t.L = mpz_class(rules) + mpz_class(norm(v_root)) + 2;
    mpz_fac_ui(t.exponent.get_mpz_t(), 3ul * static_cast<unsigned long>(sys.dim));
    std::size_t lbits = mpz_sizeinbase(t.L.get_mpz_t(), 2);
    bool small = t.exponent.fits_ulong_p() && t.exponent.get_ui() <= max_bits / std::max<std::size_t>(lbits, 1);
    if (small) {
        mpz_class h;
        mpz_pow_ui(h.get_mpz_t(), t.L.get_mpz_t(), t.exponent.get_ui());
        t.H = h;
        t.B = h * h;
        t.H_text = t.H->get_str();
        t.B_text = t.B->get_str();
    } else {
        t.H_text = t.L.get_str() + "^" + t.exponent.get_str();
        t.B_text = "(" + t.H_text + ")^2";
    }
    return t;
}

}  // namespace relb
