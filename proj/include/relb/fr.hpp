#pragma once
// Focusing calculus for pure implicational relevance logic: proof objects, a
// checker, a focused decision procedure, and the proof transformations
// relating it to the plain sequent calculus (defocusing, admissible identity,
// right-implication inversion, mix elimination, focalization).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <queue>
#include <functional>
#include <iterator>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <unordered_map>
#include <vector>

#include "relb/formula.hpp"
#include "relb/lr.hpp"
#include "relb/sequent.hpp"
#include "relb/universe.hpp"

namespace relb {

class InvalidProof : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ShapeMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class FrRule { AtomicId, Focus, Cf, ImpLf, ImpRf };

inline const char* fr_rule_name(FrRule r) {
    switch (r) {
        case FrRule::AtomicId: return "AtomicId";
        case FrRule::Focus: return "Focus";
        case FrRule::Cf: return "Cf";
        case FrRule::ImpLf: return "ImpLf";
        case FrRule::ImpRf: return "ImpRf";
    }
    return "?";
}

inline std::optional<FrRule> fr_rule_from_name(const std::string& s) {
    for (FrRule r : {FrRule::AtomicId, FrRule::Focus, FrRule::Cf, FrRule::ImpLf, FrRule::ImpRf})
        if (s == fr_rule_name(r)) return r;
    return std::nullopt;
}

struct FrProof {
    FrRule rule = FrRule::AtomicId;
    FocusSequent conclusion;
    std::optional<Formula> principal;
    std::vector<FrProof> premises;

    std::size_t size() const {
        std::size_t n = 1;
        for (const auto& p : premises) n += p.size();
        return n;
    }
    std::size_t height() const {
        std::size_t h = 0;
        for (const auto& p : premises) h = std::max(h, p.height());
        return h + 1;
    }
    std::size_t count(FrRule r) const {
        std::size_t n = rule == r ? 1 : 0;
        for (const auto& p : premises) n += p.count(r);
        return n;
    }
};

namespace detail {

inline std::optional<Formula> fr_local(const FrProof& p, std::string& why) {
    const FocusSequent& s = p.conclusion;
    const auto& ps = p.premises;
    auto fail = [&](const char* m) -> std::optional<Formula> {
        why = m;
        return std::nullopt;
    };
    if (s.focus && !s.succedent.is_atom()) return fail("a focused sequent needs an atomic succedent");
    switch (p.rule) {
        case FrRule::AtomicId:
            if (!ps.empty()) return fail("AtomicId has no premises");
            if (s.focus && s.focus->is_atom() && *s.focus == s.succedent && s.antecedent.empty()) return *s.focus;
            return fail("AtomicId needs conclusion [a] ||- a");
        case FrRule::Focus: {
            if (ps.size() != 1) return fail("Focus expects 1 premise");
            const FocusSequent& q = ps[0].conclusion;
            if (s.focus || !s.succedent.is_atom()) return fail("Focus needs an unfocused atomic conclusion");
            if (!q.focus || q.succedent != s.succedent) return fail("Focus premise must be focused on the same goal");
            if (p.principal && *p.principal != *q.focus) return fail("Focus principal disagrees with premise");
            Multiset want = q.antecedent;
            ms_add(want, *q.focus);
            if (want != s.antecedent) return fail("Focus must move exactly the focused formula");
            return *q.focus;
        }
        case FrRule::Cf: {
            if (ps.size() != 1) return fail("Cf expects 1 premise");
            const FocusSequent& q = ps[0].conclusion;
            if (!s.succedent.is_atom()) return fail("Cf needs an atomic succedent");
            if (q.succedent != s.succedent || q.focus.has_value() != s.focus.has_value() ||
                (s.focus && *s.focus != *q.focus))
                return fail("Cf premise must keep succedent and focus");
            for (const auto& x : principal_candidates(s.antecedent, p.principal)) {
                Multiset want = s.antecedent;
                ms_add(want, x);
                if (want == q.antecedent) return x;
            }
            return fail("Cf premise must repeat exactly one unfocused formula");
        }
        case FrRule::ImpLf: {
            if (ps.size() != 2) return fail("ImpLf expects 2 premises");
            const FocusSequent& l = ps[0].conclusion;
            const FocusSequent& r = ps[1].conclusion;
            if (!s.focus || !s.focus->is_imp()) return fail("ImpLf needs a focused implication");
            if (l.focus) return fail("ImpLf left premise must be unfocused");
            if (!r.focus || *r.focus != s.focus->right() || r.succedent != s.succedent)
                return fail("ImpLf right premise must focus the consequent");
            if (l.succedent != s.focus->left()) return fail("ImpLf left premise must prove the antecedent");
            if (ms_sum(l.antecedent, r.antecedent) != s.antecedent) return fail("ImpLf context split does not add up");
            return *s.focus;
        }
        case FrRule::ImpRf: {
            if (ps.size() != 1) return fail("ImpRf expects 1 premise");
            const FocusSequent& q = ps[0].conclusion;
            if (s.focus || !s.succedent.is_imp()) return fail("ImpRf needs an unfocused implication succedent");
            Multiset want = s.antecedent;
            ms_add(want, s.succedent.left());
            if (q.focus || q.succedent != s.succedent.right() || q.antecedent != want)
                return fail("ImpRf premise must be G, A ||- B");
            return s.succedent;
        }
    }
    return fail("unknown rule");
}

inline bool check_fr_rec(const FrProof& p, CheckResult& res) {
    std::string why;
    if (!fr_local(p, why)) {
        res.ok = false;
        res.message = why + " at: " + render_focus_sequent(p.conclusion);
        return false;
    }
    for (std::size_t i = 0; i < p.premises.size(); ++i) {
        res.path.push_back(i);
        if (!check_fr_rec(p.premises[i], res)) return false;
        res.path.pop_back();
    }
    return true;
}

}  // namespace detail

inline CheckResult check_fr_proof(const FrProof& p) {
    CheckResult res;
    detail::check_fr_rec(p, res);
    return res;
}

inline FocusSequent focus_theorem_sequent(const Formula& f) { return FocusSequent{{}, std::nullopt, f}; }

inline void require_implicational(const Formula& f) {
    if (!f.implicational()) throw UnsupportedConnective("focusing covers only implication: " + render_formula(f));
}

struct FrResult {
    bool provable = false;
    std::optional<FrProof> proof;
    std::size_t nodes = 0;
};

namespace detail {

// Backward focused search. Contraction is folded into the Focus step: a
// focus on F with arguments A_1..A_n offers contexts g_i <= ctx whose sum
// plus F covers ctx, then contracts back down. Unfocused atomic subgoals are
// pruned against path ancestors exactly as in the plain search.
class FrSearch {
public:
    FrSearch(const Universe& u, std::size_t budget)
        : u_(u), budget_(budget), yields_(head_yields(u)), polar_(polar_atoms(u)) {}

    std::optional<FrProof> run(const Ctx& ctx, int goal) { return search(ctx, goal).proof; }

    std::optional<FrProof> run_focused(const Ctx& ctx, int focus, int goal) {
        if (u_.kind[static_cast<std::size_t>(goal)] != Kind::Atom) return std::nullopt;
        return focused(ctx, focus, -1, goal).proof;
    }

    std::size_t nodes() const { return nodes_; }

private:
    struct Outcome {
        std::optional<FrProof> proof;
        std::vector<int> refs;
    };

    FocusSequent seq(const Ctx& c, int goal, int focus = -1) const {
        FocusSequent s{u_.multiset_of(c), std::nullopt, u_.formula(goal)};
        if (focus >= 0) s.focus = u_.formula(focus);
        return s;
    }

    FrProof contract_to(FrProof p, Ctx have, const Ctx& want, int goal, int focus = -1) const {
        for (int i = 0; i < u_.size(); ++i) {
            while (cnt(have, i) > cnt(want, i)) {
                have[static_cast<std::size_t>(i)] = static_cast<char>(cnt(have, i) - 1);
                FrProof c;
                c.rule = FrRule::Cf;
                c.conclusion = seq(have, goal, focus);
                c.principal = u_.formula(i);
                c.premises.push_back(std::move(p));
                p = std::move(c);
            }
        }
        return p;
    }

    static void merge_refs(std::vector<int>& into, const std::vector<int>& from) {
        if (from.empty()) return;
        std::vector<int> m;
        std::set_union(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(m));
        into = std::move(m);
    }

    bool can_yield(const Ctx& ctx, int goal) const {
        std::size_t n = static_cast<std::size_t>(u_.size()), gi = static_cast<std::size_t>(goal);
        if (u_.kind[gi] == Kind::Atom) {
            bool found = false;
            for (std::size_t i = 0; i < n && !found; ++i)
                if (ctx[i] && yields_[i][gi]) found = true;
            if (!found) return false;
        }
        std::vector<char> pos = polar_[gi].first, neg = polar_[gi].second;
        for (std::size_t i = 0; i < n; ++i)
            if (ctx[i])
                for (std::size_t j = 0; j < n; ++j) {
                    pos[j] |= polar_[i].second[j];
                    neg[j] |= polar_[i].first[j];
                }
        return pos == neg;
    }

    // Positions of ctx that can be the focus somewhere in a proof of
    // g ||- goal for some g <= ctx. A formula leaves the context only by
    // being focused, and a focus needs a subgoal equal to its head.
    std::vector<char> relevant(const Ctx& ctx, int goal) const {
        std::size_t n = static_cast<std::size_t>(u_.size());
        std::vector<char> avail(n, 0), is_goal(n, 0), atom_goal(n, 0), used(n, 0);
        for (std::size_t i = 0; i < n; ++i) avail[i] = ctx[i] ? 1 : 0;
        std::vector<int> todo{goal};
        is_goal[static_cast<std::size_t>(goal)] = 1;
        auto push_goal = [&](int x) {
            if (!is_goal[static_cast<std::size_t>(x)]) {
                is_goal[static_cast<std::size_t>(x)] = 1;
                todo.push_back(x);
            }
        };
        bool changed = true;
        while (changed) {
            changed = false;
            while (!todo.empty()) {
                int x = todo.back();
                todo.pop_back();
                for (int a : u_.args[static_cast<std::size_t>(x)]) avail[static_cast<std::size_t>(a)] = 1;
                atom_goal[static_cast<std::size_t>(u_.head[static_cast<std::size_t>(x)])] = 1;
                changed = true;
            }
            for (std::size_t f = 0; f < n; ++f) {
                if (!avail[f] || used[f] || !atom_goal[static_cast<std::size_t>(u_.head[f])]) continue;
                used[f] = 1;
                for (int a : u_.args[f]) push_goal(a);
                changed = true;
            }
        }
        std::vector<char> rel(n, 0);
        for (std::size_t i = 0; i < n; ++i) rel[i] = ctx[i] && used[i];
        return rel;
    }

    static Ctx support_of(const Ctx& c) {
        Ctx s = c;
        for (char& ch : s) ch = ch ? 1 : 0;
        return s;
    }

    Outcome search(const Ctx& ctx, int goal) {
        if (++nodes_ > budget_) throw ResourceLimitError("node budget exhausted");
        std::string key = goal_key(ctx, goal);
        if (auto it = proved_.find(key); it != proved_.end()) return {it->second, {}};
        std::string cls = goal_key(support_of(ctx), goal);
        if (auto it = failed_.find(cls); it != failed_.end())
            for (const Ctx& f : it->second)
                if (same_support_leq(f, ctx)) return {std::nullopt, {}};
        if (auto it = proved_cls_.find(cls); it != proved_cls_.end())
            for (const Ctx& big : it->second)
                if (same_support_leq(ctx, big)) {
                    FrProof p = widen(proved_.at(goal_key(big, goal)), big, ctx, goal);
                    proved_.emplace(key, p);
                    return {std::move(p), {}};
                }
        if (auto it = scoped_failed_.find(key); it != scoped_failed_.end()) {
            auto [idx, serial] = it->second;
            if (idx < static_cast<int>(path_.size()) && serials_[static_cast<std::size_t>(idx)] == serial)
                return {std::nullopt, {idx}};
        }
        if (!can_yield(ctx, goal)) {
            failed_[cls].push_back(ctx);
            return {std::nullopt, {}};
        }
        const bool atomic = u_.kind[static_cast<std::size_t>(goal)] == Kind::Atom;
        if (atomic)
            for (int idx : by_goal_[goal])
                if (same_support_leq(path_[static_cast<std::size_t>(idx)], ctx)) return {std::nullopt, {idx}};

        int my = static_cast<int>(path_.size());
        if (atomic) {
            path_.push_back(ctx);
            serials_.push_back(++serial_counter_);
            by_goal_[goal].push_back(my);
        }
        auto pop = [&] {
            if (!atomic) return;
            path_.pop_back();
            serials_.pop_back();
            by_goal_[goal].pop_back();
        };
        Outcome out;
        try {
            out = expand(ctx, goal);
        } catch (...) {
            pop();
            throw;
        }
        pop();

        out.refs.erase(std::lower_bound(out.refs.begin(), out.refs.end(), my), out.refs.end());
        if (out.proof) {
            proved_.emplace(key, *out.proof);
            proved_cls_[cls].push_back(ctx);
            out.refs.clear();
        } else if (out.refs.empty()) {
            failed_[cls].push_back(ctx);
        } else {
            int top = out.refs.back();
            scoped_failed_[key] = {top, serials_[static_cast<std::size_t>(top)]};
        }
        return out;
    }

    // A proof for a same-support context `big` >= ctx, rewritten for ctx.
    // Non-atomic succedents are peeled first since Cf needs an atomic one.
    FrProof widen(const FrProof& p, const Ctx& big, const Ctx& ctx, int goal) const {
        if (u_.kind[static_cast<std::size_t>(goal)] == Kind::Atom) return contract_to(p, big, ctx, goal);
        int a = u_.left[static_cast<std::size_t>(goal)], b = u_.right[static_cast<std::size_t>(goal)];
        Ctx big2 = big, ctx2 = ctx;
        ctx_add(big2, a);
        ctx_add(ctx2, a);
        FrProof r;
        r.rule = FrRule::ImpRf;
        r.conclusion = seq(ctx, goal);
        r.principal = u_.formula(goal);
        r.premises.push_back(widen(p.premises.at(0), big2, ctx2, b));
        return r;
    }

    Outcome expand(const Ctx& ctx, int goal) {
        Outcome out;
        const Kind gk = u_.kind[static_cast<std::size_t>(goal)];
        if (gk == Kind::Imp) {
            Ctx prem = ctx;
            ctx_add(prem, u_.left[static_cast<std::size_t>(goal)]);
            Outcome o = search(prem, u_.right[static_cast<std::size_t>(goal)]);
            out.refs = std::move(o.refs);
            if (o.proof) {
                FrProof p;
                p.rule = FrRule::ImpRf;
                p.conclusion = seq(ctx, goal);
                p.principal = u_.formula(goal);
                p.premises.push_back(std::move(*o.proof));
                out.proof = std::move(p);
            }
            return out;
        }
        for (int f = 0; f < u_.size(); ++f) {
            if (!cnt(ctx, f) || u_.head[static_cast<std::size_t>(f)] != goal) continue;
            Outcome o = focused(ctx, f, f, goal);
            merge_refs(out.refs, o.refs);
            if (o.proof) {
                out.proof = std::move(o.proof);
                return out;
            }
        }
        return out;
    }

    // Proves ctx', [focus] ||- goal for ctx' = ctx minus one copy of
    // `principal` (or ctx itself when principal < 0), then applies Focus if
    // principal >= 0, and contracts down to ctx.
    Outcome focused(const Ctx& ctx, int focus, int principal, int goal) {
        Outcome out;
        const auto& args = u_.args[static_cast<std::size_t>(focus)];
        if (u_.head[static_cast<std::size_t>(focus)] != goal) return out;
        const std::size_t n = args.size();
        const std::size_t width = static_cast<std::size_t>(u_.size());

        if (n == 0) {
            // [a] ||- a with nothing else around
            Ctx rest = ctx;
            if (principal >= 0) rest[static_cast<std::size_t>(principal)] = static_cast<char>(cnt(ctx, principal) - 1);
            if (!ctx_empty(rest)) return out;
            FrProof id;
            id.rule = FrRule::AtomicId;
            id.conclusion = seq(rest, goal, focus);
            id.principal = u_.formula(focus);
            if (principal < 0) {
                out.proof = std::move(id);
                return out;
            }
            FrProof fp;
            fp.rule = FrRule::Focus;
            fp.conclusion = seq(ctx, goal);
            fp.principal = u_.formula(focus);
            fp.premises.push_back(std::move(id));
            out.proof = std::move(fp);
            return out;
        }

        std::vector<std::vector<char>> rel(n);
        std::vector<std::size_t> order(n);
        std::vector<int> rel_size(n, 0);
        for (std::size_t k = 0; k < n; ++k) {
            rel[k] = relevant(ctx, args[k]);
            for (char c : rel[k]) rel_size[k] += c;
            order[k] = k;
        }
        // Narrow arguments first; the widest one takes the least completion.
        std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return rel_size[x] < rel_size[y]; });

        // Every position except the principal's spare copy must be covered.
        Ctx need = ctx;
        if (principal >= 0) need[static_cast<std::size_t>(principal)] = static_cast<char>(cnt(ctx, principal) - 1);
        for (std::size_t i = 0; i < width; ++i) {
            if (!need[i]) continue;
            bool some = false;
            for (std::size_t k = 0; k < n && !some; ++k) some = rel[k][i];
            if (!some) return out;
        }

        std::vector<Ctx> ctxs(n, u_.empty_ctx());
        std::vector<std::optional<FrProof>> subs(n);

        auto finish = [&]() {
            // Premises are in formula order; conclusion before contraction is
            // sum of argument contexts (+ focus when it came from ctx).
            Ctx total = u_.empty_ctx();
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t i = 0; i < width; ++i) ctx_add(total, static_cast<int>(i), cnt(ctxs[k], static_cast<int>(i)));
            std::vector<int> spine{focus};
            for (std::size_t k = 0; k < n; ++k) spine.push_back(u_.right[static_cast<std::size_t>(spine.back())]);
            FrProof chain;
            chain.rule = FrRule::AtomicId;
            chain.conclusion = seq(u_.empty_ctx(), goal, goal);
            chain.principal = u_.formula(goal);
            Ctx acc = u_.empty_ctx();
            for (std::size_t k = n; k-- > 0;) {
                for (std::size_t i = 0; i < width; ++i) ctx_add(acc, static_cast<int>(i), cnt(ctxs[k], static_cast<int>(i)));
                FrProof node;
                node.rule = FrRule::ImpLf;
                node.conclusion = seq(acc, goal, spine[k]);
                node.principal = u_.formula(spine[k]);
                node.premises.push_back(*subs[k]);
                node.premises.push_back(std::move(chain));
                chain = std::move(node);
            }
            if (principal >= 0) {
                ctx_add(total, principal);
                FrProof fp;
                fp.rule = FrRule::Focus;
                fp.conclusion = seq(total, goal);
                fp.principal = u_.formula(focus);
                fp.premises.push_back(std::move(chain));
                out.proof = contract_to(std::move(fp), total, ctx, goal);
            } else {
                out.proof = contract_to(std::move(chain), total, ctx, goal, focus);
            }
        };

        Ctx cover = u_.empty_ctx();
        std::function<bool(std::size_t)> place = [&](std::size_t step) -> bool {
            std::size_t k = order[step];
            int arg = args[k];
            if (step + 1 == n) {
                Ctx d = u_.empty_ctx();
                std::vector<int> optional_pos;
                for (std::size_t i = 0; i < width; ++i) {
                    int m = cnt(need, static_cast<int>(i)) - cnt(cover, static_cast<int>(i));
                    if (m > 0) {
                        if (!rel[k][i]) return false;
                        d[i] = static_cast<char>(m);
                    } else if (rel[k][i]) {
                        optional_pos.push_back(static_cast<int>(i));
                    }
                }
                std::function<bool(std::size_t)> opt = [&](std::size_t j) -> bool {
                    if (j == optional_pos.size()) {
                        Outcome o = search(d, arg);
                        merge_refs(out.refs, o.refs);
                        if (!o.proof) return false;
                        ctxs[k] = d;
                        subs[k] = std::move(o.proof);
                        finish();
                        return true;
                    }
                    auto i = static_cast<std::size_t>(optional_pos[j]);
                    d[i] = 0;
                    if (opt(j + 1)) return true;
                    d[i] = 1;
                    if (opt(j + 1)) return true;
                    d[i] = 0;
                    return false;
                };
                return opt(0);
            }
            std::vector<int> pos;
            for (std::size_t i = 0; i < width; ++i)
                if (rel[k][i]) pos.push_back(static_cast<int>(i));
            Ctx g = u_.empty_ctx();
            // Largest contexts first: sharing everything is the common case.
            std::function<bool(std::size_t)> gen = [&](std::size_t j) -> bool {
                if (j == pos.size()) {
                    Outcome o = search(g, arg);
                    merge_refs(out.refs, o.refs);
                    if (!o.proof) return false;
                    ctxs[k] = g;
                    subs[k] = std::move(o.proof);
                    for (std::size_t i = 0; i < width; ++i) ctx_add(cover, static_cast<int>(i), cnt(g, static_cast<int>(i)));
                    bool ok = place(step + 1);
                    for (std::size_t i = 0; i < width; ++i)
                        cover[i] = static_cast<char>(cnt(cover, static_cast<int>(i)) - cnt(g, static_cast<int>(i)));
                    return ok;
                }
                auto i = static_cast<std::size_t>(pos[j]);
                for (int v = cnt(ctx, pos[j]); v >= 0; --v) {
                    g[i] = static_cast<char>(v);
                    if (gen(j + 1)) return true;
                }
                g[i] = 0;
                return false;
            };
            return gen(0);
        };
        place(0);
        return out;
    }

    const Universe& u_;
    std::size_t budget_;
    std::size_t nodes_ = 0;
    std::vector<std::vector<char>> yields_;
    std::vector<std::pair<std::vector<char>, std::vector<char>>> polar_;
    std::vector<Ctx> path_;
    std::vector<std::uint64_t> serials_;
    std::uint64_t serial_counter_ = 0;
    std::unordered_map<int, std::vector<int>> by_goal_;
    std::unordered_map<std::string, FrProof> proved_;
    std::unordered_map<std::string, std::vector<Ctx>> proved_cls_;
    std::unordered_map<std::string, std::vector<Ctx>> failed_;
    std::unordered_map<std::string, std::pair<int, std::uint64_t>> scoped_failed_;
};

// Forward saturation for unfocused queries, tried before the backward search.
// A derived fact G ||- C stands for every contraction of G. Formulas that can
// enter a context through right implication are "introduced": their counts
// are capped and compared by same-support order. Every other context formula
// comes from the query itself; its count never needs to exceed the query's,
// and more of it is always at least as good, so facts are compared pointwise
// there. If no count was ever cut at the cap, the facts cover every provable
// sequent and a miss is a refutation.
class FrSaturation {
public:
    enum class Outcome { Proved, Refuted, Unknown };

    FrSaturation(const Universe& u, int cap, std::size_t budget) : u_(u), cap_(cap), budget_(budget) {}

    Outcome run(const Ctx& ctx, int goal) {
        // peel the right-implication spine of the goal
        query_ = ctx;
        goal_ = goal;
        while (u_.kind[static_cast<std::size_t>(goal_)] == Kind::Imp) {
            spine_.push_back(goal_);
            ctx_add(query_, u_.left[static_cast<std::size_t>(goal_)]);
            goal_ = u_.right[static_cast<std::size_t>(goal_)];
        }
        classify();
        try {
            saturate();
        } catch (const ResourceLimitError&) {
            return Outcome::Unknown;
        }
        if (hit_ >= 0) return Outcome::Proved;
        return truncated_ ? Outcome::Unknown : Outcome::Refuted;
    }

    FrProof proof() const {
        const Fact& f = facts_[static_cast<std::size_t>(hit_)];
        FrProof p = contract(build(hit_), f.ctx, query_, goal_);
        Ctx c = query_;
        for (std::size_t k = spine_.size(); k-- > 0;) {
            int imp = spine_[k];
            c[static_cast<std::size_t>(u_.left[static_cast<std::size_t>(imp)])]--;
            FrProof r;
            r.rule = FrRule::ImpRf;
            r.conclusion = seq(c, imp);
            r.principal = u_.formula(imp);
            r.premises.push_back(std::move(p));
            p = std::move(r);
        }
        return p;
    }

    std::size_t facts() const { return facts_.size(); }

private:
    enum class How { Ident, Focus, ImpR, ImpRAll };
    struct Fact {
        Ctx ctx;
        int goal;
        How how;
        int formula;  // focused formula, or the discharged antecedent
        std::vector<int> prem;
        bool dominated = false;
        std::vector<unsigned char> pack;  // counts on slots_
        std::vector<std::uint64_t> mask;  // support on slots_
    };

    void classify() {
        auto n = static_cast<std::size_t>(u_.size());
        introduced_.assign(n, 0);
        contextual_.assign(n, 0);
        goal_of_.assign(n, 0);
        std::vector<int> todo;
        auto hyp = [&](int x) {
            if (!contextual_[static_cast<std::size_t>(x)]) {
                contextual_[static_cast<std::size_t>(x)] = 1;
                todo.push_back(x);
            }
        };
        auto want = [&](int x) {
            // x occurs as a succedent
            while (!goal_of_[static_cast<std::size_t>(x)]) {
                goal_of_[static_cast<std::size_t>(x)] = 1;
                if (u_.kind[static_cast<std::size_t>(x)] != Kind::Imp) break;
                int a = u_.left[static_cast<std::size_t>(x)];
                introduced_[static_cast<std::size_t>(a)] = 1;
                hyp(a);
                x = u_.right[static_cast<std::size_t>(x)];
            }
        };
        for (std::size_t i = 0; i < n; ++i)
            if (query_[i]) hyp(static_cast<int>(i));
        want(goal_);
        while (!todo.empty()) {
            int x = todo.back();
            todo.pop_back();
            for (int a : u_.args[static_cast<std::size_t>(x)]) want(a);
        }
        users_.assign(n, {});
        for (std::size_t f = 0; f < n; ++f)
            if (contextual_[f])
                for (std::size_t k = 0; k < u_.args[f].size(); ++k)
                    users_[static_cast<std::size_t>(u_.args[f][k])].push_back({static_cast<int>(f), static_cast<int>(k)});
        processed_.assign(n, {});
        slots_.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (contextual_[i]) slots_.push_back(static_cast<int>(i));
    }

    void pack(Fact& f) const {
        f.pack.assign(slots_.size(), 0);
        f.mask.assign((slots_.size() + 63) / 64, 0);
        for (std::size_t k = 0; k < slots_.size(); ++k) {
            f.pack[k] = static_cast<unsigned char>(f.ctx[static_cast<std::size_t>(slots_[k])]);
            if (f.pack[k]) f.mask[k / 64] |= std::uint64_t{1} << (k % 64);
        }
    }

    // Same bucket assumed, so introduced supports already agree.
    static bool packed_covers(const Fact& a, const Fact& b) {
        for (std::size_t w = 0; w < a.mask.size(); ++w)
            if (b.mask[w] & ~a.mask[w]) return false;
        for (std::size_t k = 0; k < a.pack.size(); ++k)
            if (a.pack[k] < b.pack[k]) return false;
        return true;
    }

    // Cuts counts to the query (plain formulas) or the cap (introduced ones).
    // Returns false when the context holds something that can never occur.
    bool normalize(Ctx& c) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            int k = static_cast<unsigned char>(c[i]);
            if (!k) continue;
            if (!contextual_[i]) return false;
            int limit = introduced_[i] ? std::max(cap_, cnt(query_, static_cast<int>(i))) : cnt(query_, static_cast<int>(i));
            if (!introduced_[i] && limit == 0) return false;
            if (k > limit) {
                if (introduced_[i]) truncated_ = true;
                c[i] = static_cast<char>(limit);
            }
        }
        return true;
    }

    // a is at least as strong as b
    bool covers(const Ctx& a, const Ctx& b) const {
        for (std::size_t i = 0; i < a.size(); ++i) {
            int x = static_cast<unsigned char>(a[i]), y = static_cast<unsigned char>(b[i]);
            if (introduced_[i]) {
                if ((x == 0) != (y == 0) || x < y) return false;
            } else if (x < y) {
                return false;
            }
        }
        return true;
    }

    std::string bucket(const Fact& f) const {
        std::string k(slots_.size() + 3, '\0');
        for (std::size_t i = 0; i < slots_.size(); ++i) k[i] = (introduced_[static_cast<std::size_t>(slots_[i])] && f.pack[i]) ? 1 : 0;
        k[slots_.size()] = static_cast<char>(f.goal & 0xff);
        k[slots_.size() + 1] = static_cast<char>((f.goal >> 8) & 0xff);
        k[slots_.size() + 2] = static_cast<char>((f.goal >> 16) & 0xff);
        return k;
    }

    void offer(Fact f) {
        if (hit_ >= 0) return;
        if (!normalize(f.ctx)) return;
        pack(f);
        std::string exact(f.pack.begin(), f.pack.end());
        exact.append(reinterpret_cast<const char*>(&f.goal), sizeof f.goal);
        if (!seen_.insert(std::move(exact)).second) return;  // offered before
        auto& b = buckets_[bucket(f)];
        for (int id : b)
            if (!facts_[static_cast<std::size_t>(id)].dominated && packed_covers(facts_[static_cast<std::size_t>(id)], f)) return;
        if (facts_.size() >= budget_) throw ResourceLimitError("saturation budget exhausted");
        int id = static_cast<int>(facts_.size());
        for (int old : b)
            if (packed_covers(f, facts_[static_cast<std::size_t>(old)])) facts_[static_cast<std::size_t>(old)].dominated = true;
        b.push_back(id);
        facts_.push_back(std::move(f));
        const Fact& me = facts_.back();
        // best first: fewest hypotheses, then most of the query's formulas used
        int used = 0, load = 0;
        for (std::size_t i = 0; i < me.ctx.size(); ++i) (introduced_[i] ? load : used) += static_cast<unsigned char>(me.ctx[i]);
        work_.push({used - load * 1024, -id});
        if (me.goal == goal_ && covers(me.ctx, query_) && same_support_leq(query_, me.ctx)) hit_ = id;
    }

    void saturate() {
        for (int a = 0; a < u_.size(); ++a)
            if (u_.kind[static_cast<std::size_t>(a)] == Kind::Atom && contextual_[static_cast<std::size_t>(a)] &&
                goal_of_[static_cast<std::size_t>(a)]) {
                Fact f{u_.empty_ctx(), a, How::Ident, a, {}, false, {}, {}};
                f.ctx[static_cast<std::size_t>(a)] = 1;
                offer(std::move(f));
            }
        while (!work_.empty() && hit_ < 0) {
            int x = -work_.top().second;
            work_.pop();
            if (facts_[static_cast<std::size_t>(x)].dominated) continue;
            const int g = facts_[static_cast<std::size_t>(x)].goal;
            processed_[static_cast<std::size_t>(g)].push_back(x);
            // right implication: some A -> g wanted as a succedent
            for (int imp = 0; imp < u_.size() && hit_ < 0; ++imp) {
                if (u_.kind[static_cast<std::size_t>(imp)] != Kind::Imp || u_.right[static_cast<std::size_t>(imp)] != g ||
                    !goal_of_[static_cast<std::size_t>(imp)])
                    continue;
                int a = u_.left[static_cast<std::size_t>(imp)];
                const Ctx& c = facts_[static_cast<std::size_t>(x)].ctx;
                int k = cnt(c, a);
                if (k == 0) continue;
                Fact f{c, imp, How::ImpR, a, {x}, false, {}, {}};
                f.ctx[static_cast<std::size_t>(a)] = static_cast<char>(k - 1);
                offer(f);
                if (k >= 2) {
                    f.ctx[static_cast<std::size_t>(a)] = 0;
                    f.how = How::ImpRAll;
                    offer(std::move(f));
                }
            }
            for (auto [f, k] : users_[static_cast<std::size_t>(g)]) {
                if (hit_ >= 0) break;
                join(f, k, x);
            }
        }
    }

    // Focus on f with fact x proving argument k and processed facts elsewhere.
    void join(int f, int k, int x) {
        const auto& args = u_.args[static_cast<std::size_t>(f)];
        std::vector<int> pick(args.size(), -1);
        pick[static_cast<std::size_t>(k)] = x;
        std::function<void(std::size_t)> rec = [&](std::size_t j) {
            if (hit_ >= 0) return;
            if (j == args.size()) {
                Fact out{u_.empty_ctx(), u_.head[static_cast<std::size_t>(f)], How::Focus, f, pick, false, {}, {}};
                out.ctx[static_cast<std::size_t>(f)] = 1;
                for (int p : pick) {
                    const Ctx& c = facts_[static_cast<std::size_t>(p)].ctx;
                    for (std::size_t i = 0; i < c.size(); ++i)
                        out.ctx[i] = static_cast<char>(std::min(cnt(out.ctx, static_cast<int>(i)) + cnt(c, static_cast<int>(i)), 120));
                }
                offer(std::move(out));
                return;
            }
            if (j == static_cast<std::size_t>(k)) return rec(j + 1);
            const auto& cand = processed_[static_cast<std::size_t>(args[j])];
            for (std::size_t t = 0; t < cand.size(); ++t) {
                if (facts_[static_cast<std::size_t>(cand[t])].dominated) continue;
                pick[j] = cand[t];
                rec(j + 1);
            }
        };
        rec(0);
    }

    FocusSequent seq(const Ctx& c, int goal, int focus = -1) const {
        FocusSequent s{u_.multiset_of(c), std::nullopt, u_.formula(goal)};
        if (focus >= 0) s.focus = u_.formula(focus);
        return s;
    }

    // Proof of the stored (already cut) context of a fact.
    FrProof build(int id) const {
        const Fact& f = facts_[static_cast<std::size_t>(id)];
        switch (f.how) {
            case How::Ident: {
                FrProof idp;
                idp.rule = FrRule::AtomicId;
                idp.conclusion = seq(u_.empty_ctx(), f.goal, f.formula);
                idp.principal = u_.formula(f.formula);
                FrProof p;
                p.rule = FrRule::Focus;
                p.conclusion = seq(f.ctx, f.goal);
                p.principal = u_.formula(f.formula);
                p.premises.push_back(std::move(idp));
                return p;
            }
            case How::ImpR:
            case How::ImpRAll: {
                const Fact& q = facts_[static_cast<std::size_t>(f.prem[0])];
                FrProof inner = build(f.prem[0]);
                Ctx want = q.ctx;
                if (f.how == How::ImpRAll) {
                    want[static_cast<std::size_t>(f.formula)] = 1;
                    inner = contract(std::move(inner), q.ctx, want, q.goal);
                }
                FrProof r;
                r.rule = FrRule::ImpRf;
                Ctx concl = want;
                concl[static_cast<std::size_t>(f.formula)]--;
                r.conclusion = seq(concl, f.goal);
                r.principal = u_.formula(f.goal);
                r.premises.push_back(std::move(inner));
                return contract(std::move(r), concl, f.ctx, f.goal);
            }
            case How::Focus: break;
        }
        const auto& args = u_.args[static_cast<std::size_t>(f.formula)];
        std::vector<int> spine{f.formula};
        for (std::size_t k = 0; k < args.size(); ++k) spine.push_back(u_.right[static_cast<std::size_t>(spine.back())]);
        FrProof chain;
        chain.rule = FrRule::AtomicId;
        chain.conclusion = seq(u_.empty_ctx(), f.goal, f.goal);
        chain.principal = u_.formula(f.goal);
        Ctx acc = u_.empty_ctx();
        for (std::size_t k = args.size(); k-- > 0;) {
            const Fact& q = facts_[static_cast<std::size_t>(f.prem[k])];
            for (std::size_t i = 0; i < acc.size(); ++i) ctx_add(acc, static_cast<int>(i), cnt(q.ctx, static_cast<int>(i)));
            FrProof node;
            node.rule = FrRule::ImpLf;
            node.conclusion = seq(acc, f.goal, spine[k]);
            node.principal = u_.formula(spine[k]);
            node.premises.push_back(build(f.prem[k]));
            node.premises.push_back(std::move(chain));
            chain = std::move(node);
        }
        Ctx total = acc;
        ctx_add(total, f.formula);
        FrProof fp;
        fp.rule = FrRule::Focus;
        fp.conclusion = seq(total, f.goal);
        fp.principal = u_.formula(f.formula);
        fp.premises.push_back(std::move(chain));
        return contract(std::move(fp), total, f.ctx, f.goal);
    }

    // Contracts `have` down to `want` (same support, pointwise smaller),
    // pushing through right implications to reach an atomic succedent.
    FrProof contract(FrProof p, const Ctx& have, const Ctx& want, int goal) const {
        if (have == want) return p;
        if (u_.kind[static_cast<std::size_t>(goal)] == Kind::Imp) {
            int a = u_.left[static_cast<std::size_t>(goal)];
            Ctx h2 = have, w2 = want;
            ctx_add(h2, a);
            ctx_add(w2, a);
            FrProof r;
            r.rule = FrRule::ImpRf;
            r.conclusion = seq(want, goal);
            r.principal = u_.formula(goal);
            r.premises.push_back(contract(std::move(p.premises.at(0)), h2, w2, u_.right[static_cast<std::size_t>(goal)]));
            return r;
        }
        Ctx cur = have;
        for (int i = 0; i < u_.size(); ++i)
            while (cnt(cur, i) > cnt(want, i)) {
                cur[static_cast<std::size_t>(i)]--;
                FrProof c;
                c.rule = FrRule::Cf;
                c.conclusion = seq(cur, goal);
                c.principal = u_.formula(i);
                c.premises.push_back(std::move(p));
                p = std::move(c);
            }
        return p;
    }

    const Universe& u_;
    int cap_;
    std::size_t budget_;
    Ctx query_;
    int goal_ = -1;
    std::vector<int> spine_;
    std::vector<char> introduced_, contextual_, goal_of_;
    std::vector<std::vector<std::pair<int, int>>> users_;
    std::vector<std::vector<int>> processed_;
    std::vector<int> slots_;  // contextual formulas
    std::unordered_set<std::string> seen_;
    std::vector<Fact> facts_;
    std::unordered_map<std::string, std::vector<int>> buckets_;
    std::priority_queue<std::pair<int, int>> work_;  // (score, -id)
    bool truncated_ = false;
    int hit_ = -1;
};

}  // namespace detail

inline FrResult fr_prove(const FocusSequent& s, const ProveOptions& opt = {}) {
    std::vector<Formula> roots = detail::sequent_roots(s.antecedent, s.succedent);
    if (s.focus) roots.push_back(*s.focus);
    for (const auto& f : roots) require_implicational(f);
    Universe u(roots);
    FrResult r;
    if (!s.focus && opt.saturation_cap > 0) {
        detail::FrSaturation sat(u, opt.saturation_cap, opt.fact_budget);
        auto verdict = sat.run(u.ctx_of(s.antecedent), u.id(s.succedent));
        r.nodes = sat.facts();
        if (verdict == detail::FrSaturation::Outcome::Proved) {
            r.provable = true;
            r.proof = sat.proof();
            return r;
        }
        if (verdict == detail::FrSaturation::Outcome::Refuted) return r;
    }
    detail::FrSearch search(u, opt.node_budget);
    std::optional<FrProof> p = s.focus ? search.run_focused(u.ctx_of(s.antecedent), u.id(*s.focus), u.id(s.succedent))
                                       : search.run(u.ctx_of(s.antecedent), u.id(s.succedent));
    r.nodes += search.nodes();
    r.provable = p.has_value();
    r.proof = std::move(p);
    return r;
}

// ---------------------------------------------------------------- transformations

inline LrProof defocus(const FrProof& p) {
    if (auto res = check_fr_proof(p); !res) throw InvalidProof(res.message);
    struct Rec {
        static LrProof go(const FrProof& q) {
            if (q.rule == FrRule::Focus) return go(q.premises[0]);
            LrProof r;
            r.conclusion = unfocus(q.conclusion);
            std::string why;
            r.principal = detail::fr_local(q, why);
            switch (q.rule) {
                case FrRule::AtomicId: r.rule = LrRule::Id; break;
                case FrRule::Cf: r.rule = LrRule::C; break;
                case FrRule::ImpLf: r.rule = LrRule::ImpL; break;
                case FrRule::ImpRf: r.rule = LrRule::ImpR; break;
                case FrRule::Focus: break;
            }
            for (const auto& c : q.premises) r.premises.push_back(go(c));
            return r;
        }
    };
    return Rec::go(p);
}

namespace detail {

inline FrProof fr_node(FrRule rule, FocusSequent concl, const Formula& principal, std::vector<FrProof> prems = {}) {
    FrProof p;
    p.rule = rule;
    p.conclusion = std::move(concl);
    p.principal = principal;
    p.premises = std::move(prems);
    return p;
}

// Applies Cf until the (atomic-succedent) conclusion has antecedent `want`.
inline FrProof contract_down(FrProof p, const Multiset& want) {
    Multiset have = p.conclusion.antecedent;
    for (const auto& [f, k] : Multiset(have)) {
        int extra = k - ms_count(want, f);
        if (extra < 0) throw ShapeMismatch("contraction target is not below the premise");
        for (int i = 0; i < extra; ++i) {
            if (ms_count(have, f) <= 1) throw ShapeMismatch("contraction would empty a support position");
            ms_add(have, f, -1);
            FocusSequent c = p.conclusion;
            c.antecedent = have;
            p = fr_node(FrRule::Cf, std::move(c), f, {std::move(p)});
        }
    }
    if (have != want) throw ShapeMismatch("contraction target has formulas the premise lacks");
    return p;
}

// A_1, ..., A_n, [A] ||- a for A = A_1 -> ... -> A_n -> a.
inline FrProof focused_identity(const Formula& f);

inline FrProof identity_proof(const Formula& f) {
    Formula head;
    std::vector<Formula> args = split_arrows(f, head);
    FrProof p = focused_identity(f);
    Multiset ctx = ms_of(args);
    ms_add(ctx, f);
    p = fr_node(FrRule::Focus, FocusSequent{ctx, std::nullopt, head}, f, {std::move(p)});
    Formula succ = head;
    for (std::size_t k = args.size(); k-- > 0;) {
        ms_add(ctx, args[k], -1);
        succ = Formula::imp(args[k], succ);
        p = fr_node(FrRule::ImpRf, FocusSequent{ctx, std::nullopt, succ}, succ, {std::move(p)});
    }
    return p;
}

inline FrProof focused_identity(const Formula& f) {
    if (f.is_atom()) return fr_node(FrRule::AtomicId, FocusSequent{{}, f, f}, f);
    Formula head;
    std::vector<Formula> args = split_arrows(f, head);
    FrProof left = identity_proof(f.left());
    FrProof right = focused_identity(f.right());
    Multiset ctx = ms_of(args);
    return fr_node(FrRule::ImpLf, FocusSequent{ctx, f, head}, f, {std::move(left), std::move(right)});
}

inline FrProof wrap_impr(FrProof p, const std::vector<Formula>& args) {
    for (std::size_t k = args.size(); k-- > 0;) {
        Multiset ctx = p.conclusion.antecedent;
        ms_add(ctx, args[k], -1);
        Formula succ = Formula::imp(args[k], p.conclusion.succedent);
        p = fr_node(FrRule::ImpRf, FocusSequent{ctx, std::nullopt, succ}, succ, {std::move(p)});
    }
    return p;
}

}  // namespace detail

// Identity A ||- A for an arbitrary implicational A, without search.
inline FrProof admissible_identity(const Formula& f) {
    require_implicational(f);
    return detail::identity_proof(f);
}

// From a proof of G ||- A -> B, the proof of G, A ||- B above its root.
inline FrProof invert_impr(const FrProof& p) {
    if (p.rule != FrRule::ImpRf || p.premises.size() != 1 || p.conclusion.focus || !p.conclusion.succedent.is_imp())
        throw InvalidProof("root of a proof with implication succedent must be ImpRf");
    return p.premises[0];
}

namespace detail {

inline FrProof invert_all(FrProof p) {
    while (!p.conclusion.succedent.is_atom()) p = invert_impr(p);
    return p;
}

// Mix with cut formula A = left's succedent. `m` copies of A are removed from
// the right proof's unfocused antecedent, and additionally its focus when
// `focus_cut`. Recursion follows the last rule of the right proof; every call
// either shrinks the cut formula or moves to a premise of the right proof.
inline FrProof mix(const FrProof& left, const FrProof& right, int m, bool focus_cut) {
    const Formula& a = left.conclusion.succedent;
    const FocusSequent& rs = right.conclusion;
    if (left.conclusion.focus) throw ShapeMismatch("mix left premise must be unfocused");
    if (!rs.succedent.is_atom()) {
        // Left-rule premises may prove implications: go through the
        // invertible ImpRf steps and put them back afterwards.
        if (focus_cut || rs.focus) throw ShapeMismatch("focused mix premise needs an atomic succedent");
        Formula head;
        std::vector<Formula> args = split_arrows(rs.succedent, head);
        return wrap_impr(mix(left, invert_all(right), m, false), args);
    }
    if (m < 0 || ms_count(rs.antecedent, a) < m) throw ShapeMismatch("not enough cut-formula copies on the right");
    if (focus_cut && (!rs.focus || *rs.focus != a)) throw ShapeMismatch("right premise is not focused on the cut formula");
    if (m == 0 && !focus_cut) return right;
    const Multiset& gamma = left.conclusion.antecedent;

    auto result_seq = [&]() {
        FocusSequent s;
        s.antecedent = rs.antecedent;
        ms_add(s.antecedent, a, -m);
        s.antecedent = ms_sum(s.antecedent, gamma);
        if (!focus_cut) s.focus = rs.focus;
        s.succedent = rs.succedent;
        return s;
    };

    switch (right.rule) {
        case FrRule::AtomicId:
            if (focus_cut && m == 0) return left;
            throw ShapeMismatch("identity axiom carries no context copies to cut");
        case FrRule::Focus: {
            if (focus_cut) throw ShapeMismatch("Focus conclusion has no focus");
            const FrProof& prem = right.premises[0];
            const Formula& b = *prem.conclusion.focus;
            if (b == a) return mix(left, prem, m - 1, true);
            FrProof inner = mix(left, prem, m, false);
            return fr_node(FrRule::Focus, result_seq(), b, {std::move(inner)});
        }
        case FrRule::Cf: {
            const FrProof& prem = right.premises[0];
            Multiset diff = prem.conclusion.antecedent;
            ms_sub(diff, rs.antecedent);
            const Formula c = diff.begin()->first;
            if (c == a && m >= 1) return mix(left, prem, m + 1, focus_cut);
            FrProof inner = mix(left, prem, m, focus_cut);
            return fr_node(FrRule::Cf, result_seq(), c, {std::move(inner)});
        }
        case FrRule::ImpLf: {
            const FrProof& r1 = right.premises[0];
            const FrProof& r2 = right.premises[1];
            int n1 = std::min(m, ms_count(r1.conclusion.antecedent, a));
            int n2 = m - n1;
            const Formula& bc = *rs.focus;
            if (!focus_cut) {
                FrProof p1 = mix(left, r1, n1, false);
                FrProof p2 = mix(left, r2, n2, false);
                FocusSequent s;
                s.antecedent = ms_sum(p1.conclusion.antecedent, p2.conclusion.antecedent);
                s.focus = bc;
                s.succedent = rs.succedent;
                FrProof joined = fr_node(FrRule::ImpLf, s, bc, {std::move(p1), std::move(p2)});
                return contract_down(std::move(joined), result_seq().antecedent);
            }
            // The focus itself is the cut formula B -> C.
            const Formula& b = bc.left();
            FrProof inv = invert_impr(left);                   // G, B ||- C
            FrProof q = mix(left, r2, n2, false);               // G?, D2, [C] ||- a
            FrProof s1 = mix(inv, q, 0, true);                  // G, B, G?, D2 ||- a
            Multiset s1_want = ms_sum(gamma, r2.conclusion.antecedent);
            ms_add(s1_want, a, -n2);
            ms_add(s1_want, b);
            s1 = contract_down(std::move(s1), s1_want);         // G, D2, B ||- a
            FrProof p1 = mix(left, r1, n1, false);              // G?, D1 ||- B
            FrProof s2 = mix(p1, s1, 1, false);                 // G?, D1, G, D2 ||- a
            return contract_down(std::move(s2), result_seq().antecedent);
        }
        case FrRule::ImpRf:
            throw ShapeMismatch("right premise of mix cannot end in ImpRf");
    }
    throw ShapeMismatch("unknown rule");
}

}  // namespace detail

enum class MixForm { Context, Focused };

// Mix-free proof of G, D ||- a from left: G ||- A and right: D, A^k ||- a
// (Context, k = n + 1) or D, A^n, [A] ||- a (Focused, k = n).
inline FrProof eliminate_mix(const FrProof& left, const FrProof& right, MixForm form, int n) {
    if (auto r = check_fr_proof(left); !r) throw InvalidProof("left: " + r.message);
    if (auto r = check_fr_proof(right); !r) throw InvalidProof("right: " + r.message);
    if (n < 0) throw ShapeMismatch("negative cut count");
    return form == MixForm::Focused ? detail::mix(left, right, n, true) : detail::mix(left, right, n + 1, false);
}

// Cuts every occurrence of the left succedent in the right proof's endsequent.
inline FrProof eliminate_mix(const FrProof& left, const FrProof& right) {
    const Formula& a = left.conclusion.succedent;
    int k = ms_count(right.conclusion.antecedent, a);
    if (right.conclusion.focus && *right.conclusion.focus == a) return eliminate_mix(left, right, MixForm::Focused, k);
    if (k == 0) throw ShapeMismatch("cut formula does not occur on the right");
    return eliminate_mix(left, right, MixForm::Context, k - 1);
}

inline FrProof focalize(const LrProof& p) {
    if (auto r = check_lr_proof(p); !r) throw InvalidProof(r.message);
    struct Rec {
        static FrProof go(const LrProof& q) {
            std::string why;
            Formula pr = *detail::lr_local(q, why);
            switch (q.rule) {
                case LrRule::Id: return admissible_identity(q.conclusion.succedent);
                case LrRule::ImpR: {
                    FrProof sub = go(q.premises[0]);
                    return detail::fr_node(FrRule::ImpRf, FocusSequent{q.conclusion.antecedent, std::nullopt, q.conclusion.succedent},
                                           q.conclusion.succedent, {std::move(sub)});
                }
                case LrRule::C: {
                    Formula head;
                    std::vector<Formula> args = split_arrows(q.conclusion.succedent, head);
                    FrProof sub = detail::invert_all(go(q.premises[0]));
                    Multiset ctx = sub.conclusion.antecedent;
                    ms_add(ctx, pr, -1);
                    FrProof c = detail::fr_node(FrRule::Cf, FocusSequent{ctx, std::nullopt, head}, pr, {std::move(sub)});
                    return detail::wrap_impr(std::move(c), args);
                }
                case LrRule::ImpL: {
                    const Formula& a = pr.left();
                    const Formula& b = pr.right();
                    Formula bh, ch;
                    std::vector<Formula> bargs = split_arrows(b, bh);
                    std::vector<Formula> cargs = split_arrows(q.conclusion.succedent, ch);
                    FrProof left = go(q.premises[0]);  // G ||- A
                    // A, B_1..B_m, [A -> B] ||- b, focused, then G replaces A
                    Multiset kctx = ms_of(bargs);
                    ms_add(kctx, a);
                    FrProof x = detail::fr_node(FrRule::ImpLf, FocusSequent{kctx, pr, bh}, pr,
                                                {admissible_identity(a), detail::focused_identity(b)});
                    ms_add(kctx, pr);
                    x = detail::fr_node(FrRule::Focus, FocusSequent{kctx, std::nullopt, bh}, pr, {std::move(x)});
                    FrProof k = detail::wrap_impr(detail::mix(left, x, 1, false), bargs);  // G, A -> B ||- B
                    FrProof right = detail::invert_all(go(q.premises[1]));                  // D, B, C_i ||- c
                    FrProof joined = detail::mix(k, right, 1, false);
                    return detail::wrap_impr(std::move(joined), cargs);
                }
                default:
                    throw UnsupportedConnective(std::string("focalize covers only Id, C, ImpL, ImpR; got ") +
                                                lr_rule_name(q.rule));
            }
        }
    };
    return Rec::go(p);
}

}  // namespace relb
