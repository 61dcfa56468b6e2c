#pragma once
// Sequent calculus for implicational relevance logic (with optional fusion
// and truth): proof objects, a local-rule checker, a pruned decision
// procedure and an unpruned depth-bounded oracle.

#include <algorithm>
#include <climits>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <stdexcept>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "relb/formula.hpp"
#include "relb/sequent.hpp"
#include "relb/universe.hpp"

namespace relb {

enum class LrRule { Id, C, ImpL, ImpR, TruthL, TruthR, FusL, FusR };

inline const char* lr_rule_name(LrRule r) {
    switch (r) {
        case LrRule::Id: return "Id";
        case LrRule::C: return "C";
        case LrRule::ImpL: return "ImpL";
        case LrRule::ImpR: return "ImpR";
        case LrRule::TruthL: return "TruthL";
        case LrRule::TruthR: return "TruthR";
        case LrRule::FusL: return "FusL";
        case LrRule::FusR: return "FusR";
    }
    return "?";
}

inline std::optional<LrRule> lr_rule_from_name(const std::string& s) {
    for (LrRule r : {LrRule::Id, LrRule::C, LrRule::ImpL, LrRule::ImpR, LrRule::TruthL, LrRule::TruthR,
                     LrRule::FusL, LrRule::FusR})
        if (s == lr_rule_name(r)) return r;
    return std::nullopt;
}

struct LrProof {
    LrRule rule = LrRule::Id;
    Sequent conclusion;
    std::optional<Formula> principal;
    std::vector<LrProof> premises;

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
};

struct CheckResult {
    bool ok = true;
    std::vector<std::size_t> path;  // premise indices from the root to the first bad node
    std::string message;
    explicit operator bool() const { return ok; }
};

namespace detail {

inline std::vector<Formula> principal_candidates(const Multiset& ctx, const std::optional<Formula>& given) {
    std::vector<Formula> out;
    if (given) {
        if (ms_count(ctx, *given) > 0) out.push_back(*given);
        return out;
    }
    for (const auto& kv : ctx) out.push_back(kv.first);
    return out;
}

// Returns the principal formula when the node is locally valid, otherwise
// nullopt with `why` filled in.
inline std::optional<Formula> lr_local(const LrProof& p, std::string& why) {
    const Sequent& s = p.conclusion;
    const auto& ps = p.premises;
    auto arity = [&](std::size_t n) {
        if (ps.size() != n) {
            why = std::string(lr_rule_name(p.rule)) + " expects " + std::to_string(n) + " premise(s)";
            return false;
        }
        return true;
    };
    switch (p.rule) {
        case LrRule::Id: {
            if (!arity(0)) return std::nullopt;
            if (s.antecedent.size() == 1 && s.antecedent.begin()->second == 1 &&
                s.antecedent.begin()->first == s.succedent)
                return s.succedent;
            why = "Id needs conclusion A |- A";
            return std::nullopt;
        }
        case LrRule::TruthR: {
            if (!arity(0)) return std::nullopt;
            if (s.antecedent.empty() && s.succedent.is_truth()) return s.succedent;
            why = "TruthR needs conclusion |- T";
            return std::nullopt;
        }
        case LrRule::ImpR: {
            if (!arity(1)) return std::nullopt;
            if (!s.succedent.is_imp()) {
                why = "ImpR needs an implication succedent";
                return std::nullopt;
            }
            Multiset want = s.antecedent;
            ms_add(want, s.succedent.left());
            if (ps[0].conclusion.succedent == s.succedent.right() && ps[0].conclusion.antecedent == want)
                return s.succedent;
            why = "ImpR premise must be G, A |- B";
            return std::nullopt;
        }
        case LrRule::C: {
            if (!arity(1)) return std::nullopt;
            if (ps[0].conclusion.succedent == s.succedent)
                for (const auto& x : principal_candidates(s.antecedent, p.principal)) {
                    Multiset want = s.antecedent;
                    ms_add(want, x);
                    if (ps[0].conclusion.antecedent == want) return x;
                }
            why = "C premise must repeat exactly one antecedent formula";
            return std::nullopt;
        }
        case LrRule::TruthL: {
            if (!arity(1)) return std::nullopt;
            Formula t = Formula::truth();
            if (ps[0].conclusion.succedent == s.succedent && ms_count(s.antecedent, t) > 0 &&
                (!p.principal || *p.principal == t)) {
                Multiset want = s.antecedent;
                ms_add(want, t, -1);
                if (ps[0].conclusion.antecedent == want) return t;
            }
            why = "TruthL premise must drop one T";
            return std::nullopt;
        }
        case LrRule::FusL: {
            if (!arity(1)) return std::nullopt;
            if (ps[0].conclusion.succedent == s.succedent)
                for (const auto& x : principal_candidates(s.antecedent, p.principal)) {
                    if (!x.is_fusion()) continue;
                    Multiset want = s.antecedent;
                    ms_add(want, x, -1);
                    ms_add(want, x.left());
                    ms_add(want, x.right());
                    if (ps[0].conclusion.antecedent == want) return x;
                }
            why = "FusL premise must unpack one fusion";
            return std::nullopt;
        }
        case LrRule::FusR: {
            if (!arity(2)) return std::nullopt;
            if (s.succedent.is_fusion() && ps[0].conclusion.succedent == s.succedent.left() &&
                ps[1].conclusion.succedent == s.succedent.right() &&
                ms_sum(ps[0].conclusion.antecedent, ps[1].conclusion.antecedent) == s.antecedent)
                return s.succedent;
            why = "FusR context split does not add up";
            return std::nullopt;
        }
        case LrRule::ImpL: {
            if (!arity(2)) return std::nullopt;
            const Sequent& l = ps[0].conclusion;
            const Sequent& r = ps[1].conclusion;
            if (r.succedent == s.succedent)
                for (const auto& x : principal_candidates(s.antecedent, p.principal)) {
                    if (!x.is_imp() || x.left() != l.succedent) continue;
                    Multiset delta = r.antecedent;
                    if (ms_count(delta, x.right()) == 0) continue;
                    ms_add(delta, x.right(), -1);
                    Multiset want = ms_sum(l.antecedent, delta);
                    ms_add(want, x);
                    if (want == s.antecedent) return x;
                }
            why = "ImpL context split does not add up";
            return std::nullopt;
        }
    }
    why = "unknown rule";
    return std::nullopt;
}

inline bool check_lr_rec(const LrProof& p, CheckResult& res) {
    std::string why;
    if (!lr_local(p, why)) {
        res.ok = false;
        res.message = why + " at: " + render_sequent(p.conclusion);
        return false;
    }
    for (std::size_t i = 0; i < p.premises.size(); ++i) {
        res.path.push_back(i);
        if (!check_lr_rec(p.premises[i], res)) return false;
        res.path.pop_back();
    }
    return true;
}

}  // namespace detail

inline CheckResult check_lr_proof(const LrProof& p) {
    CheckResult res;
    detail::check_lr_rec(p, res);
    return res;
}

// Fills in missing principal annotations; throws std::invalid_argument on an
// invalid node.
inline void annotate_lr_principals(LrProof& p) {
    std::string why;
    auto pr = detail::lr_local(p, why);
    if (!pr) throw std::invalid_argument(why);
    p.principal = pr;
    for (auto& q : p.premises) annotate_lr_principals(q);
}

inline Sequent theorem_sequent(const Formula& f) { return Sequent{{}, f}; }

struct ProveOptions {
    std::size_t node_budget = 20'000'000;
    // FR only: forward saturation tried first; 0 disables it
    int saturation_cap = 4;
    std::size_t fact_budget = 2'000'000;
};

struct LrResult {
    bool provable = false;
    std::optional<LrProof> proof;
    std::size_t nodes = 0;
};

namespace detail {

inline std::vector<Formula> sequent_roots(const Multiset& ant, const Formula& succ) {
    std::vector<Formula> r;
    for (const auto& kv : ant) r.push_back(kv.first);
    r.push_back(succ);
    return r;
}

inline std::string goal_key(const Ctx& ctx, int goal) {
    std::string k = ctx;
    k.push_back(static_cast<char>(goal & 0xff));
    k.push_back(static_cast<char>((goal >> 8) & 0xff));
    k.push_back(static_cast<char>((goal >> 16) & 0xff));
    return k;
}

// yields[i][j]: atom j can become the succedent via left rules on formula i.
inline std::vector<std::vector<char>> head_yields(const Universe& u) {
    std::size_t n = static_cast<std::size_t>(u.size());
    std::vector<std::vector<char>> y(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {  // subformulas precede their parents
        switch (u.kind[i]) {
            case Kind::Atom: y[i][i] = 1; break;
            case Kind::Imp: y[i] = y[static_cast<std::size_t>(u.right[i])]; break;
            case Kind::Fusion:
                for (std::size_t j = 0; j < n; ++j)
                    y[i][j] = y[static_cast<std::size_t>(u.left[i])][j] | y[static_cast<std::size_t>(u.right[i])][j];
                break;
            case Kind::Truth: break;
        }
    }
    return y;
}

// Atom occurrences by polarity: occ[i].first holds atoms occurring
// positively in formula i (read as a succedent), .second negatively.
inline std::vector<std::pair<std::vector<char>, std::vector<char>>> polar_atoms(const Universe& u) {
    std::size_t n = static_cast<std::size_t>(u.size());
    std::vector<std::pair<std::vector<char>, std::vector<char>>> occ(
        n, {std::vector<char>(n, 0), std::vector<char>(n, 0)});
    for (std::size_t i = 0; i < n; ++i) {
        auto& [pos, neg] = occ[i];
        if (u.kind[i] == Kind::Atom) pos[i] = 1;
        if (u.kind[i] == Kind::Imp || u.kind[i] == Kind::Fusion) {
            const auto& l = occ[static_cast<std::size_t>(u.left[i])];
            const auto& r = occ[static_cast<std::size_t>(u.right[i])];
            bool flip = u.kind[i] == Kind::Imp;
            for (std::size_t j = 0; j < n; ++j) {
                pos[j] = (flip ? l.second[j] : l.first[j]) | r.first[j];
                neg[j] = (flip ? l.first[j] : l.second[j]) | r.second[j];
            }
        }
    }
    return occ;
}

// Backward search with contraction folded into the context-splitting rules:
// a premise context never exceeds the conclusion's, and a subgoal is
// abandoned when an ancestor on the current path has the same succedent,
// the same support and a pointwise smaller context.
class LrSearch {
public:
    LrSearch(const Universe& u, std::size_t budget) : u_(u), budget_(budget), yields_(head_yields(u)), polar_(polar_atoms(u)) {}

    std::optional<LrProof> run(const Ctx& ctx, int goal) { return search(ctx, goal).proof; }
    std::size_t nodes() const { return nodes_; }

private:
    struct Outcome {
        std::optional<LrProof> proof;
        std::vector<int> refs;  // path indices that pruned something inside this subtree (sorted)
    };

    Sequent seq(const Ctx& c, int goal) const { return Sequent{u_.multiset_of(c), u_.formula(goal)}; }

    // Contract `have` (pointwise >= want, same support) down to `want`.
    LrProof contract_to(LrProof p, Ctx have, const Ctx& want, int goal) const {
        for (int i = 0; i < u_.size(); ++i) {
            while (cnt(have, i) > cnt(want, i)) {
                have[static_cast<std::size_t>(i)] = static_cast<char>(cnt(have, i) - 1);
                LrProof c;
                c.rule = LrRule::C;
                c.conclusion = seq(have, goal);
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

    // Necessary conditions for provability. An atomic succedent must be the
    // head of some antecedent formula, and since every atom occurrence traces
    // up to an identity axiom, each atom must occur with both polarities.
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
        // Unprovable with fewer copies means unprovable here; provable with
        // more copies means provable here after contraction.
        if (auto it = failed_.find(cls); it != failed_.end())
            for (const Ctx& f : it->second)
                if (same_support_leq(f, ctx)) return {std::nullopt, {}};
        if (auto it = proved_cls_.find(cls); it != proved_cls_.end())
            for (const Ctx& big : it->second)
                if (same_support_leq(ctx, big)) {
                    LrProof p = contract_to(proved_.at(goal_key(big, goal)), big, ctx, goal);
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
        for (int idx : by_goal_[goal])
            if (same_support_leq(path_[static_cast<std::size_t>(idx)], ctx)) return {std::nullopt, {idx}};

        int my = static_cast<int>(path_.size());
        path_.push_back(ctx);
        serials_.push_back(++serial_counter_);
        by_goal_[goal].push_back(my);
        Outcome out;
        try {
            out = expand(ctx, goal);
        } catch (...) {
            path_.pop_back();
            serials_.pop_back();
            by_goal_[goal].pop_back();
            throw;
        }
        path_.pop_back();
        serials_.pop_back();
        by_goal_[goal].pop_back();

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

    Outcome expand(const Ctx& ctx, int goal) {
        Outcome out;
        auto note = [&](const Outcome& o) { merge_refs(out.refs, o.refs); };
        const Kind gk = u_.kind[static_cast<std::size_t>(goal)];

        if (gk == Kind::Imp) {
            Ctx prem = ctx;
            ctx_add(prem, u_.left[static_cast<std::size_t>(goal)]);
            Outcome o = search(prem, u_.right[static_cast<std::size_t>(goal)]);
            note(o);
            if (o.proof) {
                LrProof p;
                p.rule = LrRule::ImpR;
                p.conclusion = seq(ctx, goal);
                p.principal = u_.formula(goal);
                p.premises.push_back(std::move(*o.proof));
                out.proof = std::move(p);
            }
            return out;
        }

        // Id
        {
            bool only = cnt(ctx, goal) == 1;
            for (int i = 0; only && i < u_.size(); ++i)
                if (i != goal && cnt(ctx, i)) only = false;
            if (only) {
                LrProof p;
                p.rule = LrRule::Id;
                p.conclusion = seq(ctx, goal);
                p.principal = u_.formula(goal);
                out.proof = std::move(p);
                return out;
            }
        }
        if (gk == Kind::Truth && ctx_empty(ctx)) {
            LrProof p;
            p.rule = LrRule::TruthR;
            p.conclusion = seq(ctx, goal);
            p.principal = u_.formula(goal);
            out.proof = std::move(p);
            return out;
        }

        for (int pr = 0; pr < u_.size(); ++pr) {
            if (!cnt(ctx, pr)) continue;
            const Kind pk = u_.kind[static_cast<std::size_t>(pr)];
            if (pk == Kind::Truth) {
                Ctx prem = ctx;
                prem[static_cast<std::size_t>(pr)] = static_cast<char>(cnt(ctx, pr) - 1);
                Outcome o = search(prem, goal);
                note(o);
                if (o.proof) {
                    LrProof p;
                    p.rule = LrRule::TruthL;
                    p.conclusion = seq(ctx, goal);
                    p.principal = u_.formula(pr);
                    p.premises.push_back(std::move(*o.proof));
                    out.proof = std::move(p);
                    return out;
                }
            } else if (pk == Kind::Fusion) {
                int a = u_.left[static_cast<std::size_t>(pr)], b = u_.right[static_cast<std::size_t>(pr)];
                for (int keep = 0; keep < (cnt(ctx, pr) == 1 ? 2 : 1); ++keep) {
                    Ctx base = ctx;
                    if (!keep) base[static_cast<std::size_t>(pr)] = static_cast<char>(cnt(ctx, pr) - 1);
                    Ctx prem = base;
                    ctx_add(prem, a);
                    ctx_add(prem, b);
                    Outcome o = search(prem, goal);
                    note(o);
                    if (o.proof) {
                        LrProof p;
                        p.rule = LrRule::FusL;
                        Ctx concl = base;
                        ctx_add(concl, pr);
                        p.conclusion = seq(concl, goal);
                        p.principal = u_.formula(pr);
                        p.premises.push_back(std::move(*o.proof));
                        out.proof = contract_to(std::move(p), concl, ctx, goal);
                        return out;
                    }
                }
            } else if (pk == Kind::Imp) {
                int a = u_.left[static_cast<std::size_t>(pr)], b = u_.right[static_cast<std::size_t>(pr)];
                std::optional<LrProof> left;
                for_each_least_split(ctx, pr, [&](const Ctx& g) {
                    Outcome o1 = search(g, a);
                    note(o1);
                    left = std::move(o1.proof);
                    return left.has_value();
                }, [&](const Ctx& g, const Ctx& d) {
                    Ctx d2 = d;
                    ctx_add(d2, b);
                    Outcome o2 = search(d2, goal);
                    note(o2);
                    if (!o2.proof) return false;
                    Ctx concl = g;
                    for (int i = 0; i < u_.size(); ++i) ctx_add(concl, i, cnt(d, i));
                    ctx_add(concl, pr);
                    LrProof p;
                    p.rule = LrRule::ImpL;
                    p.conclusion = seq(concl, goal);
                    p.principal = u_.formula(pr);
                    p.premises.push_back(*left);
                    p.premises.push_back(std::move(*o2.proof));
                    out.proof = contract_to(std::move(p), concl, ctx, goal);
                    return true;
                });
                if (out.proof) return out;
            }
        }

        if (gk == Kind::Fusion) {
            int a = u_.left[static_cast<std::size_t>(goal)], b = u_.right[static_cast<std::size_t>(goal)];
            std::optional<LrProof> left;
            for_each_least_split(ctx, -1, [&](const Ctx& g) {
                Outcome o1 = search(g, a);
                note(o1);
                left = std::move(o1.proof);
                return left.has_value();
            }, [&](const Ctx& g, const Ctx& d) {
                Outcome o2 = search(d, b);
                note(o2);
                if (!o2.proof) return false;
                Ctx concl = g;
                for (int i = 0; i < u_.size(); ++i) ctx_add(concl, i, cnt(d, i));
                LrProof p;
                p.rule = LrRule::FusR;
                p.conclusion = seq(concl, goal);
                p.principal = u_.formula(goal);
                p.premises.push_back(*left);
                p.premises.push_back(std::move(*o2.proof));
                out.proof = contract_to(std::move(p), concl, ctx, goal);
                return true;
            });
        }
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
    std::unordered_map<std::string, LrProof> proved_;
    std::unordered_map<std::string, std::vector<Ctx>> proved_cls_;
    std::unordered_map<std::string, std::vector<Ctx>> failed_;
    std::unordered_map<std::string, std::pair<int, std::uint64_t>> scoped_failed_;
};

// Exhaustive backward search to a fixed height, every rule including an
// explicit contraction step, no pruning.
class LrBounded {
public:
    explicit LrBounded(const Universe& u) : u_(u) {}

    bool prove(const Ctx& ctx, int goal, int depth) {
        if (depth <= 0) return false;
        std::string key = goal_key(ctx, goal);
        // {smallest height known provable, largest height known failing}
        if (auto it = memo_.find(key); it != memo_.end()) {
            if (depth >= it->second.first) return true;
            if (depth <= it->second.second) return false;
        }
        bool ok = attempt(ctx, goal, depth);
        auto& m2 = memo_.try_emplace(key, INT_MAX, 0).first->second;
        if (ok)
            m2.first = std::min(m2.first, depth);
        else
            m2.second = std::max(m2.second, depth);
        return ok;
    }

private:
    bool attempt(const Ctx& ctx, int goal, int depth) {
        const Kind gk = u_.kind[static_cast<std::size_t>(goal)];
        int total = 0;
        for (int i = 0; i < u_.size(); ++i) total += cnt(ctx, i);
        if (total == 1 && cnt(ctx, goal) == 1) return true;
        if (gk == Kind::Truth && total == 0) return true;
        if (depth == 1) return false;
        int sub = depth - 1;
        if (gk == Kind::Imp) {
            Ctx prem = ctx;
            ctx_add(prem, u_.left[static_cast<std::size_t>(goal)]);
            if (prove(prem, u_.right[static_cast<std::size_t>(goal)], sub)) return true;
        }
        if (gk == Kind::Fusion) {
            int a = u_.left[static_cast<std::size_t>(goal)], b = u_.right[static_cast<std::size_t>(goal)];
            if (for_each_exact_split(ctx, [&](const Ctx& g, const Ctx& d) {
                    return prove(g, a, sub) && prove(d, b, sub);
                }))
                return true;
        }
        for (int pr = 0; pr < u_.size(); ++pr) {
            if (!cnt(ctx, pr)) continue;
            Ctx rest = ctx;
            rest[static_cast<std::size_t>(pr)] = static_cast<char>(cnt(ctx, pr) - 1);
            const Kind pk = u_.kind[static_cast<std::size_t>(pr)];
            if (pk == Kind::Truth && prove(rest, goal, sub)) return true;
            if (pk == Kind::Fusion) {
                Ctx prem = rest;
                ctx_add(prem, u_.left[static_cast<std::size_t>(pr)]);
                ctx_add(prem, u_.right[static_cast<std::size_t>(pr)]);
                if (prove(prem, goal, sub)) return true;
            }
            if (pk == Kind::Imp) {
                int a = u_.left[static_cast<std::size_t>(pr)], b = u_.right[static_cast<std::size_t>(pr)];
                if (for_each_exact_split(rest, [&](const Ctx& g, const Ctx& d) {
                        if (!prove(g, a, sub)) return false;
                        Ctx d2 = d;
                        ctx_add(d2, b);
                        return prove(d2, goal, sub);
                    }))
                    return true;
            }
            Ctx dup = ctx;
            ctx_add(dup, pr);
            if (prove(dup, goal, sub)) return true;
        }
        return false;
    }

    const Universe& u_;
    std::unordered_map<std::string, std::pair<int, int>> memo_;
};

}  // namespace detail

inline LrResult lr_prove(const Sequent& s, const ProveOptions& opt = {}) {
    Universe u(detail::sequent_roots(s.antecedent, s.succedent));
    detail::LrSearch search(u, opt.node_budget);
    LrResult r;
    auto p = search.run(u.ctx_of(s.antecedent), u.id(s.succedent));
    r.nodes = search.nodes();
    r.provable = p.has_value();
    if (p) r.proof = std::move(p);
    return r;
}

enum class BoundedVerdict { Provable, NotProvableWithinDepth };

inline BoundedVerdict lr_prove_bounded(const Sequent& s, int depth) {
    Universe u(detail::sequent_roots(s.antecedent, s.succedent));
    detail::LrBounded b(u);
    return b.prove(u.ctx_of(s.antecedent), u.id(s.succedent), depth) ? BoundedVerdict::Provable
                                                                       : BoundedVerdict::NotProvableWithinDepth;
}

}  // namespace relb
