#pragma once
// Translations between provability and counter-system problems:
//   formula -> expansive BVASS reachability
//   expansive reachability -> coverability (topmost-increment masks)
//   coverability -> comprehensive expansive reachability (root gadgets)
//   comprehensive reachability -> implicational formula
//   BVASS <-> BVAS, and general -> ordinary BVASS.
// Every translation also returns a side map relating new names to old ones.

#include <array>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "relb/bvass.hpp"
#include "relb/formula.hpp"

namespace relb {

class AtomCollision : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rows of (kind, new name, meaning).
struct SideMap {
    std::vector<std::array<std::string, 3>> rows;
    void add(std::string kind, std::string key, std::string value) {
        rows.push_back({std::move(kind), std::move(key), std::move(value)});
    }
    std::string render() const {
        std::string s;
        for (const auto& r : rows) s += r[0] + " " + r[1] + " " + r[2] + "\n";
        return s;
    }
};

namespace detail {

// Formula rendering without spaces, usable as a state name.
inline std::string compact(const Formula& f) {
    std::string s = render_formula(f);
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.compare(i, 2, "->") == 0) {
            out += '>';
            ++i;
        } else if (s.compare(i, 3, " o ") == 0) {
            out += '*';
            i += 2;
        } else {
            out += s[i];
        }
    }
    return out;
}

inline std::string fresh_name(const Bvass& b, std::string base) {
    while (b.state(base) >= 0) base += "'";
    return base;
}

inline void require_ordinary(const Bvass& b, const char* who) {
    if (!b.ordinary()) throw NotOrdinary(std::string(who) + " needs an ordinary BVASS (unit rule vectors only)");
}

}  // namespace detail

// ---------------------------------------------------------------------------

struct FormulaTranslation {
    ReachInstance instance;  // mode expansive
    SubformulaTable table;   // coordinate i (0-based) is table.entries[i]
    SideMap map;
};

inline FormulaTranslation formula_to_bvass(const Formula& f) {
    FormulaTranslation out;
    out.table = subformulas(f);
    const auto& S = out.table.entries;
    Bvass& b = out.instance.system;
    b.dim = static_cast<int>(S.size());
    auto coord = [&](const Formula& g) { return out.table.coordinate(g) - 1; };
    auto e = [&](const Formula& g, int sign) { return unit(b.dim, coord(g), sign); };

    std::vector<int> st(S.size());
    for (std::size_t i = 0; i < S.size(); ++i) {
        st[i] = b.add_state(detail::compact(S[i]));
        out.map.add("coord", std::to_string(i + 1), render_formula(S[i]));
        out.map.add("state", b.states[static_cast<std::size_t>(st[i])], render_formula(S[i]));
    }
    int truth = out.table.coordinate(Formula::truth()) - 1;
    int leaf = truth >= 0 ? st[static_cast<std::size_t>(truth)] : b.add_state("@leaf");
    auto S_state = [&](const Formula& g) { return st[static_cast<std::size_t>(coord(g))]; };

    for (const auto& A : S) b.add_unary(S_state(A), e(A, -1), leaf);  // Id
    for (const auto& A : S)
        if (A.is_imp()) b.add_unary(S_state(A), e(A.left(), 1), S_state(A.right()));  // ->R
    for (const auto& C : S)
        for (const auto& AB : S) {
            if (!AB.is_imp()) continue;
            std::string tag = "@" + detail::compact(C) + "@" + detail::compact(AB);
            int m1 = b.add_state("m1" + tag);
            int m2 = b.add_state("m2" + tag);
            b.add_unary(S_state(C), e(AB, -1), m1);
            b.add_split(m1, S_state(AB.left()), m2);
            b.add_unary(m2, e(AB.right(), 1), S_state(C));
        }
    for (const auto& C : S)
        for (const auto& AB : S) {
            if (!AB.is_fusion()) continue;
            std::string tag = "@" + detail::compact(C) + "@" + detail::compact(AB);
            int p1 = b.add_state("p1" + tag);
            int p2 = b.add_state("p2" + tag);
            b.add_unary(S_state(C), e(AB, -1), p1);
            b.add_unary(p1, e(AB.left(), 1), p2);
            b.add_unary(p2, e(AB.right(), 1), S_state(C));
        }
    for (const auto& AB : S)
        if (AB.is_fusion()) b.add_split(S_state(AB), S_state(AB.left()), S_state(AB.right()));
    if (truth >= 0)
        for (const auto& A : S) b.add_unary(S_state(A), unit(b.dim, truth, -1), S_state(A));  // t_L, consuming a t

    out.instance.root = S_state(f);
    out.instance.leaf = leaf;
    out.instance.mode = Mode::Expansive;
    return out;
}

// ---------------------------------------------------------------------------

struct CoverTranslation {
    CoverInstance instance;
    SideMap map;
};

// Product state (q, s) for s a bitmask over coordinates.
inline std::string mask_name(const std::string& q, std::uint32_t s, int d) {
    std::string n = q + "{";
    bool first = true;
    for (int i = 0; i < d; ++i)
        if (s >> i & 1u) {
            if (!first) n += ",";
            n += std::to_string(i + 1);
            first = false;
        }
    return n + "}";
}

inline CoverTranslation expansive_to_coverability(const ReachInstance& in) {
    detail::require_ordinary(in.system, "expansive_to_coverability");
    Bvass b = in.system;
    int leaf = in.leaf;
    CoverTranslation out;
    if (b.dim == 0) {
        b.dim = 1;  // room for the leaf gadgets; unit rules cannot exist in dimension 0
        out.map.add("pad", "dim", "1");
    }
    if (b.dim > 20) throw std::length_error("expansive_to_coverability: dimension too large for the mask product");
    const int d = b.dim;

    // Stage 0: a fresh leaf without outgoing rules.
    if (b.has_outgoing(leaf)) {
        int x = b.add_state(detail::fresh_name(b, "@bounce"));
        int nl = b.add_state(detail::fresh_name(b, "@leaf"));
        b.add_unary(leaf, unit(d, 0, 1), x);
        b.add_unary(x, unit(d, 0, -1), nl);
        out.map.add("leaf", b.states[static_cast<std::size_t>(nl)], b.states[static_cast<std::size_t>(leaf)]);
        leaf = nl;
    }
    // Stage 1: a topmost increment on every coordinate of every branch.
    for (int i = 0; i < d; ++i) {
        int li = b.add_state(detail::fresh_name(b, b.states[static_cast<std::size_t>(leaf)] + "^" + std::to_string(i + 1)));
        b.add_unary(leaf, unit(d, i, 1), li);
        b.add_unary(li, unit(d, i, -1), leaf);
    }
    // Stage 2: masks.
    const std::uint32_t full = (d >= 32) ? ~0u : ((1u << d) - 1u);
    const std::uint32_t nmask = full + 1u;
    Bvass& c = out.instance.system;
    c.dim = d;
    for (int q = 0; q < b.num_states(); ++q)
        for (std::uint32_t s = 0; s < nmask; ++s) {
            c.add_state(mask_name(b.states[static_cast<std::size_t>(q)], s, d));
            out.map.add("state", c.states.back(), b.states[static_cast<std::size_t>(q)]);
        }
    auto id = [&](int q, std::uint32_t s) { return static_cast<int>(static_cast<std::uint32_t>(q) * nmask + s); };
    for (const auto& r : b.unary) {
        int sign = 0;
        int i = unit_coordinate(r.vec, sign);
        std::uint32_t bit = 1u << i;
        for (std::uint32_t s = 0; s < nmask; ++s) {
            if (sign > 0)
                c.add_unary(id(r.source, s), r.vec, id(r.target, s | bit));
            else if (s & bit)
                c.add_unary(id(r.source, s), r.vec, id(r.target, s));
        }
    }
    for (const auto& r : b.split)
        for (std::uint32_t s = 0; s < nmask; ++s) c.add_split(id(r.source, s), id(r.left, s), id(r.right, s));
    out.instance.root = id(in.root, 0);
    out.instance.leaf = id(leaf, full);
    return out;
}

// ---------------------------------------------------------------------------

struct ComprehensiveTranslation {
    ReachInstance instance;  // mode comprehensive
    SideMap map;
};

inline ComprehensiveTranslation coverability_to_comprehensive(const CoverInstance& in) {
    detail::require_ordinary(in.system, "coverability_to_comprehensive");
    const Bvass& b = in.system;
    const int d = b.dim;

    // Stage 1: increases q -e_i-> q on every state.
    std::vector<UnaryRule> tu = b.unary;
    for (int q = 0; q < b.num_states(); ++q)
        for (int i = 0; i < d; ++i) tu.push_back({q, unit(d, i, 1), q});
    const int nu = static_cast<int>(tu.size());
    const int nt = nu + static_cast<int>(b.split.size());
    const int D = d + 1 + nt;

    ComprehensiveTranslation out;
    Bvass& c = out.instance.system;
    c.dim = D;
    auto widen = [&](const Vec& v) {
        Vec w(static_cast<std::size_t>(D), 0);
        std::copy(v.begin(), v.end(), w.begin());
        return w;
    };
    for (const auto& q : b.states) c.add_state(q);
    int hub = c.add_state(detail::fresh_name(c, "@hub"));
    int root = c.add_state(detail::fresh_name(c, "@root"));
    std::vector<int> qt(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) {
        qt[static_cast<std::size_t>(t)] = c.add_state(detail::fresh_name(c, "@t" + std::to_string(t + 1)));
        out.map.add("coord", std::to_string(d + 2 + t), "rule " + std::to_string(t + 1));
    }
    out.map.add("coord", std::to_string(d + 1), "root");

    for (const auto& r : tu) c.add_unary(r.source, widen(r.vec), r.target);
    const int gate = d;
    c.add_unary(root, unit(D, gate, 1), hub);
    c.add_unary(hub, unit(D, gate, -1), in.root);
    for (int t = 0; t < nt; ++t) {
        int et = d + 1 + t;
        int q_t = qt[static_cast<std::size_t>(t)];
        if (t < nu) {
            const auto& r = tu[static_cast<std::size_t>(t)];
            int sign = 0;
            int i = unit_coordinate(r.vec, sign);
            if (sign > 0) {
                c.add_unary(hub, unit(D, et, 1), r.source);
                c.add_unary(r.target, unit(D, i, -1), q_t);
                c.add_unary(q_t, unit(D, et, -1), hub);
            } else {
                c.add_unary(hub, unit(D, et, 1), q_t);
                c.add_unary(q_t, unit(D, i, 1), r.source);
                c.add_unary(r.target, unit(D, et, -1), hub);
            }
        } else {
            const auto& r = b.split[static_cast<std::size_t>(t - nu)];
            c.add_unary(hub, unit(D, et, 1), q_t);
            c.add_unary(q_t, unit(D, et, 1), r.source);
            c.add_unary(r.left, unit(D, et, -1), hub);
            c.add_unary(r.right, unit(D, et, -1), hub);
        }
    }
    for (const auto& r : b.split) c.add_split(r.source, r.left, r.right);
    out.instance.root = root;
    out.instance.leaf = in.leaf;
    out.instance.mode = Mode::Comprehensive;
    return out;
}

// ---------------------------------------------------------------------------

struct FormulaEncoding {
    Formula formula;
    std::vector<std::string> state_atoms;
    std::vector<std::string> coord_atoms;
    SideMap map;
};

namespace detail {

inline Formula rule_formula(const Bvass& b, int rule, const std::vector<Formula>& qa, const std::vector<Formula>& ea) {
    if (b.is_split(rule)) {
        const auto& r = b.split_rule(rule);
        return Formula::imp(qa[static_cast<std::size_t>(r.left)],
                            Formula::imp(qa[static_cast<std::size_t>(r.right)], qa[static_cast<std::size_t>(r.source)]));
    }
    const auto& r = b.unary[static_cast<std::size_t>(rule)];
    int sign = 0;
    int i = unit_coordinate(r.vec, sign);
    const Formula& q = qa[static_cast<std::size_t>(r.source)];
    const Formula& q1 = qa[static_cast<std::size_t>(r.target)];
    const Formula& e = ea[static_cast<std::size_t>(i)];
    if (sign > 0) return Formula::imp(Formula::imp(e, q1), q);
    return Formula::imp(q1, Formula::imp(e, q));
}

}  // namespace detail

// `order` lists rule indices; empty means index order (unary, then split).
inline FormulaEncoding comprehensive_to_formula(const ReachInstance& in, std::vector<int> order = {}) {
    const Bvass& b = in.system;
    detail::require_ordinary(b, "comprehensive_to_formula");
    FormulaEncoding out;
    std::set<std::string> used;
    for (int i = 0; i < b.dim; ++i) {
        out.coord_atoms.push_back("e" + std::to_string(i + 1));
        used.insert(out.coord_atoms.back());
    }
    for (int q = 0; q < b.num_states(); ++q) {
        const std::string& name = b.states[static_cast<std::size_t>(q)];
        std::string atom;
        if (detail::valid_identifier(name) && name != "T") {
            if (used.count(name)) throw AtomCollision("state '" + name + "' clashes with another atom");
            atom = name;
        } else {
            atom = "s" + std::to_string(q);
            while (used.count(atom) || b.state(atom) >= 0) atom += "_";
        }
        used.insert(atom);
        out.state_atoms.push_back(atom);
        out.map.add("atom", atom, "state " + name);
    }
    for (int i = 0; i < b.dim; ++i) out.map.add("atom", out.coord_atoms[static_cast<std::size_t>(i)], "coord " + std::to_string(i + 1));

    std::vector<Formula> qa, ea;
    for (const auto& a : out.state_atoms) qa.push_back(Formula::atom(a));
    for (const auto& a : out.coord_atoms) ea.push_back(Formula::atom(a));
    if (order.empty())
        for (int r = 0; r < b.num_rules(); ++r) order.push_back(r);
    std::vector<Formula> args{qa[static_cast<std::size_t>(in.leaf)]};
    for (int r : order) args.push_back(detail::rule_formula(b, r, qa, ea));
    out.formula = build_arrows(args, qa[static_cast<std::size_t>(in.root)]);
    return out;
}

// ---------------------------------------------------------------------------

// Two coordinates per state: q_i -> (i, |Q| - i), placed in slot k of three.
inline Vec state_code(int i, int nstates, int k, int d) {
    Vec v(static_cast<std::size_t>(6 + d), 0);
    v[static_cast<std::size_t>(2 * k)] = i;
    v[static_cast<std::size_t>(2 * k + 1)] = nstates - i;
    return v;
}

struct BvasTranslation {
    BvasInstance instance;
    SideMap map;
};

inline BvasTranslation bvass_to_bvas(const CoverInstance& in) {
    const Bvass& b = in.system;
    const int d = b.dim;
    const int n = b.num_states();
    BvasTranslation out;
    Bvas& a = out.instance.system;
    a.dim = 6 + d;
    auto code = [&](int q, int k) { return state_code(q, n, k, d); };
    auto lift = [&](const Vec& u) {
        Vec w(static_cast<std::size_t>(6 + d), 0);
        std::copy(u.begin(), u.end(), w.begin() + 6);
        return w;
    };
    for (const auto& r : b.unary) a.unary.push_back(vec_sub(vec_sub(code(r.source, 0), code(r.target, 1)), lift(r.vec)));
    for (int q = 0; q < n; ++q) a.unary.push_back(vec_sub(code(q, 1), code(q, 0)));
    for (int q = 0; q < n; ++q) a.unary.push_back(vec_sub(code(q, 2), code(q, 0)));
    for (const auto& r : b.split) a.split.push_back(vec_sub(vec_sub(code(r.source, 0), code(r.left, 1)), code(r.right, 2)));
    out.instance.root = code(in.root, 0);
    out.instance.leaf = code(in.leaf, 0);
    for (int q = 0; q < n; ++q) out.map.add("code", b.states[static_cast<std::size_t>(q)], render_vec({q, n - q}));
    return out;
}

inline CoverTranslation bvas_to_bvass(const BvasInstance& in) {
    const Bvas& a = in.system;
    CoverTranslation out;
    Bvass& b = out.instance.system;
    b.dim = a.dim;
    int hub = b.add_state("@q");
    std::vector<int> qs;
    for (std::size_t k = 0; k < a.split.size(); ++k) qs.push_back(b.add_state("@split" + std::to_string(k + 1)));
    int root = b.add_state("@root");
    int leaf = b.add_state("@leaf");
    for (std::size_t k = 0; k < a.unary.size(); ++k) {
        b.add_unary(hub, vec_neg(a.unary[k]), hub);
        out.map.add("rule", std::to_string(k), "unary " + std::to_string(k));
    }
    for (std::size_t k = 0; k < a.split.size(); ++k) b.add_unary(hub, vec_neg(a.split[k]), qs[k]);
    b.add_unary(root, in.root, hub);
    b.add_unary(hub, vec_neg(in.leaf), leaf);
    for (std::size_t k = 0; k < a.split.size(); ++k) b.add_split(qs[k], hub, hub);
    out.instance.root = root;
    out.instance.leaf = leaf;
    return out;
}

// ---------------------------------------------------------------------------

// Each non-unit rule becomes a chain of unit steps through fresh states,
// decrements first; a zero vector becomes a +e_1/-e_1 bounce.
inline Bvass to_ordinary(const Bvass& in, SideMap* map = nullptr) {
    Bvass b;
    b.dim = std::max(in.dim, 1);
    auto pad = [&](const Vec& v) {
        Vec w(static_cast<std::size_t>(b.dim), 0);
        std::copy(v.begin(), v.end(), w.begin());
        return w;
    };
    for (const auto& q : in.states) b.add_state(q);
    for (std::size_t r = 0; r < in.unary.size(); ++r) {
        const auto& rule = in.unary[r];
        Vec u = pad(rule.vec);
        int sign = 0;
        if (unit_coordinate(u, sign) >= 0) {
            b.add_unary(rule.source, u, rule.target);
            continue;
        }
        std::vector<Vec> steps;
        for (int i = 0; i < b.dim; ++i)
            for (int k = 0; k < -u[static_cast<std::size_t>(i)]; ++k) steps.push_back(unit(b.dim, i, -1));
        for (int i = 0; i < b.dim; ++i)
            for (int k = 0; k < u[static_cast<std::size_t>(i)]; ++k) steps.push_back(unit(b.dim, i, 1));
        if (steps.empty()) steps = {unit(b.dim, 0, 1), unit(b.dim, 0, -1)};
        int cur = rule.source;
        for (std::size_t k = 0; k < steps.size(); ++k) {
            int next = rule.target;
            if (k + 1 < steps.size()) {
                next = b.add_state(detail::fresh_name(b, "@o" + std::to_string(r + 1) + "." + std::to_string(k + 1)));
                if (map) map->add("chain", b.states[static_cast<std::size_t>(next)], "rule " + std::to_string(r + 1));
            }
            b.add_unary(cur, steps[k], next);
            cur = next;
        }
    }
    for (const auto& s : in.split) b.add_split(s.source, s.left, s.right);
    return b;
}

inline CoverInstance to_ordinary(const CoverInstance& in, SideMap* map = nullptr) {
    return {to_ordinary(in.system, map), in.root, in.leaf};
}

}  // namespace relb
