#pragma once
// Branching vector addition systems, with and without states: data model,
// text formats, deduction trees, an independent tree checker and a
// height/value-capped enumeration of achievable root labels.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace relb {

using Vec = std::vector<int>;

class FormatError : public std::runtime_error {
public:
    FormatError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class NotOrdinary : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Vec unit(int dim, int i, int sign = 1) {
    Vec v(static_cast<std::size_t>(dim), 0);
    v[static_cast<std::size_t>(i)] = sign;
    return v;
}

inline Vec vec_add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec vec_sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec vec_neg(const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline bool vec_nonneg(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](int x) { return x >= 0; });
}

inline bool vec_leq(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline int vec_max(const Vec& v) {
    int m = 0;
    for (int x : v) m = std::max(m, x);
    return m;
}

inline bool vec_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

// Index i with v = sign * e_i, or -1 when v is not a signed unit vector.
inline int unit_coordinate(const Vec& v, int& sign) {
    int at = -1;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        if ((v[i] != 1 && v[i] != -1) || at >= 0) return -1;
        at = static_cast<int>(i);
        sign = v[i];
    }
    return at;
}

inline std::string render_vec(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s + ")";
}

// Rule vectors: `+i` / `-i` for signed units (1-based), comma integers
// otherwise, `()` for the empty vector.
inline std::string render_rule_vec(const Vec& v) {
    int sign = 0;
    int i = unit_coordinate(v, sign);
    if (i >= 0) return (sign > 0 ? "+" : "-") + std::to_string(i + 1);
    if (v.empty()) return "()";
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) s += ',';
        s += std::to_string(v[k]);
    }
    return s;
}

inline Vec parse_vec(const std::string& text, int dim, int line) {
    std::string t = text;
    if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
    // in dimension 1 a lone signed token is read as an integer
    if (!t.empty() && (t.front() == '+' || t.front() == '-') && t.find(',') == std::string::npos && dim != 1) {
        std::size_t used = 0;
        int i = 0;
        try {
            i = std::stoi(t.substr(1), &used);
        } catch (const std::exception&) {
            throw FormatError(line, "bad unit vector '" + text + "'");
        }
        if (used + 1 != t.size() || i < 1 || i > dim) throw FormatError(line, "unit index out of range in '" + text + "'");
        return unit(dim, i - 1, t.front() == '+' ? 1 : -1);
    }
    Vec v;
    if (!t.empty()) {
        std::stringstream ss(t);
        std::string part;
        while (std::getline(ss, part, ',')) {
            std::size_t used = 0;
            int x = 0;
            try {
                x = std::stoi(part, &used);
            } catch (const std::exception&) {
                throw FormatError(line, "bad integer '" + part + "'");
            }
            if (used != part.size()) throw FormatError(line, "bad integer '" + part + "'");
            v.push_back(x);
        }
    }
    if (static_cast<int>(v.size()) != dim) {
        throw FormatError(line, "vector '" + text + "' does not have dimension " + std::to_string(dim));
    }
    return v;
}

// Dynamic bitset of rule indices.
class RuleSet {
public:
    void insert(int i) {
        auto w = static_cast<std::size_t>(i) / 64;
        if (words_.size() <= w) words_.resize(w + 1, 0);
        words_[w] |= std::uint64_t{1} << (static_cast<unsigned>(i) % 64);
    }
    bool contains(int i) const {
        auto w = static_cast<std::size_t>(i) / 64;
        return w < words_.size() && ((words_[w] >> (static_cast<unsigned>(i) % 64)) & 1);
    }
    RuleSet& operator|=(const RuleSet& o) {
        if (words_.size() < o.words_.size()) words_.resize(o.words_.size(), 0);
        for (std::size_t k = 0; k < o.words_.size(); ++k) words_[k] |= o.words_[k];
        return *this;
    }
    bool subset_of(const RuleSet& o) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            std::uint64_t other = k < o.words_.size() ? o.words_[k] : 0;
            if (words_[k] & ~other) return false;
        }
        return true;
    }
    int count() const {
        int n = 0;
        for (auto w : words_) n += __builtin_popcountll(w);
        return n;
    }
    std::vector<int> members() const {
        std::vector<int> out;
        for (std::size_t k = 0; k < words_.size(); ++k)
            for (unsigned b = 0; b < 64; ++b)
                if ((words_[k] >> b) & 1) out.push_back(static_cast<int>(k * 64 + b));
        return out;
    }
    static RuleSet all(int n) {
        RuleSet r;
        for (int i = 0; i < n; ++i) r.insert(i);
        return r;
    }
    std::size_t hash() const {
        std::size_t h = 0;
        for (auto w : words_) h = h * 1000003u ^ std::hash<std::uint64_t>()(w);
        return h;
    }
    // Only insert and |= mutate, so the last word is never zero.
    friend bool operator==(const RuleSet& a, const RuleSet& b) { return a.words_ == b.words_; }
    friend bool operator<(const RuleSet& a, const RuleSet& b) { return a.words_ < b.words_; }

private:
    std::vector<std::uint64_t> words_;
};

struct UnaryRule {
    int source;
    Vec vec;
    int target;
};

struct SplitRule {
    int source, left, right;
};

// Rule indices: unary rules first (0..U-1), then split rules (U..U+S-1).
struct Bvass {
    int dim = 0;
    std::vector<std::string> states;
    std::vector<UnaryRule> unary;
    std::vector<SplitRule> split;

    int state(const std::string& name) const {
        auto it = index_.find(name);
        return it == index_.end() ? -1 : it->second;
    }
    int add_state(const std::string& name) {
        auto it = index_.find(name);
        if (it != index_.end()) return it->second;
        int id = static_cast<int>(states.size());
        states.push_back(name);
        index_.emplace(name, id);
        return id;
    }
    int num_states() const { return static_cast<int>(states.size()); }
    int num_rules() const { return static_cast<int>(unary.size() + split.size()); }
    int unary_count() const { return static_cast<int>(unary.size()); }
    bool is_split(int rule) const { return rule >= unary_count(); }
    const SplitRule& split_rule(int rule) const { return split[static_cast<std::size_t>(rule - unary_count())]; }

    int add_unary(int q, Vec v, int q1) {
        unary.push_back({q, std::move(v), q1});
        return static_cast<int>(unary.size()) - 1;
    }
    int add_unary(const std::string& q, Vec v, const std::string& q1) {
        int a = add_state(q);
        int b = add_state(q1);
        return add_unary(a, std::move(v), b);
    }
    void add_split(int q, int q1, int q2) { split.push_back({q, q1, q2}); }
    void add_split(const std::string& q, const std::string& q1, const std::string& q2) {
        int a = add_state(q);
        int b = add_state(q1);
        int c = add_state(q2);
        add_split(a, b, c);
    }

    bool ordinary() const {
        for (const auto& r : unary) {
            int sign = 0;
            if (unit_coordinate(r.vec, sign) < 0) return false;
        }
        return true;
    }
    bool has_outgoing(int q) const {
        for (const auto& r : unary)
            if (r.source == q) return true;
        for (const auto& r : split)
            if (r.source == q) return true;
        return false;
    }

private:
    std::unordered_map<std::string, int> index_;
};

enum class Mode { Plain, Expansive, Comprehensive };

inline const char* mode_name(Mode m) {
    switch (m) {
        case Mode::Plain: return "plain";
        case Mode::Expansive: return "expansive";
        case Mode::Comprehensive: return "comprehensive";
    }
    return "?";
}

inline std::optional<Mode> mode_from_name(const std::string& s) {
    for (Mode m : {Mode::Plain, Mode::Expansive, Mode::Comprehensive})
        if (s == mode_name(m)) return m;
    return std::nullopt;
}

// Comprehensive reachability uses the expansive semantics.
inline bool mode_expansive(Mode m) { return m != Mode::Plain; }

struct CoverInstance {
    Bvass system;
    int root = -1;
    int leaf = -1;
};

struct ReachInstance {
    Bvass system;
    int root = -1;
    int leaf = -1;
    Mode mode = Mode::Plain;
};

inline ReachInstance as_reach(const CoverInstance& c, Mode m) { return {c.system, c.root, c.leaf, m}; }
inline CoverInstance as_cover(const ReachInstance& r) { return {r.system, r.root, r.leaf}; }

inline std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string w;
    while (ss >> w) out.push_back(w);
    return out;
}

inline std::string strip_comment(const std::string& line) {
    auto h = line.find('#');
    return h == std::string::npos ? line : line.substr(0, h);
}

// Text format, one declaration per line:
//   dim <d> | state <q> | root <q> | leaf <q> | mode <plain|expansive|comprehensive>
//   unary <q> <vec> <q1> | split <q> <q1> <q2>
// `state` lines are optional; they pin the state order (and declare
// isolated states). Otherwise states are numbered by first appearance.
inline ReachInstance parse_bvass(std::istream& in) {
    ReachInstance r;
    bool have_dim = false;
    std::optional<std::string> root, leaf;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto w = split_ws(strip_comment(raw));
        if (w.empty()) continue;
        const std::string& kw = w[0];
        auto need = [&](std::size_t n) {
            if (w.size() != n) throw FormatError(lineno, "'" + kw + "' takes " + std::to_string(n - 1) + " argument(s)");
        };
        if (kw == "dim") {
            need(2);
            if (have_dim) throw FormatError(lineno, "duplicate dim");
            try {
                r.system.dim = std::stoi(w[1]);
            } catch (const std::exception&) {
                throw FormatError(lineno, "bad dimension");
            }
            if (r.system.dim < 0) throw FormatError(lineno, "negative dimension");
            have_dim = true;
        } else if (kw == "state") {
            need(2);
            r.system.add_state(w[1]);
        } else if (kw == "root" || kw == "leaf") {
            need(2);
            (kw == "root" ? root : leaf) = w[1];
        } else if (kw == "mode") {
            need(2);
            auto m = mode_from_name(w[1]);
            if (!m) throw FormatError(lineno, "unknown mode '" + w[1] + "'");
            r.mode = *m;
        } else if (kw == "unary") {
            need(4);
            if (!have_dim) throw FormatError(lineno, "dim must precede rules");
            r.system.add_unary(w[1], parse_vec(w[2], r.system.dim, lineno), w[3]);
        } else if (kw == "split") {
            need(4);
            r.system.add_split(w[1], w[2], w[3]);
        } else {
            throw FormatError(lineno, "unknown declaration '" + kw + "'");
        }
    }
    if (!have_dim) throw FormatError(lineno, "missing dim");
    if (!root) throw FormatError(lineno, "missing root");
    if (!leaf) throw FormatError(lineno, "missing leaf");
    r.root = r.system.add_state(*root);
    r.leaf = r.system.add_state(*leaf);
    return r;
}

inline ReachInstance parse_bvass_text(const std::string& text) {
    std::istringstream in(text);
    return parse_bvass(in);
}

inline std::string render_bvass(const Bvass& b, int root, int leaf, std::optional<Mode> mode = std::nullopt) {
    std::ostringstream o;
    o << "dim " << b.dim << "\n";
    for (const auto& q : b.states) o << "state " << q << "\n";
    o << "root " << b.states[static_cast<std::size_t>(root)] << "\n";
    o << "leaf " << b.states[static_cast<std::size_t>(leaf)] << "\n";
    if (mode) o << "mode " << mode_name(*mode) << "\n";
    for (const auto& r : b.unary)
        o << "unary " << b.states[static_cast<std::size_t>(r.source)] << " " << render_rule_vec(r.vec) << " "
          << b.states[static_cast<std::size_t>(r.target)] << "\n";
    for (const auto& r : b.split)
        o << "split " << b.states[static_cast<std::size_t>(r.source)] << " " << b.states[static_cast<std::size_t>(r.left)]
          << " " << b.states[static_cast<std::size_t>(r.right)] << "\n";
    return o.str();
}

inline std::string render_instance(const ReachInstance& r) { return render_bvass(r.system, r.root, r.leaf, r.mode); }
inline std::string render_instance(const CoverInstance& c) { return render_bvass(c.system, c.root, c.leaf); }

// ---------------------------------------------------------------------------
// Deduction trees

struct Config {
    int state = -1;
    Vec vec;
    friend bool operator==(const Config& a, const Config& b) { return a.state == b.state && a.vec == b.vec; }
    friend bool operator<(const Config& a, const Config& b) {
        return a.state != b.state ? a.state < b.state : a.vec < b.vec;
    }
};

enum class StepKind { Leaf, Unary, Split, Expansion };

inline const char* step_name(StepKind k) {
    switch (k) {
        case StepKind::Leaf: return "LEAF";
        case StepKind::Unary: return "UNARY";
        case StepKind::Split: return "SPLIT";
        case StepKind::Expansion: return "EXPAND";
    }
    return "?";
}

// `index` is a rule index for Unary/Split and a 0-based coordinate for
// Expansion.
struct DeductionTree {
    Config node;
    StepKind step = StepKind::Leaf;
    int index = -1;
    std::vector<DeductionTree> children;

    std::size_t size() const {
        std::size_t n = 1;
        for (const auto& c : children) n += c.size();
        return n;
    }
    std::size_t height() const {
        std::size_t h = 0;
        for (const auto& c : children) h = std::max(h, c.height() + 1);
        return h;
    }
};

struct TreeCheck {
    bool valid = true;
    RuleSet used;
    std::vector<std::size_t> path;
    std::string message;
    explicit operator bool() const { return valid; }
};

namespace detail {

inline bool tree_local(const Bvass& sys, const DeductionTree& t, int leaf, bool expansive, std::string& why) {
    auto d = static_cast<std::size_t>(sys.dim);
    auto good_config = [&](const Config& c) {
        return c.state >= 0 && c.state < sys.num_states() && c.vec.size() == d && vec_nonneg(c.vec);
    };
    if (!good_config(t.node)) {
        why = "malformed configuration";
        return false;
    }
    for (const auto& c : t.children)
        if (!good_config(c.node)) {
            why = "malformed child configuration";
            return false;
        }
    auto arity = [&](std::size_t n) {
        if (t.children.size() != n) {
            why = std::string(step_name(t.step)) + " needs " + std::to_string(n) + " children";
            return false;
        }
        return true;
    };
    switch (t.step) {
        case StepKind::Leaf:
            if (!arity(0)) return false;
            if (t.node.state != leaf || !vec_zero(t.node.vec)) {
                why = "leaf is not the leaf state with the null vector";
                return false;
            }
            return true;
        case StepKind::Unary: {
            if (!arity(1)) return false;
            if (t.index < 0 || t.index >= sys.unary_count()) {
                why = "no such unary rule";
                return false;
            }
            const auto& r = sys.unary[static_cast<std::size_t>(t.index)];
            const auto& c = t.children[0].node;
            if (r.source != t.node.state || r.target != c.state) {
                why = "unary rule states do not match";
                return false;
            }
            if (vec_add(t.node.vec, r.vec) != c.vec) {
                why = "child vector is not parent plus rule vector";
                return false;
            }
            return true;
        }
        case StepKind::Split: {
            if (!arity(2)) return false;
            if (t.index < sys.unary_count() || t.index >= sys.num_rules()) {
                why = "no such split rule";
                return false;
            }
            const auto& r = sys.split_rule(t.index);
            if (r.source != t.node.state || r.left != t.children[0].node.state ||
                r.right != t.children[1].node.state) {
                why = "split rule states do not match";
                return false;
            }
            if (vec_add(t.children[0].node.vec, t.children[1].node.vec) != t.node.vec) {
                why = "children vectors do not sum to the parent";
                return false;
            }
            return true;
        }
        case StepKind::Expansion: {
            if (!arity(1)) return false;
            if (!expansive) {
                why = "expansion in a non-expansive tree";
                return false;
            }
            if (t.index < 0 || t.index >= sys.dim) {
                why = "expansion coordinate out of range";
                return false;
            }
            const auto& c = t.children[0].node;
            if (c.state != t.node.state || t.node.vec[static_cast<std::size_t>(t.index)] < 1 ||
                vec_add(t.node.vec, unit(sys.dim, t.index)) != c.vec) {
                why = "expansion must double one unit of the coordinate";
                return false;
            }
            return true;
        }
    }
    why = "unknown step";
    return false;
}

inline bool check_tree_rec(const Bvass& sys, const DeductionTree& t, int leaf, bool expansive, TreeCheck& res) {
    std::string why;
    if (!tree_local(sys, t, leaf, expansive, why)) {
        res.valid = false;
        res.message = why;
        return false;
    }
    if (t.step == StepKind::Unary || t.step == StepKind::Split) res.used.insert(t.index);
    for (std::size_t i = 0; i < t.children.size(); ++i) {
        res.path.push_back(i);
        if (!check_tree_rec(sys, t.children[i], leaf, expansive, res)) return false;
        res.path.pop_back();
    }
    return true;
}

}  // namespace detail

inline TreeCheck check_deduction_tree(const Bvass& sys, const DeductionTree& t, int leaf, bool expansive) {
    TreeCheck res;
    detail::check_tree_rec(sys, t, leaf, expansive, res);
    if (!res.valid) res.used = RuleSet{};
    return res;
}

// ---------------------------------------------------------------------------
// Capped enumeration: the set of (state, vector, used rules) labels of all
// deduction trees of height <= height_cap whose vectors stay <= value_cap,
// computed level by level. Independent from the saturation solvers.

struct EnumEntry {
    Config config;
    RuleSet used;
    StepKind step = StepKind::Leaf;
    int index = -1;
    int child[2] = {-1, -1};
    int height = 0;
};

struct Enumeration {
    std::vector<EnumEntry> entries;
    int leaf = -1;
    bool saturated = false;  // a level added nothing before the height cap
    bool truncated = false;  // some label was dropped for exceeding the value cap

    // Without truncation, a saturated enumeration is the full set of labels.
    bool exact() const { return saturated && !truncated; }

    std::vector<int> at_state(int q) const {
        std::vector<int> out;
        for (std::size_t i = 0; i < entries.size(); ++i)
            if (entries[i].config.state == q) out.push_back(static_cast<int>(i));
        return out;
    }

    std::set<std::pair<Vec, std::vector<int>>> roots(int q) const {
        std::set<std::pair<Vec, std::vector<int>>> out;
        for (int i : at_state(q)) out.emplace(entries[static_cast<std::size_t>(i)].config.vec, entries[static_cast<std::size_t>(i)].used.members());
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

struct LabelKey {
    int state;
    Vec vec;
    RuleSet used;
    friend bool operator<(const LabelKey& a, const LabelKey& b) {
        if (a.state != b.state) return a.state < b.state;
        if (a.vec != b.vec) return a.vec < b.vec;
        return a.used < b.used;
    }
};

}  // namespace detail

inline Enumeration enumerate_trees(const Bvass& sys, int leaf, bool expansive, int height_cap, int value_cap,
                                   bool track_usage = true) {
    Enumeration en;
    en.leaf = leaf;
    std::map<detail::LabelKey, int> seen;
    auto d = static_cast<std::size_t>(sys.dim);

    // Candidate parents are computed from the previous level only, so every
    // new label has height exactly `level`.
    std::vector<int> frontier;
    auto offer = [&](EnumEntry e, std::vector<int>& next) {
        if (vec_max(e.config.vec) > value_cap) {
            en.truncated = true;
            return;
        }
        detail::LabelKey k{e.config.state, e.config.vec, track_usage ? e.used : RuleSet{}};
        if (seen.count(k)) return;
        if (!track_usage) e.used = RuleSet{};
        int id = static_cast<int>(en.entries.size());
        seen.emplace(std::move(k), id);
        en.entries.push_back(std::move(e));
        next.push_back(id);
    };

    {
        EnumEntry base;
        base.config = Config{leaf, Vec(d, 0)};
        std::vector<int> next;
        offer(base, next);
        frontier = next;
    }
    std::vector<std::vector<int>> by_state(static_cast<std::size_t>(sys.num_states()));
    for (int id : frontier) by_state[static_cast<std::size_t>(en.entries[static_cast<std::size_t>(id)].config.state)].push_back(id);

    for (int level = 1; level <= height_cap; ++level) {
        std::vector<int> next;
        std::size_t old_count = en.entries.size();
        std::vector<char> fresh(old_count, 0);
        for (int id : frontier) fresh[static_cast<std::size_t>(id)] = 1;
        for (int id : frontier) {
            // copy: offer() may reallocate entries
            EnumEntry child = en.entries[static_cast<std::size_t>(id)];
            for (int r = 0; r < sys.unary_count(); ++r) {
                const auto& rule = sys.unary[static_cast<std::size_t>(r)];
                if (rule.target != child.config.state) continue;
                Vec pv = vec_sub(child.config.vec, rule.vec);
                if (!vec_nonneg(pv)) continue;
                EnumEntry e;
                e.config = Config{rule.source, pv};
                e.used = child.used;
                e.used.insert(r);
                e.step = StepKind::Unary;
                e.index = r;
                e.child[0] = id;
                e.height = level;
                offer(std::move(e), next);
            }
            if (expansive) {
                for (std::size_t i = 0; i < d; ++i) {
                    if (child.config.vec[i] < 2) continue;
                    EnumEntry e;
                    e.config = Config{child.config.state, child.config.vec};
                    e.config.vec[i] -= 1;
                    e.used = child.used;
                    e.step = StepKind::Expansion;
                    e.index = static_cast<int>(i);
                    e.child[0] = id;
                    e.height = level;
                    offer(std::move(e), next);
                }
            }
        }
        // Splits: at least one child from the previous level, the other of
        // any height below this level.
        for (std::size_t s = 0; s < sys.split.size(); ++s) {
            const auto& rule = sys.split[s];
            int r = sys.unary_count() + static_cast<int>(s);
            const auto& lefts = by_state[static_cast<std::size_t>(rule.left)];
            const auto& rights = by_state[static_cast<std::size_t>(rule.right)];
            for (int a : lefts) {
                for (int b : rights) {
                    if (!fresh[static_cast<std::size_t>(a)] && !fresh[static_cast<std::size_t>(b)]) continue;
                    const auto& ea = en.entries[static_cast<std::size_t>(a)];
                    const auto& eb = en.entries[static_cast<std::size_t>(b)];
                    EnumEntry e;
                    e.config = Config{rule.source, vec_add(ea.config.vec, eb.config.vec)};
                    e.used = ea.used;
                    e.used |= eb.used;
                    e.used.insert(r);
                    e.step = StepKind::Split;
                    e.index = r;
                    e.child[0] = a;
                    e.child[1] = b;
                    e.height = level;
                    offer(std::move(e), next);
                }
            }
        }
        for (int id : next) by_state[static_cast<std::size_t>(en.entries[static_cast<std::size_t>(id)].config.state)].push_back(id);
        frontier = std::move(next);
        if (frontier.empty()) {
            en.saturated = true;
            break;
        }
    }
    return en;
}

// ---------------------------------------------------------------------------
// BVAS (no states)

struct Bvas {
    int dim = 0;
    std::vector<Vec> unary;
    std::vector<Vec> split;
    int num_rules() const { return static_cast<int>(unary.size() + split.size()); }
};

struct BvasInstance {
    Bvas system;
    Vec root;
    Vec leaf;
};

// `rule` is -1 at leaves; unary rules come first, then split rules.
struct BvasTree {
    Vec label;
    int rule = -1;
    std::vector<BvasTree> children;

    std::size_t height() const {
        std::size_t h = 0;
        for (const auto& c : children) h = std::max(h, c.height() + 1);
        return h;
    }
};

inline bool check_bvas_tree(const Bvas& sys, const BvasTree& t, const Vec& v_leaf, std::string* why = nullptr) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    auto d = static_cast<std::size_t>(sys.dim);
    if (t.label.size() != d || !vec_nonneg(t.label)) return fail("malformed label " + render_vec(t.label));
    if (t.rule < 0) {
        if (!t.children.empty()) return fail("leaf with children");
        if (t.label != v_leaf) return fail("leaf label " + render_vec(t.label) + " is not the leaf vector");
        return true;
    }
    if (t.rule >= sys.num_rules()) return fail("no such rule");
    bool is_split = t.rule >= static_cast<int>(sys.unary.size());
    if (t.children.size() != (is_split ? 2u : 1u)) return fail("wrong number of children");
    for (const auto& c : t.children)
        if (c.label.size() != d || !vec_nonneg(c.label)) return fail("malformed child label");
    const Vec& u = is_split ? sys.split[static_cast<std::size_t>(t.rule) - sys.unary.size()]
                            : sys.unary[static_cast<std::size_t>(t.rule)];
    Vec expect = vec_add(u, t.children[0].label);
    if (is_split) expect = vec_add(expect, t.children[1].label);
    if (expect != t.label) return fail("label is not the rule vector plus the children");
    for (const auto& c : t.children)
        if (!check_bvas_tree(sys, c, v_leaf, why)) return false;
    return true;
}

// Capped enumeration of BVAS root labels, mirroring enumerate_trees.
struct BvasEnumeration {
    struct Entry {
        Vec label;
        int rule = -1;
        int child[2] = {-1, -1};
    };
    std::vector<Entry> entries;
    bool saturated = false;
    bool truncated = false;
    bool exact() const { return saturated && !truncated; }

    std::optional<int> covering(const Vec& v_root) const {
        for (std::size_t i = 0; i < entries.size(); ++i)
            if (vec_leq(v_root, entries[i].label)) return static_cast<int>(i);
        return std::nullopt;
    }
    BvasTree materialize(int id) const {
        const auto& e = entries[static_cast<std::size_t>(id)];
        BvasTree t{e.label, e.rule, {}};
        for (int c : e.child)
            if (c >= 0) t.children.push_back(materialize(c));
        return t;
    }
};

inline BvasEnumeration enumerate_bvas(const Bvas& sys, const Vec& v_leaf, int height_cap, int value_cap) {
    BvasEnumeration en;
    std::map<Vec, int> seen;
    std::vector<int> frontier;
    auto offer = [&](BvasEnumeration::Entry e, std::vector<int>& next) {
        if (!vec_nonneg(e.label)) return;
        if (vec_max(e.label) > value_cap) {
            en.truncated = true;
            return;
        }
        if (seen.count(e.label)) return;
        int id = static_cast<int>(en.entries.size());
        seen.emplace(e.label, id);
        en.entries.push_back(std::move(e));
        next.push_back(id);
    };
    offer(BvasEnumeration::Entry{v_leaf, -1, {-1, -1}}, frontier);
    for (int level = 1; level <= height_cap && !frontier.empty(); ++level) {
        std::vector<int> next;
        std::vector<char> fresh(en.entries.size(), 0);
        for (int id : frontier) fresh[static_cast<std::size_t>(id)] = 1;
        std::size_t old = en.entries.size();
        for (int id : frontier)
            for (std::size_t r = 0; r < sys.unary.size(); ++r) {
                Vec lab = vec_add(sys.unary[r], en.entries[static_cast<std::size_t>(id)].label);
                offer(BvasEnumeration::Entry{lab, static_cast<int>(r), {id, -1}}, next);
            }
        for (std::size_t r = 0; r < sys.split.size(); ++r)
            for (std::size_t a = 0; a < old; ++a)
                for (std::size_t b = 0; b < old; ++b) {
                    if (!fresh[a] && !fresh[b]) continue;
                    Vec lab = vec_add(sys.split[r], vec_add(en.entries[a].label, en.entries[b].label));
                    offer(BvasEnumeration::Entry{lab, static_cast<int>(sys.unary.size() + r),
                                                 {static_cast<int>(a), static_cast<int>(b)}},
                          next);
                }
        frontier = std::move(next);
    }
    en.saturated = frontier.empty();
    return en;
}

// BVAS text format: dim <d> | unary <vec> | split <vec> | root <vec> | leaf <vec>
inline BvasInstance parse_bvas(std::istream& in) {
    BvasInstance r;
    bool have_dim = false, have_root = false, have_leaf = false;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto w = split_ws(strip_comment(raw));
        if (w.empty()) continue;
        if (w.size() != 2) throw FormatError(lineno, "expected '<keyword> <argument>'");
        if (w[0] == "dim") {
            try {
                r.system.dim = std::stoi(w[1]);
            } catch (const std::exception&) {
                throw FormatError(lineno, "bad dimension");
            }
            if (r.system.dim < 0) throw FormatError(lineno, "negative dimension");
            have_dim = true;
            continue;
        }
        if (!have_dim) throw FormatError(lineno, "dim must come first");
        Vec v = parse_vec(w[1], r.system.dim, lineno);
        if (w[0] == "unary") {
            r.system.unary.push_back(v);
        } else if (w[0] == "split") {
            r.system.split.push_back(v);
        } else if (w[0] == "root") {
            r.root = v;
            have_root = true;
        } else if (w[0] == "leaf") {
            r.leaf = v;
            have_leaf = true;
        } else {
            throw FormatError(lineno, "unknown declaration '" + w[0] + "'");
        }
    }
    if (!have_dim) throw FormatError(lineno, "missing dim");
    if (!have_root || !have_leaf) throw FormatError(lineno, "missing root or leaf vector");
    if (!vec_nonneg(r.root) || !vec_nonneg(r.leaf)) throw FormatError(lineno, "root and leaf vectors must be natural");
    return r;
}

inline BvasInstance parse_bvas_text(const std::string& text) {
    std::istringstream in(text);
    return parse_bvas(in);
}

inline std::string render_bvas(const BvasInstance& b) {
    auto plain = [](const Vec& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return v.empty() ? std::string("()") : s;
    };
    std::ostringstream o;
    o << "dim " << b.system.dim << "\n";
    for (const auto& u : b.system.unary) o << "unary " << plain(u) << "\n";
    for (const auto& u : b.system.split) o << "split " << plain(u) << "\n";
    o << "root " << plain(b.root) << "\n";
    o << "leaf " << plain(b.leaf) << "\n";
    return o.str();
}

// Infinity norm (absolute values, so it also bounds negative entries).
inline int norm(const Vec& v) {
    int m = 0;
    for (int x : v) m = std::max(m, x < 0 ? -x : x);
    return m;
}

inline int norm(const std::vector<Vec>& vs) {
    int m = 0;
    for (const auto& v : vs) m = std::max(m, norm(v));
    return m;
}

}  // namespace relb
