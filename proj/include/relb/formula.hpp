#pragma once
// Formulas of implicational relevance logic, optionally extended with
// fusion ("o") and the constant T.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace relb {

enum class Kind : std::uint8_t { Atom, Imp, Fusion, Truth };

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(std::size_t pos, std::string expected)
        : std::runtime_error("syntax error at position " + std::to_string(pos) + ": expected " + expected),
          position(pos), expected(std::move(expected)) {}
    std::size_t position;
    std::string expected;
};

class ReservedNameError : public std::runtime_error {
public:
    explicit ReservedNameError(const std::string& name)
        : std::runtime_error("atom name '" + name + "' is reserved") {}
};

class UnsupportedConnective : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FormulaNode;

class Formula {
public:
    Formula() = default;

    static Formula atom(const std::string& name);
    static Formula imp(const Formula& l, const Formula& r);
    static Formula fusion(const Formula& l, const Formula& r);
    static Formula truth();

    Kind kind() const;
    const std::string& name() const;
    const Formula& left() const;
    const Formula& right() const;
    std::size_t hash() const;
    int size() const;
    bool valid() const { return static_cast<bool>(node_); }

    bool is_atom() const { return kind() == Kind::Atom; }
    bool is_imp() const { return kind() == Kind::Imp; }
    bool is_fusion() const { return kind() == Kind::Fusion; }
    bool is_truth() const { return kind() == Kind::Truth; }
    // Only atoms and implications below this node.
    bool implicational() const;

    const FormulaNode* raw() const { return node_.get(); }

private:
    explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const FormulaNode> node_;
};

struct FormulaNode {
    Kind kind;
    std::string name;
    Formula left, right;
    std::size_t hash;
    int size;
    bool implicational;
};

inline Kind Formula::kind() const { return node_->kind; }
inline const std::string& Formula::name() const { return node_->name; }
inline const Formula& Formula::left() const { return node_->left; }
inline const Formula& Formula::right() const { return node_->right; }
inline std::size_t Formula::hash() const { return node_->hash; }
inline int Formula::size() const { return node_->size; }
inline bool Formula::implicational() const { return node_->implicational; }

namespace detail {
inline std::size_t mix_hash(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}
inline bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
        if (!ok) return false;
    }
    return true;
}
}  // namespace detail

inline Formula Formula::atom(const std::string& name) {
    if (name == "T") throw ReservedNameError(name);
    if (!detail::valid_identifier(name)) throw std::invalid_argument("invalid atom name '" + name + "'");
    auto n = std::make_shared<FormulaNode>();
    n->kind = Kind::Atom;
    n->name = name;
    n->hash = detail::mix_hash(0x1234, std::hash<std::string>{}(name));
    n->size = 1;
    n->implicational = true;
    return Formula(std::move(n));
}

inline Formula Formula::truth() {
    static const Formula t = [] {
        auto n = std::make_shared<FormulaNode>();
        n->kind = Kind::Truth;
        n->hash = 0x7777;
        n->size = 1;
        n->implicational = false;
        return Formula(std::move(n));
    }();
    return t;
}

inline Formula Formula::imp(const Formula& l, const Formula& r) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = Kind::Imp;
    n->left = l;
    n->right = r;
    n->hash = detail::mix_hash(detail::mix_hash(0x51, l.hash()), r.hash());
    n->size = 1 + l.size() + r.size();
    n->implicational = l.implicational() && r.implicational();
    return Formula(std::move(n));
}

inline Formula Formula::fusion(const Formula& l, const Formula& r) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = Kind::Fusion;
    n->left = l;
    n->right = r;
    n->hash = detail::mix_hash(detail::mix_hash(0xF5, l.hash()), r.hash());
    n->size = 1 + l.size() + r.size();
    n->implicational = false;
    return Formula(std::move(n));
}

// Structural total order; equal iff structurally identical.
inline int compare(const Formula& a, const Formula& b) {
    if (a.raw() == b.raw()) return 0;
    if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
    switch (a.kind()) {
        case Kind::Atom:
            return a.name() < b.name() ? -1 : (a.name() == b.name() ? 0 : 1);
        case Kind::Truth:
            return 0;
        default: {
            if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
            int c = compare(a.left(), b.left());
            if (c != 0) return c;
            return compare(a.right(), b.right());
        }
    }
}

inline bool operator==(const Formula& a, const Formula& b) {
    if (a.raw() == b.raw()) return true;
    if (a.hash() != b.hash() || a.size() != b.size()) return false;
    return compare(a, b) == 0;
}
inline bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
inline bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

struct FormulaHash {
    std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// ---------------------------------------------------------------- parsing

namespace detail {

class FormulaParser {
public:
    explicit FormulaParser(const std::string& s) : s_(s) {}

    Formula parse_all() {
        Formula f = parse_imp();
        skip_ws();
        if (pos_ != s_.size()) throw SyntaxError(pos_, "'->' or end of input");
        return f;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r'))
            ++pos_;
    }
    static bool ident_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    }
    bool peek_arrow() {
        skip_ws();
        return pos_ + 1 < s_.size() && s_[pos_] == '-' && s_[pos_ + 1] == '>';
    }
    // The fusion operator is the identifier "o" in operator position.
    bool peek_fusion() {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == 'o') {
            std::size_t e = pos_ + 1;
            return e >= s_.size() || !ident_char(s_[e]);
        }
        return false;
    }
    Formula parse_imp() {
        Formula l = parse_fusion();
        if (peek_arrow()) {
            pos_ += 2;
            Formula r = parse_imp();
            return Formula::imp(l, r);
        }
        return l;
    }
    Formula parse_fusion() {
        Formula l = parse_primary();
        while (peek_fusion()) {
            ++pos_;
            Formula r = parse_primary();
            l = Formula::fusion(l, r);
        }
        return l;
    }
    Formula parse_primary() {
        skip_ws();
        if (pos_ >= s_.size()) throw SyntaxError(pos_, "atom, 'T' or '('");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Formula f = parse_imp();
            skip_ws();
            if (pos_ >= s_.size() || s_[pos_] != ')') throw SyntaxError(pos_, "')'");
            ++pos_;
            return f;
        }
        if (ident_char(c)) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
            std::string id = s_.substr(start, pos_ - start);
            if (id == "T") return Formula::truth();
            return Formula::atom(id);
        }
        throw SyntaxError(pos_, "atom, 'T' or '('");
    }
};

}  // namespace detail

inline Formula parse_formula(const std::string& text) { return detail::FormulaParser(text).parse_all(); }

// ---------------------------------------------------------------- rendering

inline std::string render_formula(const Formula& f) {
    switch (f.kind()) {
        case Kind::Atom:
            return f.name();
        case Kind::Truth:
            return "T";
        case Kind::Imp: {
            std::string l = render_formula(f.left());
            if (f.left().is_imp()) l = "(" + l + ")";
            return l + "->" + render_formula(f.right());
        }
        case Kind::Fusion: {
            std::string l = render_formula(f.left());
            if (f.left().is_imp()) l = "(" + l + ")";
            std::string r = render_formula(f.right());
            if (f.right().is_imp() || f.right().is_fusion()) r = "(" + r + ")";
            return l + " o " + r;
        }
    }
    return {};
}

inline std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << render_formula(f); }

// ---------------------------------------------------------------- subformulas

struct SubformulaTable {
    std::vector<Formula> entries;
    std::unordered_map<Formula, int, FormulaHash> index;  // 1-based

    int coordinate(const Formula& f) const {
        auto it = index.find(f);
        return it == index.end() ? 0 : it->second;
    }
    std::size_t size() const { return entries.size(); }
};

namespace detail {
inline void collect_subformulas(const Formula& f, SubformulaTable& t) {
    if (t.index.count(f)) return;
    if (f.is_imp() || f.is_fusion()) {
        collect_subformulas(f.left(), t);
        collect_subformulas(f.right(), t);
    }
    if (t.index.count(f)) return;
    t.entries.push_back(f);
    t.index.emplace(f, static_cast<int>(t.entries.size()));
}
}  // namespace detail

inline SubformulaTable subformulas(const Formula& f) {
    SubformulaTable t;
    detail::collect_subformulas(f, t);
    return t;
}

// Shared subformula universe of several formulas (first-occurrence post-order).
inline SubformulaTable subformulas(const std::vector<Formula>& fs) {
    SubformulaTable t;
    for (const auto& f : fs) detail::collect_subformulas(f, t);
    return t;
}

// A = A_1 -> ... -> A_n -> h: returns {A_1..A_n} and sets head = h.
inline std::vector<Formula> split_arrows(const Formula& f, Formula& head) {
    std::vector<Formula> args;
    Formula cur = f;
    while (cur.is_imp()) {
        args.push_back(cur.left());
        cur = cur.right();
    }
    head = cur;
    return args;
}

inline Formula build_arrows(const std::vector<Formula>& args, const Formula& head) {
    Formula cur = head;
    for (auto it = args.rbegin(); it != args.rend(); ++it) cur = Formula::imp(*it, cur);
    return cur;
}

// ---------------------------------------------------------------- corpora

inline std::vector<Formula> parse_corpus(std::istream& in) {
    std::vector<Formula> out;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        bool blank = true;
        for (char c : line)
            if (c != ' ' && c != '\t' && c != '\r') blank = false;
        if (blank) continue;
        out.push_back(parse_formula(line));
    }
    return out;
}

inline std::vector<Formula> read_corpus_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_corpus(in);
}

inline void write_corpus(std::ostream& out, const std::vector<Formula>& fs) {
    for (const auto& f : fs) out << render_formula(f) << "\n";
}

// All implicational formulas over the given atoms with size <= max_size,
// ordered by size, then by left-subtree size, then lexicographically.
inline std::vector<Formula> enumerate_implicational(const std::vector<std::string>& atoms, int max_size) {
    std::vector<std::vector<Formula>> by_size(static_cast<std::size_t>(std::max(max_size, 0)) + 1);
    if (max_size >= 1)
        for (const auto& a : atoms) by_size[1].push_back(Formula::atom(a));
    for (int s = 3; s <= max_size; s += 2) {
        for (int ls = 1; ls <= s - 2; ls += 2) {
            int rs = s - 1 - ls;
            for (const auto& l : by_size[ls])
                for (const auto& r : by_size[rs]) by_size[s].push_back(Formula::imp(l, r));
        }
    }
    std::vector<Formula> out;
    for (auto& v : by_size) out.insert(out.end(), v.begin(), v.end());
    return out;
}

// Random implicational formula with exactly `size` symbols (size odd) or the
// nearest odd size below.
inline Formula random_implicational(std::mt19937_64& rng, const std::vector<std::string>& atoms, int size) {
    int leaves = (size + 1) / 2;
    if (leaves <= 1) {
        std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
        return Formula::atom(atoms[pick(rng)]);
    }
    std::uniform_int_distribution<int> pick(1, leaves - 1);
    int lleaves = pick(rng);
    return Formula::imp(random_implicational(rng, atoms, 2 * lleaves - 1),
                        random_implicational(rng, atoms, 2 * (leaves - lleaves) - 1));
}

}  // namespace relb

template <>
struct std::hash<relb::Formula> {
    std::size_t operator()(const relb::Formula& f) const { return f.hash(); }
};
