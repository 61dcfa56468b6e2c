#pragma once
// Multisets of formulas and the two sequent forms (plain and focusing).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relb/formula.hpp"

namespace relb {

using Multiset = std::map<Formula, int>;

inline void ms_add(Multiset& m, const Formula& f, int k = 1) {
    if (k == 0) return;
    int& c = m[f];
    c += k;
    if (c <= 0) m.erase(f);
}

// Returns false (and leaves m unspecified) if some count would go negative.
inline bool ms_sub(Multiset& m, const Multiset& n) {
    for (const auto& [f, k] : n) {
        auto it = m.find(f);
        if (it == m.end() || it->second < k) return false;
        it->second -= k;
        if (it->second == 0) m.erase(it);
    }
    return true;
}

inline Multiset ms_sum(const Multiset& a, const Multiset& b) {
    Multiset r = a;
    for (const auto& [f, k] : b) ms_add(r, f, k);
    return r;
}

inline int ms_count(const Multiset& m, const Formula& f) {
    auto it = m.find(f);
    return it == m.end() ? 0 : it->second;
}

inline int ms_total(const Multiset& m) {
    int t = 0;
    for (const auto& kv : m) t += kv.second;
    return t;
}

inline Multiset ms_of(const std::vector<Formula>& fs) {
    Multiset m;
    for (const auto& f : fs) ms_add(m, f);
    return m;
}

struct Sequent {
    Multiset antecedent;
    Formula succedent;
};

inline bool operator==(const Sequent& a, const Sequent& b) {
    return a.succedent == b.succedent && a.antecedent == b.antecedent;
}
inline bool operator!=(const Sequent& a, const Sequent& b) { return !(a == b); }

struct FocusSequent {
    Multiset antecedent;
    std::optional<Formula> focus;
    Formula succedent;
};

inline bool operator==(const FocusSequent& a, const FocusSequent& b) {
    if (a.focus.has_value() != b.focus.has_value()) return false;
    if (a.focus && *a.focus != *b.focus) return false;
    return a.succedent == b.succedent && a.antecedent == b.antecedent;
}
inline bool operator!=(const FocusSequent& a, const FocusSequent& b) { return !(a == b); }

// ---------------------------------------------------------------- text

inline std::string render_multiset(const Multiset& m) {
    std::string out;
    for (const auto& [f, k] : m)
        for (int i = 0; i < k; ++i) {
            if (!out.empty()) out += ", ";
            out += render_formula(f);
        }
    return out;
}

inline std::string render_sequent(const Sequent& s) {
    std::string a = render_multiset(s.antecedent);
    return (a.empty() ? "" : a + " ") + "|- " + render_formula(s.succedent);
}

inline std::string render_focus_sequent(const FocusSequent& s) {
    std::string a = render_multiset(s.antecedent);
    if (s.focus) a += (a.empty() ? "[" : ", [") + render_formula(*s.focus) + "]";
    return (a.empty() ? "" : a + " ") + "||- " + render_formula(s.succedent);
}

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Splits on commas at parenthesis depth zero.
inline std::vector<std::string> split_top_commas(const std::string& s) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace detail

inline Sequent parse_sequent(const std::string& text) {
    auto t = text.find("|-");
    if (t == std::string::npos) throw SyntaxError(text.size(), "'|-'");
    Sequent s;
    std::string lhs = detail::trim(text.substr(0, t));
    s.succedent = parse_formula(text.substr(t + 2));
    if (!lhs.empty())
        for (const auto& part : detail::split_top_commas(lhs)) ms_add(s.antecedent, parse_formula(part));
    return s;
}

inline FocusSequent parse_focus_sequent(const std::string& text) {
    auto t = text.find("||-");
    if (t == std::string::npos) throw SyntaxError(text.size(), "'||-'");
    FocusSequent s;
    std::string lhs = detail::trim(text.substr(0, t));
    s.succedent = parse_formula(text.substr(t + 3));
    if (!lhs.empty()) {
        for (auto part : detail::split_top_commas(lhs)) {
            part = detail::trim(part);
            if (!part.empty() && part.front() == '[') {
                if (part.back() != ']') throw SyntaxError(t, "']'");
                if (s.focus) throw SyntaxError(t, "at most one focused formula");
                s.focus = parse_formula(part.substr(1, part.size() - 2));
            } else {
                ms_add(s.antecedent, parse_formula(part));
            }
        }
    }
    return s;
}

inline Sequent unfocus(const FocusSequent& s) {
    Sequent r{s.antecedent, s.succedent};
    if (s.focus) ms_add(r.antecedent, *s.focus);
    return r;
}

}  // namespace relb
