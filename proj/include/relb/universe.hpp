#pragma once
// Index-based view of a subformula universe, used by the provers. Contexts
// are byte strings of multiplicities indexed by universe position.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relb/formula.hpp"
#include "relb/sequent.hpp"

namespace relb {

class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Ctx = std::string;

struct Universe {
    SubformulaTable table;
    std::vector<Kind> kind;
    std::vector<int> left, right;  // -1 when absent
    std::vector<std::vector<int>> args;  // implication spine (A1..An of A1->..->An->h)
    std::vector<int> head;

    explicit Universe(const std::vector<Formula>& roots) : table(subformulas(roots)) {
        std::size_t n = table.size();
        kind.resize(n);
        left.assign(n, -1);
        right.assign(n, -1);
        args.resize(n);
        head.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const Formula& f = table.entries[i];
            kind[i] = f.kind();
            if (f.is_imp() || f.is_fusion()) {
                left[i] = id(f.left());
                right[i] = id(f.right());
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            int cur = static_cast<int>(i);
            while (kind[cur] == Kind::Imp) {
                args[i].push_back(left[cur]);
                cur = right[cur];
            }
            head[i] = cur;
        }
    }

    int size() const { return static_cast<int>(table.size()); }
    int id(const Formula& f) const { return table.coordinate(f) - 1; }
    const Formula& formula(int i) const { return table.entries[static_cast<std::size_t>(i)]; }

    Ctx empty_ctx() const { return Ctx(table.size(), '\0'); }

    Ctx ctx_of(const Multiset& m) const {
        Ctx c = empty_ctx();
        for (const auto& [f, k] : m) {
            int i = id(f);
            if (i < 0) throw std::logic_error("formula outside universe");
            if (k > 120) throw ResourceLimitError("multiplicity too large");
            c[static_cast<std::size_t>(i)] = static_cast<char>(k);
        }
        return c;
    }

    Multiset multiset_of(const Ctx& c) const {
        Multiset m;
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i]) m.emplace(table.entries[i], static_cast<int>(static_cast<unsigned char>(c[i])));
        return m;
    }
};

inline int cnt(const Ctx& c, int i) { return static_cast<unsigned char>(c[static_cast<std::size_t>(i)]); }
inline void ctx_add(Ctx& c, int i, int k = 1) {
    int v = cnt(c, i) + k;
    if (v > 120) throw ResourceLimitError("multiplicity too large");
    c[static_cast<std::size_t>(i)] = static_cast<char>(v);
}

inline bool same_support_leq(const Ctx& a, const Ctx& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        unsigned char x = static_cast<unsigned char>(a[i]), y = static_cast<unsigned char>(b[i]);
        if ((x == 0) != (y == 0) || x > y) return false;
    }
    return true;
}

inline bool ctx_empty(const Ctx& c) {
    for (char ch : c)
        if (ch) return false;
    return true;
}

// Enumerates pairs (g, d) with g, d <= c pointwise and g + d >= c - slack,
// where slack is 1 at position `principal` (if >= 0) and 0 elsewhere.
// Order: lexicographic on g, then on d.
template <class F>
bool for_each_sharing_split(const Ctx& c, int principal, F&& visit) {
    std::vector<int> pos;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i]) pos.push_back(static_cast<int>(i));
    Ctx g(c.size(), '\0'), d(c.size(), '\0');
    std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
        if (k == pos.size()) return visit(static_cast<const Ctx&>(g), static_cast<const Ctx&>(d));
        int i = pos[k];
        int m = cnt(c, i);
        int need = m - (i == principal ? 1 : 0);
        for (int gi = 0; gi <= m; ++gi) {
            for (int di = 0; di <= m; ++di) {
                if (gi + di < need) continue;
                g[static_cast<std::size_t>(i)] = static_cast<char>(gi);
                d[static_cast<std::size_t>(i)] = static_cast<char>(di);
                if (rec(k + 1)) return true;
            }
        }
        g[static_cast<std::size_t>(i)] = 0;
        d[static_cast<std::size_t>(i)] = 0;
        return false;
    };
    return rec(0);
}

// Same pairs as for_each_sharing_split up to contraction: every g <= c is
// offered (lexicographic), and for each g only the pointwise-least d of each
// support is offered. `on_g(g)` returning false skips that g; `on_d(g, d)`
// returning true stops the enumeration.
template <class G, class D>
bool for_each_least_split(const Ctx& c, int principal, G&& on_g, D&& on_d) {
    std::vector<int> pos;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i]) pos.push_back(static_cast<int>(i));
    Ctx g(c.size(), '\0'), d(c.size(), '\0');
    std::vector<int> optional_pos;
    std::function<bool(std::size_t)> rec_d = [&](std::size_t k) -> bool {
        if (k == optional_pos.size()) return on_d(static_cast<const Ctx&>(g), static_cast<const Ctx&>(d));
        auto i = static_cast<std::size_t>(optional_pos[k]);
        d[i] = 0;
        if (rec_d(k + 1)) return true;
        d[i] = 1;
        if (rec_d(k + 1)) return true;
        d[i] = 0;
        return false;
    };
    std::function<bool(std::size_t)> rec_g = [&](std::size_t k) -> bool {
        if (k == pos.size()) {
            if (!on_g(static_cast<const Ctx&>(g))) return false;
            optional_pos.clear();
            for (int i : pos) {
                int need = cnt(c, i) - (i == principal ? 1 : 0) - cnt(g, i);
                if (need > 0) {
                    d[static_cast<std::size_t>(i)] = static_cast<char>(need);
                } else {
                    d[static_cast<std::size_t>(i)] = 0;
                    optional_pos.push_back(i);
                }
            }
            return rec_d(0);
        }
        int i = pos[k];
        for (int gi = 0; gi <= cnt(c, i); ++gi) {
            g[static_cast<std::size_t>(i)] = static_cast<char>(gi);
            if (rec_g(k + 1)) return true;
        }
        g[static_cast<std::size_t>(i)] = 0;
        return false;
    };
    return rec_g(0);
}

// Exact splits g + d = c, lexicographic on g.
template <class F>
bool for_each_exact_split(const Ctx& c, F&& visit) {
    std::vector<int> pos;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i]) pos.push_back(static_cast<int>(i));
    Ctx g(c.size(), '\0'), d = c;
    std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
        if (k == pos.size()) return visit(static_cast<const Ctx&>(g), static_cast<const Ctx&>(d));
        int i = pos[k];
        int m = cnt(c, i);
        for (int gi = 0; gi <= m; ++gi) {
            g[static_cast<std::size_t>(i)] = static_cast<char>(gi);
            d[static_cast<std::size_t>(i)] = static_cast<char>(m - gi);
            if (rec(k + 1)) return true;
        }
        g[static_cast<std::size_t>(i)] = 0;
        d[static_cast<std::size_t>(i)] = static_cast<char>(m);
        return false;
    };
    return rec(0);
}

}  // namespace relb
