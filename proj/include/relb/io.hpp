#pragma once
// Serialization of proofs and witness trees: an indented text tree (one
// node per line, two spaces per level, children after their parent) and a
// nested JSON form. Both round-trip.

#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "relb/bvass.hpp"
#include "relb/fr.hpp"
#include "relb/lr.hpp"

namespace relb {

namespace detail {

struct IndentedLine {
    int depth;
    std::string text;
    int lineno;
};

inline std::vector<IndentedLine> read_indented(std::istream& in) {
    std::vector<IndentedLine> out;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        std::string body = trim(raw);
        if (body.empty() || body[0] == '#') continue;
        std::size_t sp = raw.find_first_not_of(' ');
        if (sp % 2) throw FormatError(lineno, "indentation must be a multiple of two spaces");
        out.push_back({static_cast<int>(sp / 2), body, lineno});
    }
    return out;
}

// Calls make(line, children) bottom-up; returns the single root.
template <class T, class Make>
T build_indented(const std::vector<IndentedLine>& lines, Make&& make) {
    if (lines.empty()) throw FormatError(0, "empty tree");
    std::size_t pos = 0;
    std::function<T(int)> node = [&](int depth) -> T {
        const IndentedLine& me = lines[pos++];
        if (me.depth != depth) throw FormatError(me.lineno, "unexpected indentation");
        std::vector<T> kids;
        while (pos < lines.size() && lines[pos].depth > depth) {
            if (lines[pos].depth != depth + 1) throw FormatError(lines[pos].lineno, "indentation jumps a level");
            kids.push_back(node(depth + 1));
        }
        return make(me, std::move(kids));
    };
    T root = node(0);
    if (pos != lines.size()) throw FormatError(lines[pos].lineno, "more than one root");
    return root;
}

inline std::vector<std::string> split_fields(const std::string& s, char sep, std::size_t n) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        auto at = s.find(sep, start);
        if (at == std::string::npos) break;
        out.push_back(trim(s.substr(start, at - start)));
        start = at + 1;
    }
    out.push_back(trim(s.substr(start)));
    return out;
}

inline std::string indent(int depth) { return std::string(static_cast<std::size_t>(2 * depth), ' '); }

}  // namespace detail

// ---------------------------------------------------------------- proofs
// Line shape: `RULE ; principal ; sequent` (principal may be empty).

inline void write_lr_proof(std::ostream& o, const LrProof& p, int depth = 0) {
    o << detail::indent(depth) << lr_rule_name(p.rule) << " ; " << (p.principal ? render_formula(*p.principal) : "")
      << " ; " << render_sequent(p.conclusion) << "\n";
    for (const auto& q : p.premises) write_lr_proof(o, q, depth + 1);
}

inline std::string render_lr_proof(const LrProof& p) {
    std::ostringstream o;
    write_lr_proof(o, p);
    return o.str();
}

inline LrProof parse_lr_proof(std::istream& in) {
    return detail::build_indented<LrProof>(detail::read_indented(in), [](const detail::IndentedLine& l, std::vector<LrProof> kids) {
        auto f = detail::split_fields(l.text, ';', 3);
        if (f.size() != 3) throw FormatError(l.lineno, "expected 'RULE ; principal ; sequent'");
        auto rule = lr_rule_from_name(f[0]);
        if (!rule) throw FormatError(l.lineno, "unknown rule '" + f[0] + "'");
        LrProof p;
        p.rule = *rule;
        if (!f[1].empty()) p.principal = parse_formula(f[1]);
        p.conclusion = parse_sequent(f[2]);
        p.premises = std::move(kids);
        return p;
    });
}

inline LrProof parse_lr_proof_text(const std::string& s) {
    std::istringstream in(s);
    return parse_lr_proof(in);
}

inline void write_fr_proof(std::ostream& o, const FrProof& p, int depth = 0) {
    o << detail::indent(depth) << fr_rule_name(p.rule) << " ; " << (p.principal ? render_formula(*p.principal) : "")
      << " ; " << render_focus_sequent(p.conclusion) << "\n";
    for (const auto& q : p.premises) write_fr_proof(o, q, depth + 1);
}

inline std::string render_fr_proof(const FrProof& p) {
    std::ostringstream o;
    write_fr_proof(o, p);
    return o.str();
}

inline FrProof parse_fr_proof(std::istream& in) {
    return detail::build_indented<FrProof>(detail::read_indented(in), [](const detail::IndentedLine& l, std::vector<FrProof> kids) {
        auto f = detail::split_fields(l.text, ';', 3);
        if (f.size() != 3) throw FormatError(l.lineno, "expected 'RULE ; principal ; sequent'");
        auto rule = fr_rule_from_name(f[0]);
        if (!rule) throw FormatError(l.lineno, "unknown rule '" + f[0] + "'");
        FrProof p;
        p.rule = *rule;
        if (!f[1].empty()) p.principal = parse_formula(f[1]);
        p.conclusion = parse_focus_sequent(f[2]);
        p.premises = std::move(kids);
        return p;
    });
}

inline FrProof parse_fr_proof_text(const std::string& s) {
    std::istringstream in(s);
    return parse_fr_proof(in);
}

template <class P, class RuleName, class Render>
nlohmann::ordered_json proof_json(const P& p, RuleName&& rule_name, Render&& render) {
    nlohmann::ordered_json j;
    j["rule"] = rule_name(p.rule);
    j["principal"] = p.principal ? nlohmann::ordered_json(render_formula(*p.principal)) : nlohmann::ordered_json(nullptr);
    j["conclusion"] = render(p.conclusion);
    j["premises"] = nlohmann::ordered_json::array();
    for (const auto& q : p.premises) j["premises"].push_back(proof_json(q, rule_name, render));
    return j;
}

inline nlohmann::ordered_json lr_proof_to_json(const LrProof& p) {
    return proof_json(p, lr_rule_name, render_sequent);
}
inline nlohmann::ordered_json fr_proof_to_json(const FrProof& p) {
    return proof_json(p, fr_rule_name, render_focus_sequent);
}

inline LrProof lr_proof_from_json(const nlohmann::ordered_json& j) {
    auto rule = lr_rule_from_name(j.at("rule").get<std::string>());
    if (!rule) throw FormatError(0, "unknown rule in JSON proof");
    LrProof p;
    p.rule = *rule;
    if (!j.at("principal").is_null()) p.principal = parse_formula(j.at("principal").get<std::string>());
    p.conclusion = parse_sequent(j.at("conclusion").get<std::string>());
    for (const auto& q : j.at("premises")) p.premises.push_back(lr_proof_from_json(q));
    return p;
}

inline FrProof fr_proof_from_json(const nlohmann::ordered_json& j) {
    auto rule = fr_rule_from_name(j.at("rule").get<std::string>());
    if (!rule) throw FormatError(0, "unknown rule in JSON proof");
    FrProof p;
    p.rule = *rule;
    if (!j.at("principal").is_null()) p.principal = parse_formula(j.at("principal").get<std::string>());
    p.conclusion = parse_focus_sequent(j.at("conclusion").get<std::string>());
    for (const auto& q : j.at("premises")) p.premises.push_back(fr_proof_from_json(q));
    return p;
}

// ---------------------------------------------------------------- witnesses
// BVASS line shape: `STEP index state (v1,...,vd)`, index `-` at leaves.

inline void write_deduction_tree(std::ostream& o, const Bvass& sys, const DeductionTree& t, int depth = 0) {
    o << detail::indent(depth) << step_name(t.step) << " " << (t.step == StepKind::Leaf ? std::string("-") : std::to_string(t.index))
      << " " << sys.states[static_cast<std::size_t>(t.node.state)] << " " << render_vec(t.node.vec) << "\n";
    for (const auto& c : t.children) write_deduction_tree(o, sys, c, depth + 1);
}

inline std::string render_deduction_tree(const Bvass& sys, const DeductionTree& t) {
    std::ostringstream o;
    write_deduction_tree(o, sys, t);
    return o.str();
}

inline DeductionTree parse_deduction_tree(std::istream& in, const Bvass& sys) {
    return detail::build_indented<DeductionTree>(detail::read_indented(in), [&](const detail::IndentedLine& l, std::vector<DeductionTree> kids) {
        auto w = split_ws(l.text);
        if (w.size() != 4) throw FormatError(l.lineno, "expected 'STEP index state vector'");
        DeductionTree t;
        bool known = false;
        for (StepKind k : {StepKind::Leaf, StepKind::Unary, StepKind::Split, StepKind::Expansion})
            if (w[0] == step_name(k)) {
                t.step = k;
                known = true;
            }
        if (!known) throw FormatError(l.lineno, "unknown step '" + w[0] + "'");
        if (w[1] != "-") {
            try {
                t.index = std::stoi(w[1]);
            } catch (const std::exception&) {
                throw FormatError(l.lineno, "bad index");
            }
        }
        t.node.state = sys.state(w[2]);
        if (t.node.state < 0) throw FormatError(l.lineno, "unknown state '" + w[2] + "'");
        t.node.vec = parse_vec(w[3], sys.dim, l.lineno);
        t.children = std::move(kids);
        return t;
    });
}

inline DeductionTree parse_deduction_tree_text(const std::string& s, const Bvass& sys) {
    std::istringstream in(s);
    return parse_deduction_tree(in, sys);
}

inline nlohmann::ordered_json deduction_tree_to_json(const Bvass& sys, const DeductionTree& t) {
    nlohmann::ordered_json j;
    j["step"] = step_name(t.step);
    j["index"] = t.step == StepKind::Leaf ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(t.index);
    j["state"] = sys.states[static_cast<std::size_t>(t.node.state)];
    j["vector"] = t.node.vec;
    j["children"] = nlohmann::ordered_json::array();
    for (const auto& c : t.children) j["children"].push_back(deduction_tree_to_json(sys, c));
    return j;
}

// BVAS line shape: `rule (v1,...,vd)`, rule `-` at leaves.
inline void write_bvas_tree(std::ostream& o, const BvasTree& t, int depth = 0) {
    o << detail::indent(depth) << (t.rule < 0 ? std::string("-") : std::to_string(t.rule)) << " " << render_vec(t.label) << "\n";
    for (const auto& c : t.children) write_bvas_tree(o, c, depth + 1);
}

inline std::string render_bvas_tree(const BvasTree& t) {
    std::ostringstream o;
    write_bvas_tree(o, t);
    return o.str();
}

inline BvasTree parse_bvas_tree(std::istream& in, int dim) {
    return detail::build_indented<BvasTree>(detail::read_indented(in), [&](const detail::IndentedLine& l, std::vector<BvasTree> kids) {
        auto w = split_ws(l.text);
        if (w.size() != 2) throw FormatError(l.lineno, "expected 'rule vector'");
        BvasTree t;
        if (w[0] != "-") {
            try {
                t.rule = std::stoi(w[0]);
            } catch (const std::exception&) {
                throw FormatError(l.lineno, "bad rule index");
            }
        }
        t.label = parse_vec(w[1], dim, l.lineno);
        t.children = std::move(kids);
        return t;
    });
}

}  // namespace relb
