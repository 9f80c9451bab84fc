#ifndef SHAPCOUNT_DNF_HPP
#define SHAPCOUNT_DNF_HPP

#include "shapcount/boolfunc.hpp"

#include <set>
#include <vector>

namespace shapcount {

/// Positive DNF as a set of clauses, each a sorted set of variable ids.
/// The empty clause denotes true; the empty set denotes false.
using Clause = std::vector<VarId>;
using ClauseSet = std::set<Clause>;

namespace detail {
inline const char* dnf_shape_error() {
    return "dnf_distribute expects a disjunction of conjunctions of disjunctions of variables";
}

// A factor is a variable, an or of variables, or a constant; returns its
// alternatives (empty for constant 0, a single empty marker for constant 1).
inline std::vector<std::vector<VarId>> factor_alternatives(const Node& f) {
    switch (f.kind) {
    case NodeKind::Const: return f.value ? std::vector<std::vector<VarId>>{{}} : std::vector<std::vector<VarId>>{};
    case NodeKind::Var: return {{f.var}};
    case NodeKind::Or: {
        std::vector<std::vector<VarId>> alts;
        for (const auto& c : f.children) {
            if (c->kind == NodeKind::Var)
                alts.push_back({c->var});
            else if (c->kind == NodeKind::Const) {
                if (c->value) return {{}};
            } else
                throw InputError(dnf_shape_error());
        }
        return alts;
    }
    default: throw InputError(dnf_shape_error());
    }
}
} // namespace detail

struct DistributeLimits {
    std::size_t max_clauses = std::size_t{1} << 20;
};

/// Multiplies out every clause of the form (v Z..) ^ (v Z..) ^ ... into a
/// disjunction of conjunctions of variables. Clause order follows the input;
/// within a clause the first factor varies slowest.
inline BoolFunc dnf_distribute(const BoolFunc& f, const DistributeLimits& limits = {}) {
    const Node& root = *f.root();
    std::vector<const Node*> terms;
    if (root.kind == NodeKind::Or) {
        for (const auto& c : root.children) terms.push_back(c.get());
    } else {
        terms.push_back(&root);
    }

    std::vector<NodePtr> clauses;
    for (const Node* term : terms) {
        std::vector<const Node*> factors;
        if (term->kind == NodeKind::And)
            for (const auto& c : term->children) factors.push_back(c.get());
        else
            factors.push_back(term);

        std::vector<std::vector<std::vector<VarId>>> alts;
        bool dead = false;
        for (const Node* factor : factors) {
            alts.push_back(detail::factor_alternatives(*factor));
            if (alts.back().empty()) dead = true;
        }
        if (dead) continue;

        std::vector<std::size_t> pos(alts.size(), 0);
        while (true) {
            std::vector<NodePtr> lits;
            for (std::size_t j = 0; j < alts.size(); ++j)
                for (VarId v : alts[j][pos[j]]) lits.push_back(variable(v));
            clauses.push_back(conjunction(std::move(lits)));
            if (clauses.size() > limits.max_clauses)
                throw RefusalError("dnf_distribute: clause count exceeds the guard of " +
                                   std::to_string(limits.max_clauses));
            std::size_t j = alts.size();
            while (j > 0 && ++pos[j - 1] == alts[j - 1].size()) {
                pos[j - 1] = 0;
                --j;
            }
            if (j == 0) break;
        }
    }
    return BoolFunc(disjunction(std::move(clauses)), f.var_count(), f.labels());
}

/// Canonical clause set of a positive DNF (constants, a variable, an and of
/// variables, or an or of those). Throws InputError on any other shape.
inline ClauseSet to_clause_set(const BoolFunc& f) {
    auto clause_of = [](const Node& term) -> std::optional<Clause> {
        Clause c;
        auto add = [&](const Node& lit) {
            if (lit.kind == NodeKind::Var)
                c.push_back(lit.var);
            else if (lit.kind == NodeKind::Const && !lit.value)
                return false;
            else if (lit.kind != NodeKind::Const)
                throw InputError("not a positive DNF");
            return true;
        };
        if (term.kind == NodeKind::And) {
            for (const auto& l : term.children)
                if (!add(*l)) return std::nullopt;
        } else if (!add(term)) {
            return std::nullopt;
        }
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        return c;
    };
    ClauseSet out;
    const Node& root = *f.root();
    if (root.kind == NodeKind::Or) {
        for (const auto& t : root.children)
            if (auto c = clause_of(*t)) out.insert(std::move(*c));
    } else if (auto c = clause_of(root)) {
        out.insert(std::move(*c));
    }
    return out;
}

inline BoolFunc from_clause_set(const ClauseSet& clauses, std::size_t var_count) {
    std::vector<NodePtr> terms;
    for (const auto& c : clauses) {
        std::vector<NodePtr> lits;
        for (VarId v : c) lits.push_back(variable(v));
        terms.push_back(conjunction(std::move(lits)));
    }
    return BoolFunc(disjunction(std::move(terms)), var_count);
}

} // namespace shapcount

#endif // SHAPCOUNT_DNF_HPP
