#ifndef SHAPCOUNT_RANDOM_HPP
#define SHAPCOUNT_RANDOM_HPP

// Seeded generators for property tests and `compare --random`.

#include "shapcount/boolfunc.hpp"
#include "shapcount/circuit.hpp"
#include "shapcount/lineage.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace shapcount {

using Rng = std::mt19937_64;

namespace detail {
inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline NodePtr random_literal(Rng& rng, std::size_t n) {
    NodePtr v = variable(pick(rng, 0, n - 1));
    return coin(rng, 0.3) ? negation(v) : v;
}

inline NodePtr random_tree(Rng& rng, std::size_t n, std::size_t depth) {
    if (n == 0) return constant(coin(rng));
    if (depth == 0 || coin(rng, 0.25)) {
        if (coin(rng, 0.05)) return constant(coin(rng));
        return random_literal(rng, n);
    }
    if (coin(rng, 0.15)) return negation(random_tree(rng, n, depth - 1));
    std::vector<NodePtr> kids;
    const std::size_t arity = pick(rng, 2, 3);
    for (std::size_t j = 0; j < arity; ++j) kids.push_back(random_tree(rng, n, depth - 1));
    return coin(rng) ? conjunction(std::move(kids)) : disjunction(std::move(kids));
}

inline NodePtr random_normal_form(Rng& rng, std::size_t n, bool cnf) {
    if (n == 0) return constant(coin(rng));
    const std::size_t clauses = pick(rng, 1, n + 2);
    std::vector<NodePtr> outer;
    for (std::size_t c = 0; c < clauses; ++c) {
        std::vector<NodePtr> lits;
        const std::size_t width = pick(rng, 1, std::min<std::size_t>(n, 4));
        for (std::size_t j = 0; j < width; ++j) lits.push_back(random_literal(rng, n));
        outer.push_back(cnf ? disjunction(std::move(lits)) : conjunction(std::move(lits)));
    }
    return cnf ? conjunction(std::move(outer)) : disjunction(std::move(outer));
}
} // namespace detail

enum class FormulaShape { Ast, Cnf, Dnf };

inline std::string to_string(FormulaShape s) {
    switch (s) {
    case FormulaShape::Ast: return "ast";
    case FormulaShape::Cnf: return "cnf";
    case FormulaShape::Dnf: return "dnf";
    }
    return "?";
}

inline BoolFunc random_formula(Rng& rng, std::size_t n, FormulaShape shape) {
    switch (shape) {
    case FormulaShape::Ast: return BoolFunc(detail::random_tree(rng, n, 4), n);
    case FormulaShape::Cnf: return BoolFunc(detail::random_normal_form(rng, n, true), n);
    case FormulaShape::Dnf: return BoolFunc(detail::random_normal_form(rng, n, false), n);
    }
    return BoolFunc(constant(false), n);
}

/// Shape chosen round-robin from the index so a corpus mixes all three.
inline BoolFunc random_formula(Rng& rng, std::size_t n, std::size_t index = 0) {
    return random_formula(rng, n, static_cast<FormulaShape>(index % 3));
}

/// A positive DNF with 1..n+1 clauses of width 1..3.
inline BoolFunc random_positive_dnf(Rng& rng, std::size_t n) {
    if (n == 0) return BoolFunc(constant(false), 0);
    std::vector<NodePtr> terms;
    const std::size_t clauses = detail::pick(rng, 1, n + 1);
    for (std::size_t c = 0; c < clauses; ++c) {
        std::vector<NodePtr> lits;
        const std::size_t width = detail::pick(rng, 1, std::min<std::size_t>(n, 3));
        for (std::size_t j = 0; j < width; ++j) lits.push_back(variable(detail::pick(rng, 0, n - 1)));
        terms.push_back(conjunction(std::move(lits)));
    }
    return BoolFunc(disjunction(std::move(terms)), n);
}

namespace detail {

inline std::size_t random_literal_gate(Rng& rng, CircuitBuilder& b, VarId v) {
    const std::size_t g = b.fresh_var(v);
    return coin(rng, 0.35) ? b.negate(g) : g;
}

// Deterministic, decomposable and leaf-NNF by construction: and-gates split
// the variable set, or-gates branch on mutually exclusive literal patterns.
inline std::size_t random_dd(Rng& rng, CircuitBuilder& b, std::vector<VarId> vars, std::size_t depth) {
    if (vars.empty()) return b.constant(coin(rng, 0.7));
    if (coin(rng, 0.03)) return b.constant(coin(rng));
    if (vars.size() == 1 || coin(rng, 0.1)) return random_literal_gate(rng, b, vars[pick(rng, 0, vars.size() - 1)]);
    if (depth == 0) {
        std::vector<std::size_t> lits;
        for (VarId v : vars)
            if (coin(rng, 0.6)) lits.push_back(random_literal_gate(rng, b, v));
        if (lits.empty()) return random_literal_gate(rng, b, vars.front());
        return b.conj(std::move(lits));
    }
    std::shuffle(vars.begin(), vars.end(), rng);
    const std::size_t choice = pick(rng, 0, 5);
    if (choice <= 1) {
        const std::size_t parts = std::min<std::size_t>(vars.size(), pick(rng, 2, 3));
        std::vector<std::size_t> cuts{0};
        for (std::size_t p = 1; p < parts; ++p) cuts.push_back(pick(rng, cuts.back() + 1, vars.size() - (parts - p)));
        cuts.push_back(vars.size());
        std::vector<std::size_t> in;
        for (std::size_t p = 0; p < parts; ++p)
            in.push_back(random_dd(rng, b, {vars.begin() + cuts[p], vars.begin() + cuts[p + 1]}, depth - 1));
        return b.conj(std::move(in));
    }
    const VarId x = vars.front();
    std::vector<VarId> rest(vars.begin() + 1, vars.end());
    if (choice == 5 && rest.size() >= 2) {
        // three-way split on x, then y
        const VarId y = rest.front();
        std::vector<VarId> rest2(rest.begin() + 1, rest.end());
        const std::size_t gx = b.fresh_var(x), gy = b.fresh_var(y);
        const std::size_t a = b.conj({gx, gy, random_dd(rng, b, rest2, depth - 1)});
        const std::size_t c = b.conj({gx, b.negate(gy), random_dd(rng, b, rest2, depth - 1)});
        const std::size_t d = b.conj({b.negate(b.fresh_var(x)), random_dd(rng, b, rest, depth - 1)});
        return b.disj({a, c, d}, x + 1);
    }
    const std::size_t gx = b.fresh_var(x);
    const std::size_t hi = random_dd(rng, b, rest, depth - 1);
    const std::size_t lo = coin(rng, 0.2) ? hi : random_dd(rng, b, rest, depth - 1);
    return b.disj({b.conj({gx, hi}), b.conj({b.negate(gx), lo})}, x + 1);
}

} // namespace detail

/// A leaf-NNF deterministic decomposable circuit over n variables with at
/// most max_gates gates.
inline Circuit random_dd_circuit(Rng& rng, std::size_t n, std::size_t max_gates = 30) {
    // keep the largest of a few candidates that fits
    std::optional<Circuit> best;
    for (std::size_t attempt = 0; attempt < 200 && !(best && attempt >= 8); ++attempt) {
        CircuitBuilder b(n);
        std::vector<VarId> vars;
        for (VarId v = 0; v < n; ++v)
            if (detail::coin(rng, 0.9)) vars.push_back(v);
        Circuit c = b.finish(detail::random_dd(rng, b, vars, detail::pick(rng, 1, 4)));
        if (c.size() <= max_gates && (!best || c.size() > best->size())) best = std::move(c);
    }
    if (best) return *best;
    CircuitBuilder b(n);
    return b.finish(n ? b.var(0) : b.constant(false));
}

// Queries and databases.

struct RandomQuery {
    Schema schema;
    Query query;
};

namespace detail {
inline Schema schema_for(Rng& rng, const Query& q) {
    Schema s;
    for (const auto& a : q.atoms)
        s.add({a.relation, a.args.size(), coin(rng, 0.7) ? RelationKind::Endogenous : RelationKind::Exogenous});
    return s;
}
} // namespace detail

/// Self-join-free query with 1..4 atoms over variables x, y, z (arity 1..3,
/// an occasional constant). Hierarchical or not, by chance.
inline RandomQuery random_sjf_query(Rng& rng) {
    static const char* pool[] = {"x", "y", "z"};
    const std::size_t vars = detail::pick(rng, 1, 3);
    Query q;
    const std::size_t atoms = detail::pick(rng, 1, 4);
    for (std::size_t i = 0; i < atoms; ++i) {
        Atom a{"R" + std::to_string(i + 1), {}};
        const std::size_t arity = detail::pick(rng, 1, 3);
        for (std::size_t j = 0; j < arity; ++j)
            a.args.push_back(detail::coin(rng, 0.05) ? Term::value("a") : Term::var(pool[detail::pick(rng, 0, vars - 1)]));
        q.atoms.push_back(std::move(a));
    }
    return {detail::schema_for(rng, q), std::move(q)};
}

/// Hierarchical by construction: variables form a random forest and every
/// atom uses one root-to-node path.
inline RandomQuery random_hierarchical_query(Rng& rng) {
    static const char* pool[] = {"x", "y", "z", "w"};
    const std::size_t vars = detail::pick(rng, 1, 4);
    std::vector<std::optional<std::size_t>> parent(vars);
    for (std::size_t i = 1; i < vars; ++i)
        if (detail::coin(rng, 0.7)) parent[i] = detail::pick(rng, 0, i - 1);
    Query q;
    const std::size_t atoms = detail::pick(rng, 1, 4);
    for (std::size_t i = 0; i < atoms; ++i) {
        std::vector<Term> path;
        for (std::optional<std::size_t> v = detail::pick(rng, 0, vars - 1); v; v = parent[*v])
            path.push_back(Term::var(pool[*v]));
        while (path.size() > 3) path.erase(path.begin()); // keep arity small: drop the deepest
        if (path.size() < 3 && detail::coin(rng, 0.2)) path.push_back(path[detail::pick(rng, 0, path.size() - 1)]);
        std::shuffle(path.begin(), path.end(), rng);
        q.atoms.push_back(Atom{"R" + std::to_string(i + 1), std::move(path)});
    }
    return {detail::schema_for(rng, q), std::move(q)};
}

/// Random instance over a 2..3 value domain with at most max_endogenous
/// endogenous tuples. With a query, a few random valuations of its variables
/// are planted first so the lineage is rarely empty; the rest is noise.
inline Database random_database(Rng& rng, const Schema& schema, std::size_t max_endogenous = 12,
                                const Query* query = nullptr) {
    static const char* values[] = {"a", "b", "c"};
    const std::size_t adom = detail::pick(rng, 2, 3);
    Database d(schema);
    std::size_t endo = 0;
    auto offer = [&](std::size_t r, Tuple t) {
        if (d.find_row(r, t)) return;
        if (schema.endogenous(r)) {
            if (endo == max_endogenous) return;
            ++endo;
        }
        d.add_row(r, std::move(t));
    };
    if (query) {
        const auto vars = query->variables();
        const std::size_t plants = detail::pick(rng, 2, 5);
        for (std::size_t k = 0; k < plants; ++k) {
            std::map<std::string, std::string> val;
            for (const auto& v : vars) val[v] = values[detail::pick(rng, 0, adom - 1)];
            for (const auto& a : query->atoms) {
                Tuple t;
                for (const auto& term : a.args) t.push_back(term.is_variable ? val[term.text] : term.text);
                offer(schema.index(a.relation), std::move(t));
            }
        }
    }
    for (std::size_t r = 0; r < schema.size(); ++r) {
        const std::size_t arity = schema.at(r).arity;
        const double p = (schema.endogenous(r) ? 0.9 : 1.2) / static_cast<double>(arity);
        std::vector<Tuple> noise;
        std::vector<std::size_t> digits(arity, 0);
        for (;;) {
            if (detail::coin(rng, p)) {
                Tuple t;
                for (auto v : digits) t.push_back(values[v]);
                noise.push_back(std::move(t));
            }
            std::size_t k = 0;
            while (k < arity && ++digits[k] == adom) digits[k++] = 0;
            if (k == arity) break;
        }
        std::shuffle(noise.begin(), noise.end(), rng);
        for (auto& t : noise) offer(r, std::move(t));
    }
    return d;
}

/// Random edge set over left indices 1..left and right indices 1..right.
inline std::vector<std::pair<std::size_t, std::size_t>> random_edges(Rng& rng, std::size_t left, std::size_t right) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 1; i <= left; ++i)
        for (std::size_t j = 1; j <= right; ++j)
            if (detail::coin(rng, 0.35)) out.emplace_back(i, j);
    if (out.empty()) out.emplace_back(detail::pick(rng, 1, left), detail::pick(rng, 1, right));
    std::shuffle(out.begin(), out.end(), rng);
    return out;
}

} // namespace shapcount

#endif // SHAPCOUNT_RANDOM_HPP
