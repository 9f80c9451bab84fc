#ifndef SHAPCOUNT_LINEAGE_HPP
#define SHAPCOUNT_LINEAGE_HPP

// Boolean conjunctive queries over relational data: lineage, hierarchical
// classification, stretching, compilation of hierarchical lineage into
// deterministic decomposable circuits, and the hardness constructions.

#include "shapcount/boolfunc.hpp"
#include "shapcount/circuit.hpp"
#include "shapcount/dnf.hpp"
#include "shapcount/enumerate.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace shapcount {

enum class RelationKind { Endogenous, Exogenous };

struct RelationInfo {
    std::string name;
    std::size_t arity = 1;
    RelationKind kind = RelationKind::Endogenous;
};

class Schema {
public:
    Schema() = default;
    Schema(std::initializer_list<RelationInfo> rels) {
        for (const auto& r : rels) add(r);
    }

    std::size_t add(RelationInfo r) {
        if (r.name.empty()) throw InputError("relation without a name");
        if (r.arity == 0) throw InputError("relation '" + r.name + "' has arity 0");
        if (index_.count(r.name)) throw InputError("duplicate relation '" + r.name + "'");
        index_.emplace(r.name, rels_.size());
        rels_.push_back(std::move(r));
        return rels_.size() - 1;
    }

    std::optional<std::size_t> find(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t index(const std::string& name) const {
        auto i = find(name);
        if (!i) throw InputError("unknown relation '" + name + "'");
        return *i;
    }

    const RelationInfo& at(std::size_t i) const { return rels_.at(i); }
    std::size_t size() const { return rels_.size(); }
    const std::vector<RelationInfo>& relations() const { return rels_; }
    bool endogenous(std::size_t i) const { return rels_.at(i).kind == RelationKind::Endogenous; }

private:
    std::vector<RelationInfo> rels_;
    std::map<std::string, std::size_t> index_;
};

using Tuple = std::vector<std::string>;

struct TupleRef {
    std::size_t relation = 0;
    std::size_t row = 0;
    bool operator==(const TupleRef&) const = default;
};

/// Relations as ordered, duplicate-free row lists. Endogenous tuples get
/// variable ids relation by relation (schema order), row by row.
class Database {
public:
    Database() = default;
    explicit Database(Schema schema) : schema_(std::move(schema)), rows_(schema_.size()), index_(schema_.size()) {}

    const Schema& schema() const { return schema_; }

    std::size_t add_row(std::size_t rel, Tuple t) {
        const RelationInfo& info = schema_.at(rel);
        if (t.size() != info.arity)
            throw InputError("relation '" + info.name + "' has arity " + std::to_string(info.arity) + ", got a tuple of " +
                             std::to_string(t.size()));
        if (index_[rel].count(t)) throw InputError("duplicate tuple in relation '" + info.name + "'");
        index_[rel].emplace(t, rows_[rel].size());
        rows_[rel].push_back(std::move(t));
        return rows_[rel].size() - 1;
    }

    std::size_t add_row(const std::string& rel, Tuple t) { return add_row(schema_.index(rel), std::move(t)); }

    const std::vector<Tuple>& rows(std::size_t rel) const { return rows_.at(rel); }

    std::optional<std::size_t> find_row(std::size_t rel, const Tuple& t) const {
        auto it = index_.at(rel).find(t);
        if (it == index_[rel].end()) return std::nullopt;
        return it->second;
    }

    /// Number of endogenous tuples, i.e. lineage variables.
    std::size_t var_count() const {
        std::size_t n = 0;
        for (std::size_t r = 0; r < schema_.size(); ++r)
            if (schema_.endogenous(r)) n += rows_[r].size();
        return n;
    }

    std::optional<VarId> var_of(std::size_t rel, std::size_t row) const {
        if (!schema_.endogenous(rel)) return std::nullopt;
        VarId base = 0;
        for (std::size_t r = 0; r < rel; ++r)
            if (schema_.endogenous(r)) base += rows_[r].size();
        return base + row;
    }

    /// Variable id -> tuple.
    std::vector<TupleRef> tuple_map() const {
        std::vector<TupleRef> out;
        for (std::size_t r = 0; r < schema_.size(); ++r)
            if (schema_.endogenous(r))
                for (std::size_t i = 0; i < rows_[r].size(); ++i) out.push_back({r, i});
        return out;
    }

    std::set<std::string> active_domain() const {
        std::set<std::string> out;
        for (const auto& rel : rows_)
            for (const auto& t : rel) out.insert(t.begin(), t.end());
        return out;
    }

private:
    Schema schema_;
    std::vector<std::vector<Tuple>> rows_;
    std::vector<std::map<Tuple, std::size_t>> index_;
};

// Queries.

struct Term {
    bool is_variable = true;
    std::string text; // variable name or constant value

    static Term var(std::string name) { return {true, std::move(name)}; }
    static Term value(std::string v) { return {false, std::move(v)}; }
    bool operator==(const Term&) const = default;
};

struct Atom {
    std::string relation;
    std::vector<Term> args;
    bool operator==(const Atom&) const = default;

    bool mentions(const std::string& v) const {
        return std::any_of(args.begin(), args.end(), [&](const Term& t) { return t.is_variable && t.text == v; });
    }
};

/// Boolean conjunctive query; all variables are existentially quantified.
struct Query {
    std::string head = "Q";
    std::vector<Atom> atoms;

    /// Variables in order of first appearance.
    std::vector<std::string> variables() const {
        std::vector<std::string> out;
        for (const auto& a : atoms)
            for (const auto& t : a.args)
                if (t.is_variable && std::find(out.begin(), out.end(), t.text) == out.end()) out.push_back(t.text);
        return out;
    }

    /// at(x): indices of the atoms mentioning x.
    std::set<std::size_t> atoms_of(const std::string& v) const {
        std::set<std::size_t> out;
        for (std::size_t i = 0; i < atoms.size(); ++i)
            if (atoms[i].mentions(v)) out.insert(i);
        return out;
    }

    std::size_t size() const { return atoms.size(); }
};

/// Relation names exist and arities match.
inline void check_query(const Query& q, const Schema& s) {
    if (q.atoms.empty()) throw InputError("query without atoms");
    for (const auto& a : q.atoms) {
        const auto r = s.find(a.relation);
        if (!r) throw InputError("query mentions unknown relation '" + a.relation + "'");
        if (s.at(*r).arity != a.args.size())
            throw InputError("atom " + a.relation + " has " + std::to_string(a.args.size()) + " arguments, schema arity is " +
                             std::to_string(s.at(*r).arity));
    }
}

inline bool is_self_join_free(const Query& q) {
    std::set<std::string> seen;
    for (const auto& a : q.atoms)
        if (!seen.insert(a.relation).second) return false;
    return true;
}

struct HierarchyResult {
    bool hierarchical = true;
    std::optional<std::pair<std::string, std::string>> witness; // x, y with overlapping, non-nested at-sets
};

/// For every pair of variables, at(x) and at(y) are disjoint or nested.
inline HierarchyResult is_hierarchical(const Query& q) {
    const auto vars = q.variables();
    std::vector<std::set<std::size_t>> at;
    for (const auto& v : vars) at.push_back(q.atoms_of(v));
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j) {
            const auto& a = at[i];
            const auto& b = at[j];
            const bool a_in_b = std::includes(b.begin(), b.end(), a.begin(), a.end());
            const bool b_in_a = std::includes(a.begin(), a.end(), b.begin(), b.end());
            bool meet = false;
            for (auto x : a) meet = meet || b.count(x);
            if (meet && !a_in_b && !b_in_a) return {false, std::make_pair(vars[i], vars[j])};
        }
    return {};
}

// Lineage.

struct Lineage {
    BoolFunc func;
    ClauseSet clauses;               // canonical: sorted, deduplicated; {{}} is true, {} is false
    std::vector<TupleRef> tuple_map; // variable id -> tuple
};

namespace detail {

// Backtracking join over the atoms; calls emit(clause) for every
// homomorphism, where clause lists the endogenous tuple variables used.
class HomomorphismSearch {
public:
    HomomorphismSearch(const Query& q, const Database& d) : q_(q), d_(d) {
        const auto vars = q.variables();
        for (std::size_t i = 0; i < vars.size(); ++i) var_index_.emplace(vars[i], i);
        binding_.assign(vars.size(), nullptr);
        for (const auto& a : q.atoms) rel_.push_back(d.schema().index(a.relation));
        done_.assign(q.atoms.size(), false);
    }

    template <class Emit>
    void run(Emit&& emit) {
        Clause clause;
        step(0, clause, emit);
    }

private:
    // Next atom: the one with most bound variables, earliest on ties.
    std::size_t choose() const {
        std::size_t best = q_.atoms.size();
        long best_score = -1;
        for (std::size_t i = 0; i < q_.atoms.size(); ++i) {
            if (done_[i]) continue;
            long score = 0;
            for (const auto& t : q_.atoms[i].args)
                if (!t.is_variable || binding_[var_index_.at(t.text)]) ++score;
            if (score > best_score) {
                best_score = score;
                best = i;
            }
        }
        return best;
    }

    template <class Emit>
    void step(std::size_t depth, Clause& clause, Emit& emit) {
        if (depth == q_.atoms.size()) {
            emit(clause);
            return;
        }
        const std::size_t ai = choose();
        const Atom& atom = q_.atoms[ai];
        const std::size_t rel = rel_[ai];
        done_[ai] = true;
        const auto& rows = d_.rows(rel);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const Tuple& t = rows[r];
            std::vector<std::size_t> newly;
            bool ok = true;
            for (std::size_t p = 0; p < atom.args.size() && ok; ++p) {
                const Term& term = atom.args[p];
                if (!term.is_variable) {
                    ok = term.text == t[p];
                    continue;
                }
                const std::size_t v = var_index_.at(term.text);
                if (binding_[v]) {
                    ok = *binding_[v] == t[p];
                } else {
                    binding_[v] = &t[p];
                    newly.push_back(v);
                }
            }
            if (ok) {
                const auto var = d_.var_of(rel, r);
                if (var) clause.push_back(*var);
                step(depth + 1, clause, emit);
                if (var) clause.pop_back();
            }
            for (auto v : newly) binding_[v] = nullptr;
        }
        done_[ai] = false;
    }

    const Query& q_;
    const Database& d_;
    std::map<std::string, std::size_t> var_index_;
    std::vector<const std::string*> binding_;
    std::vector<std::size_t> rel_;
    std::vector<bool> done_;
};

} // namespace detail

/// F_{Q,D} as a positive DNF, one clause per homomorphism of Q into D.
inline Lineage build_lineage(const Query& q, const Database& d) {
    check_query(q, d.schema());
    Lineage out;
    bool always = false;
    detail::HomomorphismSearch(q, d).run([&](const Clause& c) {
        if (always) return;
        Clause sorted = c;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        if (sorted.empty()) always = true;
        out.clauses.insert(std::move(sorted));
    });
    if (always) out.clauses = {Clause{}};
    out.func = from_clause_set(out.clauses, d.var_count());
    out.tuple_map = d.tuple_map();
    return out;
}

/// Literal recursive definition: exists x ranges over the whole active
/// domain, conjunction multiplies, ground atoms look up their tuple.
/// Exponential in the number of variables; a test oracle.
inline BoolFunc recursive_lineage(const Query& q, const Database& d) {
    check_query(q, d.schema());
    const auto vars = q.variables();
    const auto adom = d.active_domain();
    std::map<std::string, std::string> binding;
    auto ground = [&](const Atom& a) -> NodePtr {
        Tuple t;
        for (const auto& term : a.args) t.push_back(term.is_variable ? binding.at(term.text) : term.text);
        const std::size_t rel = d.schema().index(a.relation);
        const auto row = d.find_row(rel, t);
        if (!row) return constant(false);
        if (auto v = d.var_of(rel, *row)) return variable(*v);
        return constant(true);
    };
    auto rec = [&](auto&& self, std::size_t k) -> NodePtr {
        if (k == vars.size()) {
            std::vector<NodePtr> conj;
            for (const auto& a : q.atoms) conj.push_back(ground(a));
            return conjunction(std::move(conj));
        }
        std::vector<NodePtr> disj;
        for (const auto& a : adom) {
            binding[vars[k]] = a;
            disj.push_back(self(self, k + 1));
        }
        binding.erase(vars[k]);
        return disjunction(std::move(disj));
    };
    return BoolFunc(rec(rec, 0), d.var_count());
}

// Stretching.

inline Schema stretch_schema(const Schema& s) {
    Schema out;
    for (auto r : s.relations()) {
        if (r.kind == RelationKind::Endogenous) ++r.arity;
        out.add(std::move(r));
    }
    return out;
}

/// Every endogenous atom R(a) becomes R(z_j, a) with a fresh variable z_j.
inline Query stretch_query(const Query& q, const Schema& s) {
    check_query(q, s);
    const auto vars = q.variables();
    const std::set<std::string> taken(vars.begin(), vars.end());
    Query out{q.head, {}};
    std::size_t j = 0;
    for (const auto& a : q.atoms) {
        Atom b = a;
        if (s.endogenous(s.index(a.relation))) {
            std::string z = "z" + std::to_string(++j);
            while (taken.count(z)) z += "_";
            b.args.insert(b.args.begin(), Term::var(z));
        }
        out.atoms.push_back(std::move(b));
    }
    return out;
}

struct StretchedDatabase {
    Database database;
    std::vector<VarId> source;            // stretched variable -> original variable
    std::vector<VarId> block_start;       // original variable -> first stretched variable
    std::vector<std::string> fresh_value; // stretched variable -> value of the added attribute
};

namespace detail {
inline std::string unused_constant(std::string base, const std::set<std::string>& adom) {
    while (adom.count(base)) base += "'";
    return base;
}

inline StretchedDatabase stretch_rows(const Database& d, std::span<const std::size_t> arities, bool dummy) {
    if (arities.size() != d.var_count())
        throw InputError("expected " + std::to_string(d.var_count()) + " arities, got " + std::to_string(arities.size()));
    const auto adom = d.active_domain();
    const std::string dummy_value = unused_constant("z!d", adom);
    StretchedDatabase out{Database(stretch_schema(d.schema())), {}, {}, {}};
    VarId old_var = 0;
    for (std::size_t r = 0; r < d.schema().size(); ++r) {
        const auto& name = d.schema().at(r).name;
        if (!d.schema().endogenous(r)) {
            for (const auto& t : d.rows(r)) out.database.add_row(r, t);
            continue;
        }
        std::size_t counter = 0;
        for (const auto& t : d.rows(r)) {
            out.block_start.push_back(out.source.size());
            for (std::size_t j = 0; j < arities[old_var]; ++j) {
                const std::string value =
                    dummy ? dummy_value : unused_constant("z!" + name + "!" + std::to_string(++counter), adom);
                Tuple wide{value};
                wide.insert(wide.end(), t.begin(), t.end());
                out.database.add_row(r, std::move(wide));
                out.source.push_back(old_var);
                out.fresh_value.push_back(value);
            }
            ++old_var;
        }
    }
    return out;
}
} // namespace detail

/// Each endogenous tuple t becomes (d, t) for one shared fresh constant d.
inline StretchedDatabase stretch_database_dummy(const Database& d) {
    const std::vector<std::size_t> ones(d.var_count(), 1);
    return detail::stretch_rows(d, ones, true);
}

/// Each endogenous tuple t with arity l becomes l tuples (c_1, t) .. (c_l, t)
/// with fresh constants; l = 0 deletes t. New variables follow the block
/// layout of or_substitute, so the stretched lineage lines up with
/// F_{Q,D}[X_i := Z_i^1 v ... v Z_i^{l_i}] variable for variable.
inline StretchedDatabase stretch_database_expand(const Database& d, std::span<const std::size_t> arities) {
    return detail::stretch_rows(d, arities, false);
}

// Hierarchical compilation.

namespace detail {

class HierarchicalCompiler {
public:
    HierarchicalCompiler(const Query& q, const Database& d) : q_(q), d_(d), b_(d.var_count()) {}

    Circuit compile() {
        std::vector<std::size_t> all(q_.atoms.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        const auto [pos, neg] = conjunction_of(components(all, {}), {});
        (void)neg;
        return b_.finish(pos);
    }

private:
    using Binding = std::map<std::string, std::string>;
    using Gates = std::pair<std::size_t, std::size_t>; // positive, negated

    bool bound_or_const(const Term& t, const Binding& s) const { return !t.is_variable || s.count(t.text); }

    std::vector<std::string> free_vars(std::size_t atom, const Binding& s) const {
        std::vector<std::string> out;
        for (const auto& t : q_.atoms[atom].args)
            if (!bound_or_const(t, s) && std::find(out.begin(), out.end(), t.text) == out.end()) out.push_back(t.text);
        return out;
    }

    // Atoms grouped into connected components through shared free variables.
    std::vector<std::vector<std::size_t>> components(const std::vector<std::size_t>& atoms, const Binding& s) const {
        std::vector<std::vector<std::size_t>> out;
        std::vector<bool> used(atoms.size(), false);
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (used[i]) continue;
            std::vector<std::size_t> comp{atoms[i]};
            used[i] = true;
            for (std::size_t k = 0; k < comp.size(); ++k) {
                const auto vars = free_vars(comp[k], s);
                for (std::size_t j = 0; j < atoms.size(); ++j) {
                    if (used[j]) continue;
                    const auto other = free_vars(atoms[j], s);
                    bool share = false;
                    for (const auto& v : vars) share = share || std::find(other.begin(), other.end(), v) != other.end();
                    if (share) {
                        used[j] = true;
                        comp.push_back(atoms[j]);
                    }
                }
            }
            std::sort(comp.begin(), comp.end());
            out.push_back(std::move(comp));
        }
        return out;
    }

    Gates constant_pair(bool v) { return {b_.constant(v), b_.constant(!v)}; }

    Gates ground_atom(std::size_t ai, const Binding& s) {
        const Atom& a = q_.atoms[ai];
        Tuple t;
        for (const auto& term : a.args) t.push_back(term.is_variable ? s.at(term.text) : term.text);
        const std::size_t rel = d_.schema().index(a.relation);
        const auto row = d_.find_row(rel, t);
        if (!row) return constant_pair(false);
        const auto v = d_.var_of(rel, *row);
        if (!v) return constant_pair(true);
        const std::size_t g = b_.var(*v);
        return {g, b_.negate(g)};
    }

    // pos: a1 ^ a2 ^ ..., neg: ~a1 v (a1 ^ ~(a2 ^ ...)), deterministic chain.
    Gates conjunction_of(const std::vector<std::vector<std::size_t>>& comps, const Binding& s) {
        std::vector<Gates> parts;
        for (const auto& c : comps) parts.push_back(component(c, s));
        std::vector<std::size_t> pos;
        for (const auto& p : parts) pos.push_back(p.first);
        std::size_t neg = parts.empty() ? b_.constant(false) : parts.back().second;
        for (std::size_t i = parts.size(); i-- > 1;) {
            const auto& p = parts[i - 1];
            neg = b_.disj({p.second, b_.conj({p.first, neg})});
        }
        return {b_.conj(std::move(pos)), neg};
    }

    // pos: b1 v (~b1 ^ (b2 v (~b2 ^ ...))), neg: ~b1 ^ ~b2 ^ ..., as in the
    // OR-substitution chain.
    Gates disjunction_of(const std::vector<Gates>& branches) {
        if (branches.empty()) return constant_pair(false);
        std::size_t pos = branches.back().first;
        for (std::size_t i = branches.size() - 1; i-- > 0;)
            pos = b_.disj({branches[i].first, b_.conj({branches[i].second, pos})});
        std::vector<std::size_t> neg;
        for (const auto& br : branches) neg.push_back(br.second);
        return {pos, b_.conj(std::move(neg))};
    }

    Gates component(const std::vector<std::size_t>& atoms, const Binding& s) {
        std::vector<std::string> vars;
        for (auto a : atoms)
            for (const auto& v : free_vars(a, s))
                if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
        if (vars.empty()) {
            // single ground atom (components of ground atoms are singletons)
            return ground_atom(atoms.front(), s);
        }
        std::optional<std::string> root;
        for (const auto& v : vars)
            if (std::all_of(atoms.begin(), atoms.end(), [&](std::size_t a) { return q_.atoms[a].mentions(v); })) {
                root = v;
                break;
            }
        if (!root) throw InconsistencyError("no root variable in a connected component of a hierarchical query");

        // candidate values: present at root positions in every atom
        std::optional<std::set<std::string>> values;
        for (auto ai : atoms) {
            const Atom& a = q_.atoms[ai];
            std::set<std::string> here;
            for (const auto& t : d_.rows(d_.schema().index(a.relation)))
                for (std::size_t p = 0; p < a.args.size(); ++p)
                    if (a.args[p].is_variable && a.args[p].text == *root) here.insert(t[p]);
            if (!values) {
                values = std::move(here);
            } else {
                std::set<std::string> keep;
                std::set_intersection(values->begin(), values->end(), here.begin(), here.end(),
                                      std::inserter(keep, keep.begin()));
                values = std::move(keep);
            }
        }
        std::vector<Gates> branches;
        for (const auto& val : *values) {
            Binding inner = s;
            inner[*root] = val;
            const Gates g = conjunction_of(components(atoms, inner), inner);
            if (g.first == b_.constant(false)) continue;
            branches.push_back(g);
        }
        return disjunction_of(branches);
    }

    const Query& q_;
    const Database& d_;
    CircuitBuilder b_;
};

} // namespace detail

/// Deterministic, decomposable, leaf-NNF circuit for F_{Q,D} of a
/// hierarchical self-join-free query, over the database's tuple variables.
inline Circuit compile_hierarchical_lineage(const Query& q, const Database& d) {
    check_query(q, d.schema());
    if (!is_self_join_free(q))
        throw RefusalError("query has a self-join; hierarchical compilation needs a self-join-free query, use brute force");
    const auto h = is_hierarchical(q);
    if (!h.hierarchical)
        throw RefusalError("query is not hierarchical (variables " + h.witness->first + ", " + h.witness->second +
                           "); use brute force");
    return detail::HierarchicalCompiler(q, d).compile();
}

struct TupleShapley {
    ShapleyVector values;            // one per endogenous tuple, in variable order
    std::vector<TupleRef> tuple_map; // variable id -> tuple
    bool hierarchical = true;
    std::vector<std::string> warnings;
};

/// Shapley values of all endogenous tuples. Hierarchical queries go through
/// the circuit pipeline; the others through enumeration of the lineage,
/// refused above the enumeration bound.
inline TupleShapley shapley_tuples(const Query& q, const Database& d, const EnumerationLimits& limits = {}) {
    check_query(q, d.schema());
    if (!is_self_join_free(q)) throw InputError("Shapley dichotomy needs a self-join-free query");
    TupleShapley out;
    out.tuple_map = d.tuple_map();
    const auto h = is_hierarchical(q);
    out.hierarchical = h.hierarchical;
    if (h.hierarchical) {
        out.values = shapley_circuit(compile_hierarchical_lineage(q, d));
        return out;
    }
    const std::string why = "query is not hierarchical (variables " + h.witness->first + ", " + h.witness->second +
                            "): the hard side of the Shapley dichotomy";
    if (d.var_count() > limits.count_vars)
        throw RefusalError(why + "; " + std::to_string(d.var_count()) + " tuples exceed the enumeration bound of " +
                           std::to_string(limits.count_vars));
    out.warnings.push_back(why + ", computed by enumeration over " + std::to_string(d.var_count()) + " tuples");
    out.values = brute_shapley_subsets(build_lineage(q, d).func, limits);
    return out;
}

// Hardness constructions.

struct Instance {
    Schema schema;
    Database database;
    Query query;
};

inline Query rst_query() {
    return Query{"Q",
                 {Atom{"R", {Term::var("x")}}, Atom{"S", {Term::var("x"), Term::var("y")}}, Atom{"T", {Term::var("y")}}}};
}

inline Schema rst_schema() {
    return Schema{{"R", 1, RelationKind::Endogenous}, {"S", 2, RelationKind::Exogenous}, {"T", 1, RelationKind::Endogenous}};
}

/// RST instance whose lineage is the bipartite DNF over the edges E:
/// R holds the distinct left indices (variables X), T the distinct right
/// indices (variables Y), S the edges.
inline Instance pp2dnf_instance(const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    if (edges.empty()) throw InputError("edge set is empty");
    std::set<std::size_t> left, right;
    for (const auto& [i, j] : edges) {
        left.insert(i);
        right.insert(j);
    }
    const std::set<std::pair<std::size_t, std::size_t>> sorted(edges.begin(), edges.end());
    Instance inst{rst_schema(), Database(rst_schema()), rst_query()};
    for (auto i : left) inst.database.add_row("R", {std::to_string(i)});
    for (const auto& [i, j] : sorted) inst.database.add_row("S", {std::to_string(i), std::to_string(j)});
    for (auto j : right) inst.database.add_row("T", {std::to_string(j)});
    return inst;
}

inline void require_rst(const Database& d) {
    const Schema& s = d.schema();
    auto has = [&](const char* name, std::size_t arity, RelationKind kind) {
        const auto i = s.find(name);
        return i && s.at(*i).arity == arity && s.at(*i).kind == kind;
    };
    if (!has("R", 1, RelationKind::Endogenous) || !has("S", 2, RelationKind::Exogenous) ||
        !has("T", 1, RelationKind::Endogenous))
        throw InputError("expected an RST database: R(1) endogenous, S(2) exogenous, T(1) endogenous");
}

struct Embedding {
    Database database;
    std::string x, y;           // witness variables
    std::size_t x_atom, y_atom; // endogenous atoms carrying R and T
    std::vector<VarId> var_map; // variable of the new database -> variable of the RST database
};

/// Database D' over the relations of a non-hierarchical self-join-free Q'
/// such that F_{Q',D'} = F_{RST,D}. With witnesses x, y, an atom with x but
/// not y takes R's values, one with y but not x takes T's, atoms with both
/// copy S, the rest copy R or T on their x or y column; every other variable
/// position holds the constant 1.
inline Embedding embed_nonhierarchical(const Query& qp, const Database& d) {
    require_rst(d);
    if (!is_self_join_free(qp)) throw InputError("embedding needs a self-join-free query");
    const auto h = is_hierarchical(qp);
    if (h.hierarchical) throw RefusalError("query is hierarchical; nothing to embed");
    Embedding out;
    out.x = h.witness->first;
    out.y = h.witness->second;
    const auto& atoms = qp.atoms;
    std::optional<std::size_t> ax, ay;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const bool hx = atoms[i].mentions(out.x), hy = atoms[i].mentions(out.y);
        if (hx && !hy && !ax) ax = i;
        if (hy && !hx && !ay) ay = i;
    }
    if (!ax || !ay) throw InconsistencyError("witness pair without separating atoms");
    out.x_atom = *ax;
    out.y_atom = *ay;

    Schema schema;
    for (std::size_t i = 0; i < atoms.size(); ++i)
        schema.add({atoms[i].relation, atoms[i].args.size(),
                    i == *ax || i == *ay ? RelationKind::Endogenous : RelationKind::Exogenous});
    out.database = Database(schema);

    const auto& rs = d.rows(d.schema().index("R"));
    const auto& ss = d.rows(d.schema().index("S"));
    const auto& ts = d.rows(d.schema().index("T"));
    auto instantiate = [&](const Atom& a, const std::string* xv, const std::string* yv) {
        Tuple t;
        for (const auto& term : a.args) {
            if (!term.is_variable)
                t.push_back(term.text);
            else if (term.text == out.x)
                t.push_back(*xv);
            else if (term.text == out.y)
                t.push_back(*yv);
            else
                t.push_back("1");
        }
        return t;
    };
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const Atom& a = atoms[i];
        const bool hx = a.mentions(out.x), hy = a.mentions(out.y);
        std::set<Tuple> emitted;
        auto add = [&](Tuple t) {
            if (emitted.insert(t).second) out.database.add_row(i, std::move(t));
        };
        if (hx && hy) {
            for (const auto& e : ss) add(instantiate(a, &e[0], &e[1]));
        } else if (hx) {
            for (const auto& r : rs) add(instantiate(a, &r[0], nullptr));
        } else if (hy) {
            for (const auto& t : ts) add(instantiate(a, nullptr, &t[0]));
        } else {
            add(instantiate(a, nullptr, nullptr));
        }
    }
    // R rows sit in the x atom's relation, T rows in the y atom's, in order
    const VarId r_base = *d.var_of(d.schema().index("R"), 0);
    const VarId t_base = *d.var_of(d.schema().index("T"), 0);
    out.var_map.assign(out.database.var_count(), 0);
    for (std::size_t row = 0; row < rs.size(); ++row) out.var_map[*out.database.var_of(*ax, row)] = r_base + row;
    for (std::size_t row = 0; row < ts.size(); ++row) out.var_map[*out.database.var_of(*ay, row)] = t_base + row;
    return out;
}

/// Composite-value collapse of a stretched RST database (R(z,x), S(x,y),
/// T(z,y)) into an RST database: each stretched R or T tuple becomes the
/// single value "(z,x)", and S relates two composites whenever the
/// underlying values are related. Lineage and variable order are kept.
inline Database collapse_stretched_rst(const Database& stretched) {
    const Schema& s = stretched.schema();
    const auto r = s.find("R"), sr = s.find("S"), t = s.find("T");
    if (!r || !sr || !t || s.at(*r).arity != 2 || s.at(*t).arity != 2 || s.at(*sr).arity != 2 || !s.endogenous(*r) ||
        !s.endogenous(*t) || s.endogenous(*sr))
        throw InputError("expected a stretched RST database: R(2), T(2) endogenous, S(2) exogenous");
    auto composite = [](const Tuple& tp) { return "(" + tp[0] + "," + tp[1] + ")"; };
    Database out(rst_schema());
    for (const auto& row : stretched.rows(*r)) out.add_row("R", {composite(row)});
    for (const auto& row : stretched.rows(*t)) out.add_row("T", {composite(row)});
    const std::set<Tuple> edges(stretched.rows(*sr).begin(), stretched.rows(*sr).end());
    for (const auto& a : stretched.rows(*r))
        for (const auto& b : stretched.rows(*t))
            if (edges.count({a[1], b[1]})) out.add_row("S", {composite(a), composite(b)});
    return out;
}

} // namespace shapcount

#endif // SHAPCOUNT_LINEAGE_HPP
