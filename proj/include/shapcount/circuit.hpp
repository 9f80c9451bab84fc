#ifndef SHAPCOUNT_CIRCUIT_HPP
#define SHAPCOUNT_CIRCUIT_HPP

// Deterministic and decomposable Boolean circuits: validation, counting with
// implicit smoothing, OR-substitution by deterministic chains, and the
// Shapley pipeline on top of the generic reductions.

#include "shapcount/boolfunc.hpp"
#include "shapcount/enumerate.hpp"
#include "shapcount/reductions.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace shapcount {

enum class GateKind { Const0, Const1, Var, Not, And, Or };

struct Gate {
    GateKind kind = GateKind::Const0;
    VarId var = 0;                   // Var only
    std::vector<std::size_t> inputs; // Not: one, And/Or: two or more
    std::size_t decision = 0;        // Or only: decision-variable hint from the file, 0 if none
};

/// Gates are stored in topological order: every input index is smaller than
/// the gate's own index. The output gate is the only gate nothing reads.
class Circuit {
public:
    Circuit() : Circuit({Gate{GateKind::Const0, 0, {}, 0}}, 0, 0) {}

    Circuit(std::vector<Gate> gates, std::size_t output, std::size_t var_count)
        : gates_(std::move(gates)), output_(output), n_(var_count) {
        if (gates_.empty()) throw InputError("circuit without gates");
        if (output_ >= gates_.size()) throw InputError("output gate out of range");
        std::vector<bool> read(gates_.size(), false);
        scopes_.resize(gates_.size());
        for (std::size_t g = 0; g < gates_.size(); ++g) {
            const Gate& gate = gates_[g];
            switch (gate.kind) {
            case GateKind::Const0:
            case GateKind::Const1:
                if (!gate.inputs.empty()) throw InputError("constant gate " + std::to_string(g) + " has inputs");
                break;
            case GateKind::Var:
                if (!gate.inputs.empty()) throw InputError("variable gate " + std::to_string(g) + " has inputs");
                if (gate.var >= n_)
                    throw InputError("gate " + std::to_string(g) + ": variable " + std::to_string(gate.var + 1) +
                                     " out of range for " + std::to_string(n_) + " variables");
                scopes_[g] = {gate.var};
                break;
            case GateKind::Not:
                if (gate.inputs.size() != 1) throw InputError("not-gate " + std::to_string(g) + " needs one input");
                break;
            case GateKind::And:
            case GateKind::Or:
                if (gate.inputs.size() < 2)
                    throw InputError("and/or gate " + std::to_string(g) + " needs at least two inputs");
                break;
            }
            for (std::size_t in : gate.inputs) {
                if (in >= g) throw InputError("gate " + std::to_string(g) + " reads gate " + std::to_string(in) +
                                              " which is not below it (cyclic or forward reference)");
                read[in] = true;
                std::vector<VarId> merged;
                std::set_union(scopes_[g].begin(), scopes_[g].end(), scopes_[in].begin(), scopes_[in].end(),
                               std::back_inserter(merged));
                scopes_[g].swap(merged);
            }
        }
        for (std::size_t g = 0; g < gates_.size(); ++g)
            if (!read[g] && g != output_) throw InputError("gate " + std::to_string(g) + " is dangling (no consumer)");
        if (read[output_]) throw InputError("output gate " + std::to_string(output_) + " feeds another gate");
    }

    const std::vector<Gate>& gates() const { return gates_; }
    const Gate& gate(std::size_t g) const { return gates_.at(g); }
    std::size_t output() const { return output_; }
    std::size_t var_count() const { return n_; }
    std::size_t size() const { return gates_.size(); }

    /// Sorted variable ids below gate g.
    const std::vector<VarId>& scope(std::size_t g) const { return scopes_.at(g); }

    /// Negations only directly above variable gates.
    bool is_leaf_nnf() const {
        for (const Gate& g : gates_)
            if (g.kind == GateKind::Not && gates_[g.inputs.front()].kind != GateKind::Var) return false;
        return true;
    }

    /// Number of variable gates for variable v.
    std::size_t occurrences(VarId v) const {
        return static_cast<std::size_t>(std::count_if(
            gates_.begin(), gates_.end(), [v](const Gate& g) { return g.kind == GateKind::Var && g.var == v; }));
    }

private:
    std::vector<Gate> gates_;
    std::size_t output_;
    std::size_t n_;
    std::vector<std::vector<VarId>> scopes_;
};

/// Incremental construction. And/Or with fewer than two inputs collapse
/// (none: the neutral constant, one: that input); finish() keeps only the
/// gates reachable from the output, renumbered in topological order.
class CircuitBuilder {
public:
    explicit CircuitBuilder(std::size_t var_count) : n_(var_count) {}

    std::size_t constant(bool value) {
        auto& slot = value ? one_ : zero_;
        if (!slot) slot = push({value ? GateKind::Const1 : GateKind::Const0, 0, {}, 0});
        return *slot;
    }

    /// One gate per variable; repeated requests share it.
    std::size_t var(VarId v) {
        if (auto it = vars_.find(v); it != vars_.end()) return it->second;
        const std::size_t g = push({GateKind::Var, v, {}, 0});
        vars_.emplace(v, g);
        return g;
    }

    /// A new variable gate even if one exists already.
    std::size_t fresh_var(VarId v) { return push({GateKind::Var, v, {}, 0}); }

    std::size_t negate(std::size_t in) { return push({GateKind::Not, 0, {in}, 0}); }

    std::size_t conj(std::vector<std::size_t> in) { return nary(GateKind::And, std::move(in), 0); }

    std::size_t disj(std::vector<std::size_t> in, std::size_t decision = 0) {
        return nary(GateKind::Or, std::move(in), decision);
    }

    std::size_t gate_count() const { return gates_.size(); }

    Circuit finish(std::size_t output) const {
        std::vector<bool> live(gates_.size(), false);
        live.at(output) = true;
        for (std::size_t g = output + 1; g-- > 0;)
            if (live[g])
                for (std::size_t in : gates_[g].inputs) live[in] = true;
        std::vector<std::size_t> renum(gates_.size());
        std::vector<Gate> out;
        for (std::size_t g = 0; g <= output; ++g) {
            if (!live[g]) continue;
            Gate copy = gates_[g];
            for (auto& in : copy.inputs) in = renum[in];
            renum[g] = out.size();
            out.push_back(std::move(copy));
        }
        return Circuit(std::move(out), renum[output], n_);
    }

private:
    std::size_t push(Gate g) {
        gates_.push_back(std::move(g));
        return gates_.size() - 1;
    }

    std::size_t nary(GateKind kind, std::vector<std::size_t> in, std::size_t decision) {
        if (in.empty()) return constant(kind == GateKind::And);
        if (in.size() == 1) return in.front();
        return push({kind, 0, std::move(in), decision});
    }

    std::size_t n_;
    std::vector<Gate> gates_;
    std::optional<std::size_t> zero_, one_;
    std::map<VarId, std::size_t> vars_;
};

// Evaluation.

namespace detail {
/// Values of every gate on valuations 64*block .. 64*block+63.
inline void circuit_words(const Circuit& c, std::uint64_t block, std::vector<std::uint64_t>& val) {
    static constexpr std::uint64_t low_patterns[6] = {
        0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
        0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL};
    val.resize(c.size());
    for (std::size_t g = 0; g < c.size(); ++g) {
        const Gate& gate = c.gate(g);
        switch (gate.kind) {
        case GateKind::Const0: val[g] = 0; break;
        case GateKind::Const1: val[g] = ~0ULL; break;
        case GateKind::Var:
            val[g] = gate.var < 6 ? low_patterns[gate.var] : (((block >> (gate.var - 6)) & 1U) ? ~0ULL : 0ULL);
            break;
        case GateKind::Not: val[g] = ~val[gate.inputs.front()]; break;
        case GateKind::And:
            val[g] = ~0ULL;
            for (std::size_t in : gate.inputs) val[g] &= val[in];
            break;
        case GateKind::Or:
            val[g] = 0;
            for (std::size_t in : gate.inputs) val[g] |= val[in];
            break;
        }
    }
}
} // namespace detail

inline bool evaluate(const Circuit& c, const Valuation& theta) {
    if (theta.size() != c.var_count()) throw InputError("valuation arity does not match the circuit");
    std::vector<bool> val(c.size());
    for (std::size_t g = 0; g < c.size(); ++g) {
        const Gate& gate = c.gate(g);
        switch (gate.kind) {
        case GateKind::Const0: val[g] = false; break;
        case GateKind::Const1: val[g] = true; break;
        case GateKind::Var: val[g] = theta[gate.var]; break;
        case GateKind::Not: val[g] = !val[gate.inputs.front()]; break;
        case GateKind::And:
            val[g] = std::all_of(gate.inputs.begin(), gate.inputs.end(), [&](std::size_t i) { return val[i]; });
            break;
        case GateKind::Or:
            val[g] = std::any_of(gate.inputs.begin(), gate.inputs.end(), [&](std::size_t i) { return val[i]; });
            break;
        }
    }
    return val[c.output()];
}

/// Truth table words of the output in the layout of TruthTable::words().
inline std::vector<std::uint64_t> truth_words(const Circuit& c, const EnumerationLimits& limits = {}) {
    if (c.var_count() > limits.count_vars)
        throw RefusalError("exhaustive enumeration refused: " + std::to_string(c.var_count()) +
                           " variables exceed the bound of " + std::to_string(limits.count_vars));
    const std::uint64_t rows = std::uint64_t{1} << c.var_count();
    std::vector<std::uint64_t> words(static_cast<std::size_t>(std::max<std::uint64_t>(1, rows / 64)));
    std::vector<std::uint64_t> val;
    for (std::size_t b = 0; b < words.size(); ++b) {
        detail::circuit_words(c, b, val);
        words[b] = val[c.output()];
    }
    if (rows < 64) words[0] &= (std::uint64_t{1} << rows) - 1;
    return words;
}

/// The circuit as a formula. Shared gates become shared nodes, so the result
/// is a DAG; expanding it as a tree can be exponential.
inline BoolFunc unfold(const Circuit& c) {
    std::vector<NodePtr> node(c.size());
    for (std::size_t g = 0; g < c.size(); ++g) {
        const Gate& gate = c.gate(g);
        std::vector<NodePtr> kids;
        for (std::size_t in : gate.inputs) kids.push_back(node[in]);
        switch (gate.kind) {
        case GateKind::Const0: node[g] = constant(false); break;
        case GateKind::Const1: node[g] = constant(true); break;
        case GateKind::Var: node[g] = variable(gate.var); break;
        case GateKind::Not: node[g] = negation(kids.front()); break;
        case GateKind::And: node[g] = conjunction(std::move(kids)); break;
        case GateKind::Or: node[g] = disjunction(std::move(kids)); break;
        }
    }
    return BoolFunc(node[c.output()], c.var_count());
}

/// Builds a circuit mirroring a formula, one gate per node (shared nodes once).
inline Circuit circuit_from_formula(const BoolFunc& f) {
    CircuitBuilder b(f.var_count());
    std::map<const Node*, std::size_t> memo;
    auto build = [&](auto&& self, const Node& node) -> std::size_t {
        if (auto it = memo.find(&node); it != memo.end()) return it->second;
        std::size_t g = 0;
        switch (node.kind) {
        case NodeKind::Const: g = b.constant(node.value); break;
        case NodeKind::Var: g = b.fresh_var(node.var); break;
        case NodeKind::Not: g = b.negate(self(self, *node.children.front())); break;
        case NodeKind::And:
        case NodeKind::Or: {
            std::vector<std::size_t> in;
            for (const auto& ch : node.children) in.push_back(self(self, *ch));
            g = node.kind == NodeKind::And ? b.conj(std::move(in)) : b.disj(std::move(in));
            break;
        }
        }
        memo.emplace(&node, g);
        return g;
    };
    return b.finish(build(build, *f.root()));
}

// Validation.

struct DecomposabilityReport {
    bool decomposable = true;
    std::vector<std::size_t> violations; // and-gates whose inputs share a variable
};

inline DecomposabilityReport check_decomposable(const Circuit& c) {
    DecomposabilityReport r;
    for (std::size_t g = 0; g < c.size(); ++g) {
        const Gate& gate = c.gate(g);
        if (gate.kind != GateKind::And) continue;
        std::size_t total = 0;
        for (std::size_t in : gate.inputs) total += c.scope(in).size();
        if (total != c.scope(g).size()) r.violations.push_back(g);
    }
    r.decomposable = r.violations.empty();
    return r;
}

enum class DeterminismStatus { Verified, Assumed, Refuted };

inline std::string to_string(DeterminismStatus s) {
    switch (s) {
    case DeterminismStatus::Verified: return "verified";
    case DeterminismStatus::Assumed: return "assumed";
    case DeterminismStatus::Refuted: return "refuted";
    }
    return "?";
}

struct DeterminismReport {
    DeterminismStatus status = DeterminismStatus::Assumed;
    std::optional<std::size_t> gate;      // refuted or-gate
    std::vector<VarId> witness;           // variables set to 1 in the refuting valuation
    std::string note;
};

/// Checks every or-gate on all 2^n valuations; above the bound the circuit
/// is reported as Assumed.
inline DeterminismReport check_deterministic_exhaustive(const Circuit& c, std::size_t bound = 20) {
    DeterminismReport r;
    if (c.var_count() > bound || c.var_count() > 63) {
        r.status = DeterminismStatus::Assumed;
        r.note = "determinism assumed: " + std::to_string(c.var_count()) + " variables exceed the exhaustive bound of " +
                 std::to_string(bound);
        return r;
    }
    const std::uint64_t rows = std::uint64_t{1} << c.var_count();
    const std::uint64_t valid = rows < 64 ? (std::uint64_t{1} << rows) - 1 : ~0ULL;
    const std::uint64_t blocks = std::max<std::uint64_t>(1, rows / 64);
    std::vector<std::uint64_t> val;
    for (std::uint64_t b = 0; b < blocks; ++b) {
        detail::circuit_words(c, b, val);
        for (std::size_t g = 0; g < c.size(); ++g) {
            const Gate& gate = c.gate(g);
            if (gate.kind != GateKind::Or) continue;
            std::uint64_t seen = 0;
            for (std::size_t in : gate.inputs) {
                const std::uint64_t clash = seen & val[in] & valid;
                if (clash) {
                    const std::uint64_t mask = 64 * b + static_cast<std::uint64_t>(std::countr_zero(clash));
                    r.status = DeterminismStatus::Refuted;
                    r.gate = g;
                    for (VarId v = 0; v < c.var_count(); ++v)
                        if ((mask >> v) & 1U) r.witness.push_back(v);
                    r.note = "or-gate " + std::to_string(g) + " has two true inputs";
                    return r;
                }
                seen |= val[in];
            }
        }
    }
    r.status = DeterminismStatus::Verified;
    return r;
}

struct ValidationReport {
    DecomposabilityReport decomposability;
    DeterminismReport determinism;
    bool leaf_nnf = true;
    std::vector<std::string> notes;

    bool usable() const {
        return decomposability.decomposable && determinism.status != DeterminismStatus::Refuted;
    }
};

inline ValidationReport validate(const Circuit& c, std::size_t determinism_bound = 20) {
    ValidationReport r{check_decomposable(c), check_deterministic_exhaustive(c, determinism_bound), c.is_leaf_nnf(), {}};
    if (!r.decomposability.decomposable)
        r.notes.push_back(std::to_string(r.decomposability.violations.size()) + " and-gate(s) are not decomposable");
    if (!r.determinism.note.empty()) r.notes.push_back(r.determinism.note);
    if (!r.leaf_nnf) r.notes.push_back("negation above a non-variable gate; OR-substitution is not available");
    return r;
}

// Counting.

struct DdOptions {
    // Run the exhaustive determinism check first and refuse on a refutation.
    bool check_determinism = false;
    std::size_t determinism_bound = 20;
};

namespace detail {
inline void require_dd(const Circuit& c, const DdOptions& opts) {
    const auto dec = check_decomposable(c);
    if (!dec.decomposable)
        throw RefusalError("circuit is not decomposable at and-gate " + std::to_string(dec.violations.front()));
    if (opts.check_determinism) {
        const auto det = check_deterministic_exhaustive(c, opts.determinism_bound);
        if (det.status == DeterminismStatus::Refuted)
            throw RefusalError("circuit is not deterministic at or-gate " + std::to_string(*det.gate));
    }
}

inline KCountVector poly_times(const KCountVector& a, const KCountVector& b) {
    KCountVector out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

/// p * (1+t)^gap
inline KCountVector poly_smooth(const KCountVector& p, std::size_t gap) {
    if (gap == 0) return p;
    KCountVector out(p.size() + gap, 0);
    for (std::size_t j = 0; j <= gap; ++j) {
        const BigInt b = binomial(gap, j);
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] != 0) out[i + j] += p[i] * b;
    }
    return out;
}
} // namespace detail

/// #G bottom-up; each gate is counted over its own scope and the 2^gap
/// factors account for variables missing from an input.
inline BigInt model_count_dd(const Circuit& c, const DdOptions& opts = {}) {
    detail::require_dd(c, opts);
    std::vector<BigInt> cnt(c.size());
    for (std::size_t g = 0; g < c.size(); ++g) {
        const Gate& gate = c.gate(g);
        const std::size_t width = c.scope(g).size();
        switch (gate.kind) {
        case GateKind::Const0: cnt[g] = 0; break;
        case GateKind::Const1: cnt[g] = 1; break;
        case GateKind::Var: cnt[g] = 1; break;
        case GateKind::Not: cnt[g] = (BigInt(1) << width) - cnt[gate.inputs.front()]; break;
        case GateKind::And:
            cnt[g] = 1;
            for (std::size_t in : gate.inputs) cnt[g] *= cnt[in];
            break;
        case GateKind::Or:
            cnt[g] = 0;
            for (std::size_t in : gate.inputs) cnt[g] += cnt[in] << (width - c.scope(in).size());
            break;
        }
    }
    return cnt[c.output()] << (c.var_count() - c.scope(c.output()).size());
}

/// k-counts by propagating the generating polynomial sum_k #_k t^k per gate.
inline KCountVector size_polynomial_count(const Circuit& c, const DdOptions& opts = {}) {
    detail::require_dd(c, opts);
    std::vector<KCountVector> poly(c.size());
    for (std::size_t g = 0; g < c.size(); ++g) {
        const Gate& gate = c.gate(g);
        const std::size_t width = c.scope(g).size();
        switch (gate.kind) {
        case GateKind::Const0: poly[g] = {0}; break;
        case GateKind::Const1: poly[g] = {1}; break;
        case GateKind::Var: poly[g] = {0, 1}; break;
        case GateKind::Not: {
            KCountVector p = detail::poly_smooth({1}, width);
            const KCountVector& q = poly[gate.inputs.front()];
            for (std::size_t i = 0; i < q.size(); ++i) p[i] -= q[i];
            poly[g] = std::move(p);
            break;
        }
        case GateKind::And: {
            KCountVector p{1};
            for (std::size_t in : gate.inputs) p = detail::poly_times(p, poly[in]);
            poly[g] = std::move(p);
            break;
        }
        case GateKind::Or: {
            KCountVector p(width + 1, 0);
            for (std::size_t in : gate.inputs) {
                const KCountVector q = detail::poly_smooth(poly[in], width - c.scope(in).size());
                for (std::size_t i = 0; i < q.size(); ++i) p[i] += q[i];
            }
            poly[g] = std::move(p);
            break;
        }
        }
        poly[g].resize(width + 1, 0);
    }
    KCountVector out = detail::poly_smooth(poly[c.output()], c.var_count() - c.scope(c.output()).size());
    out.resize(c.var_count() + 1, 0);
    return out;
}

// OR-substitution.

/// Gate growth per substituted variable: l variable gates, l negations,
/// l-1 and-gates and l-1 or-gates for the positive chain, one and-gate for
/// the negative side. So |G'| <= |G| + kSubstitutionGrowth * k * l.
inline constexpr std::size_t kSubstitutionGrowth = 4;

struct CircuitSubstitution {
    Circuit circuit;
    std::vector<VarId> source;      // new variable -> old variable
    std::vector<VarId> block_start; // old variable -> first new variable
};

/// G[X_i := Z_i^1 v ... v Z_i^{m_i}]. Positive occurrences become the chain
/// Z_1 v (~Z_1 ^ (Z_2 v (~Z_2 ^ ...))), negative ones ~Z_1 ^ ... ^ ~Z_m, so
/// determinism and decomposability carry over. m_i = 0 gives constants.
/// Variables with m_i != 1 may only occur under negation as literals.
inline CircuitSubstitution or_substitute_circuit(const Circuit& c, std::span<const std::size_t> arities) {
    const std::size_t n = c.var_count();
    if (arities.size() != n)
        throw InputError("expected " + std::to_string(n) + " arities, got " + std::to_string(arities.size()));
    CircuitSubstitution res;
    res.block_start.resize(n);
    for (VarId i = 0; i < n; ++i) {
        res.block_start[i] = res.source.size();
        for (std::size_t j = 0; j < arities[i]; ++j) res.source.push_back(i);
    }
    auto substituted = [&](VarId v) { return arities[v] != 1; };

    CircuitBuilder b(res.source.size());
    std::map<VarId, std::size_t> pos_gadget, neg_gadget;
    auto positive = [&](VarId v) -> std::size_t {
        if (arities[v] == 0) return b.constant(false);
        if (arities[v] == 1) return b.var(res.block_start[v]);
        if (auto it = pos_gadget.find(v); it != pos_gadget.end()) return it->second;
        const std::size_t first = res.block_start[v];
        const std::size_t m = arities[v];
        std::size_t chain = b.var(first + m - 1);
        for (std::size_t j = m - 1; j-- > 0;) {
            const std::size_t z = b.var(first + j);
            chain = b.disj({z, b.conj({b.negate(z), chain})});
        }
        pos_gadget.emplace(v, chain);
        return chain;
    };
    auto negative = [&](VarId v) -> std::size_t {
        if (arities[v] == 0) return b.constant(true);
        if (arities[v] == 1) return b.negate(b.var(res.block_start[v]));
        if (auto it = neg_gadget.find(v); it != neg_gadget.end()) return it->second;
        std::vector<std::size_t> lits;
        for (std::size_t j = 0; j < arities[v]; ++j) lits.push_back(b.negate(b.var(res.block_start[v] + j)));
        const std::size_t g = b.conj(std::move(lits));
        neg_gadget.emplace(v, g);
        return g;
    };

    std::vector<std::size_t> map(c.size());
    for (std::size_t g = 0; g < c.size(); ++g) {
        const Gate& gate = c.gate(g);
        switch (gate.kind) {
        case GateKind::Const0: map[g] = b.constant(false); break;
        case GateKind::Const1: map[g] = b.constant(true); break;
        case GateKind::Var: map[g] = positive(gate.var); break;
        case GateKind::Not: {
            const Gate& in = c.gate(gate.inputs.front());
            if (in.kind == GateKind::Var) {
                map[g] = negative(in.var);
            } else {
                for (VarId v : c.scope(gate.inputs.front()))
                    if (substituted(v))
                        throw InputError("negation at gate " + std::to_string(g) +
                                         " is not directly above a variable; OR-substitution needs leaf negations");
                map[g] = b.negate(map[gate.inputs.front()]);
            }
            break;
        }
        case GateKind::And:
        case GateKind::Or: {
            std::vector<std::size_t> in;
            for (std::size_t i : gate.inputs) in.push_back(map[i]);
            map[g] = gate.kind == GateKind::And ? b.conj(std::move(in)) : b.disj(std::move(in), gate.decision);
            break;
        }
        }
    }
    res.circuit = b.finish(map[c.output()]);
    return res;
}

/// Substitutes the single variable x by l fresh variables; every other
/// variable keeps one (renamed) copy.
inline CircuitSubstitution or_substitute_circuit(const Circuit& c, VarId x, std::size_t ell) {
    if (x >= c.var_count()) throw InputError("substituted variable out of range");
    std::vector<std::size_t> arities(c.var_count(), 1);
    arities[x] = ell;
    return or_substitute_circuit(c, arities);
}

// Hooks for the generic reductions.

inline std::size_t variable_count(const Circuit& c) { return c.var_count(); }

inline Circuit or_substituted(const Circuit& c, std::span<const std::size_t> arities) {
    return or_substitute_circuit(c, arities).circuit;
}

inline bool value_at_zero(const Circuit& c) { return evaluate(c, Valuation(c.var_count())); }

/// k-counts through the count-oracle reduction with model_count_dd as oracle.
inline KCountVector kcounts_circuit(const Circuit& c, const ReductionOptions& opts = {}) {
    detail::require_dd(c, {});
    return kcounts_from_count_oracle(c, [](const Circuit& g) { return model_count_dd(g); }, opts);
}

enum class CircuitKCountMethod { Reduction, Polynomial };

/// Shapley values through the k-count reduction. The k-count oracle is the
/// count-oracle reduction by default, or the direct polynomial propagation.
inline ShapleyVector shapley_circuit(const Circuit& c, CircuitKCountMethod method = CircuitKCountMethod::Reduction,
                                     const ReductionOptions& opts = {}) {
    detail::require_dd(c, {});
    if (method == CircuitKCountMethod::Polynomial)
        return shapley_from_kcount_oracle(c, [](const Circuit& g) { return size_polynomial_count(g); }, opts);
    return shapley_from_kcount_oracle(c, [&](const Circuit& g) { return kcounts_circuit(g, opts); }, opts);
}

} // namespace shapcount

#endif // SHAPCOUNT_CIRCUIT_HPP
