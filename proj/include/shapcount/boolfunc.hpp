#ifndef SHAPCOUNT_BOOLFUNC_HPP
#define SHAPCOUNT_BOOLFUNC_HPP

#include "shapcount/core.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace shapcount {

enum class NodeKind { Const, Var, Not, And, Or };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Expression node. And/Or carry two or more children, Not exactly one.
struct Node {
    NodeKind kind = NodeKind::Const;
    bool value = false;
    VarId var = 0;
    std::vector<NodePtr> children;
};

inline NodePtr constant(bool value) {
    static const NodePtr zero = std::make_shared<const Node>(Node{NodeKind::Const, false, 0, {}});
    static const NodePtr one = std::make_shared<const Node>(Node{NodeKind::Const, true, 0, {}});
    return value ? one : zero;
}

inline NodePtr variable(VarId id) {
    return std::make_shared<const Node>(Node{NodeKind::Var, false, id, {}});
}

inline NodePtr negation(NodePtr child) {
    return std::make_shared<const Node>(Node{NodeKind::Not, false, 0, {std::move(child)}});
}

namespace detail {
inline NodePtr nary(NodeKind kind, std::vector<NodePtr> children) {
    if (children.empty()) return constant(kind == NodeKind::And);
    if (children.size() == 1) return std::move(children.front());
    return std::make_shared<const Node>(Node{kind, false, 0, std::move(children)});
}
} // namespace detail

// n-ary builders. Zero children give the neutral constant and a single child
// is returned as is; no other simplification is performed.
inline NodePtr conjunction(std::vector<NodePtr> children) {
    return detail::nary(NodeKind::And, std::move(children));
}

inline NodePtr disjunction(std::vector<NodePtr> children) {
    return detail::nary(NodeKind::Or, std::move(children));
}

/// A Boolean function over variables 0..n-1 with optional unique labels.
class BoolFunc {
public:
    BoolFunc() : root_(constant(false)) {}

    BoolFunc(NodePtr root, std::size_t var_count, std::vector<std::string> labels = {})
        : root_(std::move(root)), var_count_(var_count), labels_(std::move(labels)) {
        if (!root_) throw InputError("boolean function without root");
        if (!labels_.empty()) {
            if (labels_.size() != var_count_)
                throw InputError("label count does not match variable count");
            std::set<std::string_view> seen;
            for (const auto& l : labels_)
                if (!seen.insert(l).second) throw InputError("duplicate variable label '" + l + "'");
        }
        check(*root_);
    }

    const NodePtr& root() const { return root_; }
    std::size_t var_count() const { return var_count_; }
    bool has_labels() const { return !labels_.empty(); }
    const std::vector<std::string>& labels() const { return labels_; }

    std::string label(VarId id) const {
        return labels_.empty() ? "x" + std::to_string(id + 1) : labels_.at(id);
    }

    std::optional<VarId> find_label(std::string_view name) const {
        for (VarId i = 0; i < var_count_; ++i)
            if (label(i) == name) return i;
        return std::nullopt;
    }

private:
    void check(const Node& node) const {
        switch (node.kind) {
        case NodeKind::Const: return;
        case NodeKind::Var:
            if (node.var >= var_count_)
                throw InputError("variable id " + std::to_string(node.var) + " out of range for " +
                                 std::to_string(var_count_) + " variables");
            return;
        case NodeKind::Not:
            if (node.children.size() != 1) throw InputError("negation needs exactly one child");
            break;
        case NodeKind::And:
        case NodeKind::Or:
            if (node.children.size() < 2) throw InputError("and/or nodes need at least two children");
            break;
        }
        for (const auto& c : node.children) check(*c);
    }

    NodePtr root_;
    std::size_t var_count_ = 0;
    std::vector<std::string> labels_;
};

/// Total assignment over n variables.
class Valuation {
public:
    explicit Valuation(std::size_t n) : bits_(n, false) {}

    static Valuation from_set(std::size_t n, std::span<const VarId> ones) {
        Valuation v(n);
        for (VarId i : ones) {
            if (i >= n) throw InputError("valuation variable out of range");
            v.bits_[i] = true;
        }
        return v;
    }

    static Valuation from_mask(std::size_t n, std::uint64_t mask) {
        Valuation v(n);
        for (std::size_t i = 0; i < n && i < 64; ++i) v.bits_[i] = (mask >> i) & 1U;
        return v;
    }

    std::size_t size() const { return bits_.size(); }
    bool operator[](VarId i) const { return bits_[i]; }
    void set(VarId i, bool b) { bits_.at(i) = b; }

    /// |T|, the number of variables mapped to 1.
    std::size_t ones() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true)); }

private:
    std::vector<bool> bits_;
};

namespace detail {
template <class Lookup>
bool eval_node(const Node& node, const Lookup& value_of) {
    switch (node.kind) {
    case NodeKind::Const: return node.value;
    case NodeKind::Var: return value_of(node.var);
    case NodeKind::Not: return !eval_node(*node.children.front(), value_of);
    case NodeKind::And:
        for (const auto& c : node.children)
            if (!eval_node(*c, value_of)) return false;
        return true;
    case NodeKind::Or:
        for (const auto& c : node.children)
            if (eval_node(*c, value_of)) return true;
        return false;
    }
    return false;
}
} // namespace detail

inline bool evaluate(const BoolFunc& f, const Valuation& theta) {
    if (theta.size() != f.var_count())
        throw InputError("valuation over " + std::to_string(theta.size()) + " variables, function has " +
                         std::to_string(f.var_count()));
    return detail::eval_node(*f.root(), [&](VarId v) { return theta[v]; });
}

/// Evaluation with variable i read from bit i of mask (n <= 64).
inline bool evaluate_mask(const BoolFunc& f, std::uint64_t mask) {
    return detail::eval_node(*f.root(), [&](VarId v) { return ((mask >> v) & 1U) != 0; });
}

/// |F|: occurrences of variables, constants and connectives; an n-ary
/// and/or counts as n-1 binary connectives.
inline std::size_t size(const Node& node) {
    switch (node.kind) {
    case NodeKind::Const:
    case NodeKind::Var: return 1;
    case NodeKind::Not: return 1 + size(*node.children.front());
    case NodeKind::And:
    case NodeKind::Or: {
        std::size_t s = node.children.size() - 1;
        for (const auto& c : node.children) s += size(*c);
        return s;
    }
    }
    return 0;
}

inline std::size_t size(const BoolFunc& f) { return size(*f.root()); }

inline bool structurally_equal(const Node& a, const Node& b) {
    if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
    if (a.kind == NodeKind::Const) return a.value == b.value;
    if (a.kind == NodeKind::Var) return a.var == b.var;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!structurally_equal(*a.children[i], *b.children[i])) return false;
    return true;
}

inline bool structurally_equal(const BoolFunc& a, const BoolFunc& b) {
    return a.var_count() == b.var_count() && structurally_equal(*a.root(), *b.root());
}

/// Variable ids that actually occur in the expression, ascending.
inline std::vector<VarId> occurring_variables(const BoolFunc& f) {
    std::set<VarId> seen;
    std::vector<const Node*> stack{f.root().get()};
    while (!stack.empty()) {
        const Node* n = stack.back();
        stack.pop_back();
        if (n->kind == NodeKind::Var) seen.insert(n->var);
        for (const auto& c : n->children) stack.push_back(c.get());
    }
    return {seen.begin(), seen.end()};
}

namespace detail {

/// Rebuilds a tree replacing Var(i) by replacement[i] (already expressed over
/// the target variable ids). A replacement whose connective matches its
/// parent's is spliced into the parent, so X2 := Z1 v Z2 inside an or-node
/// yields a single flat or-node. Shared subtrees stay shared.
class Rewriter {
public:
    explicit Rewriter(const std::vector<NodePtr>& replacement) : replacement_(replacement) {}

    NodePtr rewrite(const NodePtr& node) {
        if (auto it = memo_.find(node.get()); it != memo_.end()) return it->second;
        NodePtr out;
        switch (node->kind) {
        case NodeKind::Const: out = node; break;
        case NodeKind::Var: out = replacement_.at(node->var); break;
        case NodeKind::Not: out = negation(rewrite(node->children.front())); break;
        case NodeKind::And:
        case NodeKind::Or: {
            std::vector<NodePtr> kids;
            kids.reserve(node->children.size());
            for (const auto& c : node->children) {
                NodePtr r = rewrite(c);
                if (c->kind == NodeKind::Var && r->kind == node->kind)
                    kids.insert(kids.end(), r->children.begin(), r->children.end());
                else
                    kids.push_back(std::move(r));
            }
            out = std::make_shared<const Node>(Node{node->kind, false, 0, std::move(kids)});
            break;
        }
        }
        memo_.emplace(node.get(), out);
        return out;
    }

private:
    const std::vector<NodePtr>& replacement_;
    std::unordered_map<const Node*, NodePtr> memo_;
};

inline NodePtr remap(const NodePtr& node, const std::vector<VarId>& new_id) {
    std::vector<NodePtr> repl(new_id.size());
    for (std::size_t i = 0; i < new_id.size(); ++i) repl[i] = variable(new_id[i]);
    return Rewriter(repl).rewrite(node);
}

} // namespace detail

/// Partial map from variable ids to replacement functions. Variables of a
/// replacement are fresh and identified by label: equal labels across
/// replacements denote the same fresh variable.
struct Substitution {
    std::map<VarId, BoolFunc> mapping;
};

struct SubstitutionResult {
    BoolFunc func;
    /// old id -> new id for surviving variables, nullopt for substituted ones.
    std::vector<std::optional<VarId>> old_to_new;
    /// fresh label -> new id.
    std::map<std::string, VarId> fresh;
};

/// F[sigma]. Surviving variables come first (in their old order), fresh
/// variables follow in order of first appearance.
inline SubstitutionResult apply_substitution(const BoolFunc& f, const Substitution& sigma) {
    const std::size_t n = f.var_count();
    SubstitutionResult res;
    res.old_to_new.assign(n, std::nullopt);
    std::vector<std::string> labels;
    std::map<std::string, VarId> surviving_labels;
    for (VarId i = 0; i < n; ++i) {
        if (sigma.mapping.count(i)) continue;
        res.old_to_new[i] = labels.size();
        surviving_labels.emplace(f.label(i), labels.size());
        labels.push_back(f.label(i));
    }
    for (const auto& [id, repl] : sigma.mapping) {
        if (id >= n) throw InputError("substitution for variable id " + std::to_string(id) + " out of range");
        for (VarId j = 0; j < repl.var_count(); ++j) {
            const std::string l = repl.label(j);
            if (surviving_labels.count(l))
                throw InputError("fresh variable '" + l + "' collides with a surviving variable");
            if (res.fresh.emplace(l, labels.size()).second) labels.push_back(l);
        }
    }
    std::vector<NodePtr> replacement(n);
    for (VarId i = 0; i < n; ++i) {
        if (auto it = sigma.mapping.find(i); it != sigma.mapping.end()) {
            const BoolFunc& r = it->second;
            std::vector<VarId> ids(r.var_count());
            for (VarId j = 0; j < r.var_count(); ++j) ids[j] = res.fresh.at(r.label(j));
            replacement[i] = detail::remap(r.root(), ids);
        } else {
            replacement[i] = variable(*res.old_to_new[i]);
        }
    }
    NodePtr root = detail::Rewriter(replacement).rewrite(f.root());
    const std::size_t count = labels.size();
    res.func = BoolFunc(std::move(root), count, std::move(labels));
    return res;
}

/// Result of a block substitution: variable j of `func` stems from
/// source[j]; the block of old variable i starts at block_start[i].
struct BlockSubstitution {
    BoolFunc func;
    std::vector<VarId> source;
    std::vector<VarId> block_start;
};

namespace detail {
inline BlockSubstitution block_substitute(const BoolFunc& f, std::span<const std::size_t> arities,
                                          NodeKind connective) {
    const std::size_t n = f.var_count();
    if (arities.size() != n)
        throw InputError("expected " + std::to_string(n) + " arities, got " + std::to_string(arities.size()));
    BlockSubstitution res;
    res.block_start.resize(n);
    std::vector<NodePtr> replacement(n);
    for (VarId i = 0; i < n; ++i) {
        res.block_start[i] = res.source.size();
        std::vector<NodePtr> block;
        block.reserve(arities[i]);
        for (std::size_t j = 0; j < arities[i]; ++j) {
            block.push_back(variable(res.source.size()));
            res.source.push_back(i);
        }
        replacement[i] = nary(connective, std::move(block));
    }
    NodePtr root = Rewriter(replacement).rewrite(f.root());
    res.func = BoolFunc(std::move(root), res.source.size());
    return res;
}
} // namespace detail

/// F[X_i := Z_i^1 v ... v Z_i^{m_i}]; m_i = 0 maps X_i to the constant 0.
inline BlockSubstitution or_substitute(const BoolFunc& f, std::span<const std::size_t> arities) {
    return detail::block_substitute(f, arities, NodeKind::Or);
}

/// F[X_i := Z_i^1 ^ ... ^ Z_i^{m_i}]; m_i = 0 maps X_i to the constant 1.
inline BlockSubstitution and_substitute(const BoolFunc& f, std::span<const std::size_t> arities) {
    return detail::block_substitute(f, arities, NodeKind::And);
}

/// F[X_i := bit] over the remaining n-1 variables (ids above i shift down).
inline BoolFunc cofactor(const BoolFunc& f, VarId i, bool bit) {
    if (i >= f.var_count()) throw InputError("cofactor variable out of range");
    std::vector<NodePtr> replacement(f.var_count());
    for (VarId j = 0; j < f.var_count(); ++j)
        replacement[j] = j == i ? constant(bit) : variable(j < i ? j : j - 1);
    return BoolFunc(detail::Rewriter(replacement).rewrite(f.root()), f.var_count() - 1);
}

// Hooks used by the generic reductions.

inline std::size_t variable_count(const BoolFunc& f) { return f.var_count(); }

inline BoolFunc or_substituted(const BoolFunc& f, std::span<const std::size_t> arities) {
    return or_substitute(f, arities).func;
}

inline BoolFunc and_substituted(const BoolFunc& f, std::span<const std::size_t> arities) {
    return and_substitute(f, arities).func;
}

inline bool value_at_zero(const BoolFunc& f) { return evaluate(f, Valuation(f.var_count())); }

} // namespace shapcount

#endif // SHAPCOUNT_BOOLFUNC_HPP
