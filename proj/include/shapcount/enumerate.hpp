#ifndef SHAPCOUNT_ENUMERATE_HPP
#define SHAPCOUNT_ENUMERATE_HPP

// Exhaustive ground-truth oracles: every other engine is checked against these.

#include "shapcount/boolfunc.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

namespace shapcount {

struct EnumerationLimits {
    std::size_t count_vars = 24;       // 2^n valuations
    std::size_t permutation_vars = 10; // n! orderings
};

namespace detail {

/// Postorder program evaluating 64 valuations per step: valuation
/// 64*block + j sits in bit j of the result word.
class WordProgram {
public:
    explicit WordProgram(const BoolFunc& f) : n_(f.var_count()) { emit(*f.root()); }

    std::uint64_t run(std::uint64_t block) const {
        static constexpr std::uint64_t low_patterns[6] = {
            0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
            0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL};
        stack_.clear();
        for (const Op& op : ops_) {
            switch (op.kind) {
            case NodeKind::Const: stack_.push_back(op.arg ? ~0ULL : 0ULL); break;
            case NodeKind::Var:
                stack_.push_back(op.arg < 6 ? low_patterns[op.arg] : (((block >> (op.arg - 6)) & 1U) ? ~0ULL : 0ULL));
                break;
            case NodeKind::Not: stack_.back() = ~stack_.back(); break;
            case NodeKind::And:
            case NodeKind::Or: {
                std::uint64_t acc = stack_.back();
                for (std::size_t k = 1; k < op.arg; ++k) {
                    stack_.pop_back();
                    acc = op.kind == NodeKind::And ? (acc & stack_.back()) : (acc | stack_.back());
                }
                stack_.back() = acc;
                break;
            }
            }
        }
        return stack_.back();
    }

private:
    struct Op {
        NodeKind kind;
        std::size_t arg;
    };

    void emit(const Node& node) {
        for (const auto& c : node.children) emit(*c);
        switch (node.kind) {
        case NodeKind::Const: ops_.push_back({node.kind, node.value ? 1U : 0U}); break;
        case NodeKind::Var: ops_.push_back({node.kind, node.var}); break;
        default: ops_.push_back({node.kind, node.children.size()}); break;
        }
    }

    std::size_t n_;
    std::vector<Op> ops_;
    mutable std::vector<std::uint64_t> stack_;
};

inline void require_count_bound(const BoolFunc& f, const EnumerationLimits& limits) {
    if (f.var_count() > limits.count_vars)
        throw RefusalError("exhaustive enumeration refused: " + std::to_string(f.var_count()) +
                           " variables exceed the bound of " + std::to_string(limits.count_vars));
}

} // namespace detail

/// Bit-packed truth table: bit (mask % 64) of word (mask / 64) holds F[mask].
class TruthTable {
public:
    explicit TruthTable(const BoolFunc& f, const EnumerationLimits& limits = {}) : n_(f.var_count()) {
        detail::require_count_bound(f, limits);
        detail::WordProgram prog(f);
        const std::uint64_t rows = std::uint64_t{1} << n_;
        words_.resize(static_cast<std::size_t>(std::max<std::uint64_t>(1, rows / 64)));
        for (std::size_t b = 0; b < words_.size(); ++b) words_[b] = prog.run(b);
        if (rows < 64) words_[0] &= (std::uint64_t{1} << rows) - 1;
    }

    std::size_t var_count() const { return n_; }
    std::uint64_t rows() const { return std::uint64_t{1} << n_; }
    bool operator[](std::uint64_t mask) const { return (words_[mask >> 6] >> (mask & 63U)) & 1U; }
    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    std::size_t n_;
    std::vector<std::uint64_t> words_;
};

inline BigInt brute_count(const BoolFunc& f, const EnumerationLimits& limits = {}) {
    TruthTable table(f, limits);
    std::uint64_t total = 0;
    for (auto w : table.words()) total += static_cast<std::uint64_t>(std::popcount(w));
    return BigInt(static_cast<unsigned long>(total));
}

inline KCountVector brute_kcounts(const BoolFunc& f, const EnumerationLimits& limits = {}) {
    TruthTable table(f, limits);
    std::vector<std::uint64_t> counts(f.var_count() + 1, 0);
    for (std::uint64_t mask = 0; mask < table.rows(); ++mask)
        if (table[mask]) ++counts[static_cast<std::size_t>(std::popcount(mask))];
    KCountVector out;
    out.reserve(counts.size());
    for (auto c : counts) out.emplace_back(static_cast<unsigned long>(c));
    return out;
}

/// Shapley values by averaging marginal contributions over all n! orderings.
inline ShapleyVector brute_shapley_permutations(const BoolFunc& f, const EnumerationLimits& limits = {}) {
    const std::size_t n = f.var_count();
    if (n > limits.permutation_vars)
        throw RefusalError("permutation enumeration refused: " + std::to_string(n) +
                           " variables exceed the bound of " + std::to_string(limits.permutation_vars));
    TruthTable table(f, limits);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<long long> marginal(n, 0);
    do {
        std::uint64_t prefix = 0;
        for (std::size_t i : order) {
            const std::uint64_t with = prefix | (std::uint64_t{1} << i);
            marginal[i] += static_cast<int>(table[with]) - static_cast<int>(table[prefix]);
            prefix = with;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    const BigInt orderings = factorial(n);
    ShapleyVector out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = Rational(BigInt(static_cast<long>(marginal[i])), orderings);
        out[i].canonicalize();
    }
    return out;
}

/// Shapley values through the coefficient form: per variable, cofactor
/// k-count differences weighted by k!(n-k-1)!/n!.
inline ShapleyVector brute_shapley_subsets(const BoolFunc& f, const EnumerationLimits& limits = {}) {
    const std::size_t n = f.var_count();
    TruthTable table(f, limits);
    ShapleyVector out(n);
    if (n == 0) return out;
    std::vector<Rational> c(n);
    for (std::size_t k = 0; k < n; ++k) {
        c[k] = Rational(factorial(k) * factorial(n - k - 1), factorial(n));
        c[k].canonicalize();
    }
    std::vector<long long> diff(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(diff.begin(), diff.end(), 0);
        const std::uint64_t bit = std::uint64_t{1} << i;
        for (std::uint64_t mask = 0; mask < table.rows(); ++mask) {
            if (mask & bit) continue;
            diff[static_cast<std::size_t>(std::popcount(mask))] +=
                static_cast<int>(table[mask | bit]) - static_cast<int>(table[mask]);
        }
        Rational s = 0;
        for (std::size_t k = 0; k < n; ++k) s += c[k] * BigInt(static_cast<long>(diff[k]));
        s.canonicalize();
        out[i] = s;
    }
    return out;
}

/// F[1] - F[0].
inline int top_minus_bottom(const BoolFunc& f) {
    const std::size_t n = f.var_count();
    Valuation all(n), none(n);
    for (VarId i = 0; i < n; ++i) all.set(i, true);
    return static_cast<int>(evaluate(f, all)) - static_cast<int>(evaluate(f, none));
}

/// Equivalence by full enumeration over the shared variable count.
inline bool equivalent(const BoolFunc& a, const BoolFunc& b, const EnumerationLimits& limits = {}) {
    if (a.var_count() != b.var_count()) return false;
    return TruthTable(a, limits).words() == TruthTable(b, limits).words();
}

} // namespace shapcount

#endif // SHAPCOUNT_ENUMERATE_HPP
