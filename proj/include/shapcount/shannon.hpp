#ifndef SHAPCOUNT_SHANNON_HPP
#define SHAPCOUNT_SHANNON_HPP

// Exact #SAT and fixed-size #SAT by Shannon expansion over a hash-consed
// formula DAG. Cofactors are simplified and interned, so identical residual
// formulas are counted once. Exponential in the worst case; fast on
// functions obtained by OR/AND-substituting small formulas, where it stands
// in for enumeration beyond the 2^n bound.

#include "shapcount/boolfunc.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace shapcount {

class ShannonCounter {
public:
    explicit ShannonCounter(const BoolFunc& f) : n_(f.var_count()) {
        nodes_.push_back({NodeKind::Const, 0, {}, {}}); // false
        nodes_.push_back({NodeKind::Const, 1, {}, {}}); // true
        std::unordered_map<const Node*, int> memo;
        root_ = intern(*f.root(), memo);
    }

    std::size_t var_count() const { return n_; }

    BigInt count() { return scaled_count(root_, n_); }

    KCountVector kcounts() { return scaled_kcounts(root_, n_); }

    /// k-counts of F[v := bit] over the remaining n-1 variables.
    KCountVector cofactor_kcounts(VarId v, bool bit) {
        if (v >= n_) throw InputError("cofactor variable out of range");
        return scaled_kcounts(cofactor(root_, v, bit), n_ - 1);
    }

    std::size_t node_count() const { return nodes_.size(); }

private:
    static constexpr int kFalse = 0;
    static constexpr int kTrue = 1;

    struct Rec {
        NodeKind kind;
        VarId var; // Var id, or constant value for Const
        std::vector<int> kids;
        std::vector<VarId> vars; // sorted support
    };

    struct KeyHash {
        std::size_t operator()(const std::vector<std::size_t>& key) const {
            std::size_t h = 1469598103934665603ULL;
            for (auto x : key) h = (h ^ x) * 1099511628211ULL;
            return h;
        }
    };

    int make(Rec rec) {
        std::vector<std::size_t> key;
        key.reserve(rec.kids.size() + 2);
        key.push_back(static_cast<std::size_t>(rec.kind));
        key.push_back(rec.var);
        for (int k : rec.kids) key.push_back(static_cast<std::size_t>(k));
        auto [it, inserted] = unique_.emplace(std::move(key), static_cast<int>(nodes_.size()));
        if (!inserted) return it->second;
        if (rec.kind == NodeKind::Var) {
            rec.vars = {rec.var};
        } else {
            for (int k : rec.kids) {
                std::vector<VarId> merged;
                std::set_union(rec.vars.begin(), rec.vars.end(), nodes_[k].vars.begin(), nodes_[k].vars.end(),
                               std::back_inserter(merged));
                rec.vars.swap(merged);
            }
        }
        nodes_.push_back(std::move(rec));
        return it->second;
    }

    int make_var(VarId v) { return make({NodeKind::Var, v, {}, {}}); }

    int make_not(int k) {
        if (k == kFalse) return kTrue;
        if (k == kTrue) return kFalse;
        if (nodes_[k].kind == NodeKind::Not) return nodes_[k].kids.front();
        return make({NodeKind::Not, 0, {k}, {}});
    }

    int make_nary(NodeKind kind, const std::vector<int>& kids) {
        const int absorbing = kind == NodeKind::And ? kFalse : kTrue;
        const int neutral = kind == NodeKind::And ? kTrue : kFalse;
        std::vector<int> flat;
        flat.reserve(kids.size());
        for (int k : kids) {
            if (k == absorbing) return absorbing;
            if (k == neutral) continue;
            if (nodes_[k].kind == kind)
                flat.insert(flat.end(), nodes_[k].kids.begin(), nodes_[k].kids.end());
            else
                flat.push_back(k);
        }
        std::sort(flat.begin(), flat.end());
        flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
        if (flat.empty()) return neutral;
        if (flat.size() == 1) return flat.front();
        return make({kind, 0, std::move(flat), {}});
    }

    int intern(const Node& node, std::unordered_map<const Node*, int>& memo) {
        if (auto it = memo.find(&node); it != memo.end()) return it->second;
        int id = kFalse;
        switch (node.kind) {
        case NodeKind::Const: id = node.value ? kTrue : kFalse; break;
        case NodeKind::Var: id = make_var(node.var); break;
        case NodeKind::Not: id = make_not(intern(*node.children.front(), memo)); break;
        case NodeKind::And:
        case NodeKind::Or: {
            std::vector<int> kids;
            for (const auto& c : node.children) kids.push_back(intern(*c, memo));
            id = make_nary(node.kind, kids);
            break;
        }
        }
        memo.emplace(&node, id);
        return id;
    }

    /// Node with variable v fixed; variables above v keep their ids.
    int cofactor(int k, VarId v, bool bit) {
        const Rec& r = nodes_[k];
        if (!std::binary_search(r.vars.begin(), r.vars.end(), v)) return k;
        const std::uint64_t key = (static_cast<std::uint64_t>(k) << 33) | (static_cast<std::uint64_t>(v) << 1) | bit;
        if (auto it = cofactor_memo_.find(key); it != cofactor_memo_.end()) return it->second;
        int out = kFalse;
        switch (r.kind) {
        case NodeKind::Var: out = bit ? kTrue : kFalse; break;
        case NodeKind::Not: out = make_not(cofactor(r.kids.front(), v, bit)); break;
        case NodeKind::And:
        case NodeKind::Or: {
            const NodeKind kind = r.kind;
            std::vector<int> kids = r.kids; // nodes_ may reallocate below
            for (int& c : kids) c = cofactor(c, v, bit);
            out = make_nary(kind, kids);
            break;
        }
        case NodeKind::Const: break;
        }
        cofactor_memo_.emplace(key, out);
        return out;
    }

    const BigInt& support_count(int k) {
        if (auto it = count_memo_.find(k); it != count_memo_.end()) return it->second;
        BigInt value;
        if (k == kFalse) {
            value = 0;
        } else if (k == kTrue) {
            value = 1;
        } else {
            const VarId v = nodes_[k].vars.front();
            const std::size_t width = nodes_[k].vars.size();
            const int hi = cofactor(k, v, true);
            const int lo = cofactor(k, v, false);
            value = (support_count(hi) << (width - 1 - nodes_[hi].vars.size())) +
                    (support_count(lo) << (width - 1 - nodes_[lo].vars.size()));
        }
        return count_memo_.emplace(k, std::move(value)).first->second;
    }

    BigInt scaled_count(int k, std::size_t over) {
        return BigInt(support_count(k)) << (over - nodes_[k].vars.size());
    }

    static KCountVector times_binomial(const KCountVector& p, std::size_t gap) {
        if (gap == 0) return p;
        KCountVector out(p.size() + gap, 0);
        for (std::size_t j = 0; j <= gap; ++j) {
            const BigInt b = binomial(gap, j);
            for (std::size_t i = 0; i < p.size(); ++i)
                if (p[i] != 0) out[i + j] += p[i] * b;
        }
        return out;
    }

    const KCountVector& support_kcounts(int k) {
        if (auto it = kcount_memo_.find(k); it != kcount_memo_.end()) return it->second;
        KCountVector value;
        if (k == kFalse) {
            value = {0};
        } else if (k == kTrue) {
            value = {1};
        } else {
            const VarId v = nodes_[k].vars.front();
            const std::size_t width = nodes_[k].vars.size();
            const int hi = cofactor(k, v, true);
            const int lo = cofactor(k, v, false);
            KCountVector phi = times_binomial(support_kcounts(hi), width - 1 - nodes_[hi].vars.size());
            KCountVector plo = times_binomial(support_kcounts(lo), width - 1 - nodes_[lo].vars.size());
            value.assign(width + 1, 0);
            for (std::size_t i = 0; i < plo.size(); ++i) value[i] += plo[i];
            for (std::size_t i = 0; i < phi.size(); ++i) value[i + 1] += phi[i];
        }
        return kcount_memo_.emplace(k, std::move(value)).first->second;
    }

    KCountVector scaled_kcounts(int k, std::size_t over) {
        KCountVector out = times_binomial(support_kcounts(k), over - nodes_[k].vars.size());
        out.resize(over + 1, 0);
        return out;
    }

    std::size_t n_;
    int root_ = kFalse;
    std::vector<Rec> nodes_;
    std::unordered_map<std::vector<std::size_t>, int, KeyHash> unique_;
    std::unordered_map<std::uint64_t, int> cofactor_memo_;
    std::unordered_map<int, BigInt> count_memo_;
    std::unordered_map<int, KCountVector> kcount_memo_;
};

inline BigInt shannon_count(const BoolFunc& f) { return ShannonCounter(f).count(); }

inline KCountVector shannon_kcounts(const BoolFunc& f) { return ShannonCounter(f).kcounts(); }

/// Shap(F, X_v) from the cofactor k-counts, with c_k = k!(n-k-1)!/n!.
inline Rational shannon_shapley(const BoolFunc& f, VarId v) {
    const std::size_t n = f.var_count();
    if (v >= n) throw InputError("Shapley variable out of range");
    ShannonCounter counter(f);
    const KCountVector one = counter.cofactor_kcounts(v, true);
    const KCountVector zero = counter.cofactor_kcounts(v, false);
    const BigInt nf = factorial(n);
    Rational s = 0;
    for (std::size_t k = 0; k < n; ++k) s += Rational(factorial(k) * factorial(n - k - 1) * (one[k] - zero[k]), nf);
    s.canonicalize();
    return s;
}

inline ShapleyVector shannon_shapley(const BoolFunc& f) {
    ShapleyVector out(f.var_count());
    for (VarId v = 0; v < f.var_count(); ++v) out[v] = shannon_shapley(f, v);
    return out;
}

} // namespace shapcount

#endif // SHAPCOUNT_SHANNON_HPP
