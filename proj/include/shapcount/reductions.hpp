#ifndef SHAPCOUNT_REDUCTIONS_HPP
#define SHAPCOUNT_REDUCTIONS_HPP

// Reductions between Shapley values, fixed-size model counting and model
// counting under OR-substitutions. Every reduction is written against an
// abstract oracle and a function type F supplying the hooks below, found by
// argument-dependent lookup:
//
//   std::size_t variable_count(const F&)
//   F or_substituted(const F&, std::span<const std::size_t> arities)
//   F and_substituted(const F&, std::span<const std::size_t> arities)
//   bool value_at_zero(const F&)
//
// Substituted functions must lay fresh variables out block by block in source
// order, so the j-th fresh variable of X_i has id (sum of arities before i) + j.

#include "shapcount/core.hpp"
#include "shapcount/exact_linear.hpp"

#include <atomic>
#include <concepts>
#include <functional>
#include <future>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace shapcount {

template <class F>
concept OrSubstitutable = requires(const F& f, std::span<const std::size_t> arities) {
    { variable_count(f) } -> std::convertible_to<std::size_t>;
    { or_substituted(f, arities) } -> std::same_as<F>;
};

template <class F>
concept AndSubstitutable = requires(const F& f, std::span<const std::size_t> arities) {
    { variable_count(f) } -> std::convertible_to<std::size_t>;
    { and_substituted(f, arities) } -> std::same_as<F>;
};

template <class F>
concept HasZeroValue = requires(const F& f) {
    { value_at_zero(f) } -> std::convertible_to<bool>;
};

struct ReductionOptions {
    // Issue the independent oracle queries concurrently. Only for oracles
    // that are safe to call from several threads.
    bool parallel = false;
};

using CoefficientTable = std::vector<Rational>;

/// c_k = k!(n-k-1)!/n! for k = 0..n-1.
inline CoefficientTable coefficients(std::size_t n) {
    if (n == 0) throw InputError("coefficient table needs n >= 1");
    CoefficientTable c(n);
    const BigInt nf = factorial(n);
    for (std::size_t k = 0; k < n; ++k) {
        c[k] = Rational(factorial(k) * factorial(n - k - 1), nf);
        c[k].canonicalize();
    }
    return c;
}

struct VandermondeSystem {
    std::vector<BigInt> nodes;
    std::vector<Rational> rhs;
};

/// Solves V s = rhs with V[j][k] = nodes[j]^k.
inline std::vector<Rational> vandermonde_solve(const VandermondeSystem& sys) {
    const std::size_t m = sys.nodes.size();
    if (sys.rhs.size() != m) throw InputError("Vandermonde system: node and right-hand side counts differ");
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            if (sys.nodes[a] == sys.nodes[b])
                throw InputError("Vandermonde system: duplicate node " + sys.nodes[a].get_str());
    RationalMatrix v(m, std::vector<Rational>(m));
    for (std::size_t j = 0; j < m; ++j) {
        BigInt p = 1;
        for (std::size_t k = 0; k < m; ++k) {
            v[j][k] = p;
            p *= sys.nodes[j];
        }
    }
    return solve_exact(v, sys.rhs);
}

/// Wraps an oracle and counts how often it is called. Copies share the counter.
template <class Oracle>
class CountingOracle {
public:
    explicit CountingOracle(Oracle inner)
        : inner_(std::move(inner)), calls_(std::make_shared<std::atomic<std::size_t>>(0)) {}

    template <class... Args>
    decltype(auto) operator()(Args&&... args) const {
        ++*calls_;
        return std::invoke(inner_, std::forward<Args>(args)...);
    }

    std::size_t calls() const { return calls_->load(); }

private:
    Oracle inner_;
    std::shared_ptr<std::atomic<std::size_t>> calls_;
};

namespace detail {

// Runs query(0..count-1) sequentially or with one task per index; results
// keep index order either way.
template <class Query>
auto run_queries(std::size_t count, Query&& query, bool parallel) {
    using R = std::invoke_result_t<Query&, std::size_t>;
    std::vector<R> out;
    out.reserve(count);
    if (!parallel) {
        for (std::size_t j = 0; j < count; ++j) out.push_back(query(j));
        return out;
    }
    std::vector<std::future<R>> pending;
    for (std::size_t j = 0; j < count; ++j)
        pending.push_back(std::async(std::launch::async, [&query, j] { return query(j); }));
    for (auto& p : pending) out.push_back(p.get());
    return out;
}

inline BigInt integral_count(const Rational& q, std::size_t n, std::size_t k, const char* what) {
    if (q.get_den() != 1)
        throw InconsistencyError(std::string(what) + ": non-integer count " + format_rational(q) + " at k=" +
                                 std::to_string(k));
    const BigInt v = q.get_num();
    if (v < 0 || v > binomial(n, k))
        throw InconsistencyError(std::string(what) + ": count " + v.get_str() + " outside [0, C(" +
                                 std::to_string(n) + "," + std::to_string(k) + ")]");
    return v;
}

inline std::vector<BigInt> uniform_nodes(std::size_t count) {
    std::vector<BigInt> nodes(count);
    for (std::size_t j = 0; j < count; ++j) nodes[j] = (BigInt(1) << (j + 1)) - 1;
    return nodes;
}

} // namespace detail

/// k-counts from a model-count oracle: counts of F^(l) (every variable
/// OR-substituted by l fresh ones) for l = 1..n+1 satisfy
/// #F^(l) = sum_k (2^l - 1)^k #_k F. Exactly n+1 oracle calls.
template <OrSubstitutable F, class CountOracle>
KCountVector kcounts_from_count_oracle(const F& f, CountOracle&& count, const ReductionOptions& opts = {}) {
    const std::size_t n = variable_count(f);
    auto query = [&](std::size_t j) -> BigInt {
        const std::vector<std::size_t> arities(n, j + 1);
        return count(or_substituted(f, std::span<const std::size_t>(arities)));
    };
    const std::vector<BigInt> answers = detail::run_queries(n + 1, query, opts.parallel);
    VandermondeSystem sys{detail::uniform_nodes(n + 1), {}};
    for (const auto& a : answers) sys.rhs.emplace_back(a);
    const std::vector<Rational> s = vandermonde_solve(sys);
    KCountVector out(n + 1);
    for (std::size_t k = 0; k <= n; ++k) out[k] = detail::integral_count(s[k], n, k, "count oracle");
    return out;
}

/// AND-substitution variant: #F^(l) = sum_k (2^l - 1)^(n-k) #_k F, solved with
/// the unknowns in reversed order. Exactly n+1 oracle calls.
template <AndSubstitutable F, class CountOracle>
KCountVector kcounts_from_count_oracle_and(const F& f, CountOracle&& count, const ReductionOptions& opts = {}) {
    const std::size_t n = variable_count(f);
    auto query = [&](std::size_t j) -> BigInt {
        const std::vector<std::size_t> arities(n, j + 1);
        return count(and_substituted(f, std::span<const std::size_t>(arities)));
    };
    const std::vector<BigInt> answers = detail::run_queries(n + 1, query, opts.parallel);
    VandermondeSystem sys{detail::uniform_nodes(n + 1), {}};
    for (const auto& a : answers) sys.rhs.emplace_back(a);
    const std::vector<Rational> u = vandermonde_solve(sys);
    KCountVector out(n + 1);
    for (std::size_t k = 0; k <= n; ++k) out[k] = detail::integral_count(u[n - k], n, k, "count oracle");
    return out;
}

/// Shapley values from a k-count oracle. The oracle is asked for the
/// k-counts of the isomorphic copy F~ (all arities 1) and, per variable i,
/// of F~'_i where X_i becomes the empty disjunction; then
/// Shap(F, X_i) = sum_k c_k (#_{k+1}F - #_{k+1}F[X_i:=0] - #_k F[X_i:=0]).
/// n+1 oracle calls.
template <OrSubstitutable F, class KCountOracle>
ShapleyVector shapley_from_kcount_oracle(const F& f, KCountOracle&& kcounts, const ReductionOptions& opts = {}) {
    const std::size_t n = variable_count(f);
    ShapleyVector out(n);
    if (n == 0) return out;

    const std::vector<std::size_t> ones(n, 1);
    const KCountVector full = kcounts(or_substituted(f, std::span<const std::size_t>(ones)));
    if (full.size() != n + 1)
        throw InputError("k-count oracle returned " + std::to_string(full.size()) + " entries, expected " +
                         std::to_string(n + 1));

    auto query = [&](std::size_t i) -> KCountVector {
        std::vector<std::size_t> arities(n, 1);
        arities[i] = 0;
        return kcounts(or_substituted(f, std::span<const std::size_t>(arities)));
    };
    const std::vector<KCountVector> zeros = detail::run_queries(n, query, opts.parallel);

    const CoefficientTable c = coefficients(n);
    for (std::size_t i = 0; i < n; ++i) {
        const KCountVector& z = zeros[i];
        if (z.size() != n)
            throw InputError("k-count oracle returned " + std::to_string(z.size()) + " entries for a cofactor, expected " +
                             std::to_string(n));
        Rational s = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const BigInt above = k + 1 < n ? z[k + 1] : BigInt(0);
            s += c[k] * (full[k + 1] - above - z[k]);
        }
        s.canonicalize();
        out[i] = s;
    }
    return out;
}

/// Weight of D_k = #_k F[X_i:=1] - #_k F[X_i:=0] in Shap(F^(l,i), Z_i), where
/// F^(l,i) keeps X_i as one fresh variable Z_i and expands the other n-1
/// variables to l fresh disjuncts each. A k-subset of the other variables
/// lifts to the j-subsets of their blocks counted by [t^j]((1+t)^l - 1)^k, so
///   w_l(k) = sum_j c'_j [t^j]((1+t)^l - 1)^k,  c' over 1 + (n-1)l variables.
/// Returned for k = 0..n-1.
inline std::vector<Rational> lifted_shapley_weights(std::size_t n, std::size_t ell) {
    if (n == 0) throw InputError("lifted weights need n >= 1");
    const std::size_t total = 1 + (n - 1) * ell;
    const CoefficientTable c = coefficients(total);

    std::vector<BigInt> block(ell + 1); // (1+t)^l - 1
    for (std::size_t j = 1; j <= ell; ++j) block[j] = binomial(ell, j);

    std::vector<Rational> w(n);
    std::vector<BigInt> poly{1};
    for (std::size_t k = 0; k < n; ++k) {
        Rational s = 0;
        for (std::size_t j = 0; j < poly.size(); ++j)
            if (poly[j] != 0) s += c[j] * poly[j];
        s.canonicalize();
        w[k] = s;
        std::vector<BigInt> next(poly.size() + ell, 0);
        for (std::size_t a = 0; a < poly.size(); ++a)
            if (poly[a] != 0)
                for (std::size_t b = 1; b <= ell; ++b) next[a + b] += poly[a] * block[b];
        poly.swap(next);
    }
    return w;
}

/// k-counts from a Shapley oracle. For each variable i and l = 1..n the
/// oracle gives Shap(F^(l,i), Z_i) = sum_k w_l(k) D_k; solving the n x n
/// system yields D_k, and summing over i gives
/// sum_i D_k = (k+1) #_{k+1}F - (n-k) #_k F. Starting from #_0 F = F[0] the
/// counts follow by induction. Exactly n*n oracle calls.
template <class F, class ShapleyOracle>
    requires OrSubstitutable<F> && HasZeroValue<F>
KCountVector kcounts_from_shapley_oracle(const F& f, ShapleyOracle&& shapley, const ReductionOptions& opts = {}) {
    const std::size_t n = variable_count(f);
    KCountVector counts(n + 1, 0);
    counts[0] = value_at_zero(f) ? 1 : 0;
    if (n == 0) return counts;

    RationalMatrix w(n);
    for (std::size_t l = 1; l <= n; ++l) w[l - 1] = lifted_shapley_weights(n, l);

    std::vector<Rational> sums(n, 0); // sum_i D_k
    for (std::size_t i = 0; i < n; ++i) {
        auto query = [&](std::size_t j) -> Rational {
            const std::size_t ell = j + 1;
            std::vector<std::size_t> arities(n, ell);
            arities[i] = 1;
            const VarId zi = static_cast<VarId>(i * ell);
            return shapley(or_substituted(f, std::span<const std::size_t>(arities)), zi);
        };
        const std::vector<Rational> rhs = detail::run_queries(n, query, opts.parallel);
        const std::vector<Rational> d = solve_exact(w, rhs);
        for (std::size_t k = 0; k < n; ++k) {
            if (d[k].get_den() != 1)
                throw InconsistencyError("Shapley oracle: non-integer cofactor difference " + format_rational(d[k]) +
                                         " for variable " + std::to_string(i) + " at k=" + std::to_string(k));
            sums[k] += d[k];
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        Rational next = (sums[k] + Rational(BigInt(static_cast<unsigned long>(n - k)) * counts[k])) /
                        Rational(static_cast<unsigned long>(k + 1));
        next.canonicalize();
        counts[k + 1] = detail::integral_count(next, n, k + 1, "Shapley oracle");
    }
    return counts;
}

/// #F from a Shapley oracle; see kcounts_from_shapley_oracle.
template <class F, class ShapleyOracle>
    requires OrSubstitutable<F> && HasZeroValue<F>
BigInt count_from_shapley_oracle(const F& f, ShapleyOracle&& shapley, const ReductionOptions& opts = {}) {
    return sum(kcounts_from_shapley_oracle(f, std::forward<ShapleyOracle>(shapley), opts));
}

} // namespace shapcount

#endif // SHAPCOUNT_REDUCTIONS_HPP
