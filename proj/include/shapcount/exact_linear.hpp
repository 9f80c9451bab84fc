#ifndef SHAPCOUNT_EXACT_LINEAR_HPP
#define SHAPCOUNT_EXACT_LINEAR_HPP

#include "shapcount/core.hpp"

#include <utility>
#include <vector>

namespace shapcount {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Solves A x = b over the rationals by Gaussian elimination with partial
/// pivoting (largest magnitude in the column). The solution is checked by
/// substituting it back into the original system.
inline std::vector<Rational> solve_exact(const RationalMatrix& a, const std::vector<Rational>& b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw InputError("right-hand side length does not match the matrix");
    for (const auto& row : a)
        if (row.size() != n) throw InputError("matrix is not square");

    RationalMatrix m = a;
    std::vector<Rational> rhs = b;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (abs(m[r][col]) > abs(m[pivot][col])) pivot = r;
        if (m[pivot][col] == 0) throw InputError("singular linear system");
        std::swap(m[pivot], m[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            const Rational factor = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
            rhs[r] -= factor * rhs[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational s = rhs[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= m[i][c] * x[c];
        x[i] = s / m[i][i];
        x[i].canonicalize();
    }

    for (std::size_t r = 0; r < n; ++r) {
        Rational s = 0;
        for (std::size_t c = 0; c < n; ++c) s += a[r][c] * x[c];
        if (s != b[r]) throw InconsistencyError("back-substitution residual is nonzero");
    }
    return x;
}

} // namespace shapcount

#endif // SHAPCOUNT_EXACT_LINEAR_HPP
