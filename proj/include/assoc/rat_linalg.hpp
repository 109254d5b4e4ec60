#pragma once

#include <optional>
#include <vector>

#include "assoc/rational.hpp"

namespace assoc {

using RatMat = std::vector<std::vector<Rat>>;
using RatVec = std::vector<Rat>;

inline size_t mat_rows(const RatMat& m) { return m.size(); }
inline size_t mat_cols(const RatMat& m) { return m.empty() ? 0 : m[0].size(); }

// Row echelon form in place; returns pivot columns.
inline std::vector<size_t> row_reduce(RatMat& m) {
    std::vector<size_t> pivots;
    size_t rows = mat_rows(m), cols = mat_cols(m), r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        Rat inv = 1 / m[r][c];
        for (size_t k = c; k < cols; ++k) m[r][k] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline size_t mat_rank(RatMat m) { return row_reduce(m).size(); }

// Basis of the null space of m.
inline std::vector<RatVec> kernel_basis(RatMat m) {
    size_t cols = mat_cols(m);
    auto pivots = row_reduce(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        RatVec v(cols, Rat(0));
        v[free] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solves m x = b; free variables pinned to 0. nullopt when inconsistent.
inline std::optional<RatVec> solve_pinned(RatMat m, RatVec b) {
    size_t rows = mat_rows(m), cols = mat_cols(m);
    for (size_t i = 0; i < rows; ++i) m[i].push_back(b[i]);
    auto pivots = row_reduce(m);
    RatVec x(cols, Rat(0));
    for (size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == cols) return std::nullopt;  // pivot in augmented column
        x[pivots[r]] = m[r][cols];
    }
    // rows past the pivot count must have zero RHS
    for (size_t r = pivots.size(); r < rows; ++r)
        if (m[r][cols] != 0) return std::nullopt;
    return x;
}

inline std::optional<RatMat> mat_inverse(RatMat m) {
    size_t n = mat_rows(m);
    if (n == 0 || mat_cols(m) != n) return std::nullopt;
    for (size_t i = 0; i < n; ++i) {
        m[i].resize(2 * n, Rat(0));
        m[i][n + i] = 1;
    }
    auto pivots = row_reduce(m);
    if (pivots.size() != n) return std::nullopt;
    RatMat inv(n, RatVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
    return inv;
}

inline RatVec mat_apply(const RatMat& m, const RatVec& x) {
    RatVec y(mat_rows(m), Rat(0));
    for (size_t i = 0; i < mat_rows(m); ++i)
        for (size_t j = 0; j < mat_cols(m); ++j) y[i] += m[i][j] * x[j];
    return y;
}

}  // namespace assoc
