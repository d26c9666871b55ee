#pragma once

/**
 * Exact dense linear algebra over the rationals: reduced row echelon form,
 * nullspace bases in a deterministic order, and a fraction-free integer
 * determinant.  Matrices are plain row-major vectors of rows.
 */

#include <cstddef>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"

namespace gfkit {

using RatMat = std::vector<std::vector<Rat>>;
using IntMat = std::vector<std::vector<Int>>;

/**
 * In-place reduced row echelon form (leading entries 1, zeros above and
 * below).  Returns the pivot column of each pivot row, in row order.
 */
inline std::vector<std::size_t> rref(RatMat& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && m[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[r], m[sel]);
        const Rat inv = Rat(1) / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            const Rat f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

/**
 * Basis of {v : M v = 0}, one vector per free column in ascending column
 * order; each basis vector has a 1 in its free column.  The zero matrix of
 * width n yields the n unit vectors.
 */
inline std::vector<std::vector<Rat>> nullspace(RatMat m) {
    if (m.empty()) return {};
    const std::size_t cols = m[0].size();
    const std::vector<std::size_t> pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

/** Determinant of a square integer matrix by fraction-free Bareiss elimination. */
inline Int det_bareiss(IntMat m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw Error("determinant requires a square matrix");
    if (n == 0) return Int(1);
    Int prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t sel = k + 1;
            while (sel < n && m[sel][k] == 0) ++sel;
            if (sel == n) return Int(0);
            std::swap(m[k], m[sel]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = num / prev;  // exact by Bareiss' identity
            }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

} // namespace gfkit
