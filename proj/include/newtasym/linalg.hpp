#ifndef NEWTASYM_LINALG_HPP
#define NEWTASYM_LINALG_HPP

#include <optional>
#include <vector>

#include "newtasym/gaussian.hpp"

namespace newtasym {

using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;

inline Rational dot(const QVector& a, const QVector& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Rank of a rational matrix (rows), by fraction-exact Gaussian elimination.
inline std::size_t rational_rank(QMatrix m) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size(), rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[rank], m[piv]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            Rational f = m[r][c] / m[rank][c];
            for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

/// Inverse of a square rational matrix; nullopt if singular.
inline std::optional<QMatrix> rational_inverse(QMatrix m) {
    std::size_t n = m.size();
    QMatrix inv(n, QVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(m[c], m[piv]);
        std::swap(inv[c], inv[piv]);
        Rational d = m[c][c];
        for (std::size_t k = 0; k < n; ++k) { m[c][k] /= d; inv[c][k] /= d; }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            Rational f = m[r][c];
            for (std::size_t k = 0; k < n; ++k) { m[r][k] -= f * m[c][k]; inv[r][k] -= f * inv[c][k]; }
        }
    }
    return inv;
}

using GVector = std::vector<GaussianRational>;
using GMatrix = std::vector<GVector>;

/// Outcome of the exact image-membership test over Q(i).
struct MembershipResult {
    bool in_image = false;
    /// coefficients with matrix * solution == target (when in_image)
    GVector solution;
    /// covector y with y^T * column == 0 for every column and y^T * target != 0
    GVector functional;
    std::size_t matrix_rank = 0;
};

/// Decide whether `target` lies in the column span of `columns` (each of length
/// `rows`). Exact Gaussian elimination; a NotInImage verdict carries an
/// independently checkable separating functional.
inline MembershipResult image_membership(const std::vector<GVector>& columns,
                                         const GVector& target) {
    std::size_t rows = target.size();
    std::size_t cols = columns.size();
    for (auto& c : columns)
        if (c.size() != rows) throw std::invalid_argument("column length mismatch");

    // augmented system [A | target | I_rows]; row-reduce and inspect.
    std::size_t width = cols + 1 + rows;
    GMatrix m(rows, GVector(width));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) m[r][c] = columns[c][r];
        m[r][cols] = target[r];
        m[r][cols + 1 + r] = GaussianRational(1);
    }

    std::vector<std::size_t> pivot_col_of_row;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(m[rank], m[piv]);
        GaussianRational d = m[rank][c];
        for (std::size_t k = 0; k < width; ++k) m[rank][k] /= d;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][c].is_zero()) continue;
            GaussianRational f = m[r][c];
            for (std::size_t k = 0; k < width; ++k) m[r][k] -= f * m[rank][k];
        }
        pivot_col_of_row.push_back(c);
        ++rank;
    }

    MembershipResult res;
    res.matrix_rank = rank;
    // any row with zero A-part but non-zero target entry separates
    for (std::size_t r = rank; r < rows; ++r) {
        if (!m[r][cols].is_zero()) {
            res.in_image = false;
            res.functional.assign(rows, GaussianRational());
            for (std::size_t k = 0; k < rows; ++k) res.functional[k] = m[r][cols + 1 + k];
            return res;
        }
    }
    res.in_image = true;
    res.solution.assign(cols, GaussianRational());
    for (std::size_t r = 0; r < rank; ++r) res.solution[pivot_col_of_row[r]] = m[r][cols];
    return res;
}

} // namespace newtasym

#endif
