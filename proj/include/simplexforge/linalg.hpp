#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "simplexforge/error.hpp"
#include "simplexforge/rational.hpp"

namespace simplexforge {

using RationalRow = std::vector<Rational>;
using RationalMatrix = std::vector<RationalRow>;

namespace linalg {

inline RationalMatrix zeros(std::size_t rows, std::size_t cols) {
    return RationalMatrix(rows, RationalRow(cols, Rational(0)));
}

inline RationalMatrix identity(std::size_t n) {
    RationalMatrix m = zeros(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

// Gaussian elimination with partial structure kept exact; returns the rank
// and leaves `m` in row-echelon form. Pivots are chosen as the first nonzero
// entry of each column for determinism.
inline std::size_t echelonize(RationalMatrix& m) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (m[r][col] == 0) continue;
            Rational factor = m[r][col] / m[rank][col];
            for (std::size_t c = col; c < cols; ++c)
                m[r][c] -= factor * m[rank][c];
        }
        ++rank;
    }
    return rank;
}

inline std::size_t rank(RationalMatrix m) { return echelonize(m); }

inline Rational det(RationalMatrix m) {
    std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw domain_error("determinant of a non-square matrix");
    Rational result(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) return Rational(0);
        if (pivot != col) { std::swap(m[pivot], m[col]); result = -result; }
        result *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            Rational factor = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c)
                m[r][c] -= factor * m[col][c];
        }
    }
    return result;
}

// Solves A x = b; nullopt when inconsistent. Free variables are set to 0, so
// underdetermined systems get the deterministic minimal-support solution of
// this elimination order.
inline std::optional<RationalRow> solve(RationalMatrix a, RationalRow b) {
    std::size_t rows = a.size();
    if (b.size() != rows) throw domain_error("solve: rhs length mismatch");
    std::size_t cols = rows == 0 ? 0 : a[0].size();

    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[rank], a[pivot]);
        std::swap(b[rank], b[pivot]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            Rational factor = a[r][col] / a[rank][col];
            for (std::size_t c = col; c < cols; ++c)
                a[r][c] -= factor * a[rank][c];
            b[r] -= factor * b[rank];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (std::size_t r = rank; r < rows; ++r)
        if (b[r] != 0) return std::nullopt;

    RationalRow x(cols, Rational(0));
    for (std::size_t r = 0; r < rank; ++r)
        x[pivot_col[r]] = b[r] / a[r][pivot_col[r]];
    return x;
}

inline std::optional<RationalMatrix> invert(const RationalMatrix& a) {
    std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw domain_error("invert: non-square matrix");
    RationalMatrix work = a;
    RationalMatrix inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && work[pivot][col] == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(work[pivot], work[col]);
        std::swap(inv[pivot], inv[col]);
        Rational p = work[col][col];
        for (std::size_t c = 0; c < n; ++c) { work[col][c] /= p; inv[col][c] /= p; }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || work[r][col] == 0) continue;
            Rational factor = work[r][col];
            for (std::size_t c = 0; c < n; ++c) {
                work[r][c] -= factor * work[col][c];
                inv[r][c] -= factor * inv[col][c];
            }
        }
    }
    return inv;
}

inline RationalRow mat_vec(const RationalMatrix& a, const RationalRow& x) {
    RationalRow y(a.size(), Rational(0));
    for (std::size_t r = 0; r < a.size(); ++r) {
        if (a[r].size() != x.size()) throw domain_error("mat_vec: dimension mismatch");
        for (std::size_t c = 0; c < x.size(); ++c)
            if (a[r][c] != 0 && x[c] != 0) y[r] += a[r][c] * x[c];
    }
    return y;
}

inline RationalMatrix mat_mul(const RationalMatrix& a, const RationalMatrix& b) {
    std::size_t n = a.size(), k = b.size(), m = k == 0 ? 0 : b[0].size();
    RationalMatrix c = zeros(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != k) throw domain_error("mat_mul: dimension mismatch");
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (std::size_t j = 0; j < m; ++j)
                if (b[t][j] != 0) c[i][j] += a[i][t] * b[t][j];
        }
    }
    return c;
}

} // namespace linalg
} // namespace simplexforge
