#pragma once

#include <optional>
#include <vector>

#include "twistlab/errors.hpp"

namespace twistlab::linalg {

template <typename F>
using Matrix = std::vector<std::vector<F>>;

/// Rank by Gaussian elimination over an exact field (Rational or Scalar).
template <typename F>
std::size_t rank(Matrix<F> m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && m[pivot][c].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[r], m[pivot]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m[i][c].is_zero()) continue;
            F f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

/// Solves a x = b for a consistent system with full column rank; returns
/// nullopt when the system is inconsistent.
template <typename F>
std::optional<std::vector<F>> solve(Matrix<F> a, std::vector<F> b) {
    const std::size_t rows = a.size();
    if (rows == 0 || rows != b.size()) throw DimensionMismatch("linalg::solve shape");
    const std::size_t cols = a[0].size();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && a[pivot][c].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[r], a[pivot]);
        std::swap(b[r], b[pivot]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            F f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (!b[i].is_zero()) return std::nullopt;
    if (pivot_col.size() != cols) throw Error("linalg::solve: column rank deficient");
    std::vector<F> x(cols);
    for (std::size_t i = 0; i < cols; ++i) x[pivot_col[i]] = b[i] / a[i][pivot_col[i]];
    return x;
}

} // namespace twistlab::linalg
