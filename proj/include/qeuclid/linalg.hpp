#pragma once

// Dense exact linear algebra over a field type T (Scalar or Gauss).

#include "qeuclid/field.hpp"

#include <cstddef>
#include <vector>

namespace qeuclid {

template <class T>
using DenseMatrix = std::vector<std::vector<T>>;

/// Reduces m in place to reduced row echelon form. Columns are visited in the
/// order given by column_order (all columns when empty). Returns pivot columns
/// in row order; rows past the rank are zero.
template <class T>
std::vector<std::size_t> row_reduce(DenseMatrix<T>& m, const std::vector<std::size_t>& column_order = {})
{
    std::vector<std::size_t> order = column_order;
    if (order.empty() && !m.empty()) {
        for (std::size_t c = 0; c < m[0].size(); ++c) {
            order.push_back(c);
        }
    }
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col : order) {
        if (row >= m.size()) {
            break;
        }
        std::size_t sel = row;
        while (sel < m.size() && is_zero(m[sel][col])) {
            ++sel;
        }
        if (sel == m.size()) {
            continue;
        }
        std::swap(m[row], m[sel]);
        T inv = T(1) / m[row][col];
        for (auto& v : m[row]) {
            if (!is_zero(v)) {
                v *= inv;
            }
        }
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || is_zero(m[r][col])) {
                continue;
            }
            T factor = m[r][col];
            for (std::size_t c = 0; c < m[r].size(); ++c) {
                if (!is_zero(m[row][c])) {
                    m[r][c] -= factor * m[row][c];
                }
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class T>
std::size_t matrix_rank(DenseMatrix<T> m)
{
    return row_reduce(m).size();
}

}  // namespace qeuclid
