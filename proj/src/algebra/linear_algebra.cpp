#include "twistfold/linear_algebra.hpp"

namespace twistfold {

std::optional<ScalarMatrix> invert(const ScalarMatrix& a) {
    size_t n = a.size();
    ScalarMatrix m = a, inv(n, std::vector<Scalar>(n));
    for (size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) return std::nullopt;
        inv[i][i] = Scalar(1);
    }
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        Scalar s = m[col][col].inverse();
        for (size_t j = 0; j < n; ++j) {
            m[col][j] *= s;
            inv[col][j] *= s;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col].is_zero()) continue;
            Scalar f = m[r][col];
            for (size_t j = 0; j < n; ++j) {
                m[r][j] -= f * m[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

std::optional<std::vector<Scalar>> solve(const ScalarMatrix& a, const std::vector<Scalar>& b) {
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    ScalarMatrix m = a;
    for (size_t r = 0; r < rows; ++r) m[r].push_back(b[r]);
    std::vector<int> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && m[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        Scalar s = m[r][c].inverse();
        for (auto& v : m[r]) v *= s;
        for (size_t k = 0; k < rows; ++k) {
            if (k == r || m[k][c].is_zero()) continue;
            Scalar f = m[k][c];
            for (size_t j = c; j <= cols; ++j) m[k][j] -= f * m[r][j];
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    for (size_t k = r; k < rows; ++k)
        if (!m[k][cols].is_zero()) return std::nullopt;
    std::vector<Scalar> x(cols);
    for (size_t k = 0; k < pivot_col.size(); ++k) x[pivot_col[k]] = m[k][cols];
    return x;
}

int rank(const ScalarMatrix& a) {
    ScalarMatrix m = a;
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && m[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        for (size_t k = r + 1; k < rows; ++k) {
            if (m[k][c].is_zero()) continue;
            Scalar f = m[k][c] / m[r][c];
            for (size_t j = c; j < cols; ++j) m[k][j] -= f * m[r][j];
        }
        ++r;
    }
    return static_cast<int>(r);
}

}  // namespace twistfold
