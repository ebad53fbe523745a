#include "torfan/linalg.hpp"

#include <cassert>

namespace torfan {

Int det(const IntMat& m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return 1;
    IntMat a = m;
    Int prev = 1;
    int sgn = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) { piv = i; break; }
            if (piv < 0) return 0;
            std::swap(a[k], a[piv]);
            sgn = -sgn;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sgn > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

namespace {

// Row-reduce [a | b]; returns pivot column of each pivot row.
std::vector<int> eliminate(RatMat& a, int rows, int cols) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(a[r], a[piv]);
        Rat inv = a[r][c];
        for (auto& x : a[r]) x /= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (size_t j = c; j < a[i].size(); ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::optional<RatVec> solve_square(RatMat a, RatVec b) {
    const int n = static_cast<int>(a.size());
    for (int i = 0; i < n; ++i) a[i].push_back(b[i]);
    auto pivots = eliminate(a, n, n);
    if (static_cast<int>(pivots.size()) < n) return std::nullopt;
    RatVec x(n);
    for (int i = 0; i < n; ++i) x[pivots[i]] = a[i][n];
    return x;
}

std::optional<RatVec> solve_general(RatMat a, RatVec b) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    for (int i = 0; i < rows; ++i) a[i].push_back(b[i]);
    auto pivots = eliminate(a, rows, cols);
    for (int i = static_cast<int>(pivots.size()); i < rows; ++i)
        if (a[i][cols] != 0) return std::nullopt;
    RatVec x(cols);
    for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = a[i][cols];
    return x;
}

int rank(RatMat a) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    return static_cast<int>(eliminate(a, rows, cols).size());
}

std::vector<RatVec> nullspace(RatMat a) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    auto pivots = eliminate(a, rows, cols);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        RatVec v(cols);
        v[c] = 1;
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

IntMat unimodular_extension(const std::vector<IntVec>& cols, int n) {
    const int k = static_cast<int>(cols.size());
    // u starts as the identity; h is the working copy of the columns.
    IntMat u(n, IntVec(n));
    for (int i = 0; i < n; ++i) u[i][i] = 1;
    IntMat h(n, IntVec(k));
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < n; ++i) h[i][j] = cols[j][i];

    auto row_op = [&](int dst, int src, const Int& f) {
        // row dst -= f * row src, applied to both h and u
        for (int j = 0; j < k; ++j) h[dst][j] -= f * h[src][j];
        for (int j = 0; j < n; ++j) u[dst][j] -= f * u[src][j];
    };
    auto row_swap = [&](int i, int j) {
        std::swap(h[i], h[j]);
        std::swap(u[i], u[j]);
    };
    auto row_neg = [&](int i) {
        for (auto& x : h[i]) x = -x;
        for (auto& x : u[i]) x = -x;
    };

    for (int c = 0; c < k; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (h[i][c] != 0) { piv = i; break; }
        if (piv < 0) throw FanError("unimodular_extension: dependent columns");
        if (piv != c) row_swap(c, piv);
        // Euclidean reduction of column c below the pivot.
        for (;;) {
            int best = -1;
            for (int i = c + 1; i < n; ++i)
                if (h[i][c] != 0 &&
                    (best < 0 ||
                     abs(h[i][c]) < abs(h[best][c])))
                    best = i;
            if (best < 0) break;
            if (abs(h[best][c]) < abs(h[c][c])) row_swap(c, best);
            for (int i = c + 1; i < n; ++i) {
                if (h[i][c] == 0) continue;
                Int q = h[i][c] / h[c][c];
                if (q != 0) row_op(i, c, q);
            }
        }
        if (h[c][c] < 0) row_neg(c);
        if (h[c][c] != 1)
            throw FanError("unimodular_extension: columns are not part of a lattice basis");
        for (int i = 0; i < c; ++i)
            if (h[i][c] != 0) row_op(i, c, h[i][c]);
    }
    return u;
}

IntVec mat_apply(const IntMat& m, const IntVec& v) {
    IntVec out(m.size());
    for (size_t i = 0; i < m.size(); ++i) {
        Int s = 0;
        for (size_t j = 0; j < v.size(); ++j) s += m[i][j] * v[j];
        out[i] = s;
    }
    return out;
}

}  // namespace torfan
