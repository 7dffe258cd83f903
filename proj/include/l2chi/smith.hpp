#ifndef L2CHI_SMITH_HPP
#define L2CHI_SMITH_HPP

#include "l2chi/numeric.hpp"

#include <algorithm>
#include <vector>

namespace l2chi {

using IMat = std::vector<std::vector<Int>>;

inline IMat imat_identity(std::size_t n) {
    IMat m(n, std::vector<Int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IMat imat_mul(const IMat& a, const IMat& b) {
    std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    IMat r(n, std::vector<Int>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
        }
    return r;
}

struct SmithResult {
    IMat u, v;             // unimodular, u*r*v = diag(s)
    std::vector<Int> s;    // diagonal, s[i] >= 0, s[i] | s[i+1] where nonzero
};

// Smith normal form of a k x r integer matrix.
inline SmithResult smith_normal_form(IMat a) {
    std::size_t k = a.size(), r = k ? a[0].size() : 0;
    SmithResult res;
    res.u = imat_identity(k);
    res.v = imat_identity(r);
    std::size_t n = std::min(k, r);

    auto row_op = [&](std::size_t i, std::size_t j, const Int& q) { // row_i -= q*row_j
        for (std::size_t c = 0; c < r; ++c) a[i][c] -= q * a[j][c];
        for (std::size_t c = 0; c < k; ++c) res.u[i][c] -= q * res.u[j][c];
    };
    auto col_op = [&](std::size_t i, std::size_t j, const Int& q) { // col_i -= q*col_j
        for (std::size_t x = 0; x < k; ++x) a[x][i] -= q * a[x][j];
        for (std::size_t x = 0; x < r; ++x) res.v[x][i] -= q * res.v[x][j];
    };
    auto row_swap = [&](std::size_t i, std::size_t j) {
        std::swap(a[i], a[j]);
        std::swap(res.u[i], res.u[j]);
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        for (std::size_t x = 0; x < k; ++x) std::swap(a[x][i], a[x][j]);
        for (std::size_t x = 0; x < r; ++x) std::swap(res.v[x][i], res.v[x][j]);
    };

    for (std::size_t t = 0; t < n; ++t) {
        // pivot: smallest nonzero |entry| in the trailing submatrix
        std::size_t pi = t, pj = t;
        bool found = false;
        Int best = 0;
        for (std::size_t i = t; i < k; ++i)
            for (std::size_t j = t; j < r; ++j) {
                if (a[i][j] == 0) continue;
                Int v = a[i][j] < 0 ? Int(-a[i][j]) : a[i][j];
                if (!found || v < best) { found = true; best = v; pi = i; pj = j; }
            }
        if (!found) break;
        if (pi != t) row_swap(pi, t);
        if (pj != t) col_swap(pj, t);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < k; ++i) {
                if (a[i][t] == 0) continue;
                Int q = a[i][t] / a[t][t];
                row_op(i, t, q);
                if (a[i][t] != 0) { row_swap(i, t); clean = false; }
            }
            for (std::size_t j = t + 1; j < r; ++j) {
                if (a[t][j] == 0) continue;
                Int q = a[t][j] / a[t][t];
                col_op(j, t, q);
                if (a[t][j] != 0) { col_swap(j, t); clean = false; }
            }
        }

        // divisibility fixup: pivot must divide every later entry
        bool redo = false;
        for (std::size_t i = t + 1; i < k && !redo; ++i)
            for (std::size_t j = t + 1; j < r && !redo; ++j)
                if (a[i][j] % a[t][t] != 0) {
                    // fold row i into row t and restart this pivot
                    row_op(t, i, Int(-1));
                    redo = true;
                }
        if (redo) { --t; continue; }
    }

    for (std::size_t t = 0; t < n; ++t) {
        if (a[t][t] < 0) {
            for (std::size_t c = 0; c < r; ++c) a[t][c] = -a[t][c];
            for (std::size_t c = 0; c < k; ++c) res.u[t][c] = -res.u[t][c];
        }
        res.s.push_back(a[t][t]);
    }
    return res;
}

// Triangular basis of the row lattice of `a` (square, assumed of full row-lattice rank
// after the caller appends modulus rows). Row t has its pivot on column t, pivot > 0.
inline IMat hnf_row_basis(IMat a, std::size_t ncols) {
    std::vector<std::vector<Int>> rows;
    for (auto& row : a) rows.push_back(row);
    IMat basis;
    for (std::size_t c = 0; c < ncols; ++c) {
        // combine all rows with support starting at column c into a single pivot row
        std::vector<Int> pivot;
        for (auto it = rows.begin(); it != rows.end();) {
            if ((*it)[c] == 0) { ++it; continue; }
            if (pivot.empty()) {
                pivot = *it;
                it = rows.erase(it);
                continue;
            }
            // euclid on the leading entries
            Int x, y;
            Int g = ext_gcd(pivot[c], (*it)[c], x, y);
            std::vector<Int> comb(ncols, 0);
            for (std::size_t j = 0; j < ncols; ++j) comb[j] = x * pivot[j] + y * (*it)[j];
            Int q1 = pivot[c] / g, q2 = (*it)[c] / g;
            std::vector<Int> other(ncols, 0);
            for (std::size_t j = 0; j < ncols; ++j) other[j] = q2 * pivot[j] - q1 * (*it)[j];
            pivot = comb;
            *it = other; // leading entry now zero at c
            ++it;
        }
        if (!pivot.empty()) {
            if (pivot[c] < 0)
                for (auto& e : pivot) e = -e;
            basis.push_back(pivot);
        } else {
            basis.push_back(std::vector<Int>(ncols, 0));
        }
    }
    return basis;
}

} // namespace l2chi

#endif
