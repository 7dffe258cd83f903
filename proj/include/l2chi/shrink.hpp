#ifndef L2CHI_SHRINK_HPP
#define L2CHI_SHRINK_HPP

#include "l2chi/group_ring.hpp"

#include <utility>
#include <vector>

namespace l2chi {

struct ShrinkResult {
    GrMat mat;
    int pivots = 0;
};

// Gaussian shrink on unit entries (+/- a single word): each pivot removes one row and
// one column and contributes |L| to the rank of the regular representation. Scan order
// is fixed so results are reproducible.
inline ShrinkResult unit_shrink(GrMat b) {
    int pivots = 0;
    while (true) {
        int pi = -1, pj = -1;
        Word pw;
        int psign = 1;
        for (int i = 0; i < b.rows && pi < 0; ++i)
            for (int j = 0; j < b.cols; ++j) {
                auto u = b.at(i, j).as_unit();
                if (u) {
                    pi = i;
                    pj = j;
                    pw = u->first;
                    psign = u->second;
                    break;
                }
            }
        if (pi < 0) break;
        // eliminate column pj using row pi; pivot entry is psign * pw
        Word winv = word_inverse(pw);
        for (int i = 0; i < b.rows; ++i) {
            if (i == pi || b.at(i, pj).is_zero()) continue;
            GRE factor = ring_mul(b.at(i, pj), GRE(winv, Int(psign))); // b[i][pj] * pivot^-1
            for (int j = 0; j < b.cols; ++j) {
                if (j == pj || b.at(pi, j).is_zero()) continue;
                GRE delta = ring_mul(factor, b.at(pi, j));
                b.at(i, j) = b.at(i, j) - delta;
            }
            b.at(i, pj) = GRE();
        }
        // drop row pi and column pj
        GrMat nb(b.rows - 1, b.cols - 1);
        for (int i = 0, ni = 0; i < b.rows; ++i) {
            if (i == pi) continue;
            for (int j = 0, nj = 0; j < b.cols; ++j) {
                if (j == pj) continue;
                nb.at(ni, nj) = std::move(b.at(i, j));
                ++nj;
            }
            ++ni;
        }
        b = std::move(nb);
        ++pivots;
    }
    return {std::move(b), pivots};
}

} // namespace l2chi

#endif
