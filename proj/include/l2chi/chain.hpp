#ifndef L2CHI_CHAIN_HPP
#define L2CHI_CHAIN_HPP

#include "l2chi/fox.hpp"
#include "l2chi/group_ring.hpp"
#include "l2chi/presentation.hpp"
#include "l2chi/quotient.hpp"

#include <map>
#include <vector>

namespace l2chi {

// Chain complex of free modules over the group ring: dims (n_0 .. n_k) and boundary
// matrices, boundary[i-1] of shape n_i x n_{i-1}, acting by right multiplication on
// row vectors.
struct ChainComplex {
    std::vector<int> dims;
    std::vector<GrMat> boundaries; // boundaries[i] maps degree i+1 to degree i

    int degrees() const { return static_cast<int>(dims.size()); }

    void check_shapes() const {
        if (dims.empty()) throw input_error("chain complex has no modules");
        if (boundaries.size() + 1 != dims.size()) throw input_error("boundary count mismatch");
        for (std::size_t i = 0; i < boundaries.size(); ++i) {
            if (boundaries[i].rows != dims[i + 1] || boundaries[i].cols != dims[i])
                throw input_error("boundary " + std::to_string(i + 1) + " has wrong shape");
        }
    }
};

// Two-step complex of a presentation: d1 is the column (1 - x_j), d2 the Fox matrix
// d(r_i)/d(x_j).
inline ChainComplex presentation_complex(const Presentation& p) {
    ChainComplex c;
    c.dims = {1, p.ngens};
    GrMat d1(p.ngens, 1);
    for (int j = 0; j < p.ngens; ++j)
        d1.at(j, 0) = GRE(Int(1)) - GRE(Word::generator(j));
    c.boundaries.push_back(std::move(d1));
    if (!p.relators.empty()) {
        c.dims.push_back(static_cast<int>(p.relators.size()));
        GrMat d2(static_cast<int>(p.relators.size()), p.ngens);
        for (std::size_t i = 0; i < p.relators.size(); ++i)
            for (int j = 0; j < p.ngens; ++j)
                d2.at(static_cast<int>(i), j) = fox_derivative(p.relators[i], j);
        c.boundaries.push_back(std::move(d2));
    }
    return c;
}

// Combinatorial Laplacians: one square matrix per degree,
//   L_n = B_n B_n^* + B_{n+1}^* B_{n+1}
// in the row-action convention (B_i the matrix of boundary_i, * = entrywise-adjoint
// transpose). Each is formally self-adjoint.
inline std::vector<GrMat> laplacians(const ChainComplex& c) {
    c.check_shapes();
    std::vector<GrMat> out;
    int k = static_cast<int>(c.boundaries.size());
    for (int n = 0; n <= k; ++n) {
        GrMat l(c.dims[static_cast<std::size_t>(n)], c.dims[static_cast<std::size_t>(n)]);
        if (n >= 1) {
            const GrMat& b = c.boundaries[static_cast<std::size_t>(n - 1)];
            l = mat_add(l, mat_mul(b, mat_adjoint(b)));
        }
        if (n < k) {
            const GrMat& b = c.boundaries[static_cast<std::size_t>(n)];
            l = mat_add(l, mat_mul(mat_adjoint(b), b));
        }
        out.push_back(std::move(l));
    }
    return out;
}

namespace detail {
// Entry of a matrix over the finite-quotient group algebra.
using QAlgElem = std::map<QElem, Int>;

inline void qalg_add(QAlgElem& a, const QElem& g, const Int& c) {
    auto it = a.find(g);
    if (it == a.end()) {
        if (c != 0) a.emplace(g, c);
    } else {
        it->second += c;
        if (it->second == 0) a.erase(it);
    }
}

inline QAlgElem push_entry(const GRE& e, const FiniteQuotient& q) {
    QAlgElem r;
    for (auto& [w, c] : e.terms) qalg_add(r, q.eval(w), c);
    return r;
}
} // namespace detail

// True iff every composite boundary maps to zero over the quotient group algebra.
inline bool validate_boundary(const ChainComplex& c, const FiniteQuotient& q) {
    c.check_shapes();
    using detail::QAlgElem;
    for (std::size_t i = 0; i + 1 < c.boundaries.size(); ++i) {
        const GrMat& hi = c.boundaries[i + 1]; // degree i+2 -> i+1
        const GrMat& lo = c.boundaries[i];     // degree i+1 -> i
        for (int r = 0; r < hi.rows; ++r)
            for (int col = 0; col < lo.cols; ++col) {
                QAlgElem acc;
                for (int m = 0; m < hi.cols; ++m) {
                    QAlgElem x = detail::push_entry(hi.at(r, m), q);
                    QAlgElem y = detail::push_entry(lo.at(m, col), q);
                    for (auto& [gx, cx] : x)
                        for (auto& [gy, cy] : y) detail::qalg_add(acc, q.mul(gx, gy), cx * cy);
                }
                if (!acc.empty()) return false;
            }
    }
    return true;
}

} // namespace l2chi

#endif
