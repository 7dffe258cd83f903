#ifndef L2CHI_FOX_HPP
#define L2CHI_FOX_HPP

#include "l2chi/group_ring.hpp"
#include "l2chi/presentation.hpp"

namespace l2chi {

// Fox derivative d(w)/d(x_j): d(uv) = du + u dv, d(x_j)/d(x_j) = 1,
// d(x_j^-1)/d(x_j) = -x_j^-1, d(x_i)/d(x_j) = 0 for i != j.
inline GRE fox_derivative(const Word& w, int j) {
    GRE r;
    Word prefix;
    for (auto& [g, e] : w.syl) {
        if (g == j) {
            if (e > 0) {
                for (std::int64_t t = 0; t < e; ++t)
                    r.add_term(word_concat(prefix, Word::generator(g, t)), 1);
            } else {
                for (std::int64_t t = 1; t <= -e; ++t)
                    r.add_term(word_concat(prefix, Word::generator(g, -t)), -1);
            }
        }
        prefix = word_concat(prefix, Word::generator(g, e));
    }
    return r;
}

} // namespace l2chi

#endif
