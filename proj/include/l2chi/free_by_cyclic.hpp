#ifndef L2CHI_FREE_BY_CYCLIC_HPP
#define L2CHI_FREE_BY_CYCLIC_HPP

#include "l2chi/presentation.hpp"
#include "l2chi/word.hpp"

#include <string>
#include <vector>

namespace l2chi {

// Automorphism of a free group, stored by generator images.
struct FreeAutomorphism {
    int rank = 0;
    std::vector<Word> images;

    static FreeAutomorphism identity(int n) {
        FreeAutomorphism a;
        a.rank = n;
        for (int i = 0; i < n; ++i) a.images.push_back(Word::generator(i));
        return a;
    }

    Word apply(const Word& w) const {
        Word r;
        for (auto& [g, e] : w.syl)
            r = word_concat(r, word_pow(images[static_cast<std::size_t>(g)], e));
        return r;
    }
};

// tau_i inverts x_i.
inline FreeAutomorphism aut_tau(int n, int i) {
    FreeAutomorphism a = FreeAutomorphism::identity(n);
    a.images[static_cast<std::size_t>(i)] = Word::generator(i, -1);
    return a;
}

// sigma_{i,j} swaps x_i and x_j.
inline FreeAutomorphism aut_sigma(int n, int i, int j) {
    FreeAutomorphism a = FreeAutomorphism::identity(n);
    a.images[static_cast<std::size_t>(i)] = Word::generator(j);
    a.images[static_cast<std::size_t>(j)] = Word::generator(i);
    return a;
}

// eta_{i,j} sends x_i -> x_j^-1 x_i, x_j -> x_j^-1.
inline FreeAutomorphism aut_eta(int n, int i, int j) {
    if (i == j) throw input_error("eta requires distinct indices");
    FreeAutomorphism a = FreeAutomorphism::identity(n);
    a.images[static_cast<std::size_t>(i)] = word_concat(Word::generator(j, -1), Word::generator(i));
    a.images[static_cast<std::size_t>(j)] = Word::generator(j, -1);
    return a;
}

// Left factor applied first: (f . g)(w) = g(f(w)).
inline FreeAutomorphism compose(const FreeAutomorphism& f, const FreeAutomorphism& g) {
    if (f.rank != g.rank) throw input_error("rank mismatch in composition");
    FreeAutomorphism r;
    r.rank = f.rank;
    for (auto& im : f.images) r.images.push_back(g.apply(im));
    return r;
}

struct ElementaryAut {
    char kind; // 't' | 's' | 'e'
    int i = 0, j = 0;
};

inline FreeAutomorphism make_elementary(int n, const ElementaryAut& e) {
    auto check = [&](int v) {
        if (v < 0 || v >= n) throw input_error("automorphism index out of range");
    };
    switch (e.kind) {
        case 't': check(e.i); return aut_tau(n, e.i);
        case 's': check(e.i); check(e.j); return aut_sigma(n, e.i, e.j);
        case 'e': check(e.i); check(e.j); return aut_eta(n, e.i, e.j);
    }
    throw input_error("unknown elementary automorphism");
}

inline FreeAutomorphism compose_elementaries(int n, const std::vector<ElementaryAut>& gens) {
    FreeAutomorphism a = FreeAutomorphism::identity(n);
    for (auto& e : gens) a = compose(a, make_elementary(n, e));
    return a;
}

// Canonical presentation of F_n x|_phi Z: generators x_0..x_{n-1} and the stable
// letter t as generator n; relators t x_i t^-1 phi(x_i)^-1.
inline Presentation free_by_cyclic(int n, const FreeAutomorphism& phi) {
    if (phi.rank != n) throw input_error("automorphism rank mismatch");
    std::vector<Word> rels;
    Word t = Word::generator(n);
    for (int i = 0; i < n; ++i) {
        Word r = word_concat(word_concat(word_concat(t, Word::generator(i)), word_inverse(t)),
                             word_inverse(phi.images[static_cast<std::size_t>(i)]));
        rels.push_back(r);
    }
    return Presentation(n + 1, rels);
}

inline Presentation free_by_cyclic(int n, const std::vector<ElementaryAut>& gens) {
    return free_by_cyclic(n, compose_elementaries(n, gens));
}

} // namespace l2chi

#endif
