#ifndef L2CHI_PRESENTATION_HPP
#define L2CHI_PRESENTATION_HPP

#include "l2chi/group_ring.hpp"
#include "l2chi/smith.hpp"
#include "l2chi/word.hpp"

#include <cstdlib>
#include <string>
#include <vector>

namespace l2chi {

// Finitely presented group. Relators are stored freely reduced, exactly as given:
// boundary matrices built from them must match their source form, and Fox derivatives
// are not invariant under cyclic rotation.
struct Presentation {
    int ngens = 0;
    std::vector<Word> relators;

    Presentation() = default;
    Presentation(int n, std::vector<Word> rels) : ngens(n), relators(std::move(rels)) {
        for (auto& r : relators)
            for (auto& s : r.syl)
                if (s.first < 0 || s.first >= ngens) throw input_error("relator uses undeclared generator");
    }
};

inline Word cyclically_reduce(Word w) {
    // A reduced word never has two adjacent syllables on the same generator, so whenever
    // the first and last generators agree the word has at least three syllables.
    while (w.syl.size() >= 2) {
        auto& f = w.syl.front();
        auto& l = w.syl.back();
        if (f.first != l.first || (f.second > 0) == (l.second > 0)) break;
        std::int64_t af = f.second < 0 ? -f.second : f.second;
        std::int64_t al = l.second < 0 ? -l.second : l.second;
        std::int64_t t = af < al ? af : al;
        f.second -= (f.second > 0 ? t : -t);
        l.second -= (l.second > 0 ? t : -t);
        if (l.second == 0) w.syl.pop_back();
        if (f.second == 0) w.syl.erase(w.syl.begin());
    }
    return w;
}

// Presentation with every relator cyclically reduced (conjugation-normalized).
inline Presentation normalized(const Presentation& p) {
    std::vector<Word> rels;
    rels.reserve(p.relators.size());
    for (auto& r : p.relators) rels.push_back(cyclically_reduce(r));
    return Presentation(p.ngens, rels);
}

// Abelianization data. With R the relator exponent matrix (one row per relator) and
// U R V = diag(s), the class of generator j has Smith coordinates row j of V, where
// coordinate i lives in Z/s_i (s_i = 0 meaning a free Z coordinate).
struct AbelianStructure {
    int ngens = 0;
    IMat relmat;           // #relators x ngens
    IMat u, v;             // Smith transforms
    std::vector<Int> s;    // Smith diagonal, padded to length ngens with zeros
    int free_rank = 0;
    std::vector<Int> torsion;        // moduli > 1
    std::vector<int> free_coords;    // coordinate indices with modulus 0

    Int coordinate(int gen, int coord) const { return v[static_cast<std::size_t>(gen)][static_cast<std::size_t>(coord)]; }
};

inline AbelianStructure abelianize(const Presentation& p) {
    AbelianStructure ab;
    ab.ngens = p.ngens;
    std::size_t k = p.relators.size(), r = static_cast<std::size_t>(p.ngens);
    ab.relmat.assign(k, std::vector<Int>(r, 0));
    for (std::size_t i = 0; i < k; ++i)
        for (auto& syl : p.relators[i].syl)
            ab.relmat[i][static_cast<std::size_t>(syl.first)] += syl.second;
    SmithResult sm = smith_normal_form(ab.relmat);
    ab.u = std::move(sm.u);
    ab.v = std::move(sm.v);
    ab.s = std::move(sm.s);
    ab.s.resize(r, Int(0));
    for (std::size_t i = 0; i < r; ++i) {
        if (ab.s[i] == 0) {
            ab.free_coords.push_back(static_cast<int>(i));
        } else if (ab.s[i] > 1) {
            ab.torsion.push_back(ab.s[i]);
        }
    }
    ab.free_rank = static_cast<int>(ab.free_coords.size());
    return ab;
}

// Integer character of the presented group, stored as its primitive part together with
// the extracted positive common divisor d. The zero character is kept with d = 0.
struct Character {
    std::vector<std::int64_t> images; // per generator, primitive (or all zero)
    Int d = 0;
    bool zero = true;

    std::int64_t operator()(const Word& w) const { return word_weight(w, images); }
};

inline Character make_character_from_images(const Presentation& p, std::vector<std::int64_t> images) {
    if (static_cast<int>(images.size()) != p.ngens) throw input_error("character image count mismatch");
    for (auto& r : p.relators) {
        if (word_weight(r, images) != 0)
            throw input_error("images do not vanish on relator " + word_str(r));
    }
    Character ch;
    Int g = 0;
    for (auto v : images) g = int_gcd(g, Int(v));
    if (g == 0) {
        ch.images.assign(images.size(), 0);
        ch.d = 0;
        ch.zero = true;
        return ch;
    }
    std::int64_t gi = static_cast<std::int64_t>(g);
    for (auto& v : images) v /= gi;
    ch.images = std::move(images);
    ch.d = g;
    ch.zero = false;
    return ch;
}

// Coordinate mode: v is expressed on the free Smith coordinates of ab(G), in order.
inline Character make_character_from_coords(const Presentation& p, const AbelianStructure& ab,
                                            const std::vector<std::int64_t>& coords) {
    if (ab.free_rank < 1) throw input_error("group has no free abelianized part");
    if (static_cast<int>(coords.size()) != ab.free_rank)
        throw input_error("coordinate count does not match free rank");
    std::vector<std::int64_t> images(static_cast<std::size_t>(p.ngens), 0);
    for (int j = 0; j < p.ngens; ++j) {
        Int acc = 0;
        for (int i = 0; i < ab.free_rank; ++i)
            acc += Int(coords[static_cast<std::size_t>(i)]) * ab.coordinate(j, ab.free_coords[static_cast<std::size_t>(i)]);
        images[static_cast<std::size_t>(j)] = static_cast<std::int64_t>(acc);
    }
    return make_character_from_images(p, images);
}

// A word x with phi(x) = 1, built from an integer combination of generators.
inline Word find_lift(const Presentation& p, const Character& phi) {
    if (phi.zero) throw input_error("zero character has no lift");
    // extended gcd across the image vector
    std::vector<Int> coef(static_cast<std::size_t>(p.ngens), 0);
    Int g = 0;
    for (int j = 0; j < p.ngens; ++j) {
        Int a = phi.images[static_cast<std::size_t>(j)];
        if (a == 0) continue;
        if (g == 0) {
            coef[static_cast<std::size_t>(j)] = a > 0 ? 1 : -1;
            g = a > 0 ? a : Int(-a);
            continue;
        }
        Int x, y;
        Int g2 = ext_gcd(g, a, x, y);
        for (auto& c : coef) c *= x;
        coef[static_cast<std::size_t>(j)] = y;
        g = g2;
        if (g == 1) break;
    }
    if (g != 1) throw compute_error("character is not primitive");
    Word w;
    for (int j = 0; j < p.ngens; ++j)
        if (coef[static_cast<std::size_t>(j)] != 0)
            w = word_concat(w, word_pow(Word::generator(j), static_cast<std::int64_t>(coef[static_cast<std::size_t>(j)])));
    if (word_weight(w, phi.images) != 1) throw compute_error("lift construction failed");
    return w;
}

} // namespace l2chi

#endif
