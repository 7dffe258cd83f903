#ifndef L2CHI_QUOTIENT_HPP
#define L2CHI_QUOTIENT_HPP

#include "l2chi/presentation.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace l2chi {

// Element of a finite quotient group, in a canonical encoding:
//   trivial      -> empty vector
//   abelian      -> residue per coordinate, 0 <= r < modulus
//   permutation  -> image list of a permutation on {0..n-1}
using QElem = std::vector<std::int32_t>;

struct FiniteQuotient {
    enum class Kind { trivial, abelian, permutation };
    Kind kind = Kind::trivial;
    int ngens = 0;

    // abelian data
    std::vector<std::int64_t> moduli;          // per coordinate, each >= 2
    std::vector<std::vector<std::int64_t>> gen_coords; // per generator, residues

    // permutation data
    int npoints = 0;
    std::vector<QElem> gen_perms;

    QElem identity() const {
        switch (kind) {
            case Kind::trivial: return {};
            case Kind::abelian: return QElem(moduli.size(), 0);
            case Kind::permutation: {
                QElem e(static_cast<std::size_t>(npoints));
                for (int i = 0; i < npoints; ++i) e[static_cast<std::size_t>(i)] = i;
                return e;
            }
        }
        return {};
    }

    QElem mul(const QElem& a, const QElem& b) const {
        switch (kind) {
            case Kind::trivial: return {};
            case Kind::abelian: {
                QElem r(moduli.size());
                for (std::size_t i = 0; i < moduli.size(); ++i) {
                    std::int64_t s = static_cast<std::int64_t>(a[i]) + b[i];
                    r[i] = static_cast<std::int32_t>(s % moduli[i]);
                }
                return r;
            }
            case Kind::permutation: {
                // right action composition: point p -> b[a[p]]
                QElem r(a.size());
                for (std::size_t i = 0; i < a.size(); ++i)
                    r[i] = b[static_cast<std::size_t>(a[i])];
                return r;
            }
        }
        return {};
    }

    QElem inv(const QElem& a) const {
        switch (kind) {
            case Kind::trivial: return {};
            case Kind::abelian: {
                QElem r(moduli.size());
                for (std::size_t i = 0; i < moduli.size(); ++i)
                    r[i] = static_cast<std::int32_t>(a[i] == 0 ? 0 : moduli[i] - a[i]);
                return r;
            }
            case Kind::permutation: {
                QElem r(a.size());
                for (std::size_t i = 0; i < a.size(); ++i)
                    r[static_cast<std::size_t>(a[i])] = static_cast<std::int32_t>(i);
                return r;
            }
        }
        return {};
    }

    QElem pow(QElem a, std::int64_t e) const {
        if (e < 0) { a = inv(a); e = -e; }
        QElem r = identity();
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    QElem generator_image(int g) const {
        switch (kind) {
            case Kind::trivial: return {};
            case Kind::abelian: {
                QElem r(moduli.size());
                for (std::size_t i = 0; i < moduli.size(); ++i) {
                    std::int64_t v = gen_coords[static_cast<std::size_t>(g)][i] % moduli[i];
                    if (v < 0) v += moduli[i];
                    r[i] = static_cast<std::int32_t>(v);
                }
                return r;
            }
            case Kind::permutation: return gen_perms[static_cast<std::size_t>(g)];
        }
        return {};
    }

    QElem eval(const Word& w) const {
        QElem r = identity();
        for (auto& [g, e] : w.syl) r = mul(r, pow(generator_image(g), e));
        return r;
    }

    Int group_order() const {
        switch (kind) {
            case Kind::trivial: return 1;
            case Kind::abelian: {
                Int o = 1;
                for (auto m : moduli) o *= m;
                return o;
            }
            case Kind::permutation: {
                // order of the subgroup generated by the images (closure; images are small)
                std::map<QElem, int> seen;
                std::vector<QElem> queue{identity()};
                seen.emplace(identity(), 0);
                for (std::size_t h = 0; h < queue.size(); ++h) {
                    for (int g = 0; g < ngens; ++g) {
                        QElem n = mul(queue[h], generator_image(g));
                        if (seen.emplace(n, 1).second) queue.push_back(n);
                    }
                }
                return Int(queue.size());
            }
        }
        return 1;
    }

    std::string describe() const {
        switch (kind) {
            case Kind::trivial: return "trivial";
            case Kind::abelian: {
                std::string s = "abelian(";
                for (std::size_t i = 0; i < moduli.size(); ++i) {
                    if (i) s += "x";
                    s += "Z/" + std::to_string(moduli[i]);
                }
                return s + ")";
            }
            case Kind::permutation: return "perm(deg=" + std::to_string(npoints) + ")";
        }
        return "?";
    }
};

inline bool relators_vanish(const FiniteQuotient& q, const Presentation& p) {
    QElem id = q.identity();
    for (auto& r : p.relators)
        if (q.eval(r) != id) return false;
    return true;
}

inline FiniteQuotient trivial_quotient(const Presentation& p) {
    FiniteQuotient q;
    q.kind = FiniteQuotient::Kind::trivial;
    q.ngens = p.ngens;
    return q;
}

// Quotient onto the product over the listed prime powers q = p^c of ab(G) (x) Z/q,
// composed through the Smith coordinates.
inline FiniteQuotient abelian_quotient(const Presentation& p, const AbelianStructure& ab,
                                       const std::vector<Int>& prime_powers) {
    FiniteQuotient q;
    q.kind = FiniteQuotient::Kind::abelian;
    q.ngens = p.ngens;
    q.gen_coords.assign(static_cast<std::size_t>(p.ngens), {});
    for (const Int& pc : prime_powers) {
        if (pc < 2) throw input_error("prime power must be at least 2");
        for (int i = 0; i < p.ngens; ++i) {
            const Int& si = ab.s[static_cast<std::size_t>(i)];
            Int m = si == 0 ? pc : int_gcd(si, pc);
            if (m <= 1) continue;
            q.moduli.push_back(static_cast<std::int64_t>(m));
            for (int g = 0; g < p.ngens; ++g) {
                Int c = ab.coordinate(g, i) % m;
                if (c < 0) c += m;
                q.gen_coords[static_cast<std::size_t>(g)].push_back(static_cast<std::int64_t>(c));
            }
        }
    }
    if (!relators_vanish(q, p)) throw compute_error("abelian quotient failed relator check");
    return q;
}

inline FiniteQuotient abelian_quotient(const Presentation& p, const std::vector<Int>& prime_powers) {
    return abelian_quotient(p, abelianize(p), prime_powers);
}

inline FiniteQuotient perm_quotient(const Presentation& p, const std::vector<QElem>& images) {
    if (static_cast<int>(images.size()) != p.ngens) throw input_error("need one permutation per generator");
    std::size_t n = images.empty() ? 1 : images[0].size();
    for (auto& im : images) {
        if (im.size() != n) throw input_error("permutations act on different point sets");
        std::vector<bool> seen(n, false);
        for (auto v : im) {
            if (v < 0 || static_cast<std::size_t>(v) >= n || seen[static_cast<std::size_t>(v)])
                throw input_error("invalid permutation");
            seen[static_cast<std::size_t>(v)] = true;
        }
    }
    FiniteQuotient q;
    q.kind = FiniteQuotient::Kind::permutation;
    q.ngens = p.ngens;
    q.npoints = static_cast<int>(n);
    q.gen_perms = images;
    if (!relators_vanish(q, p)) throw input_error("permutation images violate a relator");
    return q;
}

struct SearchResult {
    std::vector<FiniteQuotient> quotients; // surjections up to conjugacy, image size descending
    bool budget_exhausted = false;
};

// Enumerate generator-image tuples into S_n for n <= max_degree, keeping
// relator-respecting tuples with nontrivial image, deduplicated up to conjugacy.
inline SearchResult search_quotient(const Presentation& p, int max_degree, std::uint64_t budget) {
    if (max_degree < 1) throw input_error("max_degree must be >= 1");
    SearchResult out;
    std::uint64_t used = 0;
    std::vector<std::pair<Int, std::vector<QElem>>> found; // (image order, images) canonical reps
    std::vector<QElem> canon_seen;

    for (int n = 2; n <= max_degree; ++n) {
        // all permutations of degree n
        std::vector<QElem> sn;
        QElem base(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) base[static_cast<std::size_t>(i)] = i;
        QElem perm = base;
        do {
            sn.push_back(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));

        std::vector<std::size_t> idx(static_cast<std::size_t>(p.ngens), 0);
        bool done = p.ngens == 0;
        while (!done) {
            if (++used > budget) {
                out.budget_exhausted = true;
                break;
            }
            std::vector<QElem> images;
            images.reserve(idx.size());
            for (auto t : idx) images.push_back(sn[t]);
            bool nontrivial = false;
            for (auto& im : images)
                if (im != base) nontrivial = true;
            if (nontrivial) {
                FiniteQuotient q;
                q.kind = FiniteQuotient::Kind::permutation;
                q.ngens = p.ngens;
                q.npoints = n;
                q.gen_perms = images;
                if (relators_vanish(q, p)) {
                    // canonical form under simultaneous conjugation
                    QElem best;
                    for (auto& sigma : sn) {
                        QElem flat;
                        QElem sigma_inv(sigma.size());
                        for (std::size_t i = 0; i < sigma.size(); ++i)
                            sigma_inv[static_cast<std::size_t>(sigma[i])] = static_cast<std::int32_t>(i);
                        for (auto& im : images)
                            for (int pt = 0; pt < n; ++pt)
                                flat.push_back(sigma[static_cast<std::size_t>(
                                    im[static_cast<std::size_t>(sigma_inv[static_cast<std::size_t>(pt)])])]);
                        if (best.empty() || flat < best) best = flat;
                    }
                    if (std::find(canon_seen.begin(), canon_seen.end(), best) == canon_seen.end()) {
                        canon_seen.push_back(best);
                        found.emplace_back(q.group_order(), images);
                    }
                }
            }
            // advance tuple
            for (std::size_t d = 0;; ++d) {
                if (d == idx.size()) { done = true; break; }
                if (++idx[d] < sn.size()) break;
                idx[d] = 0;
            }
        }
        if (out.budget_exhausted) break;
    }

    std::stable_sort(found.begin(), found.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (auto& [ord, images] : found) {
        FiniteQuotient q;
        q.kind = FiniteQuotient::Kind::permutation;
        q.ngens = p.ngens;
        q.npoints = static_cast<int>(images[0].size());
        q.gen_perms = images;
        out.quotients.push_back(std::move(q));
    }
    out.quotients.push_back(trivial_quotient(p)); // always available, smallest image
    return out;
}

} // namespace l2chi

#endif
