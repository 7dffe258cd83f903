#ifndef L2CHI_SUBGROUP_HPP
#define L2CHI_SUBGROUP_HPP

#include "l2chi/group_ring.hpp"
#include "l2chi/quotient.hpp"
#include "l2chi/smith.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

namespace l2chi {

// Finite subgroup L of a quotient group, with a deterministic element indexing:
// index 0 is the identity, the rest sorted by canonical coordinates.
struct SubgroupTable {
    FiniteQuotient quotient;
    std::vector<QElem> elems;
    std::map<QElem, int> index;
    std::vector<QElem> gens;                 // the generators the table was closed over
    std::vector<std::vector<int>> gen_action; // right multiplication permutation per generator

    std::size_t size() const { return elems.size(); }

    int idx(const QElem& e) const {
        auto it = index.find(e);
        if (it == index.end()) throw compute_error("element outside subgroup");
        return it->second;
    }

    int mul(int a, int b) const {
        return idx(quotient.mul(elems[static_cast<std::size_t>(a)], elems[static_cast<std::size_t>(b)]));
    }
    int inv(int a) const { return idx(quotient.inv(elems[static_cast<std::size_t>(a)])); }

    // evaluation of a word whose image lies in L
    int eval_word(const Word& w) const { return idx(quotient.eval(w)); }
};

namespace detail {

inline SubgroupTable finish_table(const FiniteQuotient& q, std::vector<QElem> elems,
                                  std::vector<QElem> gens) {
    SubgroupTable t;
    t.quotient = q;
    QElem id = q.identity();
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    auto it = std::find(elems.begin(), elems.end(), id);
    if (it != elems.end()) elems.erase(it);
    t.elems.push_back(id);
    for (auto& e : elems) t.elems.push_back(e);
    for (std::size_t i = 0; i < t.elems.size(); ++i) t.index.emplace(t.elems[i], static_cast<int>(i));
    t.gens = std::move(gens);
    for (auto& g : t.gens) {
        std::vector<int> act(t.elems.size());
        for (std::size_t i = 0; i < t.elems.size(); ++i) act[i] = t.idx(q.mul(t.elems[i], g));
        t.gen_action.push_back(std::move(act));
    }
    return t;
}

} // namespace detail

inline constexpr std::size_t kDefaultClosureLimit = 200000;

// Orbit closure of the images of `gens` under multiplication. Abelian quotients go
// through a triangular lattice basis; permutation quotients use breadth-first closure.
inline SubgroupTable subgroup_closure(const FiniteQuotient& q, const std::vector<QElem>& gen_elems,
                                      std::size_t size_limit = kDefaultClosureLimit) {
    if (q.kind == FiniteQuotient::Kind::abelian) {
        std::size_t s = q.moduli.size();
        IMat rows;
        for (auto& g : gen_elems) {
            std::vector<Int> row(s, 0);
            for (std::size_t i = 0; i < s; ++i) row[i] = g[i];
            rows.push_back(std::move(row));
        }
        for (std::size_t i = 0; i < s; ++i) {
            std::vector<Int> row(s, 0);
            row[i] = q.moduli[i];
            rows.push_back(std::move(row));
        }
        IMat basis = hnf_row_basis(rows, s);
        // box enumeration: coefficients c_t in [0, m_t / h_tt)
        std::vector<std::int64_t> box(s);
        Int total = 1;
        for (std::size_t t = 0; t < s; ++t) {
            Int h = basis[t][t];
            if (h == 0) throw compute_error("closure basis not full rank");
            box[t] = static_cast<std::int64_t>(Int(q.moduli[t]) / h);
            total *= box[t];
            if (total > Int(size_limit)) throw compute_error("subgroup exceeds size limit");
        }
        std::vector<QElem> elems;
        std::vector<std::int64_t> c(s, 0);
        while (true) {
            std::vector<Int> v(s, 0);
            for (std::size_t t = 0; t < s; ++t)
                if (c[t])
                    for (std::size_t j = 0; j < s; ++j) v[j] += Int(c[t]) * basis[t][j];
            QElem e(s);
            for (std::size_t j = 0; j < s; ++j) {
                Int r = v[j] % q.moduli[j];
                if (r < 0) r += q.moduli[j];
                e[j] = static_cast<std::int32_t>(r);
            }
            elems.push_back(std::move(e));
            std::size_t t = 0;
            for (;; ++t) {
                if (t == s) break;
                if (++c[t] < box[t]) break;
                c[t] = 0;
            }
            if (t == s) break;
        }
        return detail::finish_table(q, std::move(elems), gen_elems);
    }

    // trivial or permutation: breadth-first closure over generators and inverses
    std::map<QElem, int> seen;
    std::vector<QElem> queue{q.identity()};
    seen.emplace(q.identity(), 0);
    std::vector<QElem> gens_inv;
    for (auto& g : gen_elems) {
        gens_inv.push_back(g);
        gens_inv.push_back(q.inv(g));
    }
    for (std::size_t h = 0; h < queue.size(); ++h) {
        for (auto& g : gens_inv) {
            QElem n = q.mul(queue[h], g);
            if (seen.emplace(n, 1).second) {
                queue.push_back(n);
                if (queue.size() > size_limit) throw compute_error("subgroup exceeds size limit");
            }
        }
    }
    return detail::finish_table(q, std::move(queue), gen_elems);
}

inline SubgroupTable subgroup_closure(const FiniteQuotient& q, const std::vector<Word>& gens,
                                      std::size_t size_limit = kDefaultClosureLimit) {
    std::vector<QElem> imgs;
    imgs.reserve(gens.size());
    for (auto& w : gens) imgs.push_back(q.eval(w));
    return subgroup_closure(q, imgs, size_limit);
}

// ---- matrices over the subgroup algebra ZL ----

// Sparse element of ZL: (element index, coefficient), sorted by index.
using ZlElem = std::vector<std::pair<int, Int>>;

inline void zl_add_term(ZlElem& e, int idx, const Int& c) {
    if (c == 0) return;
    auto it = std::lower_bound(e.begin(), e.end(), idx,
                               [](const auto& p, int v) { return p.first < v; });
    if (it != e.end() && it->first == idx) {
        it->second += c;
        if (it->second == 0) e.erase(it);
    } else {
        e.insert(it, {idx, c});
    }
}

inline ZlElem zl_mul(const ZlElem& a, const ZlElem& b, const SubgroupTable& t) {
    ZlElem r;
    for (auto& [ia, ca] : a)
        for (auto& [ib, cb] : b) zl_add_term(r, t.mul(ia, ib), ca * cb);
    return r;
}

struct ZlMat {
    int rows = 0, cols = 0;
    std::vector<ZlElem> a;
    ZlMat() = default;
    ZlMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}
    ZlElem& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const ZlElem& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

// Push a group-ring matrix into ZL through the quotient; every support word must
// evaluate into L.
inline ZlMat to_zl(const GrMat& m, const SubgroupTable& t) {
    ZlMat r(m.rows, m.cols);
    std::map<Word, int> cache;
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            ZlElem e;
            for (auto& [w, c] : m.at(i, j).terms) {
                auto it = cache.find(w);
                int idx;
                if (it == cache.end()) {
                    idx = t.eval_word(w);
                    cache.emplace(w, idx);
                } else {
                    idx = it->second;
                }
                zl_add_term(e, idx, c);
            }
            r.at(i, j) = std::move(e);
        }
    return r;
}

// Block integer matrix of the right action of ZL on itself: entry (r,c) of m
// contributes the |L| x |L| block sum_g c_g P(g), P(g)[e][e*g] = 1.
inline IMat regular_action_matrix(const ZlMat& m, const SubgroupTable& t) {
    std::size_t L = t.size();
    IMat out(static_cast<std::size_t>(m.rows) * L,
             std::vector<Int>(static_cast<std::size_t>(m.cols) * L, 0));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            for (auto& [g, c] : m.at(i, j)) {
                for (std::size_t e = 0; e < L; ++e) {
                    std::size_t target = static_cast<std::size_t>(t.mul(static_cast<int>(e), g));
                    out[static_cast<std::size_t>(i) * L + e][static_cast<std::size_t>(j) * L + target] += c;
                }
            }
    return out;
}

inline IMat regular_action_matrix(const GrMat& m, const SubgroupTable& t) {
    return regular_action_matrix(to_zl(m, t), t);
}

// ---- structure of an abelian L, for character-space rank computations ----

// L decomposed as a direct sum of cyclic groups Z/d_i (d_i > 1), with the cyclic
// coordinates of every element.
struct AbelianTableStructure {
    std::vector<std::int64_t> d;                       // invariant factors > 1
    std::vector<std::vector<std::int64_t>> coords;     // per element, one coord per factor
    std::int64_t exponent = 1;                          // lcm of d
};

inline AbelianTableStructure abelian_structure(const SubgroupTable& t) {
    if (t.quotient.kind == FiniteQuotient::Kind::permutation)
        throw compute_error("abelian structure requested for a permutation table");
    AbelianTableStructure st;
    if (t.quotient.kind == FiniteQuotient::Kind::trivial || t.size() == 1) {
        st.coords.assign(t.size(), {});
        return st;
    }
    const auto& mod = t.quotient.moduli;
    std::size_t s = mod.size();
    IMat rows;
    for (auto& g : t.gens) {
        std::vector<Int> row(s, 0);
        for (std::size_t i = 0; i < s; ++i) row[i] = g[i];
        rows.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < s; ++i) {
        std::vector<Int> row(s, 0);
        row[i] = mod[i];
        rows.push_back(std::move(row));
    }
    IMat basis = hnf_row_basis(rows, s); // triangular basis B of the lift lattice
    // rows of diag(mod) in terms of B: C with C*B = diag(mod)
    auto solve_in_basis = [&](const std::vector<Int>& v) {
        std::vector<Int> z(s, 0);
        for (std::size_t tcol = 0; tcol < s; ++tcol) {
            Int acc = v[tcol];
            for (std::size_t i = 0; i < tcol; ++i) acc -= z[i] * basis[i][tcol];
            if (acc % basis[tcol][tcol] != 0) throw compute_error("vector not in lattice");
            z[tcol] = acc / basis[tcol][tcol];
        }
        return z;
    };
    IMat c(s, std::vector<Int>(s, 0));
    for (std::size_t i = 0; i < s; ++i) {
        std::vector<Int> v(s, 0);
        v[i] = mod[i];
        c[i] = solve_in_basis(v);
    }
    SmithResult sm = smith_normal_form(c); // U C V = D;   L = Z^s / row-lattice(C), y = z * V
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < s; ++i) {
        if (sm.s[i] == 0) throw compute_error("subgroup structure degenerate");
        if (sm.s[i] > 1) {
            keep.push_back(i);
            std::int64_t di = static_cast<std::int64_t>(sm.s[i]);
            st.d.push_back(di);
            st.exponent = std::lcm(st.exponent, di);
        }
    }
    for (auto& e : t.elems) {
        std::vector<Int> v(s, 0);
        for (std::size_t i = 0; i < s; ++i) v[i] = e[i];
        std::vector<Int> z = solve_in_basis(v);
        std::vector<std::int64_t> y;
        y.reserve(keep.size());
        for (std::size_t kidx = 0; kidx < keep.size(); ++kidx) {
            std::size_t i = keep[kidx];
            Int acc = 0;
            for (std::size_t r = 0; r < s; ++r) acc += z[r] * sm.v[r][i];
            Int m = st.d[kidx];
            Int res = acc % m;
            if (res < 0) res += m;
            y.push_back(static_cast<std::int64_t>(res));
        }
        st.coords.push_back(std::move(y));
    }
    return st;
}

} // namespace l2chi

#endif
