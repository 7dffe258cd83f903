#ifndef L2CHI_GROUP_RING_HPP
#define L2CHI_GROUP_RING_HPP

#include "l2chi/numeric.hpp"
#include "l2chi/word.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace l2chi {

// Element of the integral group ring of a free group: finite Word -> coefficient map,
// no zero coefficients stored. Coefficients are arbitrary precision.
struct GroupRingElement {
    std::map<Word, Int> terms;

    GroupRingElement() = default;
    explicit GroupRingElement(const Int& c) {
        if (c != 0) terms.emplace(Word(), c);
    }
    explicit GroupRingElement(const Word& w, Int c = 1) {
        if (c != 0) terms.emplace(w, std::move(c));
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const Word& w, const Int& c) {
        if (c == 0) return;
        auto it = terms.find(w);
        if (it == terms.end()) {
            terms.emplace(w, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    // +/- a single word?
    std::optional<std::pair<Word, int>> as_unit() const {
        if (terms.size() != 1) return std::nullopt;
        auto& [w, c] = *terms.begin();
        if (c == 1) return std::make_pair(w, 1);
        if (c == -1) return std::make_pair(w, -1);
        return std::nullopt;
    }

    Int augmentation() const {
        Int s = 0;
        for (auto& [w, c] : terms) s += c;
        return s;
    }

    friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
        return a.terms == b.terms;
    }
};

using GRE = GroupRingElement;

inline GRE operator+(const GRE& a, const GRE& b) {
    GRE r = a;
    for (auto& [w, c] : b.terms) r.add_term(w, c);
    return r;
}

inline GRE operator-(const GRE& a) {
    GRE r;
    for (auto& [w, c] : a.terms) r.terms.emplace(w, -c);
    return r;
}

inline GRE operator-(const GRE& a, const GRE& b) {
    GRE r = a;
    for (auto& [w, c] : b.terms) r.add_term(w, -c);
    return r;
}

inline GRE ring_mul(const GRE& x, const GRE& y) {
    GRE r;
    for (auto& [wx, cx] : x.terms)
        for (auto& [wy, cy] : y.terms)
            r.add_term(word_concat(wx, wy), cx * cy);
    return r;
}

inline GRE operator*(const GRE& a, const GRE& b) { return ring_mul(a, b); }

inline GRE operator*(const Int& c, const GRE& a) {
    GRE r;
    if (c == 0) return r;
    for (auto& [w, k] : a.terms) r.terms.emplace(w, c * k);
    return r;
}

// Anti-automorphism induced by g -> g^-1.
inline GRE adjoint(const GRE& x) {
    GRE r;
    for (auto& [w, c] : x.terms) r.terms.emplace(word_inverse(w), c);
    return r;
}

struct PhiRange {
    std::int64_t min = 0;
    std::int64_t max = 0;
};

// Min/max of the abelianized weight over the support. nullopt for the zero element
// (order +infinity).
inline std::optional<PhiRange> phi_range(const GRE& x, const std::vector<std::int64_t>& images) {
    std::optional<PhiRange> r;
    for (auto& [w, c] : x.terms) {
        std::int64_t v = word_weight(w, images);
        if (!r) {
            r = PhiRange{v, v};
        } else {
            if (v < r->min) r->min = v;
            if (v > r->max) r->max = v;
        }
    }
    return r;
}

inline std::string gre_str(const GRE& x) {
    if (x.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (auto& [w, c] : x.terms) {
        Int a = c < 0 ? Int(-c) : c;
        if (first) {
            if (c < 0) s += "-";
        } else {
            s += c < 0 ? "-" : "+";
        }
        first = false;
        if (w.is_identity()) {
            s += a.str();
        } else {
            if (a != 1) s += a.str() + "*";
            s += word_str(w);
        }
    }
    return s;
}

// Dense matrix over the group ring, acting by right multiplication on row vectors.
struct GrMat {
    int rows = 0, cols = 0;
    std::vector<GRE> a;

    GrMat() = default;
    GrMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    GRE& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const GRE& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    static GrMat identity(int n) {
        GrMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = GRE(Int(1));
        return m;
    }

    friend bool operator==(const GrMat& x, const GrMat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

inline GrMat mat_mul(const GrMat& x, const GrMat& y) {
    if (x.cols != y.rows) throw compute_error("matrix shape mismatch in product");
    GrMat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const GRE& e = x.at(i, k);
            if (e.is_zero()) continue;
            for (int j = 0; j < y.cols; ++j) {
                if (y.at(k, j).is_zero()) continue;
                GRE p = ring_mul(e, y.at(k, j));
                for (auto& [w, c] : p.terms) r.at(i, j).add_term(w, c);
            }
        }
    return r;
}

inline GrMat mat_add(const GrMat& x, const GrMat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw compute_error("matrix shape mismatch in sum");
    GrMat r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i)
        for (auto& [w, c] : y.a[i].terms) r.a[i].add_term(w, c);
    return r;
}

// Transpose with entrywise adjoint.
inline GrMat mat_adjoint(const GrMat& x) {
    GrMat r(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r.at(j, i) = adjoint(x.at(i, j));
    return r;
}

inline bool mat_is_zero(const GrMat& x) {
    for (auto& e : x.a)
        if (!e.is_zero()) return false;
    return true;
}

} // namespace l2chi

#endif
