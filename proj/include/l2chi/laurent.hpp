#ifndef L2CHI_LAURENT_HPP
#define L2CHI_LAURENT_HPP

#include "l2chi/group_ring.hpp"
#include "l2chi/numeric.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace l2chi {

// Laurent polynomial in two commuting variables with integer coefficients.
struct Laurent2 {
    std::map<std::array<std::int64_t, 2>, Int> terms;

    bool is_zero() const { return terms.empty(); }

    void add_term(std::int64_t ea, std::int64_t eb, const Int& c) {
        if (c == 0) return;
        std::array<std::int64_t, 2> k{ea, eb};
        auto it = terms.find(k);
        if (it == terms.end()) {
            terms.emplace(k, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    friend bool operator==(const Laurent2& a, const Laurent2& b) { return a.terms == b.terms; }
};

inline Laurent2 l2_mul(const Laurent2& a, const Laurent2& b) {
    Laurent2 r;
    for (auto& [ka, ca] : a.terms)
        for (auto& [kb, cb] : b.terms) r.add_term(ka[0] + kb[0], ka[1] + kb[1], ca * cb);
    return r;
}

inline Laurent2 l2_sub(const Laurent2& a, const Laurent2& b) {
    Laurent2 r = a;
    for (auto& [k, c] : b.terms) r.add_term(k[0], k[1], -c);
    return r;
}

// Abelianization of a free-group-ring element on two generators.
inline Laurent2 abelianized(const GRE& x) {
    Laurent2 r;
    for (auto& [w, c] : x.terms) {
        std::int64_t ea = 0, eb = 0;
        for (auto& [g, e] : w.syl) {
            if (g == 0)
                ea += e;
            else if (g == 1)
                eb += e;
            else
                throw input_error("element is not on two generators");
        }
        r.add_term(ea, eb, c);
    }
    return r;
}

// Shift exponents so both minimal exponents are 0; flip sign so the smallest monomial
// has positive coefficient. This is the unit normalization for Alexander polynomials.
inline Laurent2 l2_normalize(Laurent2 p) {
    if (p.is_zero()) return p;
    std::int64_t ma = p.terms.begin()->first[0], mb = 0;
    bool first = true;
    for (auto& [k, c] : p.terms) {
        if (first || k[0] < ma) ma = k[0];
        if (first || k[1] < mb) mb = k[1];
        first = false;
    }
    Laurent2 out;
    for (auto& [k, c] : p.terms) out.add_term(k[0] - ma, k[1] - mb, c);
    if (out.terms.begin()->second < 0) {
        Laurent2 neg;
        for (auto& [k, c] : out.terms) neg.add_term(k[0], k[1], -c);
        out = std::move(neg);
    }
    return out;
}

namespace l2detail {

// View as a polynomial in b with Laurent-in-a coefficients: degree -> coefficient.
using BPoly = std::map<std::int64_t, std::map<std::int64_t, Int>>;

inline BPoly to_bpoly(const Laurent2& p) {
    BPoly r;
    for (auto& [k, c] : p.terms) r[k[1]][k[0]] = c;
    return r;
}

inline Laurent2 from_bpoly(const BPoly& p) {
    Laurent2 r;
    for (auto& [eb, coeff] : p)
        for (auto& [ea, c] : coeff) r.add_term(ea, eb, c);
    return r;
}

// univariate integer-coefficient Laurent helpers (coefficients of BPoly)
using APoly = std::map<std::int64_t, Int>;

inline APoly a_mul(const APoly& x, const APoly& y) {
    APoly r;
    for (auto& [ex, cx] : x)
        for (auto& [ey, cy] : y) {
            Int& t = r[ex + ey];
            t += cx * cy;
        }
    for (auto it = r.begin(); it != r.end();)
        it = it->second == 0 ? r.erase(it) : std::next(it);
    return r;
}

inline APoly a_sub(APoly x, const APoly& y) {
    for (auto& [e, c] : y) {
        Int& t = x[e];
        t -= c;
    }
    for (auto it = x.begin(); it != x.end();)
        it = it->second == 0 ? x.erase(it) : std::next(it);
    return x;
}

inline Int a_content(const APoly& x) {
    Int g = 0;
    for (auto& [e, c] : x) g = int_gcd(g, c);
    return g;
}

inline APoly a_scale_div(APoly x, const Int& d) {
    for (auto& [e, c] : x) c /= d;
    return x;
}

// gcd of univariate integer polynomials (primitive PRS), exponents assumed >= 0
inline APoly a_gcd(APoly x, APoly y) {
    auto normalize = [](APoly p) {
        if (p.empty()) return p;
        std::int64_t m = p.begin()->first;
        APoly q;
        for (auto& [e, c] : p) q[e - m] = c;
        Int cont = a_content(q);
        if (cont > 1) q = a_scale_div(q, cont);
        if (q.rbegin()->second < 0)
            for (auto& [e, c] : q) c = -c;
        return q;
    };
    x = normalize(x);
    y = normalize(y);
    while (!y.empty()) {
        // pseudo-remainder of x by y
        std::int64_t dy = y.rbegin()->first;
        Int ly = y.rbegin()->second;
        APoly r = x;
        while (!r.empty() && r.rbegin()->first >= dy) {
            std::int64_t sh = r.rbegin()->first - dy;
            Int lr = r.rbegin()->second;
            // r = ly * r - lr * y * a^sh
            for (auto& [e, c] : r) c *= ly;
            APoly sub;
            for (auto& [e, c] : y) sub[e + sh] = c * lr;
            r = a_sub(std::move(r), sub);
        }
        x = std::move(y);
        y = normalize(std::move(r));
    }
    return normalize(std::move(x));
}

} // namespace l2detail

// Exact division; throws if not divisible.
inline Laurent2 l2_divexact(const Laurent2& num, const Laurent2& den) {
    if (den.is_zero()) throw compute_error("division by zero polynomial");
    if (num.is_zero()) return {};
    l2detail::BPoly n = l2detail::to_bpoly(num);
    l2detail::BPoly d = l2detail::to_bpoly(den);
    std::int64_t dlead = d.rbegin()->first;
    l2detail::APoly dcoef = d.rbegin()->second;
    l2detail::BPoly q;
    while (!n.empty()) {
        std::int64_t nlead = n.rbegin()->first;
        if (nlead - dlead < -100000) throw compute_error("polynomial division does not terminate");
        l2detail::APoly ncoef = n.rbegin()->second;
        // divide leading b-coefficients as Laurent-in-a polynomials
        // ncoef / dcoef must be exact
        l2detail::APoly quot;
        l2detail::APoly rem = ncoef;
        std::int64_t dmax = dcoef.rbegin()->first;
        Int dl = dcoef.rbegin()->second;
        while (!rem.empty()) {
            std::int64_t rmax = rem.rbegin()->first;
            Int rl = rem.rbegin()->second;
            if (rl % dl != 0) throw compute_error("polynomial division is not exact");
            Int f = rl / dl;
            std::int64_t sh = rmax - dmax;
            quot[sh] = f;
            l2detail::APoly sub;
            for (auto& [e, c] : dcoef) sub[e + sh] = c * f;
            rem = l2detail::a_sub(std::move(rem), sub);
        }
        std::int64_t bshift = nlead - dlead;
        for (auto& [e, c] : quot) {
            Int& t = q[bshift][e];
            t += c;
        }
        // n -= (quot * b^bshift) * den
        Laurent2 qterm;
        for (auto& [e, c] : quot) qterm.add_term(e, bshift, c);
        Laurent2 nn = l2_sub(l2detail::from_bpoly(n), l2_mul(qterm, den));
        n = l2detail::to_bpoly(nn);
    }
    return l2detail::from_bpoly(q);
}

// gcd up to units, via a primitive PRS in b over Z[a] with content correction.
inline Laurent2 l2_gcd(const Laurent2& x, const Laurent2& y) {
    if (x.is_zero()) return l2_normalize(y);
    if (y.is_zero()) return l2_normalize(x);
    using namespace l2detail;
    Laurent2 xs = l2_normalize(x), ys = l2_normalize(y);
    BPoly a = to_bpoly(xs), b = to_bpoly(ys);

    auto bcontent = [](const BPoly& p) {
        APoly g;
        for (auto& [eb, coef] : p) g = g.empty() ? coef : a_gcd(g, coef);
        return g;
    };
    auto bprimitive = [&](BPoly p) {
        APoly cont = bcontent(p);
        if (cont.size() == 1 && cont.begin()->second == 1) return p;
        Laurent2 c2;
        for (auto& [e, c] : cont) c2.add_term(e, 0, c);
        Laurent2 prim = l2_divexact(from_bpoly(p), c2);
        return to_bpoly(prim);
    };

    APoly content_gcd = a_gcd(bcontent(a), bcontent(b));
    a = bprimitive(std::move(a));
    b = bprimitive(std::move(b));

    // PRS on primitive parts
    while (!b.empty()) {
        // pseudo-remainder of a by b in variable b(-degree)
        std::int64_t db = b.rbegin()->first;
        APoly lb = b.rbegin()->second;
        BPoly r = a;
        int guard = 0;
        while (!r.empty() && r.rbegin()->first >= db) {
            if (++guard > 10000) throw compute_error("gcd PRS does not terminate");
            std::int64_t sh = r.rbegin()->first - db;
            APoly lr = r.rbegin()->second;
            // r = lb * r - lr * b * t^sh
            Laurent2 lbl, lrl;
            for (auto& [e, c] : lb) lbl.add_term(e, 0, c);
            for (auto& [e, c] : lr) lrl.add_term(e, sh, c);
            Laurent2 rnew = l2_sub(l2_mul(lbl, from_bpoly(r)), l2_mul(lrl, from_bpoly(b)));
            r = to_bpoly(rnew);
        }
        a = std::move(b);
        b = r.empty() ? BPoly{} : bprimitive(std::move(r));
    }

    Laurent2 cont;
    for (auto& [e, c] : content_gcd) cont.add_term(e, 0, c);
    return l2_normalize(l2_mul(cont, from_bpoly(a)));
}

// Thickness of the Newton polytope along an integer direction.
inline std::int64_t l2_thickness(const Laurent2& p, std::int64_t wa, std::int64_t wb) {
    if (p.is_zero()) throw compute_error("thickness of the zero polynomial");
    bool first = true;
    std::int64_t mn = 0, mx = 0;
    for (auto& [k, c] : p.terms) {
        std::int64_t w = wa * k[0] + wb * k[1];
        if (first || w < mn) mn = w;
        if (first || w > mx) mx = w;
        first = false;
    }
    return mx - mn;
}

inline std::string l2_str(const Laurent2& p, const std::string& va = "a", const std::string& vb = "b") {
    if (p.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (auto& [k, c] : p.terms) {
        Int a = c < 0 ? Int(-c) : c;
        if (first)
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? "-" : "+";
        first = false;
        std::string mono;
        if (k[0] != 0) mono += va + (k[0] == 1 ? "" : "^" + std::to_string(k[0]));
        if (k[1] != 0) {
            if (!mono.empty()) mono += "*";
            mono += vb + (k[1] == 1 ? "" : "^" + std::to_string(k[1]));
        }
        if (mono.empty()) {
            s += a.str();
        } else {
            if (a != 1) s += a.str() + "*";
            s += mono;
        }
    }
    return s;
}

} // namespace l2chi

#endif
