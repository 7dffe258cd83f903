#ifndef L2CHI_NORMBALL_HPP
#define L2CHI_NORMBALL_HPP

#include "l2chi/numeric.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace l2chi {

using RVec = std::vector<Rat>;

struct SampleSet {
    int dim = 0;
    std::vector<std::pair<std::vector<std::int64_t>, Rat>> samples;
};

namespace nbdetail {

inline RVec to_rvec(const std::vector<std::int64_t>& v) {
    RVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

inline RVec scale(const RVec& v, const Rat& s) {
    RVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] * s;
    return r;
}

inline RVec sub(const RVec& a, const RVec& b) {
    RVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Rat dot(const RVec& a, const RVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline bool is_zero(const RVec& v) {
    for (auto& x : v)
        if (x != 0) return false;
    return true;
}

// Row echelon basis with pivot bookkeeping, used both for the lineality space and for
// the span of the sampled directions.
struct Echelon {
    std::vector<RVec> rows;  // echelon basis, pivot entry 1
    std::vector<int> pivots; // pivot column per row

    // reduce v by the basis; returns the residual
    RVec reduce(RVec v) const {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            Rat f = v[static_cast<std::size_t>(pivots[i])];
            if (f != 0)
                for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * rows[i][j];
        }
        return v;
    }

    // coordinates of v in the row basis (v must lie in the span)
    std::optional<RVec> coords(RVec v) const {
        RVec c(rows.size(), Rat(0));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            Rat f = v[static_cast<std::size_t>(pivots[i])];
            c[i] = f;
            if (f != 0)
                for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * rows[i][j];
        }
        if (!is_zero(v)) return std::nullopt;
        return c;
    }

    bool insert(RVec v) { // returns true if the span grew
        v = reduce(std::move(v));
        int piv = -1;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0) { piv = static_cast<int>(j); break; }
        if (piv < 0) return false;
        Rat inv = Rat(1) / v[static_cast<std::size_t>(piv)];
        for (auto& x : v) x *= inv;
        // back-substitute into earlier rows
        for (std::size_t i = 0; i < rows.size(); ++i) {
            Rat f = rows[i][static_cast<std::size_t>(piv)];
            if (f != 0)
                for (std::size_t j = 0; j < v.size(); ++j) rows[i][j] -= f * v[j];
        }
        rows.push_back(std::move(v));
        pivots.push_back(piv);
        // keep rows sorted by pivot
        for (std::size_t i = rows.size(); i-- > 1;) {
            if (pivots[i] < pivots[i - 1]) {
                std::swap(pivots[i], pivots[i - 1]);
                std::swap(rows[i], rows[i - 1]);
            }
        }
        return true;
    }
};

// canonical integral direction of a rational vector, preserving orientation
inline std::vector<Int> canonical_direction(const RVec& v) {
    Int lcm = 1;
    for (auto& x : v) {
        Int d = boost::multiprecision::denominator(x);
        lcm = lcm / int_gcd(lcm, d) * d;
    }
    std::vector<Int> out(v.size());
    Int g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rat s = v[i] * Rat(lcm);
        out[i] = boost::multiprecision::numerator(s);
        g = int_gcd(g, out[i]);
    }
    if (g > 1)
        for (auto& x : out) x /= g;
    return out;
}

} // namespace nbdetail

struct BallFacet {
    std::vector<Int> normal; // outward, primitive integral, in span coordinates
    Rat offset;              // n . x <= offset on the ball, offset > 0
    bool certified = false;
    int witness = -1; // sample index of the interior witness
};

struct BallCertificate {
    int dim = 0;
    // lineality directions contributed by zero-valued samples (original coordinates)
    std::vector<RVec> lineality;
    // span basis of the sampled directions modulo lineality (original coordinates);
    // hull geometry lives in coordinates with respect to these rows
    std::vector<RVec> span_basis;
    bool spans_everything = false;

    std::vector<RVec> vertices;      // span coordinates
    std::vector<RVec> vertices_lift; // representatives in original coordinates
    std::vector<BallFacet> facets;
    bool certified = false;

    nbdetail::Echelon lin_ech, span_ech; // transforms for gauge evaluation
};

namespace nbdetail {

struct HullData {
    std::vector<RVec> points;                   // distinct scaled samples, span coords
    std::vector<std::pair<std::vector<Int>, Rat>> planes; // outward (normal, offset)
};

inline Rat det3(const RVec& a, const RVec& b, const RVec& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

inline std::vector<std::pair<std::vector<Int>, Rat>> hull_planes(const std::vector<RVec>& pts, int d) {
    std::vector<std::pair<std::vector<Int>, Rat>> planes;
    auto push_plane = [&](const RVec& n, const Rat& off) {
        auto cn = canonical_direction(n);
        Rat scale = 0;
        for (std::size_t i = 0; i < n.size(); ++i)
            if (n[i] != 0) { scale = Rat(cn[i]) / n[i]; break; }
        std::pair<std::vector<Int>, Rat> key{cn, off * scale};
        if (std::find(planes.begin(), planes.end(), key) == planes.end()) planes.push_back(key);
    };

    if (d == 1) {
        Rat mx = 0;
        for (auto& p : pts)
            if (p[0] > mx) mx = p[0];
        planes.push_back({{Int(1)}, mx});
        planes.push_back({{Int(-1)}, mx});
        return planes;
    }

    if (d == 2) {
        std::vector<RVec> s = pts;
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        auto cross = [](const RVec& o, const RVec& a, const RVec& b) {
            return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
        };
        std::vector<RVec> h;
        for (auto& p : s) { // lower
            while (h.size() >= 2 && cross(h[h.size() - 2], h.back(), p) <= 0) h.pop_back();
            h.push_back(p);
        }
        std::size_t lower = h.size() + 1;
        for (auto it = s.rbegin() + 1; it != s.rend(); ++it) { // upper
            while (h.size() >= lower && cross(h[h.size() - 2], h.back(), *it) <= 0) h.pop_back();
            h.push_back(*it);
        }
        h.pop_back();
        for (std::size_t i = 0; i < h.size(); ++i) {
            const RVec& a = h[i];
            const RVec& b = h[(i + 1) % h.size()];
            RVec n{b[1] - a[1], a[0] - b[0]}; // outward for ccw
            push_plane(n, dot(n, a));
        }
        return planes;
    }

    // d == 3: incremental hull with exact orientation tests
    std::vector<RVec> s = pts;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    auto orient = [&](int i, int j, int k, const RVec& p) {
        return det3(sub(s[static_cast<std::size_t>(j)], s[static_cast<std::size_t>(i)]),
                    sub(s[static_cast<std::size_t>(k)], s[static_cast<std::size_t>(i)]),
                    sub(p, s[static_cast<std::size_t>(i)]));
    };
    // initial simplex
    std::size_t n = s.size();
    std::size_t j = 1;
    while (j < n && s[j] == s[0]) ++j;
    std::size_t k = j + 1;
    auto collinear = [&](std::size_t kk) {
        RVec u = sub(s[j], s[0]), v = sub(s[kk], s[0]);
        return u[1] * v[2] - u[2] * v[1] == 0 && u[2] * v[0] - u[0] * v[2] == 0 &&
               u[0] * v[1] - u[1] * v[0] == 0;
    };
    while (k < n && collinear(k)) ++k;
    std::size_t l = k + 1;
    while (l < n && orient(0, static_cast<int>(j), static_cast<int>(k), s[l]) == 0) ++l;
    if (j >= n || k >= n || l >= n) throw compute_error("sample directions are not full-dimensional");

    struct Tri { int a, b, c; };
    std::vector<Tri> faces;
    auto add_tet = [&](int a, int b, int c, int dd) {
        if (orient(a, b, c, s[static_cast<std::size_t>(dd)]) > 0) std::swap(b, c);
        faces.push_back({a, b, c});
        faces.push_back({a, dd, b});
        faces.push_back({b, dd, c});
        faces.push_back({c, dd, a});
    };
    add_tet(0, static_cast<int>(j), static_cast<int>(k), static_cast<int>(l));

    for (std::size_t pidx = 0; pidx < n; ++pidx) {
        if (pidx == 0 || pidx == j || pidx == k || pidx == l) continue;
        const RVec& p = s[pidx];
        std::vector<bool> visible(faces.size(), false);
        bool any = false;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (orient(faces[f].a, faces[f].b, faces[f].c, p) > 0) {
                visible[f] = true;
                any = true;
            }
        }
        if (!any) continue;
        std::map<std::pair<int, int>, int> edgecount;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (!visible[f]) continue;
            int vs[3] = {faces[f].a, faces[f].b, faces[f].c};
            for (int e = 0; e < 3; ++e) {
                int u = vs[e], v = vs[(e + 1) % 3];
                ++edgecount[{u, v}];
            }
        }
        std::vector<std::pair<int, int>> horizon;
        for (auto& [uv, cnt] : edgecount) {
            if (edgecount.count({uv.second, uv.first}) == 0) horizon.push_back(uv);
        }
        std::vector<Tri> next;
        for (std::size_t f = 0; f < faces.size(); ++f)
            if (!visible[f]) next.push_back(faces[f]);
        for (auto& [u, v] : horizon) next.push_back({u, v, static_cast<int>(pidx)});
        faces = std::move(next);
    }

    for (auto& f : faces) {
        RVec u = sub(s[static_cast<std::size_t>(f.b)], s[static_cast<std::size_t>(f.a)]);
        RVec v = sub(s[static_cast<std::size_t>(f.c)], s[static_cast<std::size_t>(f.a)]);
        RVec nrm{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
        push_plane(nrm, dot(nrm, s[static_cast<std::size_t>(f.a)]));
    }
    return planes;
}

} // namespace nbdetail

// Inner hull of the scaled samples, with the stopping-rule certification: every facet
// needs a sample in the open cone over its relative interior whose value matches the
// hull gauge, and every hull vertex must be a scaled sample.
inline BallCertificate reconstruct_ball(const SampleSet& set) {
    using namespace nbdetail;
    if (set.dim < 1 || set.dim > 3) throw input_error("dimension must be 1, 2 or 3");
    // duplicate consistency
    std::map<std::vector<std::int64_t>, Rat> byvec;
    for (auto& [v, val] : set.samples) {
        if (val < 0) throw input_error("negative sample value");
        auto it = byvec.find(v);
        if (it != byvec.end() && it->second != val)
            throw input_error("duplicate sample vectors with different values");
        byvec.emplace(v, val);
    }

    BallCertificate cert;
    cert.dim = set.dim;

    // lineality from zero values
    for (auto& [v, val] : byvec) {
        if (val != 0) continue;
        RVec rv = to_rvec(v);
        if (is_zero(rv)) continue;
        if (cert.lin_ech.insert(rv)) cert.lineality.push_back(rv);
    }

    // positive samples, reduced modulo lineality; keep original indices for witnesses
    struct PSample {
        RVec point_full; // v/value mod lineality, full coordinates
        int index;
    };
    std::vector<PSample> pos;
    bool any_positive = false;
    {
        int idx = 0;
        for (auto& [v, val] : set.samples) {
            if (val > 0) {
                if (std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; }))
                    throw input_error("zero vector with positive value");
                any_positive = true;
                RVec red = cert.lin_ech.reduce(to_rvec(v));
                if (is_zero(red))
                    throw input_error("sample with positive value lies in a zero-value direction");
                pos.push_back({scale(red, Rat(1) / val), idx});
                pos.push_back({scale(red, Rat(-1) / val), idx});
            }
            ++idx;
        }
    }
    if (!any_positive) throw input_error("need at least one positive sample");

    // span of the reduced points
    for (auto& ps : pos)
        if (cert.span_ech.insert(ps.point_full)) cert.span_basis.push_back(cert.span_ech.rows.back());
    int sdim = static_cast<int>(cert.span_ech.rows.size());
    cert.spans_everything =
        sdim + static_cast<int>(cert.lin_ech.rows.size()) == cert.dim;

    // hull in span coordinates
    std::vector<RVec> pts;
    std::vector<RVec> ptcoord(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) {
        auto c = cert.span_ech.coords(pos[i].point_full);
        if (!c) throw compute_error("point left its own span");
        ptcoord[i] = *c;
        pts.push_back(*c);
    }
    HullData hull;
    hull.points = pts;
    hull.planes = hull_planes(pts, sdim);

    for (auto& [nrm, off] : hull.planes) {
        BallFacet f;
        f.normal = nrm;
        f.offset = off;
        cert.facets.push_back(std::move(f));
    }

    auto plane_value = [&](const BallFacet& f, const RVec& c) {
        Rat s = 0;
        for (std::size_t i = 0; i < f.normal.size(); ++i) s += Rat(f.normal[i]) * c[i];
        return s;
    };

    // gauge of each sample point and facet witnesses
    std::vector<bool> on_boundary(pos.size(), false);
    for (std::size_t i = 0; i < pos.size(); ++i) {
        bool inside_all = true;
        int touching = -1;
        int ntouch = 0;
        for (std::size_t f = 0; f < cert.facets.size(); ++f) {
            Rat val = plane_value(cert.facets[f], ptcoord[i]);
            if (val > cert.facets[f].offset) { inside_all = false; break; }
            if (val == cert.facets[f].offset) {
                ++ntouch;
                touching = static_cast<int>(f);
            }
        }
        if (!inside_all) throw compute_error("hull misses one of its own points");
        on_boundary[i] = ntouch > 0;
        if (ntouch == 1 && !cert.facets[static_cast<std::size_t>(touching)].certified) {
            cert.facets[static_cast<std::size_t>(touching)].certified = true;
            cert.facets[static_cast<std::size_t>(touching)].witness = pos[i].index;
        }
    }

    // vertices: boundary points touching at least sdim facet planes
    std::vector<RVec> verts;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        int ntouch = 0;
        for (auto& f : cert.facets)
            if (plane_value(f, ptcoord[i]) == f.offset) ++ntouch;
        if (ntouch >= sdim) {
            if (std::find(verts.begin(), verts.end(), ptcoord[i]) == verts.end())
                verts.push_back(ptcoord[i]);
        }
    }
    cert.vertices = verts;
    for (auto& vc : verts) {
        RVec lift(static_cast<std::size_t>(set.dim), Rat(0));
        for (std::size_t r = 0; r < cert.span_ech.rows.size(); ++r)
            for (std::size_t jj = 0; jj < lift.size(); ++jj)
                lift[jj] += vc[r] * cert.span_ech.rows[r][jj];
        cert.vertices_lift.push_back(std::move(lift));
    }

    bool facets_ok = !cert.facets.empty();
    for (auto& f : cert.facets) facets_ok = facets_ok && f.certified;
    cert.certified = facets_ok && cert.spans_everything;
    return cert;
}

// Minkowski gauge by facet maximization; nullopt encodes +infinity (direction outside
// the reconstructed span).
inline std::optional<Rat> ball_norm_eval(const BallCertificate& b, const std::vector<std::int64_t>& v) {
    using namespace nbdetail;
    RVec rv = to_rvec(v);
    if (static_cast<int>(rv.size()) != b.dim) throw input_error("vector dimension mismatch");
    RVec red = b.lin_ech.reduce(rv);
    if (is_zero(red)) return Rat(0);
    auto c = b.span_ech.coords(red);
    if (!c) return std::nullopt;
    Rat best = 0;
    for (auto& f : b.facets) {
        Rat s = 0;
        for (std::size_t i = 0; i < f.normal.size(); ++i) s += Rat(f.normal[i]) * (*c)[i];
        if (f.offset <= 0) throw compute_error("ball facet without interior");
        Rat g = s / f.offset;
        if (g > best) best = g;
    }
    return best;
}

// Tiny SVG sketch of a two-dimensional certificate.
inline std::string ball_svg(const BallCertificate& b, const SampleSet& set) {
    if (b.dim != 2 || b.span_ech.rows.size() != 2) return "";
    std::ostringstream os;
    double scale = 80.0, cx = 150.0, cy = 150.0;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"300\" height=\"300\" "
          "viewBox=\"0 0 300 300\">\n";
    os << "<line x1=\"0\" y1=\"150\" x2=\"300\" y2=\"150\" stroke=\"#ccc\"/>\n";
    os << "<line x1=\"150\" y1=\"0\" x2=\"150\" y2=\"300\" stroke=\"#ccc\"/>\n";
    // vertices in original coordinates, ordered by angle
    std::vector<std::pair<double, std::pair<double, double>>> vs;
    for (auto& v : b.vertices_lift) {
        double x = rat_double(v[0]), y = rat_double(v[1]);
        vs.push_back({std::atan2(y, x), {x, y}});
    }
    std::sort(vs.begin(), vs.end());
    os << "<polygon points=\"";
    for (auto& [ang, xy] : vs) os << cx + scale * xy.first << "," << cy - scale * xy.second << " ";
    os << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (auto& [v, val] : set.samples) {
        if (val <= 0) continue;
        double x = static_cast<double>(v[0]) / rat_double(val);
        double y = static_cast<double>(v[1]) / rat_double(val);
        os << "<circle cx=\"" << cx + scale * x << "\" cy=\"" << cy - scale * y
           << "\" r=\"3\" fill=\"crimson\"/>\n";
        os << "<circle cx=\"" << cx - scale * x << "\" cy=\"" << cy + scale * y
           << "\" r=\"3\" fill=\"crimson\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

// CSV lines: v1,v2[,v3],value
inline SampleSet parse_samples_csv(std::istream& in, int dim) {
    SampleSet s;
    s.dim = dim;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string trimmed;
        for (char ch : line)
            if (!std::isspace(static_cast<unsigned char>(ch))) trimmed += ch;
        if (trimmed.empty() || trimmed[0] == '#') continue;
        std::vector<std::string> parts;
        std::string cur;
        for (char ch : trimmed) {
            if (ch == ',') {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        parts.push_back(cur);
        if (static_cast<int>(parts.size()) != dim + 1)
            throw input_error("line " + std::to_string(lineno) + ": expected " +
                              std::to_string(dim + 1) + " comma-separated fields");
        std::vector<std::int64_t> v;
        for (int i = 0; i < dim; ++i) {
            try {
                v.push_back(std::stoll(parts[static_cast<std::size_t>(i)]));
            } catch (...) {
                throw input_error("line " + std::to_string(lineno) + ": bad integer");
            }
        }
        // value: integer or p/q
        const std::string& vs = parts[static_cast<std::size_t>(dim)];
        Rat val;
        auto slash = vs.find('/');
        try {
            if (slash == std::string::npos)
                val = Rat(Int(vs));
            else
                val = Rat(Int(vs.substr(0, slash)), Int(vs.substr(slash + 1)));
        } catch (...) {
            throw input_error("line " + std::to_string(lineno) + ": bad value");
        }
        s.samples.push_back({v, val});
    }
    return s;
}

} // namespace l2chi

#endif
