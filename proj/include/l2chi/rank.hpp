#ifndef L2CHI_RANK_HPP
#define L2CHI_RANK_HPP

#include "l2chi/numeric.hpp"
#include "l2chi/smith.hpp"
#include "l2chi/subgroup.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace l2chi {

struct RankPolicy {
    int probes = 3;
    bool exact = false;
    std::uint64_t seed = 0;
};

struct RankResult {
    std::int64_t rank = 0;
    bool certified = false;
    std::vector<std::uint64_t> primes;
};

namespace rankdetail {

inline std::uint32_t mod_of(const Int& v, std::uint64_t p) {
    Int r = v % Int(p);
    if (r < 0) r += Int(p);
    return static_cast<std::uint32_t>(r);
}

// dense elimination over GF(p), destroys `m`
inline std::int64_t dense_rank_modp(std::vector<std::vector<std::uint32_t>>& m, std::uint64_t p) {
    std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[rank], m[piv]);
        std::uint64_t inv = powmod_u64(m[rank][col], p - 2, p);
        for (std::size_t j = col; j < cols; ++j)
            m[rank][j] = static_cast<std::uint32_t>(mulmod_u64(m[rank][j], inv, p));
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || m[i][col] == 0) continue;
            std::uint64_t f = p - m[i][col];
            for (std::size_t j = col; j < cols; ++j)
                m[i][j] = static_cast<std::uint32_t>((m[i][j] + mulmod_u64(f, m[rank][j], p)) % p);
        }
        ++rank;
    }
    return static_cast<std::int64_t>(rank);
}

// Sparse row: sorted (col, value) pairs.
using SparseRow = std::vector<std::pair<std::int32_t, std::uint32_t>>;

// Markowitz-flavored sparse elimination over GF(p). Rows are consumed as pivots are
// chosen to limit fill.
inline std::int64_t sparse_rank_modp(std::vector<SparseRow> rows, std::int64_t ncols, std::uint64_t p) {
    std::vector<std::int64_t> colcount(static_cast<std::size_t>(ncols), 0);
    for (auto& r : rows)
        for (auto& [c, v] : r) ++colcount[static_cast<std::size_t>(c)];
    std::vector<bool> alive(rows.size(), true);
    std::int64_t rank = 0;

    auto row_addmul = [&](SparseRow& dst, const SparseRow& src, std::uint64_t f) {
        SparseRow out;
        out.reserve(dst.size() + src.size());
        std::size_t i = 0, j = 0;
        while (i < dst.size() || j < src.size()) {
            if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
                out.push_back(dst[i++]);
            } else if (i == dst.size() || src[j].first < dst[i].first) {
                std::uint32_t nv = static_cast<std::uint32_t>(mulmod_u64(src[j].second, f, p));
                if (nv) {
                    out.push_back({src[j].first, nv});
                    ++colcount[static_cast<std::size_t>(src[j].first)];
                }
                ++j;
            } else {
                std::uint64_t nv = (dst[i].second + mulmod_u64(src[j].second, f, p)) % p;
                if (nv) {
                    out.push_back({dst[i].first, static_cast<std::uint32_t>(nv)});
                } else {
                    --colcount[static_cast<std::size_t>(dst[i].first)];
                }
                ++i;
                ++j;
            }
        }
        dst = std::move(out);
    };

    while (true) {
        // pick the alive row minimizing (nnz_row - 1) * (min col count - 1)
        std::size_t best = rows.size();
        std::int64_t best_score = -1;
        std::int32_t best_col = -1;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!alive[i] || rows[i].empty()) continue;
            std::int64_t cmin = -1;
            std::int32_t cwhich = -1;
            for (auto& [c, v] : rows[i]) {
                std::int64_t cc = colcount[static_cast<std::size_t>(c)];
                if (cmin < 0 || cc < cmin) { cmin = cc; cwhich = c; }
            }
            std::int64_t score = (static_cast<std::int64_t>(rows[i].size()) - 1) * (cmin - 1);
            if (best_score < 0 || score < best_score) {
                best_score = score;
                best = i;
                best_col = cwhich;
                if (score == 0) break;
            }
        }
        if (best == rows.size()) break;

        SparseRow& prow = rows[best];
        alive[best] = false;
        ++rank;
        std::uint32_t pval = 0;
        for (auto& [c, v] : prow)
            if (c == best_col) pval = v;
        std::uint64_t pinv = powmod_u64(pval, p - 2, p);
        for (auto& [c, v] : prow) {
            v = static_cast<std::uint32_t>(mulmod_u64(v, pinv, p));
            --colcount[static_cast<std::size_t>(c)];
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!alive[i]) continue;
            std::uint32_t coef = 0;
            for (auto& [c, v] : rows[i])
                if (c == best_col) { coef = v; break; }
            if (!coef) continue;
            row_addmul(rows[i], prow, p - coef);
        }
    }
    return rank;
}

} // namespace rankdetail

// Rank over GF(p) via sparse-aware elimination; dense below 500x500.
inline std::int64_t rank_mod_p(const IMat& m, std::uint64_t p) {
    std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    if (rows == 0 || cols == 0) return 0;
    if (rows < 500 && cols < 500) {
        std::vector<std::vector<std::uint32_t>> d(rows, std::vector<std::uint32_t>(cols));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) d[i][j] = rankdetail::mod_of(m[i][j], p);
        return rankdetail::dense_rank_modp(d, p);
    }
    std::vector<rankdetail::SparseRow> sr(rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            std::uint32_t v = rankdetail::mod_of(m[i][j], p);
            if (v) sr[i].push_back({static_cast<std::int32_t>(j), v});
        }
    return rankdetail::sparse_rank_modp(std::move(sr), static_cast<std::int64_t>(cols), p);
}

// Certified rank by fraction-free (Bareiss) elimination.
inline std::int64_t rank_exact(IMat m) {
    std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::size_t rank = 0;
    Int prev = 1;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[rank], m[piv]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                m[i][j] = (m[rank][col] * m[i][j] - m[i][col] * m[rank][j]) / prev;
            }
            m[i][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    return static_cast<std::int64_t>(rank);
}

// Probabilistic mode: max of rank_mod_p over random probe primes >= 2^30 (a certified
// lower bound on the rational rank); exact mode: Bareiss.
inline RankResult rank_rational(const IMat& m, const RankPolicy& policy = {}) {
    RankResult res;
    if (policy.exact) {
        res.rank = rank_exact(m);
        res.certified = true;
        return res;
    }
    if (policy.probes < 1) throw input_error("need at least one probe prime");
    for (int k = 0; k < policy.probes; ++k) {
        Rng rng(mix_seed(policy.seed, static_cast<std::uint64_t>(k) + 101));
        std::uint64_t p = random_prime_31(rng);
        res.primes.push_back(p);
        res.rank = std::max(res.rank, rank_mod_p(m, p));
    }
    return res;
}

// ---- rank of the regular representation of a ZL matrix ----

namespace rankdetail {

// For abelian L with p coprime to |L| and p = 1 mod exp(L), F_p[L] splits into |L|
// characters and the regular representation block-diagonalizes: the rank is the sum
// over characters chi of rank of the n x n matrix with entries sum_g c_g chi(g).
inline std::int64_t charwise_rank_modp(const ZlMat& m, const AbelianTableStructure& st,
                                       std::uint64_t p) {
    std::int64_t expn = st.exponent;
    if ((p - 1) % static_cast<std::uint64_t>(expn) != 0)
        throw compute_error("prime not compatible with character decomposition");
    // find an element of multiplicative order exactly expn
    auto has_full_order = [&](std::uint64_t z) {
        if (expn == 1) return z == 1;
        if (z == 1) return false;
        std::int64_t e = expn;
        for (std::int64_t q = 2; q * q <= e; ++q) {
            if (e % q) continue;
            if (powmod_u64(z, static_cast<std::uint64_t>(expn / q), p) == 1) return false;
            while (e % q == 0) e /= q;
        }
        if (e > 1 && powmod_u64(z, static_cast<std::uint64_t>(expn / e), p) == 1) return false;
        return true;
    };
    std::uint64_t zeta = 1;
    for (std::uint64_t g = 2;; ++g) {
        zeta = powmod_u64(g, (p - 1) / static_cast<std::uint64_t>(expn), p);
        if (has_full_order(zeta)) break;
        if (g > 10000) throw compute_error("no primitive root of unity found");
    }
    std::vector<std::uint64_t> zpow(static_cast<std::size_t>(expn));
    zpow[0] = 1;
    for (std::int64_t i = 1; i < expn; ++i)
        zpow[static_cast<std::size_t>(i)] = mulmod_u64(zpow[static_cast<std::size_t>(i - 1)], zeta, p);

    std::size_t nfac = st.d.size();
    // per element, weight vector w_i = y_i * (exp / d_i) mod exp
    std::vector<std::vector<std::int64_t>> weight(st.coords.size(), std::vector<std::int64_t>(nfac));
    for (std::size_t e = 0; e < st.coords.size(); ++e)
        for (std::size_t i = 0; i < nfac; ++i)
            weight[e][i] = st.coords[e][i] * (expn / st.d[i]) % expn;

    std::vector<std::int64_t> t(nfac, 0);
    std::int64_t total = 0;
    std::vector<std::vector<std::uint32_t>> block(
        static_cast<std::size_t>(m.rows), std::vector<std::uint32_t>(static_cast<std::size_t>(m.cols)));
    while (true) {
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) {
                std::uint64_t acc = 0;
                for (auto& [g, c] : m.at(i, j)) {
                    std::int64_t ang = 0;
                    for (std::size_t f = 0; f < nfac; ++f) ang += t[f] * weight[static_cast<std::size_t>(g)][f];
                    ang %= expn;
                    acc = (acc + mulmod_u64(mod_of(c, p), zpow[static_cast<std::size_t>(ang)], p)) % p;
                }
                block[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    static_cast<std::uint32_t>(acc);
            }
        auto copy = block;
        total += dense_rank_modp(copy, p);
        std::size_t f = 0;
        for (;; ++f) {
            if (f == nfac) break;
            if (++t[f] < st.d[f]) break;
            t[f] = 0;
        }
        if (f == nfac) break;
        if (nfac == 0) break;
    }
    return total;
}

inline std::int64_t direct_rank_modp(const ZlMat& m, const SubgroupTable& t, std::uint64_t p) {
    std::size_t L = t.size();
    std::size_t rows = static_cast<std::size_t>(m.rows) * L;
    std::size_t cols = static_cast<std::size_t>(m.cols) * L;
    if (rows < 500 && cols < 500) {
        std::vector<std::vector<std::uint32_t>> d(rows, std::vector<std::uint32_t>(cols, 0));
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j)
                for (auto& [g, c] : m.at(i, j)) {
                    std::uint32_t v = mod_of(c, p);
                    if (!v) continue;
                    for (std::size_t e = 0; e < L; ++e) {
                        std::size_t te = static_cast<std::size_t>(t.mul(static_cast<int>(e), g));
                        std::size_t r = static_cast<std::size_t>(i) * L + e;
                        std::size_t cc = static_cast<std::size_t>(j) * L + te;
                        d[r][cc] = static_cast<std::uint32_t>((d[r][cc] + v) % p);
                    }
                }
        return dense_rank_modp(d, p);
    }
    std::vector<SparseRow> sr(rows);
    for (std::size_t e = 0; e < L; ++e) {
        for (int i = 0; i < m.rows; ++i) {
            std::vector<std::pair<std::int32_t, std::uint64_t>> acc;
            for (int j = 0; j < m.cols; ++j)
                for (auto& [g, c] : m.at(i, j)) {
                    std::uint32_t v = mod_of(c, p);
                    if (!v) continue;
                    std::size_t te = static_cast<std::size_t>(t.mul(static_cast<int>(e), g));
                    acc.push_back({static_cast<std::int32_t>(static_cast<std::size_t>(j) * L + te), v});
                }
            std::sort(acc.begin(), acc.end());
            SparseRow& row = sr[static_cast<std::size_t>(i) * L + e];
            for (auto& [c, v] : acc) {
                if (!row.empty() && row.back().first == c) {
                    std::uint64_t nv = (row.back().second + v) % p;
                    if (nv)
                        row.back().second = static_cast<std::uint32_t>(nv);
                    else
                        row.pop_back();
                } else {
                    row.push_back({c, static_cast<std::uint32_t>(v)});
                }
            }
        }
    }
    return sparse_rank_modp(std::move(sr), static_cast<std::int64_t>(cols), p);
}

} // namespace rankdetail

// Rank of regular_action_matrix(m) over the rationals, computed per probe prime.
// Abelian subgroups use the character decomposition; other kinds eliminate directly.
inline RankResult zl_regular_rank(const ZlMat& m, const SubgroupTable& t, const RankPolicy& policy = {}) {
    RankResult res;
    if (policy.exact) {
        res.rank = rank_exact(regular_action_matrix(m, t));
        res.certified = true;
        return res;
    }
    if (policy.probes < 1) throw input_error("need at least one probe prime");
    bool abelian = t.quotient.kind != FiniteQuotient::Kind::permutation;
    AbelianTableStructure st;
    if (abelian) st = abelian_structure(t);
    for (int k = 0; k < policy.probes; ++k) {
        Rng rng(mix_seed(policy.seed, static_cast<std::uint64_t>(k) + 7001));
        std::int64_t r;
        if (abelian) {
            std::uint64_t p = random_prime_31(rng, static_cast<std::uint64_t>(st.exponent), 1 % static_cast<std::uint64_t>(st.exponent));
            res.primes.push_back(p);
            r = rankdetail::charwise_rank_modp(m, st, p);
        } else {
            std::uint64_t p = random_prime_31(rng);
            res.primes.push_back(p);
            r = rankdetail::direct_rank_modp(m, t, p);
        }
        res.rank = std::max(res.rank, r);
    }
    return res;
}

} // namespace l2chi

#endif
