#ifndef L2CHI_EXPANSION_HPP
#define L2CHI_EXPANSION_HPP

#include "l2chi/group_ring.hpp"
#include "l2chi/presentation.hpp"
#include "l2chi/quotient.hpp"
#include "l2chi/rank.hpp"
#include "l2chi/shrink.hpp"
#include "l2chi/subgroup.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace l2chi {

struct NormalizedMatrix {
    GrMat mat;                       // all entries have order >= 0, each row attains 0
    std::vector<std::int64_t> shifts; // row i was left-multiplied by x^shifts[i]
    std::int64_t total_shift = 0;     // N = sum of shifts
};

// Left-multiply row i by x^{s_i} with s_i = -(min order in row i). A zero row means the
// matrix cannot be inverted over the skew field (the complex is not L2-acyclic).
inline NormalizedMatrix normalize_rows(const GrMat& delta, const Character& phi, const Word& x) {
    NormalizedMatrix out;
    out.mat = delta;
    out.shifts.assign(static_cast<std::size_t>(delta.rows), 0);
    for (int i = 0; i < delta.rows; ++i) {
        std::optional<std::int64_t> mn;
        for (int j = 0; j < delta.cols; ++j) {
            auto r = phi_range(delta.at(i, j), phi.images);
            if (r && (!mn || r->min < *mn)) mn = r->min;
        }
        if (!mn) throw compute_error("zero row in Laplacian: complex is not L2-acyclic along this character");
        std::int64_t s = -*mn;
        out.shifts[static_cast<std::size_t>(i)] = s;
        out.total_shift += s;
        if (s != 0) {
            GRE mult(word_pow(x, s));
            for (int j = 0; j < delta.cols; ++j)
                out.mat.at(i, j) = ring_mul(mult, out.mat.at(i, j));
        }
    }
    return out;
}

struct ExpandedMatrix {
    GrMat omega;                 // mu*n x mu*n, entries supported on kernel words
    std::vector<Word> support;   // distinct support words of omega
    std::int64_t max_degree = 0; // max order found in the normalized input (the ell bound)
};

// Block expansion: writing the normalized matrix as sum_d A_d x^d with A_d over the
// kernel of phi, block (i,j) of the output is x^i A_{j-i} x^-i for j >= i, zero below.
inline ExpandedMatrix expand_matrix(const GrMat& norm, const Character& phi, const Word& x,
                                    std::int64_t mu) {
    if (mu < 1) throw input_error("expansion parameter must be >= 1");
    int n = norm.rows;
    if (n != norm.cols) throw input_error("expansion needs a square matrix");

    // split into degree slices over kernel words
    std::int64_t ell = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto r = phi_range(norm.at(i, j), phi.images);
            if (r) {
                if (r->min < 0) throw compute_error("expansion input not normalized");
                if (r->max > ell) ell = r->max;
            }
        }
    std::vector<GrMat> slices;
    std::int64_t nslices = std::min(ell + 1, mu);
    for (std::int64_t d = 0; d < nslices; ++d) slices.emplace_back(n, n);
    std::vector<Word> xinv_pow(static_cast<std::size_t>(nslices));
    for (std::int64_t d = 0; d < nslices; ++d) xinv_pow[static_cast<std::size_t>(d)] = word_pow(x, -d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (auto& [w, c] : norm.at(i, j).terms) {
                std::int64_t d = word_weight(w, phi.images);
                if (d >= nslices) continue; // beyond the expanded window
                Word k = word_concat(w, xinv_pow[static_cast<std::size_t>(d)]);
                slices[static_cast<std::size_t>(d)].at(i, j).add_term(k, c);
            }

    ExpandedMatrix out;
    out.max_degree = ell;
    out.omega = GrMat(static_cast<int>(mu) * n, static_cast<int>(mu) * n);

    // conjugated slices x^i A_d x^-i, built one conjugation step at a time
    std::unordered_map<Word, Word, WordHash> word_conj; // one-step conjugation cache
    auto conj_step = [&](const GrMat& prev) {
        GrMat cur(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                for (auto& [w, coef] : prev.at(r, c).terms) {
                    auto wit = word_conj.find(w);
                    if (wit == word_conj.end())
                        wit = word_conj.emplace(w, word_conjugate(x, w)).first;
                    cur.at(r, c).add_term(wit->second, coef);
                }
        return cur;
    };
    std::vector<std::vector<GrMat>> conj(static_cast<std::size_t>(nslices));
    for (std::int64_t d = 0; d < nslices; ++d) {
        conj[static_cast<std::size_t>(d)].push_back(slices[static_cast<std::size_t>(d)]);
        for (std::int64_t i = 1; i <= mu - 1 - d; ++i)
            conj[static_cast<std::size_t>(d)].push_back(conj_step(conj[static_cast<std::size_t>(d)].back()));
    }

    std::map<Word, bool> support_seen;
    for (std::int64_t bi = 0; bi < mu; ++bi)
        for (std::int64_t bj = bi; bj < mu; ++bj) {
            std::int64_t d = bj - bi;
            if (d >= nslices) continue;
            const GrMat& blk = conj[static_cast<std::size_t>(d)][static_cast<std::size_t>(bi)];
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) {
                    const GRE& e = blk.at(r, c);
                    if (e.is_zero()) continue;
                    out.omega.at(static_cast<int>(bi) * n + r, static_cast<int>(bj) * n + c) = e;
                    for (auto& [w, coef] : e.terms) support_seen.emplace(w, true);
                }
        }
    for (auto& [w, flag] : support_seen) out.support.push_back(w);
    return out;
}

// One valuation job: a square Laplacian with its normalization data and expansion
// parameter.
struct ExpansionJob {
    GrMat norm;
    std::vector<std::int64_t> shifts;
    std::int64_t total_shift = 0;
    Character phi;
    Word lift;
    std::int64_t mu = 1;
    int n = 0;
};

inline ExpansionJob make_expansion_job(const GrMat& delta, const Character& phi, const Word& x,
                                       std::int64_t mu) {
    if (delta.rows != delta.cols) throw input_error("Laplacian must be square");
    NormalizedMatrix nm = normalize_rows(delta, phi, x);
    ExpansionJob job;
    job.norm = std::move(nm.mat);
    job.shifts = std::move(nm.shifts);
    job.total_shift = nm.total_shift;
    job.phi = phi;
    job.lift = x;
    job.mu = mu;
    job.n = delta.rows;
    return job;
}

struct ValuationReport {
    Rat v;                 // normalized valuation psi_mu, per-|L| rank normalization
    std::int64_t shift = 0; // N
    Rat delta;             // -2 (v - N)
    std::int64_t mu = 1;
    Int subgroup_order = 1;
    int pivots = 0;
    std::int64_t expanded_rank = 0; // integer rank of the (shrunk) regular representation
    std::int64_t ell = 0;
    std::vector<std::uint64_t> primes;
    double seconds = 0.0;
};

inline ValuationReport normalized_valuation(const ExpansionJob& job, const FiniteQuotient& q,
                                            bool shrink = true, const RankPolicy& policy = {},
                                            std::size_t closure_limit = kDefaultClosureLimit) {
    auto t0 = std::chrono::steady_clock::now();
    ExpandedMatrix ex = expand_matrix(job.norm, job.phi, job.lift, job.mu);

    // kernel support sanity
    for (auto& w : ex.support)
        if (word_weight(w, job.phi.images) != 0) throw compute_error("expansion support left the kernel");

    SubgroupTable table = subgroup_closure(q, ex.support, closure_limit);

    GrMat work = ex.omega;
    int pivots = 0;
    if (shrink) {
        ShrinkResult sr = unit_shrink(std::move(work));
        work = std::move(sr.mat);
        pivots = sr.pivots;
    }
    ZlMat zl = to_zl(work, table);
    RankResult rr = zl_regular_rank(zl, table, policy);

    Int L = static_cast<Int>(table.size());
    ValuationReport rep;
    rep.mu = job.mu;
    rep.shift = job.total_shift;
    rep.subgroup_order = L;
    rep.pivots = pivots;
    rep.expanded_rank = rr.rank;
    rep.ell = ex.max_degree;
    rep.primes = rr.primes;
    // v = mu*n - (pivots*|L| + rank)/|L|
    Rat omega_rank = Rat(Int(pivots) * L + Int(rr.rank), L);
    rep.v = Rat(Int(job.mu) * Int(job.n)) - omega_rank;
    rep.delta = Rat(-2) * (rep.v - Rat(job.total_shift));
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

struct MuSweep {
    std::vector<Rat> psi;           // one per mu in [mu_lo, mu_hi]
    std::int64_t mu_lo = 1;
    std::optional<std::int64_t> stabilized_at; // first mu with psi(mu) == psi(mu+1)
    bool certified_bound_reached = false;       // swept up to ell * n
    std::int64_t certified_bound = 0;
};

// Sweep the expansion parameter, asserting the monotone-concave shape of psi.
inline MuSweep mu_sweep(const GrMat& delta, const Character& phi, const Word& x,
                        std::int64_t mu_lo, std::int64_t mu_hi, const FiniteQuotient& q,
                        bool shrink = true, const RankPolicy& policy = {},
                        std::size_t closure_limit = kDefaultClosureLimit) {
    if (mu_lo < 1 || mu_hi < mu_lo) throw input_error("bad mu range");
    MuSweep out;
    out.mu_lo = mu_lo;
    std::int64_t ell = 0;
    for (std::int64_t mu = mu_lo; mu <= mu_hi; ++mu) {
        ExpansionJob job = make_expansion_job(delta, phi, x, mu);
        ValuationReport rep = normalized_valuation(job, q, shrink, policy, closure_limit);
        ell = rep.ell;
        out.psi.push_back(rep.v);
        std::size_t k = out.psi.size();
        if (k >= 2 && out.psi[k - 1] < out.psi[k - 2])
            throw compute_error("psi sequence decreased: approximation inconsistent");
        if (k >= 3) {
            Rat d1 = out.psi[k - 2] - out.psi[k - 3];
            Rat d2 = out.psi[k - 1] - out.psi[k - 2];
            if (d2 > d1) throw compute_error("psi sequence not concave: approximation inconsistent");
        }
        if (k >= 2 && !out.stabilized_at && out.psi[k - 1] == out.psi[k - 2])
            out.stabilized_at = mu - 1;
    }
    out.certified_bound = ell * delta.rows;
    out.certified_bound_reached = mu_hi >= out.certified_bound;
    return out;
}

} // namespace l2chi

#endif
