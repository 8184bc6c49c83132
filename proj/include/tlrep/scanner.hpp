#pragma once

// Exhaustive search for TL projections P = sum of basis projectors, over
// subsets of a fixed orthonormal basis {V_a} of C^n (x) C^n.
//
// The trace criterion is evaluated from per-basis tables
//   F1[s][m]          = tr(B(s; m, m))
//   F2[s][m'][m][s']  = tr(B(s; m', m) B(s'; m, m'))
// with B(s; m', m) = V_s Vbar_m' V_m^t V_s^*, so a subset of size r costs r^4
// additions. Candidates are confirmed with check_axioms.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "jwtower.hpp"
#include "qsu2.hpp"
#include "tlcore.hpp"

namespace tlrep {

struct ScanConfig {
    std::vector<CMatrix> basis;
    std::size_t n = 0;
    /// Defaults to floor(n^2 / 4).
    std::optional<std::size_t> max_rank;
    /// Also scan ranks above max_rank whose allowed_q set is nonempty.
    bool include_high_ranks = false;
    Tolerance tol{};
    std::size_t parallelism = 1;
    /// Relative threshold of the fast criterion |f1^2 - n r f2| <= rel_equal n r f2.
    double rel_equal = 1e-8;
};

struct SubsetHit {
    std::vector<std::size_t> indices;
    double q_value = 0.0;
    TLVerdict verdict;
};

/// Orthonormal basis of C^n (x) C^n made of |J,m>_q, ordered by (J, m).
inline std::vector<CMatrix> cg_basis(int s2, double q) {
    const QContext ctx(q);
    std::vector<CMatrix> out;
    for (const SpinLabel& l : all_labels(s2)) out.push_back(coeff_matrix(ctx, l));
    return out;
}

/// Ranks visited by scan(): 1..max_rank, then the high ranks if enabled.
inline std::vector<std::size_t> scan_ranks(const ScanConfig& cfg) {
    const std::size_t nn = cfg.n * cfg.n;
    const std::size_t size = cfg.basis.size();
    const std::size_t top = cfg.max_rank.value_or(nn / 4);
    std::vector<std::size_t> ranks;
    for (std::size_t r = 1; r <= std::min(top, size); ++r) ranks.push_back(r);
    if (cfg.include_high_ranks) {
        for (std::size_t r = top + 1; r <= size; ++r) {
            const AllowedQ a = allowed_q(cfg.n, r);
            if (a.kind == AllowedQ::Kind::discrete && !a.values.empty()) ranks.push_back(r);
        }
    }
    return ranks;
}

namespace detail {

inline void validate_scan(const ScanConfig& cfg) {
    if (cfg.n == 0) throw InvalidBasisError("scan: n must be positive");
    const std::size_t nn = cfg.n * cfg.n;
    if (cfg.basis.empty() || cfg.basis.size() > nn) throw InvalidBasisError("scan: basis must have 1..n^2 elements");
    if (cfg.basis.size() > 63) throw InvalidBasisError("scan: at most 63 basis elements are supported");
    for (const CMatrix& v : cfg.basis) {
        if (v.rows() != cfg.n || v.cols() != cfg.n) throw InvalidBasisError("scan: basis elements must be n x n");
    }
    for (std::size_t a = 0; a < cfg.basis.size(); ++a) {
        for (std::size_t b = a; b < cfg.basis.size(); ++b) {
            const double g = std::abs(inner(cfg.basis[a], cfg.basis[b]) - (a == b ? 1.0 : 0.0));
            if (!(g <= cfg.tol.bound())) {
                throw InvalidBasisError("scan: basis elements " + std::to_string(a + 1) + " and " +
                                        std::to_string(b + 1) + " are not orthonormal");
            }
        }
    }
    if (cfg.max_rank && (*cfg.max_rank == 0 || *cfg.max_rank > nn)) {
        throw std::invalid_argument("scan: max_rank must be in 1..n^2");
    }
    if (cfg.parallelism == 0) throw std::invalid_argument("scan: parallelism must be positive");
}

struct TraceTables {
    std::size_t size = 0;
    std::vector<double> f1;  // [s * N + m]
    std::vector<double> f2;  // [((s * N + m') * N + m) * N + s']

    explicit TraceTables(const std::vector<CMatrix>& basis) : size(basis.size()) {
        const std::size_t N = size;
        std::vector<CMatrix> bar, tr, adj;
        for (const CMatrix& v : basis) {
            bar.push_back(conj(v));
            tr.push_back(transpose(v));
            adj.push_back(adjoint(v));
        }
        auto b = [&](std::size_t s, std::size_t mp, std::size_t m) { return basis[s] * bar[mp] * tr[m] * adj[s]; };
        f1.assign(N * N, 0.0);
        f2.assign(N * N * N * N, 0.0);
        for (std::size_t s = 0; s < N; ++s)
            for (std::size_t m = 0; m < N; ++m) f1[s * N + m] = trace(b(s, m, m)).real();
        std::vector<CMatrix> fwd, bwd;
        for (std::size_t mp = 0; mp < N; ++mp) {
            for (std::size_t m = 0; m < N; ++m) {
                fwd.clear();
                bwd.clear();
                for (std::size_t s = 0; s < N; ++s) {
                    fwd.push_back(b(s, mp, m));
                    bwd.push_back(b(s, m, mp));
                }
                for (std::size_t s = 0; s < N; ++s)
                    for (std::size_t sp = 0; sp < N; ++sp)
                        f2[((s * N + mp) * N + m) * N + sp] = trace_of_product(fwd[s], bwd[sp]).real();
            }
        }
    }

    VTraces traces(const std::vector<std::size_t>& idx) const {
        const std::size_t N = size;
        VTraces out;
        for (std::size_t s : idx)
            for (std::size_t m : idx) out.f1 += f1[s * N + m];
        for (std::size_t s : idx)
            for (std::size_t mp : idx)
                for (std::size_t m : idx) {
                    const double* row = &f2[((s * N + mp) * N + m) * N];
                    for (std::size_t sp : idx) out.f2 += row[sp];
                }
        return out;
    }
};

/// Binomial coefficient; exact for n <= 63.
inline std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    // c * (n - k + i) can pass 2^64 before the division for n near 63
    unsigned __int128 c = 1;
    for (std::uint64_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return static_cast<std::uint64_t>(c);
}

/// The index-th k-subset of {0..} in colex order, as a bitmask.
inline std::uint64_t unrank_colex(std::uint64_t index, std::size_t k) {
    std::uint64_t mask = 0;
    for (std::size_t j = k; j >= 1; --j) {
        std::uint64_t c = j - 1;
        while (choose(c + 1, j) <= index) ++c;
        mask |= std::uint64_t{1} << c;
        index -= choose(c, j);
    }
    return mask;
}

/// Next mask with the same popcount (Gosper).
inline std::uint64_t next_colex(std::uint64_t x) {
    const std::uint64_t c = x & (~x + 1);
    const std::uint64_t r = x + c;
    return (((r ^ x) >> 2) / c) | r;
}

inline std::vector<std::size_t> mask_indices(std::uint64_t mask) {
    std::vector<std::size_t> idx;
    for (std::size_t b = 0; mask != 0; ++b, mask >>= 1)
        if (mask & 1) idx.push_back(b);
    return idx;
}

}  // namespace detail

/// All subsets of the visited ranks that satisfy (T1)-(T4) for T = Q P, sorted
/// by (rank, indices). Results do not depend on cfg.parallelism.
inline std::vector<SubsetHit> scan(const ScanConfig& cfg) {
    detail::validate_scan(cfg);
    const detail::TraceTables tables(cfg.basis);
    const std::size_t N = cfg.basis.size();

    auto test = [&](const std::vector<std::size_t>& idx) -> std::optional<SubsetHit> {
        const VTraces t = tables.traces(idx);
        if (!(t.f1 > cfg.tol.abs)) return std::nullopt;
        const double nr = static_cast<double>(cfg.n * idx.size());
        if (std::abs(t.f1 * t.f1 - nr * t.f2) > cfg.rel_equal * nr * t.f2) return std::nullopt;
        std::vector<CMatrix> vs;
        for (std::size_t i : idx) vs.push_back(cfg.basis[i]);
        const CoeffSet cs(cfg.n, std::move(vs), Tolerance(std::max(cfg.tol.abs, 1e-8)));
        const double q = std::sqrt(nr / t.f1);
        const TLVerdict v = check_axioms(build_projection(cs) * complex(q), cfg.n, cfg.tol);
        if (!v.pass) return std::nullopt;
        return SubsetHit{idx, v.q_value, v};
    };

    std::vector<SubsetHit> hits;
    for (std::size_t r : scan_ranks(cfg)) {
        const std::uint64_t total = detail::choose(N, r);
        const std::size_t workers = static_cast<std::size_t>(std::min<std::uint64_t>(cfg.parallelism, total));
        std::vector<std::vector<SubsetHit>> found(workers);
        auto work = [&](std::size_t w) {
            const std::uint64_t lo = total * w / workers, hi = total * (w + 1) / workers;
            if (lo >= hi) return;
            std::uint64_t mask = detail::unrank_colex(lo, r);
            for (std::uint64_t k = lo; k < hi; ++k) {
                if (auto h = test(detail::mask_indices(mask))) found[w].push_back(std::move(*h));
                if (k + 1 < hi) mask = detail::next_colex(mask);
            }
        };
        if (workers <= 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
            for (std::thread& th : pool) th.join();
        }
        for (auto& part : found)
            for (auto& h : part) hits.push_back(std::move(h));
    }
    std::sort(hits.begin(), hits.end(), [](const SubsetHit& a, const SubsetHit& b) {
        if (a.indices.size() != b.indices.size()) return a.indices.size() < b.indices.size();
        return a.indices < b.indices;
    });
    return hits;
}

struct ScanGroup {
    std::size_t rank = 0;
    double q_value = 0.0;
    std::vector<std::vector<std::size_t>> members;
    /// Both Q >= n/r and Q^4 >= 2n^2/(n^2+r) hold for every member.
    bool bounds_ok = true;
    /// Q lies in allowed_q(n, r) (always true when that set is unrestricted).
    bool allowed_ok = true;
};

struct ScanReport {
    std::size_t n = 0;
    std::vector<ScanGroup> groups;
};

/// Groups hits by (rank, Q) with Q compared to 1e-9 relative.
inline ScanReport scan_report(const std::vector<SubsetHit>& hits, const std::vector<CMatrix>& basis, std::size_t n,
                              const Tolerance& tol = {}) {
    ScanReport rep;
    rep.n = n;
    for (const SubsetHit& h : hits) {
        const std::size_t r = h.indices.size();
        auto it = std::find_if(rep.groups.begin(), rep.groups.end(), [&](const ScanGroup& g) {
            return g.rank == r && std::abs(g.q_value - h.q_value) <= 1e-9 * std::max(1.0, h.q_value);
        });
        if (it == rep.groups.end()) {
            rep.groups.push_back({r, h.q_value, {}, true, true});
            it = rep.groups.end() - 1;
        }
        it->members.push_back(h.indices);

        std::vector<CMatrix> vs;
        for (std::size_t i : h.indices) vs.push_back(basis.at(i));
        const BoundReport b = bound_suite(CoeffSet(n, std::move(vs), Tolerance(std::max(tol.abs, 1e-8))), h.verdict, tol);
        it->bounds_ok = it->bounds_ok && b.nr_satisfied && b.quartic_satisfied;

        const AllowedQ a = allowed_q(n, r);
        if (a.kind != AllowedQ::Kind::unrestricted) {
            const bool in = std::any_of(a.values.begin(), a.values.end(),
                                        [&](double v) { return std::abs(v - h.q_value) <= 1e-9; });
            it->allowed_ok = it->allowed_ok && in;
        }
    }
    return rep;
}

}  // namespace tlrep
