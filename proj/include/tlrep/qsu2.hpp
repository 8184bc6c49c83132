#pragma once

// q-numbers, U_q(su2) Clebsch-Gordan coefficients for spin S (x) spin S, the
// map |J,m>_q -> coefficient matrix V, and the TL-vector / TL-pair tests.
//
// All spins are passed as doubled integers (s2 = 2S, j2 = 2J, m2 = 2m).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "densec.hpp"

namespace tlrep {

struct QContext {
    double q = 1.0;
    bool is_classical = true;

    explicit QContext(double q_value) : q(q_value), is_classical(std::abs(q_value - 1.0) <= 1e-14) {
        if (!(q_value > 0.0) || !std::isfinite(q_value)) throw std::invalid_argument("q must be a positive real");
    }

    QContext inverse() const { return QContext(1.0 / q); }
};

/// [t]_q = (q^t - q^-t) / (q - q^-1), and t at q = 1.
inline double qnum(const QContext& ctx, double t) {
    if (ctx.is_classical) return t;
    const double lq = std::log(ctx.q);
    return std::sinh(t * lq) / std::sinh(lq);
}

/// [l]! = [1]_q ... [l]_q; [0]! = 1; +infinity for negative l.
inline double qfact(const QContext& ctx, int l) {
    if (l < 0) return std::numeric_limits<double>::infinity();
    double p = 1.0;
    for (int k = 1; k <= l; ++k) p *= qnum(ctx, k);
    return p;
}

inline double log_qfact(const QContext& ctx, int l) {
    double s = 0.0;
    for (int k = 2; k <= l; ++k) s += std::log(qnum(ctx, k));
    return s;
}

/// A basis vector |J, m> of spin-S (x) spin-S, in doubled units.
struct SpinLabel {
    int s2 = 0;
    int j2 = 0;
    int m2 = 0;

    std::size_t dim() const noexcept { return static_cast<std::size_t>(s2) + 1; }

    void validate() const {
        if (s2 < 0) throw std::invalid_argument("spin label: S must be >= 0");
        if (j2 < 0 || j2 % 2 != 0 || j2 > 2 * s2) {
            throw std::invalid_argument("spin label: J must be an integer in [0, 2S]");
        }
        if (std::abs(m2) > j2 || (j2 - m2) % 2 != 0) {
            throw std::invalid_argument("spin label: m must be in {-J, ..., J}");
        }
    }

    friend bool operator==(const SpinLabel&, const SpinLabel&) = default;
    /// Ordering by (J, m).
    friend bool operator<(const SpinLabel& a, const SpinLabel& b) {
        return a.j2 != b.j2 ? a.j2 < b.j2 : a.m2 < b.m2;
    }
};

/// Every |J,m> for the given spin, ordered by (J, m) ascending.
inline std::vector<SpinLabel> all_labels(int s2) {
    std::vector<SpinLabel> out;
    for (int j2 = 0; j2 <= 2 * s2; j2 += 2)
        for (int m2 = -j2; m2 <= j2; m2 += 2) out.push_back({s2, j2, m2});
    return out;
}

namespace detail {

/// Neumaier-compensated accumulator.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

}  // namespace detail

/// {S, S, k1, k2 | J, m}_q. Arguments are doubled. Returns 0 unless k1 + k2 = m
/// and every factorial argument of the prefactor is nonnegative.
///
/// The prefactor is assembled in log space (all q-factorials are positive for
/// q > 0); the alternating l-sum is accumulated with compensation.
inline double cg(const QContext& ctx, int s2, int k1_2, int k2_2, int j2, int m2) {
    if (k1_2 + k2_2 != m2) return 0.0;
    if ((s2 + k1_2) % 2 != 0 || (s2 + k2_2) % 2 != 0 || j2 % 2 != 0) return 0.0;
    const int J = j2 / 2;
    const int sp_k1 = (s2 + k1_2) / 2, sm_k1 = (s2 - k1_2) / 2;
    const int sp_k2 = (s2 + k2_2) / 2, sm_k2 = (s2 - k2_2) / 2;
    const int jp_m = (j2 + m2) / 2, jm_m = (j2 - m2) / 2;
    if (sp_k1 < 0 || sm_k1 < 0 || sp_k2 < 0 || sm_k2 < 0 || jp_m < 0 || jm_m < 0 || s2 - J < 0) return 0.0;

    const double lq = ctx.is_classical ? 0.0 : std::log(ctx.q);
    auto lf = [&](int l) { return log_qfact(ctx, l); };

    // q^{(2S-J)(2S+J+1)/2 + S(k2-k1)}; (2S-J)(2S+J+1) is always even.
    const double exponent = 0.5 * (s2 - J) * (s2 + J + 1) + 0.25 * s2 * (k2_2 - k1_2);
    const double log_pre = exponent * lq + lf(J) + 0.5 * (std::log(qnum(ctx, 2 * J + 1)) - lf(s2 + J + 1)) +
                           0.5 * (lf(s2 - J) + lf(sp_k1) + lf(sm_k1) + lf(sp_k2) + lf(sm_k2) + lf(jp_m) + lf(jm_m));

    detail::CompensatedSum sum;
    for (int l = 0;; ++l) {
        const int a = s2 - J - l, b = sm_k1 - l, c = sp_k2 - l;
        if (a < 0 || b < 0 || c < 0) break;
        const int d = J - sm_k1 + l, e = J - sp_k2 + l;
        if (d < 0 || e < 0) continue;
        const double log_term = -l * (s2 + J + 1) * lq - (lf(l) + lf(a) + lf(b) + lf(c) + lf(d) + lf(e));
        const double term = std::exp(log_pre + log_term);
        sum.add(l % 2 == 0 ? term : -term);
    }
    return sum.value();
}

inline double cg(const QContext& ctx, const SpinLabel& label, int k1_2, int k2_2) {
    return cg(ctx, label.s2, k1_2, k2_2, label.j2, label.m2);
}

/// Closed form of {S, S, S-p, m+p-S | J, m} at q = 1 for p in {0, 1, 2} and
/// integer 0 <= m <= J. Independent of cg(); used to cross-check it.
inline double cg_row_lemma(int s2, int j2, int m2, int p) {
    if (p < 0 || p > 2) throw std::invalid_argument("cg_row_lemma: p must be 0, 1 or 2");
    if (s2 < 1) throw std::invalid_argument("cg_row_lemma: S must be >= 1/2");
    if (j2 % 2 != 0 || m2 % 2 != 0 || j2 > 2 * s2) throw std::invalid_argument("cg_row_lemma: J, m must be integers, J <= 2S");
    const long J = j2 / 2, m = m2 / 2, S2 = s2;
    if (m < 0 || m > J || m > S2) throw std::invalid_argument("cg_row_lemma: need 0 <= m <= min(J, 2S)");

    const double jj = static_cast<double>(J * (J + 1));
    const double f1 = jj - static_cast<double>(S2 * (m + 1));
    const double f2 = f1 * f1 + 2.0 * static_cast<double>(m + 1 - S2) * f1 +
                      static_cast<double>(S2 * (m + 1) * (m - S2));
    const double f = p == 0 ? 1.0 : (p == 1 ? f1 : f2);
    if (f == 0.0) return 0.0;
    if (S2 - m - p < 0 || S2 - p < 0) throw std::invalid_argument("cg_row_lemma: label outside the closed form's range");

    auto lfact = [](long k) { return std::lgamma(static_cast<double>(k) + 1.0); };
    const double log_ratio = std::log(2.0 * J + 1.0) + lfact(S2 - p) + lfact(S2 - m - p) + lfact(J + m) -
                             (lfact(p) + lfact(m + p) + lfact(S2 - J) + lfact(S2 + J + 1) + lfact(J - m));
    return f * std::exp(0.5 * log_ratio);
}

/// V_ab = delta_{a+b+m, 2S+2} {S, S, S+1-a, S+1-b | J, m}_q (1-based a, b):
/// basis vector e_a is identified with the weight vector |S+1-a>.
inline CMatrix coeff_matrix(const QContext& ctx, const SpinLabel& label) {
    label.validate();
    const std::size_t n = label.dim();
    CMatrix v(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const int k1_2 = label.s2 - 2 * static_cast<int>(i);
        for (std::size_t j = 0; j < n; ++j) {
            const int k2_2 = label.s2 - 2 * static_cast<int>(j);
            if (k1_2 + k2_2 == label.m2) v(i, j) = cg(ctx, label, k1_2, k2_2);
        }
    }
    return v;
}

/// max |sum_{k1,k2} {..|J1,m1}{..|J2,m2} - delta delta| over all label pairs.
inline double cg_orthogonality_residual(const QContext& ctx, int s2) {
    const std::vector<SpinLabel> labels = all_labels(s2);
    std::vector<CMatrix> vs;
    vs.reserve(labels.size());
    for (const SpinLabel& l : labels) vs.push_back(coeff_matrix(ctx, l));
    double worst = 0.0;
    for (std::size_t a = 0; a < vs.size(); ++a) {
        for (std::size_t b = a; b < vs.size(); ++b) {
            const double g = inner(vs[a], vs[b]).real();
            worst = std::max(worst, std::abs(g - (a == b ? 1.0 : 0.0)));
        }
    }
    return worst;
}

/// max |{S,S,m2,m1|J,m}_q - (-1)^{2S-J} {S,S,m1,m2|J,m}_{1/q}|.
inline double cg_symmetry_residual(const QContext& ctx, int s2) {
    const QContext inv = ctx.inverse();
    double worst = 0.0;
    for (const SpinLabel& l : all_labels(s2)) {
        const double sign = ((s2 - l.j2 / 2) % 2 == 0) ? 1.0 : -1.0;
        for (int k1 = -s2; k1 <= s2; k1 += 2) {
            const int k2 = l.m2 - k1;
            if (std::abs(k2) > s2) continue;
            worst = std::max(worst, std::abs(cg(ctx, l, k2, k1) - sign * cg(inv, l, k1, k2)));
        }
    }
    return worst;
}

struct TLCriterionTerms {
    double f1 = 0.0;  ///< tr123(P12 P23)
    double f2 = 0.0;  ///< tr123((P12 P23)^2)
    double f = 0.0;   ///< f1^2 - n r f2
    std::size_t n = 0;
    std::size_t r = 0;

    /// f / f1^2, always in [1 - n r, 0]; -1 when f1 vanishes.
    double normalized() const { return f1 > 1e-14 ? f / (f1 * f1) : -1.0; }
    /// Q from Q^2 = n r / f1.
    double q_cap() const { return std::sqrt(static_cast<double>(n * r) / f1); }
};

namespace detail {

inline void check_distinct(std::span<const SpinLabel> labels) {
    if (labels.empty()) throw std::invalid_argument("tl criterion: at least one label required");
    for (std::size_t a = 0; a < labels.size(); ++a) {
        labels[a].validate();
        if (labels[a].s2 != labels[0].s2) throw std::invalid_argument("tl criterion: labels must share S");
        for (std::size_t b = a + 1; b < labels.size(); ++b) {
            if (labels[a].j2 == labels[b].j2 && labels[a].m2 == labels[b].m2) {
                throw std::invalid_argument("tl criterion: coincident labels");
            }
        }
    }
}

}  // namespace detail

/// Traces for the projection onto span{|J_k, m_k>_q}, using that every V is real:
///   f1 = sum_{k1,k2} tr(V_k1 V_k1^t V_k2^t V_k2)
///   f2 = sum_{k1..k4} tr(V_k1 V_k2^t V_k3^t V_k4 V_k2 V_k1^t V_k4^t V_k3)
inline TLCriterionTerms tl_criterion_terms(const QContext& ctx, std::span<const SpinLabel> labels) {
    detail::check_distinct(labels);
    const std::size_t r = labels.size();
    std::vector<CMatrix> v, vt;
    for (const SpinLabel& l : labels) {
        v.push_back(coeff_matrix(ctx, l));
        vt.push_back(transpose(v.back()));
    }
    TLCriterionTerms out;
    out.n = labels[0].dim();
    out.r = r;
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) out.f1 += trace_of_product(v[a] * vt[a], vt[b] * v[b]).real();
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b)
            for (std::size_t c = 0; c < r; ++c)
                for (std::size_t d = 0; d < r; ++d) {
                    const CMatrix left = v[a] * vt[b] * vt[c] * v[d];
                    const CMatrix right = v[b] * vt[a] * vt[d] * v[c];
                    out.f2 += trace_of_product(left, right).real();
                }
    out.f = out.f1 * out.f1 - static_cast<double>(out.n * r) * out.f2;
    return out;
}

/// f(q) = (tr P12P23)^2 - (2S+1) r tr (P12P23)^2; vanishes iff the labels are TL at q
/// (given P12 P23 != 0).
inline double tl_criterion_value(const QContext& ctx, std::span<const SpinLabel> labels) {
    return tl_criterion_terms(ctx, labels).f;
}

enum class HitMode { all_q, roots };

inline const char* to_string(HitMode m) { return m == HitMode::all_q ? "all-q" : "roots"; }

struct TLScanHit {
    std::vector<SpinLabel> labels;
    HitMode mode = HitMode::roots;
    /// Roots of f (mode roots), or representative sample points (mode all-q).
    std::vector<double> q_points;
    std::vector<double> q_values;
};

struct RootScanOptions {
    double q_lo = 0.25;
    double q_hi = 4.0;
    std::size_t grid = 400;
    double bisect_tol = 1e-12;
    /// Threshold on |f| / f1^2.
    double zero_tol = 1e-9;
    std::size_t random_checks = 10;
    std::uint64_t seed = 0x5eed;
    /// Sample points reported with an all-q hit.
    std::size_t all_q_samples = 20;
    std::size_t jobs = 1;
};

namespace detail {

inline std::vector<double> log_grid(double lo, double hi, std::size_t count) {
    std::vector<double> out(count);
    const double a = std::log(lo), b = std::log(hi);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = count == 1 ? lo : std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    return out;
}

}  // namespace detail

/// Zeros of f on [q_lo, q_hi]. Since f <= 0 its zeros are even-order, so the
/// scan polishes every grid-local minimum of |f| by bisecting the sign of a
/// central-difference derivative (plus plain bisection on any sign change of f).
/// Reports "all-q" if f vanishes at every grid point and at extra random points.
inline TLScanHit tl_root_scan(std::span<const SpinLabel> labels, const RootScanOptions& opt = {}) {
    if (!(opt.q_lo > 0.0) || !(opt.q_lo < opt.q_hi)) throw std::invalid_argument("tl_root_scan: need 0 < q_lo < q_hi");
    if (opt.grid < 3) throw std::invalid_argument("tl_root_scan: grid must have at least 3 points");
    detail::check_distinct(labels);

    auto g = [&](double q) { return tl_criterion_terms(QContext(q), labels).normalized(); };
    auto q_cap_at = [&](double q) { return tl_criterion_terms(QContext(q), labels).q_cap(); };

    TLScanHit hit;
    hit.labels.assign(labels.begin(), labels.end());

    const std::vector<double> qs = detail::log_grid(opt.q_lo, opt.q_hi, opt.grid);
    std::vector<double> gs(qs.size());
    for (std::size_t i = 0; i < qs.size(); ++i) gs[i] = g(qs[i]);

    const bool grid_zero = std::all_of(gs.begin(), gs.end(), [&](double x) { return std::abs(x) <= opt.zero_tol; });
    if (grid_zero) {
        std::mt19937_64 rng(opt.seed);
        std::uniform_real_distribution<double> u(std::log(opt.q_lo), std::log(opt.q_hi));
        bool all = true;
        for (std::size_t k = 0; k < opt.random_checks && all; ++k) all = std::abs(g(std::exp(u(rng)))) <= opt.zero_tol;
        if (all) {
            hit.mode = HitMode::all_q;
            hit.q_points = detail::log_grid(opt.q_lo, opt.q_hi, std::max<std::size_t>(opt.all_q_samples, 1));
            for (double q : hit.q_points) hit.q_values.push_back(q_cap_at(q));
            return hit;
        }
    }

    std::vector<double> roots;
    auto bisect_sign = [&](double a, double b, auto&& fn) {
        double fa = fn(a);
        while (b - a > opt.bisect_tol * std::max(1.0, a)) {
            const double mid = 0.5 * (a + b);
            const double fm = fn(mid);
            if ((fm > 0.0) == (fa > 0.0)) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        return 0.5 * (a + b);
    };
    auto accept = [&](double q) {
        if (std::abs(g(q)) > opt.zero_tol) return;
        for (double r : roots)
            if (std::abs(r - q) <= 1e-7 * q) return;
        roots.push_back(q);
    };

    for (std::size_t i = 0; i + 1 < qs.size(); ++i) {
        if (gs[i] != 0.0 && gs[i + 1] != 0.0 && (gs[i] > 0.0) != (gs[i + 1] > 0.0)) {
            accept(bisect_sign(qs[i], qs[i + 1], g));
        }
    }
    for (std::size_t i = 1; i + 1 < qs.size(); ++i) {
        const double here = std::abs(gs[i]);
        if (here > std::abs(gs[i - 1]) || here > std::abs(gs[i + 1])) continue;
        auto slope = [&](double q) {
            const double h = 1e-6 * q;
            return std::abs(g(q - h)) - std::abs(g(q + h));  // > 0 while |g| decreases
        };
        const double a = qs[i - 1], b = qs[i + 1];
        if (slope(a) > 0.0 && slope(b) < 0.0) {
            accept(bisect_sign(a, b, slope));
        } else {
            accept(qs[i]);
        }
    }
    std::sort(roots.begin(), roots.end());
    hit.mode = HitMode::roots;
    hit.q_points = roots;
    for (double q : roots) hit.q_values.push_back(q_cap_at(q));
    return hit;
}

enum class ScanMode { point, sweep };

struct VectorScanOptions {
    ScanMode mode = ScanMode::point;
    RootScanOptions sweep;
    /// Threshold on |f| / f1^2 at a single q.
    double zero_tol = 1e-9;
    int max_s2 = 8;
};

namespace detail {

inline std::vector<TLScanHit> run_scan(const QContext& ctx, const std::vector<std::vector<SpinLabel>>& candidates,
                                       const VectorScanOptions& opt) {
    auto evaluate = [&](const std::vector<SpinLabel>& labels) -> std::optional<TLScanHit> {
        if (opt.mode == ScanMode::point) {
            const TLCriterionTerms t = tl_criterion_terms(ctx, labels);
            if (t.f1 <= 1e-14 || std::abs(t.normalized()) > opt.zero_tol) return std::nullopt;
            return TLScanHit{labels, HitMode::roots, {ctx.q}, {t.q_cap()}};
        }
        TLScanHit h = tl_root_scan(labels, opt.sweep);
        if (h.mode == HitMode::roots && h.q_points.empty()) return std::nullopt;
        return h;
    };

    std::vector<std::optional<TLScanHit>> results(candidates.size());
    const std::size_t jobs = std::max<std::size_t>(1, opt.sweep.jobs);
    if (jobs == 1 || candidates.size() < 2) {
        for (std::size_t k = 0; k < candidates.size(); ++k) results[k] = evaluate(candidates[k]);
    } else {
        std::vector<std::future<void>> workers;
        const std::size_t chunk = (candidates.size() + jobs - 1) / jobs;
        for (std::size_t w = 0; w < jobs; ++w) {
            const std::size_t lo = w * chunk, hi = std::min(candidates.size(), lo + chunk);
            if (lo >= hi) break;
            workers.push_back(std::async(std::launch::async, [&, lo, hi] {
                for (std::size_t k = lo; k < hi; ++k) results[k] = evaluate(candidates[k]);
            }));
        }
        for (auto& f : workers) f.get();
    }
    std::vector<TLScanHit> out;
    for (auto& r : results)
        if (r) out.push_back(std::move(*r));
    return out;
}

}  // namespace detail

/// TL vectors |J,m>_q for spin S, in (J, m) order. Point mode tests ctx.q only;
/// sweep mode runs tl_root_scan for each label.
inline std::vector<TLScanHit> scan_vectors(int s2, const QContext& ctx, const VectorScanOptions& opt = {}) {
    if (s2 < 0 || s2 > opt.max_s2) throw std::invalid_argument("scan_vectors: spin outside the configured range");
    std::vector<std::vector<SpinLabel>> cands;
    for (const SpinLabel& l : all_labels(s2)) cands.push_back({l});
    return detail::run_scan(ctx, cands, opt);
}

/// TL pairs {|J1,m1>, |J2,m2>} with (J1, m1) > (J2, m2), each unordered pair once.
inline std::vector<TLScanHit> scan_pairs(int s2, const QContext& ctx, const VectorScanOptions& opt = {}) {
    if (s2 < 0 || s2 > opt.max_s2) throw std::invalid_argument("scan_pairs: spin outside the configured range");
    const std::vector<SpinLabel> labels = all_labels(s2);
    std::vector<std::vector<SpinLabel>> cands;
    for (std::size_t a = 0; a < labels.size(); ++a)
        for (std::size_t b = 0; b < a; ++b) cands.push_back({labels[a], labels[b]});
    return detail::run_scan(ctx, cands, opt);
}

}  // namespace tlrep
