#pragma once

// Projection-based solutions T = Q P of the Temperley-Lieb conditions
//   (T1) T^* = T, (T2) T^2 = Q T,
//   (T3) T12 T23 T12 = T12, (T4) T23 T12 T23 = T23,
// with T12 = T (x) I_n and T23 = I_n (x) T. A subspace of C^n (x) C^n is
// carried by an orthonormal set of coefficient matrices V_1..V_r.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "densec.hpp"

namespace tlrep {

/// Orthonormal coefficient matrices V_1..V_r (each n x n) spanning a subspace
/// of C^n (x) C^n. Orthonormality under tr(V_s^* V_m) is checked on construction.
class CoeffSet {
public:
    CoeffSet(std::size_t n, std::vector<CMatrix> vs, const Tolerance& tol = {})
        : n_(n), vs_(std::move(vs)) {
        if (n_ == 0) throw InvalidCoeffSetError("coeffset: n must be positive");
        if (vs_.empty()) throw InvalidCoeffSetError("coeffset: at least one coefficient matrix required");
        if (vs_.size() > n_ * n_) throw InvalidCoeffSetError("coeffset: rank exceeds n^2");
        for (const CMatrix& v : vs_) {
            if (v.rows() != n_ || v.cols() != n_) {
                throw InvalidCoeffSetError("coeffset: coefficient matrices must be " + std::to_string(n_) +
                                           "x" + std::to_string(n_));
            }
        }
        const double defect = orthonormality_defect();
        if (!(defect <= tol.bound())) {
            throw InvalidCoeffSetError("coeffset: matrices are not orthonormal (max defect " +
                                       std::to_string(defect) + ")");
        }
    }

    std::size_t n() const noexcept { return n_; }
    std::size_t rank() const noexcept { return vs_.size(); }
    const std::vector<CMatrix>& vs() const noexcept { return vs_; }
    const CMatrix& operator[](std::size_t k) const { return vs_.at(k); }

    /// max_{s,m} |tr(V_s^* V_m) - delta_sm|
    double orthonormality_defect() const {
        double worst = 0.0;
        for (std::size_t s = 0; s < vs_.size(); ++s) {
            for (std::size_t m = 0; m < vs_.size(); ++m) {
                const complex g = inner(vs_[s], vs_[m]);
                worst = std::max(worst, std::abs(g - (s == m ? 1.0 : 0.0)));
            }
        }
        return worst;
    }

private:
    std::size_t n_;
    std::vector<CMatrix> vs_;
};

/// I_n^{(x)k} (x) t (x) I_n^{(x)(legs-k-2)}: t acting on legs k, k+1 (0-based)
/// of (C^n)^{(x)legs}.
inline CMatrix leg_operator(const CMatrix& t, std::size_t n, std::size_t k, std::size_t legs) {
    if (t.rows() != n * n || t.cols() != n * n) throw DimensionError("leg_operator: t must be n^2 x n^2");
    if (k + 2 > legs) throw std::invalid_argument("leg_operator: leg index out of range");
    std::size_t left = 1, right = 1;
    for (std::size_t i = 0; i < k; ++i) left *= n;
    for (std::size_t i = k + 2; i < legs; ++i) right *= n;
    CMatrix out = t;
    if (left > 1) out = kron(CMatrix::identity(left), out);
    if (right > 1) out = kron(out, CMatrix::identity(right));
    return out;
}

/// P = sum_s vec(V_s) vec(V_s)^*, i.e. sum_s sum_abcd (V_s)_ab conj((V_s)_cd) E_ac (x) E_bd.
inline CMatrix build_projection(const CoeffSet& cs) {
    const std::size_t d = cs.n() * cs.n();
    CMatrix p(d, d);
    for (const CMatrix& v : cs.vs()) {
        auto e = v.entries();
        for (std::size_t i = 0; i < d; ++i) {
            if (e[i] == 0.0) continue;
            for (std::size_t j = 0; j < d; ++j) p(i, j) += e[i] * std::conj(e[j]);
        }
    }
    return p;
}

struct ScalarConditions {
    double c1 = 0.0;  ///< tr123(T12 T23)
    double c2 = 0.0;  ///< tr123((T12 T23)^2)
    double target = 0.0;  ///< n r
};

/// Both scalar traces; for a solution of (T1)-(T4) they equal n r.
inline ScalarConditions scalar_conditions(const CMatrix& t, std::size_t n, std::size_t r) {
    const CMatrix t12 = leg_operator(t, n, 0, 3);
    const CMatrix t23 = leg_operator(t, n, 1, 3);
    const CMatrix m = t12 * t23;
    return {trace(m).real(), trace_of_product(m, m).real(), static_cast<double>(n * r)};
}

/// Blocks of the nr x nr matrix W: block (s, m) = V_m conj(V_s).
inline CMatrix build_w(const CoeffSet& cs) {
    const std::size_t n = cs.n(), r = cs.rank();
    CMatrix w(n * r, n * r);
    std::vector<CMatrix> bars;
    bars.reserve(r);
    for (const CMatrix& v : cs.vs()) bars.push_back(conj(v));
    for (std::size_t s = 0; s < r; ++s) {
        for (std::size_t m = 0; m < r; ++m) {
            const CMatrix block = cs[m] * bars[s];
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) w(s * n + i, m * n + j) = block(i, j);
        }
    }
    return w;
}

struct WCriterion {
    double q_value = 0.0;
    double residual = 0.0;
    bool pass = false;
};

/// Q = sqrt(n r / tr(W W^*)); passes when Q W is unitary within tol.
inline WCriterion w_criterion(const CoeffSet& cs, const Tolerance& tol = {}) {
    const CMatrix w = build_w(cs);
    const double norm = fro_norm(w);
    if (norm <= tol.abs) throw OrthogonalLegsError("w_criterion: W vanishes (P12 P23 = 0)");
    const double q = std::sqrt(static_cast<double>(cs.n() * cs.rank())) / norm;
    const UnitarityCheck u = is_unitary(q * w, tol);
    return {q, u.residual, u.unitary};
}

struct VTraces {
    double f1 = 0.0;  ///< tr123(P12 P23)
    double f2 = 0.0;  ///< tr123((P12 P23)^2)
};

/// Traces of P12 P23 and its square straight from the coefficient matrices:
///   f1 = sum_{s,m} tr(V_s Vbar_m V_m^t V_s^*)
///   f2 = sum_{s,s',m,m'} tr(V_s Vbar_m' V_m^t V_s^* V_s' Vbar_m V_m'^t V_s'^*)
/// evaluated through C(m', m) = sum_s V_s Vbar_m' V_m^t V_s^*.
inline VTraces v_traces(const std::vector<CMatrix>& vs) {
    const std::size_t r = vs.size();
    std::vector<CMatrix> bar, tr, adj;
    for (const CMatrix& v : vs) {
        bar.push_back(conj(v));
        tr.push_back(transpose(v));
        adj.push_back(adjoint(v));
    }
    // mid[m' * r + m] = Vbar_m' V_m^t
    std::vector<CMatrix> mid;
    mid.reserve(r * r);
    for (std::size_t mp = 0; mp < r; ++mp)
        for (std::size_t m = 0; m < r; ++m) mid.push_back(bar[mp] * tr[m]);
    std::vector<CMatrix> c;
    c.reserve(r * r);
    for (std::size_t k = 0; k < r * r; ++k) {
        CMatrix acc(vs[0].rows(), vs[0].cols());
        for (std::size_t s = 0; s < r; ++s) acc += vs[s] * mid[k] * adj[s];
        c.push_back(std::move(acc));
    }
    VTraces out;
    for (std::size_t m = 0; m < r; ++m) out.f1 += trace(c[m * r + m]).real();
    for (std::size_t mp = 0; mp < r; ++mp)
        for (std::size_t m = 0; m < r; ++m) out.f2 += trace_of_product(c[mp * r + m], c[m * r + mp]).real();
    return out;
}

inline VTraces v_traces(const CoeffSet& cs) { return v_traces(cs.vs()); }

/// Same traces on dense n^3 x n^3 matrices.
inline VTraces direct_traces(const CMatrix& p, std::size_t n) {
    const CMatrix p12 = leg_operator(p, n, 0, 3);
    const CMatrix p23 = leg_operator(p, n, 1, 3);
    const CMatrix m = p12 * p23;
    return {trace(m).real(), trace_of_product(m, m).real()};
}

struct TraceCriterion {
    double lhs = 0.0;  ///< (tr123(P12 P23))^2
    double rhs = 0.0;  ///< n r tr123((P12 P23)^2)
    double q_if_pass = 0.0;
    VTraces direct;
    VTraces fast;
    double cross_check = 0.0;  ///< max relative gap between the direct and V-trace routes
    bool equal = false;
};

/// Scalar criterion (tr P12P23)^2 = n r tr (P12P23)^2, evaluated both densely
/// and via V-traces. `equal` uses a relative threshold on |lhs - rhs| / rhs.
inline TraceCriterion trace_criterion(const CoeffSet& cs, const Tolerance& tol = {}, double rel_equal = 1e-8) {
    const std::size_t n = cs.n(), r = cs.rank();
    TraceCriterion out;
    out.direct = direct_traces(build_projection(cs), n);
    out.fast = v_traces(cs);
    if (out.direct.f1 <= tol.abs) throw OrthogonalLegsError("trace_criterion: P12 P23 = 0");
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); };
    out.cross_check = std::max(rel(out.direct.f1, out.fast.f1), rel(out.direct.f2, out.fast.f2));
    const double nr = static_cast<double>(n * r);
    out.lhs = out.direct.f1 * out.direct.f1;
    out.rhs = nr * out.direct.f2;
    out.q_if_pass = std::sqrt(nr / out.direct.f1);
    out.equal = std::abs(out.lhs - out.rhs) <= rel_equal * out.rhs;
    return out;
}

enum class VerdictKind { pass, fail, nilpotent };

inline const char* to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::pass: return "pass";
        case VerdictKind::fail: return "fail";
        case VerdictKind::nilpotent: return "nilpotent";
    }
    return "?";
}

struct TLVerdict {
    double q_value = 0.0;
    double res_t1 = 0.0;
    double res_t2 = 0.0;
    double res_t3 = 0.0;
    double res_t4 = 0.0;
    double trace_lhs = 0.0;
    double trace_rhs = 0.0;
    double w_residual = 0.0;
    std::size_t rank = 0;
    bool pass = false;
    VerdictKind kind = VerdictKind::fail;
};

/// Direct check of (T1)-(T4) on dense n^3 x n^3 matrices. Q = tr(T^2)/tr(T).
///
/// Residuals are Frobenius norms; residual k passes when it is at most
/// tol.abs + tol.rel * max(1, ||T||)^k (k = 1 for T1, 2 for T2, 3 for T3/T4).
/// A nonzero T with vanishing trace is reported as VerdictKind::nilpotent and
/// never passes. The trace and W fields are filled from P = T/Q when Q > 0.
inline TLVerdict check_axioms(const CMatrix& t, std::size_t n, const Tolerance& tol = {}) {
    if (t.rows() != n * n || t.cols() != n * n) throw DimensionError("check_axioms: t must be n^2 x n^2");
    TLVerdict v;
    const double tnorm = fro_norm(t);
    const double s1 = std::max(1.0, tnorm), s2 = s1 * s1, s3 = s2 * s1;
    v.res_t1 = fro_norm(t - adjoint(t));

    const CMatrix tt = t * t;
    const complex tr1 = trace(t);
    const complex tr2 = trace(tt);
    const bool zero = tnorm <= tol.abs;
    const bool traceless = std::abs(tr1) <= tol.bound(s1);
    complex q = 0.0;
    if (!zero && !traceless) q = tr2 / tr1;
    v.q_value = q.real();
    v.res_t2 = fro_norm(tt - q * t);

    const CMatrix t12 = leg_operator(t, n, 0, 3);
    const CMatrix t23 = leg_operator(t, n, 1, 3);
    v.res_t3 = fro_norm(t12 * (t23 * t12) - t12);
    v.res_t4 = fro_norm(t23 * (t12 * t23) - t23);

    const bool residuals_ok = tol.accepts(v.res_t1, s1) && tol.accepts(v.res_t2, s2) &&
                              tol.accepts(v.res_t3, s3) && tol.accepts(v.res_t4, s3);

    if (!zero && traceless) {
        v.kind = VerdictKind::nilpotent;
        v.pass = false;
        return v;
    }
    if (zero || !(v.q_value > 0.0)) {
        v.kind = VerdictKind::fail;
        return v;
    }

    // Criterion quantities of P = T / Q.
    const double qv = v.q_value;
    v.rank = static_cast<std::size_t>(std::llround(tr1.real() / qv));
    const ScalarConditions sc = scalar_conditions(t, n, v.rank);
    const double f1 = sc.c1 / (qv * qv);
    const double f2 = sc.c2 / (qv * qv * qv * qv);
    v.trace_lhs = f1 * f1;
    v.trace_rhs = static_cast<double>(n * v.rank) * f2;

    const CMatrix p = (1.0 / qv) * t;
    std::vector<CMatrix> cols;
    cols.reserve(n * n);
    for (std::size_t j = 0; j < n * n; ++j) {
        std::vector<complex> col(n * n);
        for (std::size_t i = 0; i < n * n; ++i) col[i] = p(i, j);
        cols.push_back(unvectorize(col, n));
    }
    std::vector<CMatrix> range = orthonormal_span(cols, 1e-6);
    if (!range.empty() && range.size() <= n * n) {
        const CoeffSet cs(n, std::move(range), Tolerance(1e-8));
        v.w_residual = is_unitary(qv * build_w(cs)).residual;
    } else {
        v.w_residual = std::numeric_limits<double>::infinity();
    }

    v.pass = residuals_ok && qv > 0.0 && v.w_residual <= tol.bound();
    v.kind = v.pass ? VerdictKind::pass : VerdictKind::fail;
    return v;
}

struct ConjugateFamily {
    CoeffSet bar;
    CoeffSet transpose;
    CoeffSet adjoint;
};

inline ConjugateFamily conjugate_family(const CoeffSet& cs) {
    std::vector<CMatrix> b, t, a;
    for (const CMatrix& v : cs.vs()) {
        b.push_back(conj(v));
        t.push_back(tlrep::transpose(v));
        a.push_back(tlrep::adjoint(v));
    }
    const Tolerance loose(1e-8);
    return {CoeffSet(cs.n(), std::move(b), loose), CoeffSet(cs.n(), std::move(t), loose),
            CoeffSet(cs.n(), std::move(a), loose)};
}

struct RankOneQ {
    double q_det = 0.0;    ///< |det V|^{-2/n}
    double q_trace = 0.0;  ///< sqrt(tr((V^* V)^{-1}))
};

/// Two closed-form Q estimates for a rank-one solution T = Q vv^*.
/// Throws RankOneImpossibleError if V is singular.
inline RankOneQ rank_one_q(const CMatrix& v, const Tolerance& tol = {}) {
    if (!v.is_square()) throw DimensionError("rank_one_q: V must be square");
    const double norm2 = fro_norm(v) * fro_norm(v);
    if (std::abs(norm2 - 1.0) > std::max(tol.bound(), 1e-8)) {
        throw std::invalid_argument("rank_one_q: tr(V^* V) must be 1");
    }
    const std::vector<double> sv = singular_values(v);
    if (sv.back() <= tol.abs) throw RankOneImpossibleError("rank_one_q: V is singular, no rank-one solution");
    const double n = static_cast<double>(v.rows());
    double log_det = 0.0, inv_sum = 0.0;
    for (double s : sv) {
        log_det += std::log(s);
        inv_sum += 1.0 / (s * s);
    }
    return {std::exp(-2.0 * log_det / n), std::sqrt(inv_sum)};
}

struct BoundCheck {
    bool applies = false;
    bool satisfied = true;
};

struct BoundReport {
    double q_value = 0.0;
    std::size_t n = 0;
    std::size_t r = 0;
    double bound_nr = 0.0;       ///< n / r
    double bound_quartic = 0.0;  ///< (2 n^2 / (n^2 + r))^{1/4}
    bool nr_satisfied = false;
    bool quartic_satisfied = false;
    std::optional<double> rank_one_floor;  ///< n, present when r = 1
    bool rank_one_satisfied = true;
    bool rank_one_equality = false;  ///< Q = n within slack
    BoundCheck symmetric_member;     ///< Q^2 <= n^2
    BoundCheck unitary_member;       ///< Q^2 = n^2 / r
    BoundCheck unitary_chain;        ///< Q^2 >= n^2 / r
};

namespace detail {

inline bool is_symmetric_or_antisymmetric(const CMatrix& v, double tol) {
    const CMatrix vt = transpose(v);
    return fro_norm(v - vt) < tol || fro_norm(v + vt) < tol;
}

inline bool is_unitary_multiple(const CMatrix& v, double tol) {
    const double n = static_cast<double>(v.rows());
    return distance_to_scalar(v * adjoint(v), 1.0 / n) < tol;
}

/// V_k = V_1 g_k (or g_k V_1) for all k with unitary g_k and nonsingular V_1.
inline bool is_unitary_chain(const CoeffSet& cs, double tol) {
    if (cs.rank() < 2) return false;
    const std::vector<double> sv = singular_values(cs[0]);
    if (sv.back() <= tol) return false;
    const CMatrix inv = inverse(cs[0]);
    auto all_unitary = [&](bool right) {
        for (std::size_t k = 1; k < cs.rank(); ++k) {
            const CMatrix g = right ? inv * cs[k] : cs[k] * inv;
            if (!is_unitary(g, Tolerance(tol)).unitary) return false;
        }
        return true;
    };
    return all_unitary(true) || all_unitary(false);
}

}  // namespace detail

/// Evaluates the general Q bounds and the structural special cases for a
/// verified solution. Slack for every inequality is tol.abs.
inline BoundReport bound_suite(const CoeffSet& cs, const TLVerdict& verdict, const Tolerance& tol = {}) {
    if (!verdict.pass) throw std::invalid_argument("bound_suite: verdict did not pass");
    BoundReport b;
    const double q = verdict.q_value;
    const double n = static_cast<double>(cs.n());
    const double r = static_cast<double>(cs.rank());
    const double slack = tol.abs;
    b.q_value = q;
    b.n = cs.n();
    b.r = cs.rank();
    b.bound_nr = n / r;
    b.bound_quartic = std::pow(2.0 * n * n / (n * n + r), 0.25);
    b.nr_satisfied = q >= b.bound_nr - slack;
    b.quartic_satisfied = std::pow(q, 4) >= 2.0 * n * n / (n * n + r) - slack;
    if (cs.rank() == 1) {
        b.rank_one_floor = n;
        b.rank_one_satisfied = q >= n - slack;
        b.rank_one_equality = std::abs(q - n) <= slack;
    }
    const double structural_tol = std::max(tol.abs, 1e-9);
    for (const CMatrix& v : cs.vs()) {
        if (detail::is_symmetric_or_antisymmetric(v, structural_tol)) b.symmetric_member.applies = true;
        if (detail::is_unitary_multiple(v, structural_tol)) b.unitary_member.applies = true;
    }
    if (b.symmetric_member.applies) b.symmetric_member.satisfied = q * q <= n * n + slack * n;
    if (b.unitary_member.applies) {
        b.unitary_member.satisfied = std::abs(q * q - n * n / r) <= slack * std::max(1.0, n * n / r);
    }
    b.unitary_chain.applies = detail::is_unitary_chain(cs, structural_tol);
    if (b.unitary_chain.applies) b.unitary_chain.satisfied = q * q >= n * n / r - slack * n * n;
    return b;
}

enum class TowerSide { left, right };

/// V_k -> (1/sqrt m) I_m (x) V_k (left) or (1/sqrt m) V_k (x) I_m (right).
/// The lifted solution has local dimension m n, the same rank, and Q scaled by m.
inline CoeffSet scale_tower(const CoeffSet& cs, std::size_t m, TowerSide side = TowerSide::left) {
    if (m == 0) throw std::invalid_argument("scale_tower: m must be positive");
    if (m == 1) return cs;
    const CMatrix id = CMatrix::identity(m);
    const double f = 1.0 / std::sqrt(static_cast<double>(m));
    std::vector<CMatrix> out;
    for (const CMatrix& v : cs.vs()) out.push_back(f * (side == TowerSide::left ? kron(id, v) : kron(v, id)));
    return CoeffSet(cs.n() * m, std::move(out), Tolerance(1e-8));
}

}  // namespace tlrep
