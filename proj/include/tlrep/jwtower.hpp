#pragma once

// Jones-Wenzl recursion, the dimension sequence d_N and the admissible-Q sets
// that follow from positivity of the Markov trace.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "tlcore.hpp"

namespace tlrep {

/// rho_0 = 0, rho_{k+1} = 1 / (Q - rho_k); out[k] holds rho_k for k <= n_max.
/// Stops at the first infinite term (|Q - rho_k| < inf_tol), included as +inf.
inline std::vector<double> rho_sequence(double q_cap, std::size_t n_max, double inf_tol = 1e-10) {
    std::vector<double> rho;
    rho.push_back(0.0);
    while (rho.size() <= n_max) {
        const double den = q_cap - rho.back();
        if (std::abs(den) < inf_tol) {
            rho.push_back(std::numeric_limits<double>::infinity());
            break;
        }
        rho.push_back(1.0 / den);
    }
    return rho;
}

/// d_0 = 1, d_1 = n, d_{N+1} = n d_N - r d_{N-1}; out[N] holds d_N for N <= n_max.
inline std::vector<double> d_sequence(std::size_t n, std::size_t r, std::size_t n_max) {
    std::vector<double> d{1.0};
    if (n_max >= 1) d.push_back(static_cast<double>(n));
    for (std::size_t k = 2; k <= n_max; ++k) {
        d.push_back(static_cast<double>(n) * d[k - 1] - static_cast<double>(r) * d[k - 2]);
    }
    return d;
}

/// d_N = r^{N/2} (xi^{N+1} - xi^{-N-1}) / (xi - xi^{-1}) with xi + 1/xi = n / sqrt(r).
inline double d_closed_form(std::size_t n, std::size_t r, std::size_t big_n) {
    if (r == 0) return std::pow(static_cast<double>(n), static_cast<double>(big_n));
    const double nd = static_cast<double>(n), rd = static_cast<double>(r), N = static_cast<double>(big_n);
    const double scale = std::pow(rd, 0.5 * N);
    if (4 * r == n * n) return scale * (N + 1.0);
    const double c = nd / std::sqrt(rd);
    if (c > 2.0) {
        const double xi = 0.5 * (c + std::sqrt(c * c - 4.0));
        return scale * (std::pow(xi, N + 1.0) - std::pow(xi, -N - 1.0)) / (xi - 1.0 / xi);
    }
    const double theta = std::acos(0.5 * c);
    return scale * std::sin((N + 1.0) * theta) / std::sin(theta);
}

/// First N with d_N < 0, scanning N = 0..n_max. A value counts as negative when
/// below -1e-9 times the largest |d_k| seen so far.
inline std::optional<std::size_t> first_negative_d(const std::vector<double>& d) {
    double scale = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
        scale = std::max(scale, std::abs(d[k]));
        if (d[k] < -1e-9 * scale) return k;
    }
    return std::nullopt;
}

struct AllowedQ {
    enum class Kind { unrestricted, empty, discrete };
    Kind kind = Kind::unrestricted;
    /// For discrete: the admissible values of Q.
    std::vector<double> values;
    /// For r > n^2/4: the m with 4cos^2(pi/(m+2)) <= n^2/r < 4cos^2(pi/(m+3)).
    std::optional<int> m;
};

/// Admissible Q for a rank-r solution on C^n with a positive Markov trace:
/// unrestricted when r <= n^2/4; {1} when r = n^2; empty when n^2/2 < r < n^2;
/// otherwise Q = 2cos(pi/(k+2)) for k = 2..m. k = 1 (Q = 1) is dropped since it
/// forces r = n^2.
inline AllowedQ allowed_q(std::size_t n, std::size_t r) {
    if (n == 0 || r == 0 || r > n * n) throw std::invalid_argument("allowed_q: need 1 <= r <= n^2");
    AllowedQ out;
    if (4 * r <= n * n) return out;
    out.kind = AllowedQ::Kind::discrete;
    if (r == n * n) {
        out.values = {1.0};
        out.m = 1;
        return out;
    }
    if (2 * r > n * n) {
        out.kind = AllowedQ::Kind::empty;
        return out;
    }
    const double x = static_cast<double>(n * n) / static_cast<double>(r);
    auto bound = [](int m) {
        const double c = std::cos(std::numbers::pi / (m + 2));
        return 4.0 * c * c;
    };
    int m = 1;
    while (x >= bound(m + 1) - 1e-12) ++m;
    out.m = m;
    for (int k = 2; k <= m; ++k) out.values.push_back(2.0 * std::cos(std::numbers::pi / (k + 2)));
    return out;
}

struct JWOptions {
    std::size_t size_cap = 4096;
    Tolerance tol{};
};

/// P_1 = I, P_{k+1} = P_k - rho_k P_k T_k P_k on (C^n)^{(x)N}; returns P_N.
inline CMatrix jw_matrix(const CMatrix& t, std::size_t n, std::size_t big_n, const JWOptions& opt = {}) {
    if (big_n == 0) throw std::invalid_argument("jw_matrix: N must be >= 1");
    const TLVerdict v = check_axioms(t, n, opt.tol);
    if (!v.pass) throw std::invalid_argument("jw_matrix: T does not satisfy (T1)-(T4)");
    double dim = 1.0;
    for (std::size_t k = 0; k < big_n; ++k) dim *= static_cast<double>(n);
    if (dim > static_cast<double>(opt.size_cap)) {
        throw SizeLimitError("jw_matrix: n^N = " + std::to_string(static_cast<long long>(dim)) + " exceeds the size cap");
    }
    const std::vector<double> rho = rho_sequence(v.q_value, big_n - 1);
    for (std::size_t k = 1; k < big_n; ++k) {
        if (k >= rho.size() || !std::isfinite(rho[k])) {
            throw UndefinedProjectorError("jw_matrix: rho_" + std::to_string(k) + " is infinite, P_" +
                                          std::to_string(big_n) + " is undefined");
        }
    }
    CMatrix p = CMatrix::identity(static_cast<std::size_t>(dim));
    for (std::size_t k = 1; k < big_n; ++k) {
        const CMatrix tk = leg_operator(t, n, k - 1, big_n);
        p -= (p * tk * p) * complex(rho[k]);
    }
    return p;
}

/// max_k of ||T_k P_N||_F and ||P_N T_k||_F over k = 1..N-1.
inline double jw_annihilation_residual(const CMatrix& t, std::size_t n, std::size_t big_n, const JWOptions& opt = {}) {
    const CMatrix p = jw_matrix(t, n, big_n, opt);
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < big_n; ++k) {
        const CMatrix tk = leg_operator(t, n, k, big_n);
        worst = std::max({worst, fro_norm(tk * p), fro_norm(p * tk)});
    }
    return worst;
}

struct JWReport {
    std::size_t n = 0;
    std::size_t r = 0;
    std::optional<double> q_value;
    std::vector<double> rho;
    std::vector<double> d;
    std::optional<std::size_t> first_negative_d;
    AllowedQ allowed;
};

inline JWReport jw_report(std::size_t n, std::size_t r, std::optional<double> q_cap, std::size_t n_max) {
    JWReport out;
    out.n = n;
    out.r = r;
    out.q_value = q_cap;
    if (q_cap) out.rho = rho_sequence(*q_cap, n_max);
    out.d = d_sequence(n, r, n_max);
    out.first_negative_d = first_negative_d(out.d);
    out.allowed = allowed_q(n, r);
    return out;
}

}  // namespace tlrep
