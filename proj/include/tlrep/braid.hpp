#pragma once

// Baxterization of a TL solution: R = qI - T with q + 1/q = Q, the spectral
// family R(u), and Yang-Baxter residuals on n^3 x n^3.

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "tlcore.hpp"

namespace tlrep {

struct RFamily {
    CMatrix t;
    std::size_t n = 0;
    double q_cap = 0.0;
    complex q_root;
    bool additive = false;
    CMatrix r;
    CMatrix r_inv;
};

namespace detail {

inline complex select_q_root(double q_cap) {
    if (!(q_cap >= 1.0)) throw BranchError("braid: Q < 1 is outside the supported branch");
    // sqrt(Q^2 - 4) turns a rounding error in Q into ~1e-8 in q near Q = 2
    if (std::abs(q_cap - 2.0) < 1e-12) return 1.0;
    if (q_cap >= 2.0) return {0.5 * (q_cap + std::sqrt(q_cap * q_cap - 4.0)), 0.0};
    return std::polar(1.0, std::acos(0.5 * q_cap));
}

}  // namespace detail

/// Builds the family without checking T. Used for negative controls.
inline RFamily make_family_unchecked(const CMatrix& t, std::size_t n, double q_cap) {
    if (!t.is_square() || t.rows() != n * n) throw DimensionError("make_family: T must be n^2 x n^2");
    RFamily fam{t, n, q_cap, detail::select_q_root(q_cap), std::abs(q_cap - 2.0) < 1e-12,
                CMatrix(n * n, n * n), CMatrix(n * n, n * n)};
    const CMatrix id = CMatrix::identity(n * n);
    fam.r = id * fam.q_root - t;
    fam.r_inv = id * (1.0 / fam.q_root) - t;
    return fam;
}

/// R = q I - T, R^{-1} = q^{-1} I - T. Requires (T2)-(T4) and checks R R^{-1} = I.
inline RFamily make_family(const CMatrix& t, std::size_t n, const Tolerance& tol = {}) {
    const TLVerdict v = check_axioms(t, n, tol);
    const double scale = std::max(1.0, fro_norm(t));
    const bool relations = tol.accepts(v.res_t2, scale * scale) && tol.accepts(v.res_t3, std::pow(scale, 3)) &&
                           tol.accepts(v.res_t4, std::pow(scale, 3));
    if (!relations || !(v.q_value > 0.0)) throw std::invalid_argument("make_family: T does not satisfy (T2)-(T4)");
    RFamily fam = make_family_unchecked(t, n, v.q_value);
    const double res = fro_norm(fam.r * fam.r_inv - CMatrix::identity(n * n));
    if (!tol.accepts(res, scale * scale)) {
        throw std::invalid_argument("make_family: R R^{-1} = I fails (residual " + std::to_string(res) + ")");
    }
    return fam;
}

/// u R - R^{-1} (multiplicative) or u R + I (additive).
inline CMatrix r_at(const RFamily& fam, complex u) {
    CMatrix out = fam.r * u;
    if (fam.additive) {
        out += CMatrix::identity(fam.n * fam.n);
    } else {
        out -= fam.r_inv;
    }
    return out;
}

/// Default spectral grids: {1/2, 1, 2} multiplicative, {-1, 0, 1} additive.
inline std::vector<complex> default_grid(const RFamily& fam) {
    if (fam.additive) return {-1.0, 0.0, 1.0};
    return {0.5, 1.0, 2.0};
}

struct YBEReport {
    std::vector<std::pair<complex, complex>> grid;
    double max_residual = 0.0;
    bool additive = false;
};

/// max over (u, v) of ||R12(u) R23(u.v) R12(v) - R23(v) R12(u.v) R23(u)||_F.
inline YBEReport ybe_residual(const RFamily& fam, const std::vector<complex>& us, const std::vector<complex>& vs) {
    YBEReport rep;
    rep.additive = fam.additive;
    const CMatrix id = CMatrix::identity(fam.n);
    auto r12 = [&](complex u) { return kron(r_at(fam, u), id); };
    auto r23 = [&](complex u) { return kron(id, r_at(fam, u)); };
    for (complex u : us) {
        for (complex v : vs) {
            const complex uv = fam.additive ? u + v : u * v;
            const CMatrix lhs = r12(u) * r23(uv) * r12(v);
            const CMatrix rhs = r23(v) * r12(uv) * r23(u);
            rep.grid.emplace_back(u, v);
            rep.max_residual = std::max(rep.max_residual, fro_norm(lhs - rhs));
        }
    }
    return rep;
}

inline YBEReport ybe_residual(const RFamily& fam) {
    const std::vector<complex> g = default_grid(fam);
    return ybe_residual(fam, g, g);
}

}  // namespace tlrep
