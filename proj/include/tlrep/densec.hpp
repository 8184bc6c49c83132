#pragma once

// Dense complex matrices: the carrier type for every T, P, V, W and R in the
// library, plus the handful of linear-algebra kernels the verifiers need.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace tlrep {

using complex = std::complex<double>;

/// Absolute/relative residual thresholds. A residual x passes when
/// x <= abs + rel * scale, with the scale chosen by the caller.
struct Tolerance {
    double abs = 1e-9;
    double rel = 0.0;

    Tolerance() = default;
    Tolerance(double abs_tol, double rel_tol = 0.0) : abs(abs_tol), rel(rel_tol) {
        if (!(abs >= 0.0) || !(rel >= 0.0) || (abs == 0.0 && rel == 0.0)) {
            throw std::invalid_argument("tolerance: abs and rel must be >= 0, one of them > 0");
        }
    }

    double bound(double scale = 1.0) const noexcept { return abs + rel * scale; }
    bool accepts(double residual, double scale = 1.0) const noexcept {
        return residual <= bound(scale);
    }
};

class CMatrix {
public:
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
        check_shape();
    }

    CMatrix(std::size_t rows, std::size_t cols, std::vector<complex> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        check_shape();
        if (data_.size() != rows_ * cols_) {
            throw DimensionError("matrix: expected " + std::to_string(rows_ * cols_) +
                                 " entries, got " + std::to_string(data_.size()));
        }
        for (const complex& z : data_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw std::invalid_argument("matrix: non-finite entry");
            }
        }
    }

    /// Row-major nested initializer: CMatrix{{1, 0}, {0, 1}}.
    CMatrix(std::initializer_list<std::initializer_list<complex>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        check_shape();
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) throw DimensionError("matrix: ragged initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static CMatrix identity(std::size_t n) {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static CMatrix diagonal(std::span<const complex> d) {
        CMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    static CMatrix diagonal(std::initializer_list<complex> d) {
        return diagonal(std::span<const complex>(d.begin(), d.size()));
    }

    /// Matrix unit E_ab (0-based a, b): a single 1 at row a, column b.
    static CMatrix unit(std::size_t n, std::size_t a, std::size_t b) {
        CMatrix m(n, n);
        m(a, b) = 1.0;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool is_square() const noexcept { return rows_ == cols_; }

    complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const complex& operator()(std::size_t i, std::size_t j) const noexcept {
        return data_[i * cols_ + j];
    }

    std::span<complex> entries() noexcept { return data_; }
    std::span<const complex> entries() const noexcept { return data_; }

    CMatrix& operator+=(const CMatrix& o) {
        require_same_shape(o, "+");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    CMatrix& operator-=(const CMatrix& o) {
        require_same_shape(o, "-");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    CMatrix& operator*=(complex s) noexcept {
        for (complex& z : data_) z *= s;
        return *this;
    }

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(complex s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(CMatrix a, complex s) { return a *= s; }
    friend CMatrix operator-(CMatrix a) { return a *= -1.0; }

    friend bool operator==(const CMatrix& a, const CMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    void check_shape() const {
        if (rows_ == 0 || cols_ == 0) throw DimensionError("matrix: rows and cols must be positive");
    }
    void require_same_shape(const CMatrix& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw DimensionError(std::string("matrix ") + op + ": shape mismatch");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<complex> data_;
};

/// Kronecker product with block layout a_ij * b.
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    const std::size_t br = b.rows(), bc = b.cols();
    CMatrix out(a.rows() * br, a.cols() * bc);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const complex aij = a(i, j);
            if (aij == 0.0) continue;
            for (std::size_t k = 0; k < br; ++k) {
                for (std::size_t l = 0; l < bc; ++l) out(i * br + k, j * bc + l) = aij * b(k, l);
            }
        }
    }
    return out;
}

/// a * b. Zero entries of a are skipped, which makes products with
/// identity-padded leg operators cheap.
inline CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                             " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    CMatrix out(a.rows(), b.cols());
    const std::size_t nc = b.cols();
    const complex* bp = b.entries().data();
    complex* op = out.entries().data();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        complex* orow = op + i * nc;
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const complex aik = a(i, k);
            if (aik == 0.0) continue;
            const complex* brow = bp + k * nc;
            for (std::size_t j = 0; j < nc; ++j) orow[j] += aik * brow[j];
        }
    }
    return out;
}

inline CMatrix operator*(const CMatrix& a, const CMatrix& b) { return matmul(a, b); }

inline CMatrix transpose(const CMatrix& a) {
    CMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
    return out;
}

inline CMatrix conj(const CMatrix& a) {
    CMatrix out = a;
    for (complex& z : out.entries()) z = std::conj(z);
    return out;
}

inline CMatrix adjoint(const CMatrix& a) {
    CMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

inline complex trace(const CMatrix& a) {
    if (!a.is_square()) throw DimensionError("trace: matrix is not square");
    complex s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
    return s;
}

inline double fro_norm(const CMatrix& a) {
    double s = 0.0;
    for (const complex& z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

/// Hilbert-Schmidt inner product <a, b> = tr(a^* b).
inline complex inner(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("inner: shape mismatch");
    complex s = 0.0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (std::size_t k = 0; k < ea.size(); ++k) s += std::conj(ea[k]) * eb[k];
    return s;
}

/// tr(a b) without forming the product.
inline complex trace_of_product(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) throw DimensionError("trace_of_product: shape mismatch");
    complex s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, i);
    return s;
}

/// Distance of a from c * I in Frobenius norm.
inline double distance_to_scalar(const CMatrix& a, complex c) {
    CMatrix d = a;
    for (std::size_t i = 0; i < d.rows() && i < d.cols(); ++i) d(i, i) -= c;
    return fro_norm(d);
}

/// Modified Gram-Schmidt with one re-orthogonalization pass, under <A,B> = tr(A^* B).
/// Throws DegenerateInputError when a residual norm drops below tol.abs.
inline std::vector<CMatrix> gram_schmidt(std::span<const CMatrix> vs, const Tolerance& tol = {}) {
    std::vector<CMatrix> out;
    out.reserve(vs.size());
    for (std::size_t k = 0; k < vs.size(); ++k) {
        if (k > 0 && (vs[k].rows() != vs[0].rows() || vs[k].cols() != vs[0].cols())) {
            throw DimensionError("gram_schmidt: all inputs must have the same shape");
        }
        CMatrix w = vs[k];
        for (int pass = 0; pass < 2; ++pass) {
            for (const CMatrix& u : out) w -= inner(u, w) * u;
        }
        const double norm = fro_norm(w);
        if (norm < tol.abs) throw DegenerateInputError(k, norm);
        w *= 1.0 / norm;
        out.push_back(std::move(w));
    }
    return out;
}

/// Orthonormal basis of span(vs); dependent members (residual < drop) are skipped.
inline std::vector<CMatrix> orthonormal_span(std::span<const CMatrix> vs, double drop = 1e-8) {
    std::vector<CMatrix> out;
    for (const CMatrix& v : vs) {
        CMatrix w = v;
        for (int pass = 0; pass < 2; ++pass) {
            for (const CMatrix& u : out) w -= inner(u, w) * u;
        }
        const double norm = fro_norm(w);
        if (norm < drop) continue;
        w *= 1.0 / norm;
        out.push_back(std::move(w));
    }
    return out;
}

struct UnitarityCheck {
    bool unitary = false;
    double residual = 0.0;
};

/// residual = ||a a^* - I||_F / sqrt(dim).
inline UnitarityCheck is_unitary(const CMatrix& a, const Tolerance& tol = {}) {
    if (!a.is_square()) throw DimensionError("is_unitary: matrix is not square");
    const double residual =
        distance_to_scalar(matmul(a, adjoint(a)), 1.0) / std::sqrt(static_cast<double>(a.rows()));
    return {residual <= tol.abs + tol.rel, residual};
}

/// Singular values in descending order (one-sided Jacobi / Hestenes).
inline std::vector<double> singular_values(const CMatrix& a) {
    // Work on columns of a tall matrix.
    CMatrix m = a.rows() >= a.cols() ? a : adjoint(a);
    const std::size_t rows = m.rows(), cols = m.cols();
    auto col_dot = [&](std::size_t p, std::size_t q) {
        complex s = 0.0;
        for (std::size_t i = 0; i < rows; ++i) s += std::conj(m(i, p)) * m(i, q);
        return s;
    };
    constexpr double eps = 1e-15;
    for (int sweep = 0; sweep < 100; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < cols; ++p) {
            for (std::size_t q = p + 1; q < cols; ++q) {
                const double alpha = col_dot(p, p).real();
                const double beta = col_dot(q, q).real();
                const complex gamma = col_dot(p, q);
                const double g = std::abs(gamma);
                if (g == 0.0 || g <= eps * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const complex phase = gamma / g;
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < rows; ++i) {
                    const complex xp = m(i, p);
                    const complex xq = m(i, q) / phase;
                    m(i, p) = c * xp - s * xq;
                    m(i, q) = s * xp + c * xq;
                }
            }
        }
        if (!rotated) break;
    }
    std::vector<double> sv(cols);
    for (std::size_t j = 0; j < cols; ++j) sv[j] = std::sqrt(col_dot(j, j).real());
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

/// Gauss-Jordan inverse with partial pivoting.
inline CMatrix inverse(const CMatrix& a, double singular_tol = 1e-13) {
    if (!a.is_square()) throw DimensionError("inverse: matrix is not square");
    const std::size_t n = a.rows();
    CMatrix m = a;
    CMatrix inv = CMatrix::identity(n);
    const double scale = std::max(fro_norm(a), 1e-300);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
        if (std::abs(m(piv, col)) <= singular_tol * scale) throw DimensionError("inverse: matrix is singular");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(piv, j), m(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        }
        const complex d = 1.0 / m(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            m(col, j) *= d;
            inv(col, j) *= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const complex f = m(r, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                m(r, j) -= f * m(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

/// Coefficient matrix V -> column vector v with v[a*n + b] = V_ab.
inline CMatrix vectorize(const CMatrix& v) {
    CMatrix out(v.size(), 1);
    std::copy(v.entries().begin(), v.entries().end(), out.entries().begin());
    return out;
}

/// Inverse of vectorize for an n^2-vector (any n^2 x 1 or 1 x n^2 matrix).
inline CMatrix unvectorize(std::span<const complex> x, std::size_t n) {
    if (x.size() != n * n) throw DimensionError("unvectorize: expected n^2 entries");
    return CMatrix(n, n, std::vector<complex>(x.begin(), x.end()));
}

}  // namespace tlrep
