#pragma once

// Seeded generators for property tests. The seed comes from TLREP_SEED when set
// and is printed so a failing run can be replayed.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "tlrep/densec.hpp"
#include "tlrep/tlcore.hpp"

namespace testing_support {

using tlrep::CMatrix;
using tlrep::complex;

inline std::uint64_t base_seed() {
    static const std::uint64_t seed = [] {
        std::uint64_t s = 20240611;
        if (const char* env = std::getenv("TLREP_SEED")) s = std::strtoull(env, nullptr, 10);
        std::printf("[seed] TLREP_SEED=%llu\n", static_cast<unsigned long long>(s));
        return s;
    }();
    return seed;
}

class Rng {
public:
    explicit Rng(std::uint64_t stream = 0) : eng_(base_seed() ^ (0x9e3779b97f4a7c15ULL * (stream + 1))) {}

    double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
    double gauss() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
    std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng_); }
    complex phase() { return std::polar(1.0, uniform(0.0, 2.0 * 3.141592653589793)); }

    CMatrix gaussian(std::size_t rows, std::size_t cols) {
        CMatrix m(rows, cols);
        for (complex& z : m.entries()) z = {gauss(), gauss()};
        return m;
    }

    /// r orthonormal n x n coefficient matrices (Gaussian draws + Gram-Schmidt).
    std::vector<CMatrix> orthonormal(std::size_t n, std::size_t r) {
        std::vector<CMatrix> raw;
        for (std::size_t k = 0; k < r; ++k) raw.push_back(gaussian(n, n));
        return tlrep::gram_schmidt(raw);
    }

    tlrep::CoeffSet coeff_set(std::size_t n, std::size_t r) { return tlrep::CoeffSet(n, orthonormal(n, r)); }

    /// Unitary n x n matrix: Gram-Schmidt on the columns of a Gaussian matrix.
    CMatrix unitary(std::size_t n) {
        std::vector<CMatrix> cols;
        for (std::size_t k = 0; k < n; ++k) cols.push_back(gaussian(n, 1));
        cols = tlrep::gram_schmidt(cols);
        CMatrix u(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) u(i, j) = cols[j](i, 0);
        return u;
    }

private:
    std::mt19937_64 eng_;
};

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

}  // namespace testing_support
