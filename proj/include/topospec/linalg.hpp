#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>

#include "topospec/errors.hpp"

namespace topospec {

// All fields in this library live on charts of dimension <= kMaxDim, so
// matrices and component arrays fit in fixed stack storage. This keeps the
// per-node evaluation in the quadrature loops allocation-free.
inline constexpr int kMaxDim = 8;

// Dense row-major n x n matrix with inline storage. Only the leading n*n
// entries are initialized or read.
struct SmallMatrix {
    std::array<double, kMaxDim * kMaxDim> a;
    int n = 0;

    explicit SmallMatrix(int dim = 0) : n(dim) {
        for (int i = 0; i < n * n; ++i) a[i] = 0.0;
    }

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    static SmallMatrix identity(int dim) {
        SmallMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    void set_zero() { a.fill(0.0); }
};

inline SmallMatrix matmul(const SmallMatrix& x, const SmallMatrix& y) {
    SmallMatrix r(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) {
            double s = 0.0;
            for (int k = 0; k < x.n; ++k) s += x(i, k) * y(k, j);
            r(i, j) = s;
        }
    return r;
}

// Gaussian elimination with partial pivoting. Deterministic; throws
// DegenerateMetric when a pivot falls below the degeneracy threshold.
inline SmallMatrix inverse(const SmallMatrix& m, double pivot_tol = 1e-12) {
    const int n = m.n;
    SmallMatrix work = m;
    SmallMatrix inv = SmallMatrix::identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::fabs(work(col, col));
        for (int r = col + 1; r < n; ++r) {
            double v = std::fabs(work(r, col));
            if (v > best) { best = v; pivot = r; }
        }
        if (best < pivot_tol)
            throw DegenerateMetric("singular matrix in inverse(), pivot " +
                                   std::to_string(best));
        if (pivot != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(work(col, j), work(pivot, j));
                std::swap(inv(col, j), inv(pivot, j));
            }
        }
        const double d = work(col, col);
        for (int j = 0; j < n; ++j) {
            work(col, j) /= d;
            inv(col, j) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = work(r, col);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                work(r, j) -= f * work(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

inline double determinant(const SmallMatrix& m) {
    const int n = m.n;
    SmallMatrix work = m;
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::fabs(work(col, col));
        for (int r = col + 1; r < n; ++r) {
            double v = std::fabs(work(r, col));
            if (v > best) { best = v; pivot = r; }
        }
        if (best == 0.0) return 0.0;
        if (pivot != col) {
            det = -det;
            for (int j = 0; j < n; ++j) std::swap(work(col, j), work(pivot, j));
        }
        det *= work(col, col);
        for (int r = col + 1; r < n; ++r) {
            const double f = work(r, col) / work(col, col);
            for (int j = col; j < n; ++j) work(r, j) -= f * work(col, j);
        }
    }
    return det;
}

inline bool is_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

} // namespace topospec
