#pragma once

#include <array>
#include <functional>
#include <span>

#include "topospec/deriv.hpp"
#include "topospec/linalg.hpp"

namespace topospec {

enum class MetricKind { Diagonal, ConformallyFlat, GeneralSymmetric };

using DiagonalFn = std::function<void(std::span<const double>, std::span<double>)>;
using ConformalFn = std::function<double(std::span<const double>)>;
using MatrixFn = std::function<void(std::span<const double>, SmallMatrix&)>;

// Pointwise-evaluable metric. `signature` holds the frame-metric entries
// eta_aa (+1/-1); all +1 for mechanics, (-,+,+,+) for spacetimes. An optional
// safe_dist bounds how far stencils may step from a point before the metric
// degenerates (turning surfaces, coordinate poles).
struct MetricSpec {
    MetricKind kind = MetricKind::Diagonal;
    int dim = 0;
    std::array<int, kMaxDim> signature{};
    DiagonalFn diagonal;   // Diagonal
    ConformalFn conformal; // ConformallyFlat (Riemannian only)
    MatrixFn full;         // GeneralSymmetric
    SafeDistFn safe_dist;

    static MetricSpec make_diagonal(int dim, DiagonalFn fn,
                                    std::span<const int> sig = {});
    static MetricSpec make_conformal(int dim, ConformalFn fn);
    static MetricSpec make_general(int dim, MatrixFn fn,
                                   std::span<const int> sig = {});

    // Full matrix at x, with signature/degeneracy checks (threshold 1e-12).
    SmallMatrix eval(std::span<const double> x) const;
    double det(std::span<const double> x) const;
    bool riemannian() const {
        for (int i = 0; i < dim; ++i)
            if (signature[i] != 1) return false;
        return true;
    }
};

} // namespace topospec
