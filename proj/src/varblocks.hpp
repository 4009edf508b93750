#pragma once

// Internal helpers shared by the variational problem builders: gradient dual
// blocks with a per-pixel 2x2 weight, and the matching prox/objective pieces.

#include <cmath>
#include <span>

#include "dtvtomo/diffops.hpp"
#include "dtvtomo/pdhg.hpp"

namespace dtvtomo::detail {

inline DtvWeight identity_weight() { return DtvWeight{1.0, 0.0, 0.0, 1.0}; }

/// y = V * grad(x), components stacked as [first; second], each M*M.
inline void weighted_grad_apply(std::span<const double> x, int M, const DtvWeight& v,
                                std::span<double> y) {
    const std::size_t n = static_cast<std::size_t>(M) * M;
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < M; ++j) {
            const std::size_t p = static_cast<std::size_t>(i) * M + j;
            const double gx = (i < M - 1) ? x[p + M] - x[p] : 0.0;
            const double gy = (j < M - 1) ? x[p + 1] - x[p] : 0.0;
            y[p] = v.m00 * gx + v.m01 * gy;
            y[p + n] = v.m10 * gx + v.m11 * gy;
        }
    }
}

/// x += grad^T (V^T y).
inline void weighted_grad_adjoint_add(std::span<const double> y, int M, const DtvWeight& v,
                                      std::span<double> x) {
    const std::size_t n = static_cast<std::size_t>(M) * M;
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < M; ++j) {
            const std::size_t p = static_cast<std::size_t>(i) * M + j;
            double acc = 0.0;
            if (i < M - 1) acc -= v.m00 * y[p] + v.m10 * y[p + n];
            if (i > 0) acc += v.m00 * y[p - M] + v.m10 * y[p - M + n];
            if (j < M - 1) acc -= v.m01 * y[p] + v.m11 * y[p + n];
            if (j > 0) acc += v.m01 * y[p - 1] + v.m11 * y[p - 1 + n];
            x[p] += acc;
        }
    }
}

/// Per-pixel Euclidean ball projection of a stacked 2-vector field.
inline void ball_prox(std::span<double> y, double radius) {
    const std::size_t n = y.size() / 2;
    for (std::size_t p = 0; p < n; ++p) {
        const double norm = std::sqrt(y[p] * y[p] + y[p + n] * y[p + n]);
        if (norm > radius) {
            const double f = radius / norm;
            y[p] *= f;
            y[p + n] *= f;
        }
    }
}

/// sum_p |V grad(x)_p|_2, the (D)TV value entering the objective.
inline double weighted_grad_norm_sum(std::span<const double> x, int M, const DtvWeight& v) {
    double sum = 0.0;
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < M; ++j) {
            const std::size_t p = static_cast<std::size_t>(i) * M + j;
            const double gx = (i < M - 1) ? x[p + M] - x[p] : 0.0;
            const double gy = (j < M - 1) ? x[p + 1] - x[p] : 0.0;
            const double v0 = v.m00 * gx + v.m01 * gy;
            const double v1 = v.m10 * gx + v.m11 * gy;
            sum += std::sqrt(v0 * v0 + v1 * v1);
        }
    }
    return sum;
}

/// Dual block for the term radius * ||V grad(x_part)||_{2,1}, where x_part is
/// the M*M slice of the primal vector starting at `offset`.
inline DualBlock make_grad_block(int M, DtvWeight v, double radius, std::size_t offset) {
    const std::size_t n = static_cast<std::size_t>(M) * M;
    DualBlock block;
    block.size = 2 * n;
    block.apply = [M, v, offset, n](std::span<const double> x, std::span<double> y) {
        weighted_grad_apply(x.subspan(offset, n), M, v, y);
    };
    block.apply_adjoint_add = [M, v, offset, n](std::span<const double> y, std::span<double> x) {
        weighted_grad_adjoint_add(y, M, v, x.subspan(offset, n));
    };
    block.prox_conjugate = [radius](double, std::span<double> y) { ball_prox(y, radius); };
    return block;
}

} // namespace dtvtomo::detail
