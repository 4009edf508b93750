#pragma once

#include <vector>

#include "dtvtomo/image.hpp"

namespace dtvtomo {

/// Per-pixel 2-vector field (the range of the discrete gradient).
/// dx is the forward difference along axis 1, dy along axis 2; the last row
/// of dx and the last column of dy are identically zero.
struct GradField {
    int size = 0;
    std::vector<double> dx, dy;

    GradField() = default;
    explicit GradField(int size)
        : size(size),
          dx(static_cast<std::size_t>(size) * size, 0.0),
          dy(static_cast<std::size_t>(size) * size, 0.0) {}
};

/// One directional-TV functional: main angle theta (degrees) and anisotropy
/// width a in (0, 1]. Gradients along (cos theta, sin theta) keep weight 1,
/// gradients across it are scaled by a.
struct DtvParams {
    double theta_deg = 0.0;
    double a = 0.15;
};

/// The 2x2 matrix V with per-pixel DTV value |V (dx, dy)|_2.
/// Built from theta reduced mod 180 so theta and theta+180 give identical
/// matrices (bitwise).
struct DtvWeight {
    double m00, m01, m10, m11;
};

DtvWeight dtv_weight(const DtvParams& p);

/// Forward differences with symmetric boundary (zero difference on the last
/// row/column of the respective axis).
GradField gradient(const Image& img);

/// Negative adjoint of gradient: divergence(p) = -grad^T p.
Image divergence(const GradField& field);

/// Isotropic total variation: sum of per-pixel Euclidean gradient norms.
double tv(const Image& img);

/// Directional total variation: sum over pixels of
/// sqrt((dx cos + dy sin)^2 + a^2 (-dx sin + dy cos)^2).
/// Equals tv() when a = 1; invariant under theta -> theta + 180.
double dtv(const Image& img, const DtvParams& p);

/// Per-pixel projection of a dual field onto {q : |V^{-T} q|_2 <= weight}:
/// change basis with V^{-T}, clip to the Euclidean ball, map back with V^T.
/// Idempotent; for a = 1 it reduces to the plain ball projection.
GradField prox_dtv_dual(const GradField& field, const DtvParams& p, double weight);

} // namespace dtvtomo
