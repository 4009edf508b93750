#pragma once

#include <span>

#include "dtvtomo/image.hpp"

namespace dtvtomo {

/**
 * Discrete Radon transform A: line integrals of the image along the rays
 * described by the geometry. Joseph's method: rays are stepped along their
 * driving axis, interpolating linearly across it, with per-step weight
 * 1/max(|cos|,|sin|) so each weight is the intersection length of the ray
 * with one grid slab.
 */
Sinogram forward_project(const Image& img, const Geometry& geom);

/// Exact adjoint A^T of forward_project (same ray weights, transposed).
Image back_project(const Sinogram& sino);

/**
 * Power-iteration estimate of ||A||_2 for the projector of this geometry.
 * `start` optionally overrides the seeded start vector (length M*M).
 */
double operator_norm_estimate(const Geometry& geom, int iters,
                              std::span<const double> start = {});

} // namespace dtvtomo
