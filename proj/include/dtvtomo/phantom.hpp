#pragma once

#include <cstdint>

#include "dtvtomo/image.hpp"

namespace dtvtomo {

/**
 * Procedural fibre / fibre-crack phantom.
 *
 * Stripes: a seeded 1-D piecewise-constant profile (stripe widths drawn
 * uniformly from [4, 16] px, levels alternating 0.5 / 1.0) is tiled and
 * extended along main_angle_deg. Cracks: crack_count zero-intensity bars of
 * width crack_width_px and length size/4, centered on a ring of radius
 * size/4, each oriented along its own polar angle. Everything outside the
 * inscribed circle is exactly zero.
 */
struct PhantomSpec {
    enum class Kind { fibre, fibre_crack };

    int size = 256;
    Kind kind = Kind::fibre;
    double main_angle_deg = 20.0;
    int n_stripes = 16;
    int crack_count = 12;
    double crack_width_px = 3.0;
    std::uint64_t seed = 0;
};

/// Relative Gaussian measurement noise: ||e||_2 = level * ||b||_2 exactly.
struct NoiseSpec {
    double level = 0.0;
    std::uint64_t seed = 0;
};

Image make_phantom(const PhantomSpec& spec);

/// Binary mask (1 inside crack bars) for the crack layout of `spec`.
/// Depends only on size/crack_count/crack_width_px, not on the seed.
Image make_crack_mask(const PhantomSpec& spec);

/// Binary mask of the inscribed circle (pixel centers with radius <= M/2).
Image inscribed_circle_mask(int size);

Sinogram add_noise(const Sinogram& sino, const NoiseSpec& noise);

} // namespace dtvtomo
