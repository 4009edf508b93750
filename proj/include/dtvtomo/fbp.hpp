#pragma once

#include "dtvtomo/image.hpp"

namespace dtvtomo {

enum class FbpFilter { ram_lak, shepp_logan };

struct FbpConfig {
    FbpFilter filter = FbpFilter::ram_lak;
    int pad_factor = 2; // zero-padding multiple for the filtering FFT; 1, 2 or 4
};

/**
 * Filtered back-projection.
 *
 * Each angle's detector column is ramp-filtered in the frequency domain
 * (band-limited real-space ramp, FFT length = next power of two of
 * pad_factor * n_bins) and back-projected with a per-angle weight dtheta.
 *
 * dtheta is the same for every angle of one sinogram: the smallest circular
 * gap (mod 180 degrees) between its angles, i.e. the wedge width of the
 * underlying equispaced scan. Because the weight of an angle is then
 * identical whether the angle arrives in a full scan or in a consecutive
 * subset of one, FBP is additive over disjoint angle subsets exactly, which
 * is what the sinogram-splitting cancellation relies on. A single-angle
 * sinogram falls back to dtheta = 180 degrees.
 *
 * Missing angles simply do not contribute (their data is implicitly zero).
 */
Image fbp_reconstruct(const Sinogram& sino, const FbpConfig& cfg = {});

} // namespace dtvtomo
