#pragma once

#include <vector>

#include "dtvtomo/image.hpp"

namespace dtvtomo {

struct DirectionEstimate {
    double theta_deg = 0.0;      // angle at argmax_index
    std::vector<double> scores;  // summed spectral magnitude per angle
    int argmax_index = 0;
};

/**
 * Main-direction estimate from sinogram data: 1-D DFT over the detector bins
 * of each angle column, score = sum of |coefficients| over all frequencies,
 * argmax over angles. The DC term is excluded by default (it is the total
 * mass seen from that angle, which is angle-constant for parallel-beam data
 * and only dilutes the contrast); pass include_dc = true for the plain sum.
 * Ties resolve to the smallest angle index.
 */
DirectionEstimate estimate_direction(const Sinogram& sino, bool include_dc = false);

} // namespace dtvtomo
