#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dtvtomo/image.hpp"

namespace dtvtomo {

// Image file "TIM1": magic, u32 LE size M, then M*M float32 LE row-major.
void write_image(const std::string& path, const Image& img);
Image read_image(const std::string& path);

// Sinogram file "TSG1": magic, u32 n_bins, u32 n_angles, f64 det_spacing,
// n_angles f64 angles (degrees), then n_bins*n_angles float32, angle-major.
// The reconstruction grid size is not stored; image_size = 0 defaults it to
// n_bins (square grid matching the detector).
void write_sinogram(const std::string& path, const Sinogram& sino);
Sinogram read_sinogram(const std::string& path, int image_size = 0);

/// Binary 8-bit PGM (P5), values mapped linearly from [min, max] of the image.
void write_pgm(const std::string& path, const Image& img);

/// Plain key=value manifest, one pair per line, written in the given order.
void write_manifest(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& entries);

} // namespace dtvtomo
