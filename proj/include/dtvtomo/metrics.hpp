#pragma once

#include <string>

#include "dtvtomo/image.hpp"

namespace dtvtomo {

/// Peak signal-to-noise ratio in dB: 10 log10(peak^2 / MSE), peak = max(ref).
/// Returns +infinity for identical images. Not symmetric: the peak always
/// comes from ref.
double psnr(const Image& x, const Image& ref);

/// PSNR restricted to pixels where mask != 0. Peak is still max(ref) over the
/// whole image.
double psnr_masked(const Image& x, const Image& ref, const Image& mask);

/// Mean of |img| over mask != 0 pixels (0 if the mask is empty).
double mask_mean_abs(const Image& img, const Image& mask);

/// Mean |component| inside the crack mask divided by mean |component| over
/// the rest of the inscribed circle. Suited to components with a zero
/// background where cracks appear as isolated nonzero (signed) structures.
double crack_capture_ratio(const Image& component, const Image& crack_mask);

/// Mean crack-dip depth inside the crack mask divided by the mean spurious
/// dip depth over the rest of the inscribed circle. The dip depth of a pixel
/// is max(L - value, 0) with L the median of the component over the circle.
/// Suited to components that carry the object's intensity level, where
/// cracks appear as dips against the component's own background.
double crack_dip_ratio(const Image& component, const Image& crack_mask);

/// Mean dip depth (as above) inside the crack mask alone: how deeply the
/// cracks are carved into this component.
double crack_dip_depth(const Image& component, const Image& crack_mask);

struct MetricRow {
    std::string method;
    std::string params; // canonical key=value list
    double psnr_db = 0.0;
    int iterations = 0;
    double wall_seconds = 0.0;
};

/// Appends a row to a CSV file, writing the header first if the file is new.
/// UTF-8, LF line endings. psnr_db of +infinity is written as "inf".
void append_metric_row(const std::string& path, const MetricRow& row);

} // namespace dtvtomo
