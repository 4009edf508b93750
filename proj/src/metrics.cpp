#include "dtvtomo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "dtvtomo/phantom.hpp"

namespace dtvtomo {

namespace {

double mse_over(const Image& x, const Image& ref, const Image* mask) {
    if (x.size() != ref.size()) throw DimensionError("psnr: image sizes differ");
    if (mask && mask->size() != ref.size()) throw DimensionError("psnr: mask size differs");
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t p = 0; p < x.data().size(); ++p) {
        if (mask && (*mask).data()[p] == 0.0) continue;
        const double d = x.data()[p] - ref.data()[p];
        acc += d * d;
        ++count;
    }
    return count ? acc / count : 0.0;
}

double peak_of(const Image& ref) {
    double peak = -std::numeric_limits<double>::infinity();
    for (double v : ref.data()) peak = std::max(peak, v);
    return peak;
}

double psnr_from(double peak, double mse) {
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(peak * peak / mse);
}

} // namespace

double psnr(const Image& x, const Image& ref) {
    return psnr_from(peak_of(ref), mse_over(x, ref, nullptr));
}

double psnr_masked(const Image& x, const Image& ref, const Image& mask) {
    return psnr_from(peak_of(ref), mse_over(x, ref, &mask));
}

double mask_mean_abs(const Image& img, const Image& mask) {
    if (img.size() != mask.size()) throw DimensionError("mask_mean_abs: size mismatch");
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t p = 0; p < img.data().size(); ++p) {
        if (mask.data()[p] == 0.0) continue;
        acc += std::abs(img.data()[p]);
        ++count;
    }
    return count ? acc / count : 0.0;
}

double crack_capture_ratio(const Image& component, const Image& crack_mask) {
    if (component.size() != crack_mask.size())
        throw DimensionError("crack_capture_ratio: size mismatch");
    const Image circle = inscribed_circle_mask(component.size());
    Image background(component.size());
    for (std::size_t p = 0; p < background.data().size(); ++p)
        background.data()[p] = (circle.data()[p] != 0.0 && crack_mask.data()[p] == 0.0) ? 1.0 : 0.0;
    const double inside = mask_mean_abs(component, crack_mask);
    const double outside = mask_mean_abs(component, background);
    return outside > 0.0 ? inside / outside : std::numeric_limits<double>::infinity();
}

namespace {

double circle_median(const Image& component, const Image& circle) {
    std::vector<double> values;
    for (std::size_t p = 0; p < component.data().size(); ++p)
        if (circle.data()[p] != 0.0) values.push_back(component.data()[p]);
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + mid, values.end());
    return values[mid];
}

Image dip_map(const Image& component) {
    const Image circle = inscribed_circle_mask(component.size());
    const double level = circle_median(component, circle);
    Image dip(component.size());
    for (std::size_t p = 0; p < dip.data().size(); ++p)
        if (circle.data()[p] != 0.0)
            dip.data()[p] = std::max(level - component.data()[p], 0.0);
    return dip;
}

} // namespace

double crack_dip_ratio(const Image& component, const Image& crack_mask) {
    if (component.size() != crack_mask.size()) throw DimensionError("crack_dip_ratio: size mismatch");
    const Image dip = dip_map(component);
    const Image circle = inscribed_circle_mask(component.size());
    Image background(component.size());
    for (std::size_t p = 0; p < background.data().size(); ++p)
        background.data()[p] = (circle.data()[p] != 0.0 && crack_mask.data()[p] == 0.0) ? 1.0 : 0.0;
    const double inside = mask_mean_abs(dip, crack_mask);
    const double outside = mask_mean_abs(dip, background);
    return outside > 0.0 ? inside / outside : std::numeric_limits<double>::infinity();
}

double crack_dip_depth(const Image& component, const Image& crack_mask) {
    if (component.size() != crack_mask.size()) throw DimensionError("crack_dip_depth: size mismatch");
    return mask_mean_abs(dip_map(component), crack_mask);
}

void append_metric_row(const std::string& path, const MetricRow& row) {
    const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    std::ofstream out(path, std::ios::app | std::ios::binary);
    if (!out) throw FormatError("append_metric_row: cannot open " + path);
    if (fresh) out << "method,params,psnr_db,iterations,wall_seconds\n";
    char psnr_buf[32];
    if (std::isinf(row.psnr_db))
        std::snprintf(psnr_buf, sizeof(psnr_buf), "inf");
    else
        std::snprintf(psnr_buf, sizeof(psnr_buf), "%.6f", row.psnr_db);
    char wall_buf[32];
    std::snprintf(wall_buf, sizeof(wall_buf), "%.3f", row.wall_seconds);
    out << row.method << ',' << row.params << ',' << psnr_buf << ',' << row.iterations << ','
        << wall_buf << '\n';
}

} // namespace dtvtomo
