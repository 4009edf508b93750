#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "dtvtomo/errors.hpp"

namespace dtvtomo {

/**
 * Square pixel grid with unit spacing, stored row-major as data[i*M + j].
 *
 * Directions are measured in the (axis-1, axis-2) index plane: "direction
 * theta" is the unit vector (cos theta, sin theta) whose first component lies
 * along the i axis. Pixel centers sit at offsets (i - c, j - c) from the grid
 * center, c = (M-1)/2.
 */
class Image {
public:
    Image() = default;
    explicit Image(int size, double fill = 0.0)
        : size_(size), data_(static_cast<std::size_t>(size) * size, fill) {
        if (size <= 0) throw ParamError("Image: size must be positive");
    }

    int size() const { return size_; }
    std::size_t pixels() const { return data_.size(); }

    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * size_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * size_ + j]; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    Image& operator+=(const Image& o) {
        require_same_size(o);
        for (std::size_t p = 0; p < data_.size(); ++p) data_[p] += o.data_[p];
        return *this;
    }
    Image& operator-=(const Image& o) {
        require_same_size(o);
        for (std::size_t p = 0; p < data_.size(); ++p) data_[p] -= o.data_[p];
        return *this;
    }
    Image& operator*=(double a) {
        for (double& v : data_) v *= a;
        return *this;
    }

    friend Image operator+(Image a, const Image& b) { return a += b; }
    friend Image operator-(Image a, const Image& b) { return a -= b; }

    bool all_finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

private:
    void require_same_size(const Image& o) const {
        if (o.size_ != size_) throw DimensionError("Image: size mismatch");
    }

    int size_ = 0;
    std::vector<double> data_;
};

/**
 * Parallel-beam acquisition description.
 *
 * Angles are in degrees, strictly increasing within [0, 180). At angle theta
 * the rays run along (cos theta, sin theta); the detector coordinate of a
 * point (p1, p2) is s = -p1 sin(theta) + p2 cos(theta). Detector bins are
 * centered on the rotation axis: bin t sits at s = (t - (n_bins-1)/2) * spacing.
 */
struct Geometry {
    int n_bins = 0;
    std::vector<double> angles_deg;
    double det_spacing = 1.0;
    int image_size = 0;

    int n_angles() const { return static_cast<int>(angles_deg.size()); }
    std::size_t n_rays() const { return static_cast<std::size_t>(n_bins) * angles_deg.size(); }
    double bin_center(int t) const { return (t - 0.5 * (n_bins - 1)) * det_spacing; }

    /// Equispaced angles k*180/n_angles, k = 0..n_angles-1.
    static Geometry parallel(int image_size, int n_bins, int n_angles, double det_spacing = 1.0) {
        Geometry g;
        g.image_size = image_size;
        g.n_bins = n_bins;
        g.det_spacing = det_spacing;
        g.angles_deg.resize(n_angles);
        for (int k = 0; k < n_angles; ++k) g.angles_deg[k] = 180.0 * k / n_angles;
        g.validate();
        return g;
    }

    void validate() const {
        if (image_size <= 0) throw ParamError("Geometry: image_size must be positive");
        if (n_bins < 1) throw ParamError("Geometry: n_bins must be >= 1");
        if (angles_deg.empty()) throw ParamError("Geometry: need at least one angle");
        if (det_spacing <= 0.0) throw ParamError("Geometry: det_spacing must be positive");
        for (std::size_t k = 0; k < angles_deg.size(); ++k) {
            if (angles_deg[k] < 0.0 || angles_deg[k] >= 180.0)
                throw ParamError("Geometry: angles must lie in [0, 180)");
            if (k > 0 && angles_deg[k] <= angles_deg[k - 1])
                throw ParamError("Geometry: angles must be strictly increasing");
        }
    }
};

/// Measurement grid; data is angle-major: data[k*n_bins + t] for bin t, angle k.
struct Sinogram {
    Geometry geometry;
    std::vector<double> data;

    Sinogram() = default;
    explicit Sinogram(Geometry g, double fill = 0.0)
        : geometry(std::move(g)), data(geometry.n_rays(), fill) {}

    double& at(int t, int k) { return data[static_cast<std::size_t>(k) * geometry.n_bins + t]; }
    double at(int t, int k) const { return data[static_cast<std::size_t>(k) * geometry.n_bins + t]; }

    Sinogram& operator-=(const Sinogram& o) {
        if (o.data.size() != data.size()) throw DimensionError("Sinogram: size mismatch");
        for (std::size_t p = 0; p < data.size(); ++p) data[p] -= o.data[p];
        return *this;
    }
    friend Sinogram operator-(Sinogram a, const Sinogram& b) { return a -= b; }
};

} // namespace dtvtomo
