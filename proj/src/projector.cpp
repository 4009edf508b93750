#include "dtvtomo/projector.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "dtvtomo/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dtvtomo {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Enumerates the (pixel, weight) pairs of one ray: steps along the driving
// axis, interpolating across it. The step index k maps to pixels via
// k*stride_step + floor(u)*stride_interp. Both projection directions call
// this same kernel, which keeps the pair exactly matched. Steps whose two
// interpolation neighbors are both in bounds run in a branch-free loop; the
// few edge steps are handled separately with the identical arithmetic.
template <class Touch>
inline void trace_line(int M, double base, double slope, double w, long stride_step,
                       long stride_interp, Touch&& touch) {
    auto edge_step = [&](int k) {
        const double u = base + k * slope;
        const double fl = std::floor(u);
        const int q = static_cast<int>(fl);
        const double f = u - fl;
        if (q >= 0 && q < M) touch(k * stride_step + q * stride_interp, (1.0 - f) * w);
        if (q + 1 >= 0 && q + 1 < M) touch(k * stride_step + (q + 1) * stride_interp, f * w);
    };

    // In-bounds window: u in [0, M-1), so that floor(u) and floor(u)+1 are
    // both valid. Candidate bounds from the line equation, then verified.
    int lo = 0, hi = M - 1;
    const auto clamp_cast = [M](double v) {
        return static_cast<int>(std::clamp(v, -1.0, static_cast<double>(M)));
    };
    if (slope > 0.0) {
        lo = clamp_cast(std::ceil(-base / slope));
        hi = clamp_cast(std::floor((M - 1 - base) / slope));
    } else if (slope < 0.0) {
        lo = clamp_cast(std::ceil((M - 1 - base) / slope));
        hi = clamp_cast(std::floor(-base / slope));
    } else if (!(base >= 0.0 && base < M - 1)) {
        lo = 1;
        hi = 0; // constant u outside the window: edge path only
    }
    lo = std::max(lo, 0);
    hi = std::min(hi, M - 1);
    while (lo <= hi) {
        const double u = base + lo * slope;
        if (u >= 0.0 && u < M - 1) break;
        ++lo;
    }
    while (hi >= lo) {
        const double u = base + hi * slope;
        if (u >= 0.0 && u < M - 1) break;
        --hi;
    }

    for (int k = 0; k < std::min(lo, M); ++k) edge_step(k);
    for (int k = lo; k <= hi; ++k) {
        const double u = base + k * slope;
        const double fl = std::floor(u);
        const double f = u - fl;
        const long idx = k * stride_step + static_cast<long>(fl) * stride_interp;
        touch(idx, (1.0 - f) * w);
        touch(idx + stride_interp, f * w);
    }
    for (int k = std::max(hi + 1, lo); k < M; ++k) edge_step(k);
}

template <class Touch>
inline void trace_ray(int M, double cos_t, double sin_t, double s, Touch&& touch) {
    const double c = 0.5 * (M - 1);
    if (std::abs(cos_t) >= std::abs(sin_t)) {
        // Ray runs mostly along axis 1: step i, interpolate along j.
        const double w = 1.0 / std::abs(cos_t);
        const double slope = sin_t / cos_t;
        const double base = s / cos_t + c - c * slope;
        trace_line(M, base, slope, w, M, 1, touch);
    } else {
        // Ray runs mostly along axis 2: step j, interpolate along i.
        const double w = 1.0 / std::abs(sin_t);
        const double slope = cos_t / sin_t;
        const double base = -s / sin_t + c - c * slope;
        trace_line(M, base, slope, w, 1, M, touch);
    }
}

inline double deg2rad(double d) { return d * kPi / 180.0; }

} // namespace

Sinogram forward_project(const Image& img, const Geometry& geom) {
    geom.validate();
    if (img.size() != geom.image_size)
        throw DimensionError("forward_project: image size does not match geometry");

    const int M = img.size();
    const int nb = geom.n_bins;
    const int na = geom.n_angles();
    const double* x = img.data().data();

    Sinogram sino(geom);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < na; ++k) {
        const double th = deg2rad(geom.angles_deg[k]);
        const double ct = std::cos(th), st = std::sin(th);
        double* col = sino.data.data() + static_cast<std::size_t>(k) * nb;
        for (int t = 0; t < nb; ++t) {
            double acc = 0.0;
            trace_ray(M, ct, st, geom.bin_center(t),
                      [&](int p, double w) { acc += x[p] * w; });
            col[t] = acc;
        }
    }
    return sino;
}

Image back_project(const Sinogram& sino) {
    const Geometry& geom = sino.geometry;
    geom.validate();
    if (sino.data.size() != geom.n_rays())
        throw DimensionError("back_project: sinogram data does not match geometry");

    const int M = geom.image_size;
    const int nb = geom.n_bins;
    const int na = geom.n_angles();

    Image out(M);
#pragma omp parallel
    {
        Image local(M);
        double* y = local.data().data();
#pragma omp for schedule(static)
        for (int k = 0; k < na; ++k) {
            const double th = deg2rad(geom.angles_deg[k]);
            const double ct = std::cos(th), st = std::sin(th);
            const double* col = sino.data.data() + static_cast<std::size_t>(k) * nb;
            for (int t = 0; t < nb; ++t) {
                const double v = col[t];
                if (v == 0.0) continue;
                trace_ray(M, ct, st, geom.bin_center(t),
                          [&](int p, double w) { y[p] += v * w; });
            }
        }
#pragma omp critical
        out += local;
    }
    return out;
}

double operator_norm_estimate(const Geometry& geom, int iters, std::span<const double> start) {
    geom.validate();
    if (iters < 1) throw ParamError("operator_norm_estimate: iters must be >= 1");

    const int M = geom.image_size;
    Image x(M);
    if (!start.empty()) {
        if (start.size() != x.pixels())
            throw DimensionError("operator_norm_estimate: start vector size mismatch");
        for (std::size_t p = 0; p < start.size(); ++p) x.data()[p] = start[p];
    } else {
        std::mt19937_64 g(0x2545F4914F6CDD1DULL);
        for (double& v : x.data()) v = rng::uniform01(g) - 0.5;
    }

    auto norm = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double e : v) s += e * e;
        return std::sqrt(s);
    };

    double n0 = norm(x.data());
    if (n0 == 0.0) return 0.0;
    x *= 1.0 / n0;

    double sigma = 0.0;
    for (int it = 0; it < iters; ++it) {
        Image z = back_project(forward_project(x, geom));
        const double nz = norm(z.data());
        if (nz == 0.0) return 0.0;
        sigma = std::sqrt(nz); // x has unit norm, so nz approximates ||A^T A||
        z *= 1.0 / nz;
        x = std::move(z);
    }
    return sigma;
}

} // namespace dtvtomo
