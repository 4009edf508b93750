#pragma once

// Shared helpers for the test suites: seeded random data, analytic phantoms
// and independent naive-loop oracles. The oracles deliberately avoid the
// library's own code paths.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "dtvtomo/image.hpp"
#include "dtvtomo/rng.hpp"

namespace support {

constexpr double kPi = 3.14159265358979323846;

inline std::vector<double> random_vector(std::size_t n, std::uint64_t seed, double lo = 0.0,
                                         double hi = 1.0) {
    std::mt19937_64 g(seed);
    std::vector<double> v(n);
    for (double& e : v) e = lo + (hi - lo) * dtvtomo::rng::uniform01(g);
    return v;
}

inline dtvtomo::Image random_image(int M, std::uint64_t seed, double lo = 0.0, double hi = 1.0) {
    dtvtomo::Image img(M);
    img.data() = random_vector(img.pixels(), seed, lo, hi);
    return img;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t p = 0; p < a.size(); ++p) s += a[p] * b[p];
    return s;
}

inline double nrm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

/// Centered disk with 4x4 supersampled (anti-aliased) edge.
inline dtvtomo::Image disk_image(int M, double radius, double value = 1.0) {
    dtvtomo::Image img(M);
    const double c = 0.5 * (M - 1);
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < M; ++j) {
            int hits = 0;
            for (int si = 0; si < 4; ++si)
                for (int sj = 0; sj < 4; ++sj) {
                    const double pi = i - c + (si + 0.5) / 4.0 - 0.5;
                    const double pj = j - c + (sj + 0.5) / 4.0 - 0.5;
                    if (pi * pi + pj * pj <= radius * radius) ++hits;
                }
            img(i, j) = value * hits / 16.0;
        }
    }
    return img;
}

/// Analytic chord-length sinogram of a centered disk; every angle column is
/// identical by construction.
inline dtvtomo::Sinogram disk_sinogram(const dtvtomo::Geometry& geom, double radius, double value = 1.0) {
    dtvtomo::Sinogram sino(geom);
    for (int k = 0; k < geom.n_angles(); ++k)
        for (int t = 0; t < geom.n_bins; ++t) {
            const double s = geom.bin_center(t);
            sino.at(t, k) =
                std::abs(s) < radius ? 2.0 * value * std::sqrt(radius * radius - s * s) : 0.0;
        }
    return sino;
}

/// Naive double-loop total variation.
inline double tv_oracle(const dtvtomo::Image& img) {
    const int M = img.size();
    double sum = 0.0;
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            const double dx = i < M - 1 ? img(i + 1, j) - img(i, j) : 0.0;
            const double dy = j < M - 1 ? img(i, j + 1) - img(i, j) : 0.0;
            sum += std::sqrt(dx * dx + dy * dy);
        }
    return sum;
}

/// Naive DTV: builds the scaling and rotation matrices explicitly and applies
/// their product to every gradient vector.
inline double dtv_oracle(const dtvtomo::Image& img, double theta_deg, double a) {
    const int M = img.size();
    double th = std::fmod(theta_deg, 180.0);
    if (th < 0.0) th += 180.0;
    const double r = th * kPi / 180.0;
    // rot = R(-theta), scale = diag(1, a); weight = scale * rot
    const double rot[2][2] = {{std::cos(r), std::sin(r)}, {-std::sin(r), std::cos(r)}};
    const double scale[2][2] = {{1.0, 0.0}, {0.0, a}};
    double w[2][2];
    for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) w[p][q] = scale[p][0] * rot[0][q] + scale[p][1] * rot[1][q];

    double sum = 0.0;
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            const double g[2] = {i < M - 1 ? img(i + 1, j) - img(i, j) : 0.0,
                                 j < M - 1 ? img(i, j + 1) - img(i, j) : 0.0};
            const double v0 = w[0][0] * g[0] + w[0][1] * g[1];
            const double v1 = w[1][0] * g[0] + w[1][1] * g[1];
            sum += std::sqrt(v0 * v0 + v1 * v1);
        }
    return sum;
}

/// Naive DFT magnitude sums per angle column (explicit double loop).
inline std::vector<double> dft_score_oracle(const dtvtomo::Sinogram& sino, bool include_dc = false) {
    const int nb = sino.geometry.n_bins;
    const int na = sino.geometry.n_angles();
    std::vector<double> scores(na, 0.0);
    for (int k = 0; k < na; ++k) {
        double s = 0.0;
        for (int w = include_dc ? 0 : 1; w < nb; ++w) {
            std::complex<double> f(0.0, 0.0);
            for (int t = 0; t < nb; ++t) {
                const double phase = -2.0 * kPi * w * t / nb;
                f += sino.at(t, k) * std::complex<double>(std::cos(phase), std::sin(phase));
            }
            s += std::abs(f);
        }
        scores[k] = s;
    }
    return scores;
}

} // namespace support
