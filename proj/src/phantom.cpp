#include "dtvtomo/phantom.hpp"

#include <cmath>
#include <random>

#include "dtvtomo/rng.hpp"

namespace dtvtomo {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct CrackBar {
    double ci, cj;   // center
    double di, dj;   // unit direction (polar angle of the center)
    double half_len;
    double half_width;

    bool contains(double pi, double pj) const {
        const double ri = pi - ci, rj = pj - cj;
        const double along = ri * di + rj * dj;
        const double across = -ri * dj + rj * di;
        return std::abs(along) <= half_len && std::abs(across) <= half_width;
    }
};

std::vector<CrackBar> crack_layout(const PhantomSpec& spec) {
    std::vector<CrackBar> bars;
    if (spec.kind != PhantomSpec::Kind::fibre_crack || spec.crack_count <= 0) return bars;
    const double ring = spec.size / 4.0;
    const double half_len = spec.size / 8.0;
    for (int c = 0; c < spec.crack_count; ++c) {
        const double phi = 2.0 * kPi * c / spec.crack_count;
        CrackBar bar;
        bar.di = std::cos(phi);
        bar.dj = std::sin(phi);
        bar.ci = ring * bar.di;
        bar.cj = ring * bar.dj;
        bar.half_len = half_len;
        bar.half_width = 0.5 * spec.crack_width_px;
        bars.push_back(bar);
    }
    return bars;
}

void check_spec(const PhantomSpec& spec) {
    if (spec.size <= 0) throw ParamError("PhantomSpec: size must be positive");
    if (spec.main_angle_deg < 0.0 || spec.main_angle_deg >= 180.0)
        throw ParamError("PhantomSpec: main_angle_deg must lie in [0, 180)");
    if (spec.n_stripes < 1) throw ParamError("PhantomSpec: n_stripes must be positive");
    if (spec.crack_count < 0) throw ParamError("PhantomSpec: crack_count must be nonnegative");
    if (spec.crack_width_px <= 0.0) throw ParamError("PhantomSpec: crack_width_px must be positive");
}

} // namespace

Image make_phantom(const PhantomSpec& spec) {
    check_spec(spec);
    const int M = spec.size;
    const double c = 0.5 * (M - 1);
    const double radius = 0.5 * M - 0.5;

    // Stripe profile: n_stripes bands, tiled periodically.
    std::mt19937_64 g(spec.seed);
    std::vector<double> level;
    for (int k = 0; k < spec.n_stripes; ++k) {
        const int width = rng::uniform_int(g, 4, 16);
        const double value = (k % 2 == 0) ? 1.0 : 0.5;
        level.insert(level.end(), width, value);
    }
    const long period = static_cast<long>(level.size());

    const double th = spec.main_angle_deg * kPi / 180.0;
    const double sn = std::sin(th), cs = std::cos(th);
    const auto bars = crack_layout(spec);

    // Pixels are area samples of the stripe/crack scene (4x4 per pixel).
    // Point sampling would put jagged, along-direction gradients into the
    // stripe edges themselves, which fights the directional prior the
    // phantom exists to exercise. The circle cutoff stays a pixel-center
    // test so everything outside is exactly zero.
    Image img(M);
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < M; ++j) {
            const double pi = i - c, pj = j - c;
            if (pi * pi + pj * pj > radius * radius) continue;
            double acc = 0.0;
            for (int si = 0; si < 4; ++si) {
                for (int sj = 0; sj < 4; ++sj) {
                    const double qi = pi + (si + 0.5) / 4.0 - 0.5;
                    const double qj = pj + (sj + 0.5) / 4.0 - 0.5;
                    bool cracked = false;
                    for (const CrackBar& bar : bars)
                        if (bar.contains(qi, qj)) {
                            cracked = true;
                            break;
                        }
                    if (cracked) continue;
                    const double w = -qi * sn + qj * cs; // coordinate across the stripes
                    long idx = static_cast<long>(std::floor(w)) % period;
                    if (idx < 0) idx += period;
                    acc += level[static_cast<std::size_t>(idx)];
                }
            }
            img(i, j) = acc / 16.0;
        }
    }
    return img;
}

Image make_crack_mask(const PhantomSpec& spec) {
    check_spec(spec);
    PhantomSpec layout = spec;
    layout.kind = PhantomSpec::Kind::fibre_crack;
    const auto bars = crack_layout(layout);
    const int M = spec.size;
    const double c = 0.5 * (M - 1);

    Image mask(M);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j)
            for (const CrackBar& bar : bars)
                if (bar.contains(i - c, j - c)) {
                    mask(i, j) = 1.0;
                    break;
                }
    return mask;
}

Image inscribed_circle_mask(int size) {
    if (size <= 0) throw ParamError("inscribed_circle_mask: size must be positive");
    Image mask(size);
    const double c = 0.5 * (size - 1);
    const double r2 = 0.25 * size * size;
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) {
            const double pi = i - c, pj = j - c;
            if (pi * pi + pj * pj <= r2) mask(i, j) = 1.0;
        }
    return mask;
}

Sinogram add_noise(const Sinogram& sino, const NoiseSpec& noise) {
    if (noise.level < 0.0) throw ParamError("NoiseSpec: level must be nonnegative");
    if (noise.level == 0.0) return sino;

    double nb = 0.0;
    for (double v : sino.data) nb += v * v;
    nb = std::sqrt(nb);
    if (nb == 0.0) return sino; // nothing to scale against; documented no-op

    std::mt19937_64 g(noise.seed);
    std::vector<double> e(sino.data.size());
    double ne = 0.0;
    for (double& v : e) {
        v = rng::gaussian(g);
        ne += v * v;
    }
    ne = std::sqrt(ne);

    Sinogram out = sino;
    const double scale = noise.level * nb / ne;
    for (std::size_t p = 0; p < out.data.size(); ++p) out.data[p] += scale * e[p];
    return out;
}

} // namespace dtvtomo
