#include "dtvtomo/diffops.hpp"

#include <cmath>

namespace dtvtomo {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_params(const DtvParams& p) {
    if (!(p.a > 0.0) || p.a > 1.0)
        throw ParamError("DtvParams: width a must lie in (0, 1]");
}
} // namespace

DtvWeight dtv_weight(const DtvParams& p) {
    check_params(p);
    double th = std::fmod(p.theta_deg, 180.0);
    if (th < 0.0) th += 180.0;
    const double r = th * kPi / 180.0;
    const double c = std::cos(r), s = std::sin(r);
    // V = diag(1, a) * R(-theta): rows (c, s) and (-a s, a c).
    return DtvWeight{c, s, -p.a * s, p.a * c};
}

GradField gradient(const Image& img) {
    const int M = img.size();
    GradField g(M);
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < M; ++j) {
            const std::size_t p = static_cast<std::size_t>(i) * M + j;
            if (i < M - 1) g.dx[p] = img(i + 1, j) - img(i, j);
            if (j < M - 1) g.dy[p] = img(i, j + 1) - img(i, j);
        }
    }
    return g;
}

Image divergence(const GradField& field) {
    const int M = field.size;
    Image out(M);
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < M; ++j) {
            const std::size_t p = static_cast<std::size_t>(i) * M + j;
            double acc = 0.0;
            // Transpose of the forward-difference stencil; the zeroed last
            // row/column of the field carries no coefficient.
            if (i < M - 1) acc -= field.dx[p];
            if (i > 0) acc += field.dx[p - M];
            if (j < M - 1) acc -= field.dy[p];
            if (j > 0) acc += field.dy[p - 1];
            out(i, j) = -acc; // divergence = -grad^T
        }
    }
    return out;
}

double tv(const Image& img) {
    const GradField g = gradient(img);
    double sum = 0.0;
    for (std::size_t p = 0; p < g.dx.size(); ++p)
        sum += std::sqrt(g.dx[p] * g.dx[p] + g.dy[p] * g.dy[p]);
    return sum;
}

double dtv(const Image& img, const DtvParams& p) {
    const DtvWeight w = dtv_weight(p);
    const GradField g = gradient(img);
    double sum = 0.0;
    for (std::size_t q = 0; q < g.dx.size(); ++q) {
        const double v0 = w.m00 * g.dx[q] + w.m01 * g.dy[q];
        const double v1 = w.m10 * g.dx[q] + w.m11 * g.dy[q];
        sum += std::sqrt(v0 * v0 + v1 * v1);
    }
    return sum;
}

GradField prox_dtv_dual(const GradField& field, const DtvParams& p, double weight) {
    check_params(p);
    if (!(weight > 0.0)) throw ParamError("prox_dtv_dual: weight must be positive");

    const DtvWeight w = dtv_weight(p);
    const double det = w.m00 * w.m11 - w.m01 * w.m10;
    // V^{-T} = (1/det) * [[m11, -m10], [-m01, m00]]
    const double t00 = w.m11 / det, t01 = -w.m10 / det;
    const double t10 = -w.m01 / det, t11 = w.m00 / det;

    GradField out(field.size);
    for (std::size_t q = 0; q < field.dx.size(); ++q) {
        double r0 = t00 * field.dx[q] + t01 * field.dy[q];
        double r1 = t10 * field.dx[q] + t11 * field.dy[q];
        const double n = std::sqrt(r0 * r0 + r1 * r1);
        if (n > weight) {
            const double f = weight / n;
            r0 *= f;
            r1 *= f;
        }
        out.dx[q] = w.m00 * r0 + w.m10 * r1;
        out.dy[q] = w.m01 * r0 + w.m11 * r1;
    }
    return out;
}

} // namespace dtvtomo
