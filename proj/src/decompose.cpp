#include "dtvtomo/decompose.hpp"

#include <algorithm>
#include <cmath>

#include "dtvtomo/metrics.hpp"
#include "dtvtomo/projector.hpp"
#include "varblocks.hpp"

namespace dtvtomo {

bool validate_alpha(double a_u, double a_v, double alpha) {
    if (!(a_u > 0.0 && a_u < 1.0) || !(a_v > 0.0 && a_v < 1.0))
        throw ParamError("validate_alpha: widths must lie strictly in (0, 1)");
    return a_u < alpha && alpha < 1.0 / a_v;
}

DtvParams fibre_direction_params(const DecompParams& p) { return DtvParams{p.theta_deg, p.a_u}; }

DtvParams crack_direction_params(const DecompParams& p) {
    double th = p.theta_deg + 90.0;
    if (th >= 360.0) th -= 360.0;
    return DtvParams{th, p.a_v};
}

DecompResult decompose(const Sinogram& sino, const DecompParams& p, const SolveConfig& cfg,
                       std::span<const double> init) {
    const Geometry geom = sino.geometry;
    geom.validate();
    if (sino.data.size() != geom.n_rays())
        throw DimensionError("decompose: sinogram data does not match geometry");
    if (!(p.lambda > 0.0)) throw ParamError("DecompParams: lambda must be positive");
    if (!(p.beta > 0.0)) throw ParamError("DecompParams: beta must be positive");
    if (!validate_alpha(p.a_u, p.a_v, p.alpha))
        throw ParamError("DecompParams: alpha violates a_u < alpha < 1/a_v");

    const int M = geom.image_size;
    const std::size_t n = static_cast<std::size_t>(M) * M;

    const double a_norm = p.a_norm_hint > 0.0 ? p.a_norm_hint : operator_norm_estimate(geom, 40);
    const double s = 1.0 / a_norm;
    std::vector<double> b_scaled(sino.data.size());
    for (std::size_t q = 0; q < b_scaled.size(); ++q) b_scaled[q] = s * sino.data[q];

    SaddleProblem prob;
    prob.primal_size = 2 * n;

    // Fidelity block: y = s*A(u+v).
    DualBlock fid;
    fid.size = sino.data.size();
    fid.apply = [geom, s, M, n](std::span<const double> x, std::span<double> y) {
        Image sum(M);
        for (std::size_t q = 0; q < n; ++q) sum.data()[q] = x[q] + x[q + n];
        const Sinogram proj = forward_project(sum, geom);
        for (std::size_t q = 0; q < y.size(); ++q) y[q] = s * proj.data[q];
    };
    fid.apply_adjoint_add = [geom, s, n](std::span<const double> y, std::span<double> x) {
        Sinogram tmp(geom);
        std::copy(y.begin(), y.end(), tmp.data.begin());
        const Image bp = back_project(tmp);
        for (std::size_t q = 0; q < n; ++q) {
            const double g = s * bp.data()[q];
            x[q] += g;
            x[q + n] += g;
        }
    };
    fid.prox_conjugate = [b = b_scaled](double sigma, std::span<double> y) {
        const double inv = 1.0 / (1.0 + sigma);
        for (std::size_t q = 0; q < y.size(); ++q) y[q] = (y[q] - sigma * b[q]) * inv;
    };
    prob.blocks.push_back(std::move(fid));

    const DtvWeight wu = dtv_weight(fibre_direction_params(p));
    const DtvWeight wv = dtv_weight(crack_direction_params(p));
    prob.blocks.push_back(detail::make_grad_block(M, wu, p.lambda, 0));
    prob.blocks.push_back(detail::make_grad_block(M, wv, p.lambda * p.alpha, n));

    const double beta = p.beta;
    prob.prox_primal = [beta, n](double tau, std::span<double> x) {
        for (std::size_t q = 0; q < n; ++q) x[q] = std::max(x[q], 0.0);
        const double t = tau * beta;
        for (std::size_t q = n; q < 2 * n; ++q) {
            const double e = x[q];
            x[q] = e > t ? e - t : (e < -t ? e + t : 0.0);
        }
    };

    const double lambda = p.lambda, alpha = p.alpha;
    prob.objective = [geom, s, M, n, b = b_scaled, wu, wv, lambda, alpha,
                      beta](std::span<const double> x) {
        Image sum(M);
        for (std::size_t q = 0; q < n; ++q) sum.data()[q] = x[q] + x[q + n];
        const Sinogram proj = forward_project(sum, geom);
        double fidelity = 0.0;
        for (std::size_t q = 0; q < b.size(); ++q) {
            const double r = s * proj.data[q] - b[q];
            fidelity += r * r;
        }
        double f = 0.5 * fidelity;
        f += lambda * detail::weighted_grad_norm_sum(x.subspan(0, n), M, wu);
        f += lambda * alpha * detail::weighted_grad_norm_sum(x.subspan(n, n), M, wv);
        for (std::size_t q = n; q < 2 * n; ++q) f += beta * std::abs(x[q]);
        return f;
    };

    prob.operator_norm = estimate_operator_norm(prob, 30);

    auto [x, report] = pdhg_solve(prob, cfg, init);
    DecompResult result;
    result.u = Image(M);
    result.v = Image(M);
    std::copy(x.begin(), x.begin() + n, result.u.data().begin());
    std::copy(x.begin() + n, x.end(), result.v.data().begin());
    result.report = std::move(report);
    return result;
}

std::vector<AlphaSweepRow> alpha_sweep(const Sinogram& sino, const DecompParams& p,
                                       std::span<const double> alphas,
                                       const Image& ground_truth, const Image& crack_mask,
                                       const SolveConfig& cfg) {
    for (double a : alphas)
        if (!validate_alpha(p.a_u, p.a_v, a))
            throw ParamError("alpha_sweep: alpha violates a_u < alpha < 1/a_v");

    const double a_norm =
        p.a_norm_hint > 0.0 ? p.a_norm_hint : operator_norm_estimate(sino.geometry, 40);

    std::vector<AlphaSweepRow> rows;
    for (double a : alphas) {
        DecompParams q = p;
        q.alpha = a;
        q.beta = 1e-6; // keep the sparsity term out of the balance test
        q.a_norm_hint = a_norm;
        const DecompResult res = decompose(sino, q, cfg);
        AlphaSweepRow row;
        row.alpha = a;
        row.psnr_db = psnr(res.u + res.v, ground_truth);
        row.crack_capture = crack_capture_ratio(res.v, crack_mask);
        row.iterations = res.report.iterations;
        rows.push_back(row);
    }
    return rows;
}

} // namespace dtvtomo
