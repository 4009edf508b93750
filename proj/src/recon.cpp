#include "dtvtomo/recon.hpp"

#include <algorithm>
#include <cmath>

#include "dtvtomo/projector.hpp"
#include "varblocks.hpp"

namespace dtvtomo {

SaddleProblem make_recon_problem(const Sinogram& data, const ReconParams& params) {
    const Geometry geom = data.geometry;
    geom.validate();
    if (data.data.size() != geom.n_rays())
        throw DimensionError("make_recon_problem: sinogram data does not match geometry");
    if (params.reg != Regularizer::none && !(params.lambda > 0.0))
        throw ParamError("ReconParams: lambda must be positive");
    if (params.l1_weight < 0.0) throw ParamError("ReconParams: l1_weight must be nonnegative");

    const int M = geom.image_size;
    const std::size_t n = static_cast<std::size_t>(M) * M;

    const double a_norm =
        params.a_norm_hint > 0.0 ? params.a_norm_hint : operator_norm_estimate(geom, 40);
    const double s = 1.0 / a_norm;

    std::vector<double> b_scaled(data.data.size());
    for (std::size_t p = 0; p < b_scaled.size(); ++p) b_scaled[p] = s * data.data[p];

    SaddleProblem prob;
    prob.primal_size = n;

    DualBlock fid;
    fid.size = data.data.size();
    fid.apply = [geom, s, M](std::span<const double> x, std::span<double> y) {
        Image im(M);
        std::copy(x.begin(), x.end(), im.data().begin());
        const Sinogram proj = forward_project(im, geom);
        for (std::size_t p = 0; p < y.size(); ++p) y[p] = s * proj.data[p];
    };
    fid.apply_adjoint_add = [geom, s](std::span<const double> y, std::span<double> x) {
        Sinogram tmp(geom);
        std::copy(y.begin(), y.end(), tmp.data.begin());
        const Image bp = back_project(tmp);
        for (std::size_t p = 0; p < x.size(); ++p) x[p] += s * bp.data()[p];
    };
    fid.prox_conjugate = [b = b_scaled](double sigma, std::span<double> y) {
        const double inv = 1.0 / (1.0 + sigma);
        for (std::size_t p = 0; p < y.size(); ++p) y[p] = (y[p] - sigma * b[p]) * inv;
    };
    prob.blocks.push_back(std::move(fid));

    DtvWeight v = detail::identity_weight();
    if (params.reg == Regularizer::dtv) v = dtv_weight(params.dtv_params);
    if (params.reg != Regularizer::none)
        prob.blocks.push_back(detail::make_grad_block(M, v, params.lambda, 0));

    const double beta = params.l1_weight;
    const bool nonneg = params.nonneg;
    if (nonneg && beta > 0.0) {
        prob.prox_primal = [beta](double tau, std::span<double> x) {
            for (double& e : x) e = std::max(e - tau * beta, 0.0);
        };
    } else if (nonneg) {
        prob.prox_primal = [](double, std::span<double> x) {
            for (double& e : x) e = std::max(e, 0.0);
        };
    } else if (beta > 0.0) {
        prob.prox_primal = [beta](double tau, std::span<double> x) {
            for (double& e : x) {
                const double t = tau * beta;
                e = e > t ? e - t : (e < -t ? e + t : 0.0);
            }
        };
    }

    const Regularizer reg = params.reg;
    const double lambda = params.lambda;
    prob.objective = [geom, s, M, b = b_scaled, reg, lambda, v,
                      beta](std::span<const double> x) {
        Image im(M);
        std::copy(x.begin(), x.end(), im.data().begin());
        const Sinogram proj = forward_project(im, geom);
        double fidelity = 0.0;
        for (std::size_t p = 0; p < b.size(); ++p) {
            const double r = s * proj.data[p] - b[p];
            fidelity += r * r;
        }
        double f = 0.5 * fidelity;
        if (reg != Regularizer::none) f += lambda * detail::weighted_grad_norm_sum(x, M, v);
        if (beta > 0.0)
            for (double e : x) f += beta * std::abs(e);
        return f;
    };

    prob.operator_norm = estimate_operator_norm(prob, 30);
    return prob;
}

std::pair<Image, SolveReport> reconstruct(const Sinogram& data, const ReconParams& params,
                                          const SolveConfig& cfg, std::span<const double> init) {
    const SaddleProblem prob = make_recon_problem(data, params);
    auto [x, report] = pdhg_solve(prob, cfg, init);
    Image img(data.geometry.image_size);
    std::copy(x.begin(), x.end(), img.data().begin());
    return {std::move(img), std::move(report)};
}

} // namespace dtvtomo
