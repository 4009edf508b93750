#include "dtvtomo/split.hpp"

#include <algorithm>
#include <vector>

#include "dtvtomo/recon.hpp"

namespace dtvtomo {

namespace {

Sinogram take_columns(const Sinogram& sino, const std::vector<int>& indices) {
    Geometry geom;
    geom.n_bins = sino.geometry.n_bins;
    geom.det_spacing = sino.geometry.det_spacing;
    geom.image_size = sino.geometry.image_size;
    geom.angles_deg.reserve(indices.size());
    for (int k : indices) geom.angles_deg.push_back(sino.geometry.angles_deg[k]);

    Sinogram out(geom);
    const int nb = geom.n_bins;
    for (std::size_t c = 0; c < indices.size(); ++c) {
        const double* src = sino.data.data() + static_cast<std::size_t>(indices[c]) * nb;
        std::copy(src, src + nb, out.data.data() + c * nb);
    }
    return out;
}

} // namespace

std::pair<Sinogram, Sinogram> split_sinogram(const Sinogram& sino, const SplitSpec& spec) {
    sino.geometry.validate();
    const int na = sino.geometry.n_angles();
    if (spec.K < 2) throw ParamError("SplitSpec: K must be >= 2");
    if (spec.K % 2 != 0) throw ParamError("SplitSpec: K must be even");
    if (spec.K + 1 > na) throw ParamError("SplitSpec: K+1 exceeds the number of angles");
    if (spec.K + 1 == na) throw ParamError("SplitSpec: split leaves no angles for part 2");
    if (spec.main_index < 0 || spec.main_index >= na)
        throw ParamError("SplitSpec: main_index out of range");

    std::vector<char> in_part1(na, 0);
    for (int n = -spec.K / 2; n <= spec.K / 2; ++n) {
        const int idx = ((spec.main_index + n) % na + na) % na;
        in_part1[idx] = 1;
    }

    std::vector<int> idx1, idx2;
    for (int k = 0; k < na; ++k) (in_part1[k] ? idx1 : idx2).push_back(k);
    return {take_columns(sino, idx1), take_columns(sino, idx2)};
}

SplitResult split_fbp(const Sinogram& sino, const SplitSpec& spec, const FbpConfig& cfg) {
    auto [part1, part2] = split_sinogram(sino, spec);
    SplitResult result;
    result.u = fbp_reconstruct(part1, cfg);
    result.v = fbp_reconstruct(part2, cfg);
    result.report_u.converged = true;
    result.report_v.converged = true;
    return result;
}

SplitResult split_variational(const Sinogram& sino, const SplitSpec& spec,
                              const SplitParams& params, const SolveConfig& cfg) {
    if (!(params.lambda_u > 0.0) || !(params.lambda_v > 0.0))
        throw ParamError("SplitParams: lambda_u and lambda_v must be positive");
    if (!(params.beta > 0.0))
        throw ParamError("SplitParams: beta must be positive (beta = 0 would drop the "
                         "sparsity term)");

    auto [part1, part2] = split_sinogram(sino, spec);

    ReconParams fibre;
    fibre.reg = Regularizer::dtv;
    fibre.lambda = params.lambda_u;
    fibre.dtv_params = params.dtv_u;
    fibre.nonneg = true;

    ReconParams crack;
    crack.reg = Regularizer::tv;
    crack.lambda = params.lambda_v;
    crack.l1_weight = params.beta;
    crack.nonneg = true;

    SplitResult result;
    auto [u, report_u] = reconstruct(part1, fibre, cfg);
    auto [v, report_v] = reconstruct(part2, crack, cfg);
    result.u = std::move(u);
    result.v = std::move(v);
    result.report_u = std::move(report_u);
    result.report_v = std::move(report_v);
    return result;
}

} // namespace dtvtomo
