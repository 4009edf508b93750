#pragma once

#include <utility>

#include "dtvtomo/diffops.hpp"
#include "dtvtomo/fbp.hpp"
#include "dtvtomo/image.hpp"
#include "dtvtomo/pdhg.hpp"

namespace dtvtomo {

/// Angle split around the main direction: part 1 takes the K+1 consecutive
/// angles centered at main_index (indices modulo the angle count, directions
/// being 180-degree periodic), part 2 the rest. K must be even and >= 2, and
/// part 2 must not be empty.
struct SplitSpec {
    int main_index = 0;
    int K = 10;
};

struct SplitResult {
    Image u, v;                      // fibre / crack components
    SolveReport report_u, report_v;  // zeroed metadata for the FBP path
};

std::pair<Sinogram, Sinogram> split_sinogram(const Sinogram& sino, const SplitSpec& spec);

/// Limited-angle FBP of both parts. By the per-angle weighting of
/// fbp_reconstruct, u + v equals the FBP of the full sinogram up to roundoff.
SplitResult split_fbp(const Sinogram& sino, const SplitSpec& spec, const FbpConfig& cfg = {});

struct SplitParams {
    double lambda_u = 0.0;
    double lambda_v = 0.0;
    double beta = 0.0;     // l1 weight on the crack component; must be > 0
    DtvParams dtv_u{};     // main direction and width for the fibre component
};

/// Variational reconstruction of the parts:
///   u = argmin_{u>=0} 1/2 ||A1 u - b1||^2 + lambda_u DTV(u)
///   v = argmin_{v>=0} 1/2 ||A2 v - b2||^2 + lambda_v TV(v) + beta ||v||_1
/// each solved by PDHG (fidelity normalized as in make_recon_problem).
SplitResult split_variational(const Sinogram& sino, const SplitSpec& spec,
                              const SplitParams& params, const SolveConfig& cfg);

} // namespace dtvtomo
