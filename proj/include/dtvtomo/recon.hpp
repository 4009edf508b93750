#pragma once

#include <span>
#include <utility>

#include "dtvtomo/diffops.hpp"
#include "dtvtomo/image.hpp"
#include "dtvtomo/pdhg.hpp"

namespace dtvtomo {

enum class Regularizer { none, tv, dtv };

struct ReconParams {
    Regularizer reg = Regularizer::tv;
    double lambda = 0.0;      // weight of the tv/dtv term
    DtvParams dtv_params{};   // used when reg == dtv
    double l1_weight = 0.0;   // additional l1 penalty on the pixels
    bool nonneg = false;
    double a_norm_hint = 0.0; // precomputed ||A|| to skip the power iteration
};

/**
 * Builds the saddle-point form of
 *   min_x 1/2 ||Abar x - bbar||^2 + lambda * (D)TV(x) + l1_weight ||x||_1
 *   (+ x >= 0 when nonneg)
 * where Abar = A/||A|| and bbar = b/||A||. The projector is normalized so
 * regularization weights are comparable across grid sizes and angle counts;
 * the minimizer family is unchanged, only the parameter scale. The fidelity
 * enters through its dual prox, so A is used via products only.
 */
SaddleProblem make_recon_problem(const Sinogram& data, const ReconParams& params);

std::pair<Image, SolveReport> reconstruct(const Sinogram& data, const ReconParams& params,
                                          const SolveConfig& cfg,
                                          std::span<const double> init = {});

} // namespace dtvtomo
