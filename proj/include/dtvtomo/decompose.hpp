#pragma once

#include <span>
#include <vector>

#include "dtvtomo/diffops.hpp"
#include "dtvtomo/image.hpp"
#include "dtvtomo/pdhg.hpp"

namespace dtvtomo {

/**
 * Joint reconstruction/decomposition
 *   min_{u>=0, v} 1/2 ||A(u+v) - b||^2
 *                 + lambda (DTV_{theta, a_u}(u) + alpha DTV_{theta+90, a_v}(v))
 *                 + beta ||v||_1
 * with the fibre component u along the main direction and the crack
 * component v along its orthogonal. v is not sign-constrained.
 */
struct DecompParams {
    double lambda = 0.0;
    double alpha = 0.0;    // balance of the two DTV terms; a_u < alpha < 1/a_v
    double a_u = 0.15;
    double a_v = 0.5;
    double beta = 0.0;     // crack sparsity weight; must be > 0
    double theta_deg = 0.0;
    double a_norm_hint = 0.0; // precomputed ||A|| to skip the power iteration
};

/// True iff a_u < alpha < 1/a_v (open interval; the feasible-set separation
/// bound of the two DTV terms). Requires a_u, a_v in (0, 1).
bool validate_alpha(double a_u, double a_v, double alpha);

/// DTV parameters used for the fibre term: {theta, a_u}.
DtvParams fibre_direction_params(const DecompParams& p);

/// DTV parameters used for the crack term: {theta + 90, a_v}.
DtvParams crack_direction_params(const DecompParams& p);

struct DecompResult {
    Image u, v;
    SolveReport report;
};

/// `init`, when nonempty, is the stacked start iterate [u; v] of length 2*M*M.
DecompResult decompose(const Sinogram& sino, const DecompParams& p, const SolveConfig& cfg,
                       std::span<const double> init = {});

struct AlphaSweepRow {
    double alpha = 0.0;
    double psnr_db = 0.0;      // PSNR of u+v against the ground truth
    double crack_capture = 0.0; // crack-mask capture ratio of v
    int iterations = 0;
};

/// Runs decompose for each alpha with beta pinned to 1e-6 so the sparsity
/// term does not influence the balance test.
std::vector<AlphaSweepRow> alpha_sweep(const Sinogram& sino, const DecompParams& p,
                                       std::span<const double> alphas,
                                       const Image& ground_truth, const Image& crack_mask,
                                       const SolveConfig& cfg);

} // namespace dtvtomo
