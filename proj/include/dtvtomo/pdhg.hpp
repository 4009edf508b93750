#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "dtvtomo/errors.hpp"

namespace dtvtomo {

/**
 * One dual block of a saddle-point problem: a linear operator K together
 * with the resolvent of the convex conjugate of its composed functional F,
 * i.e. the problem term F(K x).
 */
struct DualBlock {
    std::size_t size = 0;

    /// y = K x (overwrite).
    std::function<void(std::span<const double>, std::span<double>)> apply;

    /// x += K^T y (accumulate).
    std::function<void(std::span<const double>, std::span<double>)> apply_adjoint_add;

    /// y <- prox_{sigma F*}(y), in place.
    std::function<void(double sigma, std::span<double>)> prox_conjugate;
};

/// min_x  sum_i F_i(K_i x) + G(x), with everything supplied as closures.
struct SaddleProblem {
    std::size_t primal_size = 0;
    std::vector<DualBlock> blocks;

    /// x <- prox_{tau G}(x), in place; empty means G = 0.
    std::function<void(double tau, std::span<double>)> prox_primal;

    /// Full primal objective, used by the stopping rule.
    std::function<double(std::span<const double>)> objective;

    /// Bound on the norm of the stacked operator [K_1; K_2; ...].
    /// If <= 0 the solver estimates it itself.
    double operator_norm = 0.0;
};

struct SolveConfig {
    double tol = 1e-5;       // relative objective change between checks
    int max_iters = 5000;
    int check_every = 10;
    double theta_relax = 1.0;
};

struct SolveReport {
    int iterations = 0;
    double objective = 0.0;
    double rel_change = 0.0;
    bool converged = false;
    std::vector<double> objective_trace; // one entry per check, first at iteration 0
};

/// Power-iteration estimate of the stacked operator norm of a problem.
double estimate_operator_norm(const SaddleProblem& problem, int iters,
                              std::uint64_t seed = 0x853C49E6748FEA9BULL);

/**
 * Primal-dual hybrid gradient (Chambolle-Pock) with steps
 * sigma = tau = 0.99 / L and over-relaxation theta_relax. Stops when the
 * relative change of the objective between consecutive checks (every
 * check_every iterations) drops to tol, or at max_iters. Throws
 * DivergenceError if the objective turns non-finite.
 */
std::pair<std::vector<double>, SolveReport>
pdhg_solve(const SaddleProblem& problem, const SolveConfig& cfg,
           std::span<const double> init = {});

} // namespace dtvtomo
