#include "dtvtomo/pdhg.hpp"

#include <cmath>
#include <random>

#include "dtvtomo/rng.hpp"

namespace dtvtomo {

namespace {

double nrm2(std::span<const double> v) {
    double s = 0.0;
    for (double e : v) s += e * e;
    return std::sqrt(s);
}

void check_problem(const SaddleProblem& p) {
    if (p.primal_size == 0) throw ParamError("SaddleProblem: primal_size is zero");
    if (p.blocks.empty()) throw ParamError("SaddleProblem: no dual blocks");
    if (!p.objective) throw ParamError("SaddleProblem: objective is required");
}

} // namespace

double estimate_operator_norm(const SaddleProblem& problem, int iters, std::uint64_t seed) {
    check_problem(problem);
    std::vector<double> x(problem.primal_size);
    std::mt19937_64 g(seed);
    for (double& v : x) v = rng::uniform01(g) - 0.5;

    std::vector<std::vector<double>> y;
    for (const auto& b : problem.blocks) y.emplace_back(b.size);

    double n = nrm2(x);
    if (n == 0.0) return 0.0;
    for (double& v : x) v /= n;

    double sigma = 0.0;
    std::vector<double> z(problem.primal_size);
    for (int it = 0; it < iters; ++it) {
        std::fill(z.begin(), z.end(), 0.0);
        for (std::size_t b = 0; b < problem.blocks.size(); ++b) {
            problem.blocks[b].apply(x, y[b]);
            problem.blocks[b].apply_adjoint_add(y[b], z);
        }
        const double nz = nrm2(z);
        if (nz == 0.0) return 0.0;
        sigma = std::sqrt(nz);
        for (std::size_t p = 0; p < z.size(); ++p) x[p] = z[p] / nz;
    }
    return sigma;
}

std::pair<std::vector<double>, SolveReport>
pdhg_solve(const SaddleProblem& problem, const SolveConfig& cfg, std::span<const double> init) {
    check_problem(problem);
    if (!(cfg.tol > 0.0)) throw ParamError("SolveConfig: tol must be positive");
    if (cfg.max_iters < 1) throw ParamError("SolveConfig: max_iters must be >= 1");
    if (cfg.check_every < 1) throw ParamError("SolveConfig: check_every must be >= 1");
    if (cfg.theta_relax < 0.0 || cfg.theta_relax > 1.0)
        throw ParamError("SolveConfig: theta_relax must lie in [0, 1]");

    const std::size_t n = problem.primal_size;
    double L = problem.operator_norm;
    if (L <= 0.0) L = estimate_operator_norm(problem, 30);
    const double step = 0.99 / L;
    const double sigma = step, tau = step;

    std::vector<double> x(n, 0.0);
    if (!init.empty()) {
        if (init.size() != n) throw DimensionError("pdhg_solve: init size mismatch");
        std::copy(init.begin(), init.end(), x.begin());
    }
    std::vector<double> xbar = x;
    std::vector<double> xprev(n);

    std::vector<std::vector<double>> y, ky;
    for (const auto& b : problem.blocks) {
        y.emplace_back(b.size, 0.0);
        ky.emplace_back(b.size);
    }

    SolveReport report;
    double f_prev = problem.objective(x);
    report.objective_trace.push_back(f_prev);
    if (!std::isfinite(f_prev)) throw DivergenceError("pdhg_solve: non-finite objective", 0);

    for (int it = 1; it <= cfg.max_iters; ++it) {
        // Dual ascent on every block against the extrapolated primal.
        for (std::size_t b = 0; b < problem.blocks.size(); ++b) {
            problem.blocks[b].apply(xbar, ky[b]);
            auto& yb = y[b];
            const auto& kb = ky[b];
            for (std::size_t p = 0; p < yb.size(); ++p) yb[p] += sigma * kb[p];
            problem.blocks[b].prox_conjugate(sigma, yb);
        }

        // Primal descent.
        xprev.swap(x);
        std::fill(x.begin(), x.end(), 0.0);
        for (std::size_t b = 0; b < problem.blocks.size(); ++b)
            problem.blocks[b].apply_adjoint_add(y[b], x);
        for (std::size_t p = 0; p < n; ++p) x[p] = xprev[p] - tau * x[p];
        if (problem.prox_primal) problem.prox_primal(tau, x);

        for (std::size_t p = 0; p < n; ++p)
            xbar[p] = x[p] + cfg.theta_relax * (x[p] - xprev[p]);

        if (it % cfg.check_every == 0 || it == cfg.max_iters) {
            const double f = problem.objective(x);
            report.objective_trace.push_back(f);
            if (!std::isfinite(f)) throw DivergenceError("pdhg_solve: non-finite objective", it);
            const double rel = std::abs(f - f_prev) / std::max(std::abs(f), 1e-12);
            report.iterations = it;
            report.objective = f;
            report.rel_change = rel;
            f_prev = f;
            if (rel <= cfg.tol) {
                report.converged = true;
                break;
            }
        }
    }
    return {std::move(x), std::move(report)};
}

} // namespace dtvtomo
