#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dtvtomo/decompose.hpp"
#include "dtvtomo/phantom.hpp"
#include "dtvtomo/projector.hpp"
#include "test_support.hpp"

using namespace dtvtomo;

namespace {

DecompParams default_params() {
    DecompParams p;
    p.lambda = 0.004;
    p.alpha = 0.7;
    p.beta = 1e-4;
    p.a_u = 0.15;
    p.a_v = 0.5;
    p.theta_deg = 20.0;
    return p;
}

Sinogram small_crack_sinogram(int M, int n_angles, double eta) {
    PhantomSpec spec;
    spec.size = M;
    spec.kind = PhantomSpec::Kind::fibre_crack;
    spec.main_angle_deg = 20.0;
    spec.crack_count = 6;
    spec.seed = 1;
    const Geometry geom = Geometry::parallel(M, M, n_angles);
    Sinogram sino = forward_project(make_phantom(spec), geom);
    if (eta > 0.0) sino = add_noise(sino, NoiseSpec{eta, 2});
    return sino;
}

} // namespace

TEST_CASE("alpha bound reproduces 0.15 < alpha < 2 for widths (0.15, 0.5)") {
    CHECK(validate_alpha(0.15, 0.5, 0.7));
    CHECK_FALSE(validate_alpha(0.15, 0.5, 2.0));  // upper boundary excluded
    CHECK_FALSE(validate_alpha(0.15, 0.5, 0.15)); // lower boundary excluded
    CHECK(validate_alpha(0.15, 0.5, 1.9999));
    CHECK(validate_alpha(0.15, 0.5, 0.1501));
    CHECK_FALSE(validate_alpha(0.15, 0.5, 2.5));
    CHECK_FALSE(validate_alpha(0.15, 0.5, 0.05));
}

TEST_CASE("alpha validation requires widths strictly inside (0, 1)") {
    CHECK_THROWS_AS(validate_alpha(0.0, 0.5, 0.7), ParamError);
    CHECK_THROWS_AS(validate_alpha(0.15, 1.0, 0.7), ParamError);
    CHECK_THROWS_AS(validate_alpha(1.2, 0.5, 0.7), ParamError);
}

TEST_CASE("the crack term is wired to theta + 90 degrees") {
    DecompParams p = default_params();
    p.theta_deg = 20.0;
    CHECK(crack_direction_params(p).theta_deg == doctest::Approx(110.0).epsilon(1e-15));
    CHECK(crack_direction_params(p).a == 0.5);
    CHECK(fibre_direction_params(p).theta_deg == 20.0);
    CHECK(fibre_direction_params(p).a == 0.15);

    p.theta_deg = 350.0;
    CHECK(crack_direction_params(p).theta_deg == doctest::Approx(80.0).epsilon(1e-12));

    // The weight matrix used for v equals the one built from {theta+90, a_v}.
    p.theta_deg = 20.0;
    const DtvWeight wv = dtv_weight(crack_direction_params(p));
    const DtvWeight direct = dtv_weight(DtvParams{110.0, 0.5});
    CHECK(wv.m00 == direct.m00);
    CHECK(wv.m01 == direct.m01);
    CHECK(wv.m10 == direct.m10);
    CHECK(wv.m11 == direct.m11);
}

TEST_CASE("decompose rejects parameters outside the feasible set") {
    const Geometry geom = Geometry::parallel(16, 16, 12);
    const Sinogram sino(geom);
    SolveConfig cfg;

    DecompParams p = default_params();
    p.alpha = 2.5;
    CHECK_THROWS_AS(decompose(sino, p, cfg), ParamError);
    p = default_params();
    p.alpha = 0.15;
    CHECK_THROWS_AS(decompose(sino, p, cfg), ParamError);
    p = default_params();
    p.beta = 0.0;
    CHECK_THROWS_AS(decompose(sino, p, cfg), ParamError);
    p = default_params();
    p.lambda = 0.0;
    CHECK_THROWS_AS(decompose(sino, p, cfg), ParamError);
    p = default_params();
    p.a_v = 1.0;
    CHECK_THROWS_AS(decompose(sino, p, cfg), ParamError);
}

TEST_CASE("zero data decomposes to zero components") {
    const Geometry geom = Geometry::parallel(24, 24, 16);
    SolveConfig cfg;
    const DecompResult res = decompose(Sinogram(geom), default_params(), cfg);
    for (double v : res.u.data()) CHECK(v == 0.0);
    for (double v : res.v.data()) CHECK(v == 0.0);
    CHECK(res.report.converged);
}

TEST_CASE("u is nonnegative, v finite, objective does not exceed the zero-init value") {
    const Sinogram sino = small_crack_sinogram(32, 21, 0.01);
    SolveConfig cfg;
    const DecompResult res = decompose(sino, default_params(), cfg);
    for (double v : res.u.data()) CHECK(v >= 0.0);
    for (double v : res.v.data()) CHECK(std::isfinite(v));
    REQUIRE(!res.report.objective_trace.empty());
    CHECK(res.report.objective <= res.report.objective_trace.front());
    CHECK(res.report.converged);
}

TEST_CASE("decompose is initialization independent on a small instance") {
    const Sinogram sino = small_crack_sinogram(32, 21, 0.01);
    SolveConfig cfg;
    cfg.tol = 1e-7;
    cfg.max_iters = 20000;
    const DecompResult a = decompose(sino, default_params(), cfg);

    const std::size_t n = a.u.pixels();
    std::vector<double> init = support::random_vector(2 * n, 37, 0.0, 1.0);
    const DecompResult b = decompose(sino, default_params(), cfg, init);

    double diff2 = 0.0, norm2 = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
        diff2 += (a.u.data()[p] - b.u.data()[p]) * (a.u.data()[p] - b.u.data()[p]);
        diff2 += (a.v.data()[p] - b.v.data()[p]) * (a.v.data()[p] - b.v.data()[p]);
        norm2 += a.u.data()[p] * a.u.data()[p] + a.v.data()[p] * a.v.data()[p];
    }
    CHECK(std::sqrt(diff2) <= 1e-3 * std::sqrt(norm2));
}

TEST_CASE("alpha_sweep reports one row per alpha with pinned beta") {
    const Sinogram sino = small_crack_sinogram(32, 21, 0.01);
    PhantomSpec spec;
    spec.size = 32;
    spec.kind = PhantomSpec::Kind::fibre_crack;
    spec.main_angle_deg = 20.0;
    spec.crack_count = 6;
    spec.seed = 1;
    const Image truth = make_phantom(spec);
    const Image mask = make_crack_mask(spec);

    SolveConfig cfg;
    DecompParams p = default_params();
    const std::vector<double> alphas = {0.3, 0.7, 1.5};
    const auto rows = alpha_sweep(sino, p, alphas, truth, mask, cfg);
    REQUIRE(rows.size() == 3);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        CHECK(rows[r].alpha == alphas[r]);
        CHECK(std::isfinite(rows[r].psnr_db));
        CHECK(rows[r].iterations > 0);
    }

    std::vector<double> bad = {2.5};
    CHECK_THROWS_AS(alpha_sweep(sino, p, bad, truth, mask, cfg), ParamError);
}
