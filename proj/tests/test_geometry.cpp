#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dtvtomo/projector.hpp"
#include "test_support.hpp"

using namespace dtvtomo;

TEST_CASE("zero image projects to a zero sinogram") {
    const Geometry geom = Geometry::parallel(16, 16, 12);
    const Sinogram sino = forward_project(Image(16), geom);
    for (double v : sino.data) CHECK(v == 0.0);
}

TEST_CASE("central bins of a projected disk match the analytic chord length") {
    const int M = 128;
    const double r = M / 4.0;
    const Image disk = support::disk_image(M, r);
    const Geometry geom = Geometry::parallel(M, M, 1); // single angle, 0 degrees
    const Sinogram sino = forward_project(disk, geom);
    // nb is even, so the two central bins sit at s = +-0.5.
    for (int t : {M / 2 - 1, M / 2}) {
        CHECK(std::abs(sino.at(t, 0) - 2.0 * r) <= 0.02 * 2.0 * r);
    }
}

TEST_CASE("projector pair passes the adjoint dot test") {
    for (int M : {8, 16, 32}) {
        const Geometry geom = Geometry::parallel(M, M, std::max(3, (2 * M) / 3));
        for (int trial = 0; trial < 100; ++trial) {
            Image x = support::random_image(M, 1000 * M + trial, -1.0, 1.0);
            Sinogram y(geom);
            y.data = support::random_vector(geom.n_rays(), 2000 * M + trial, -1.0, 1.0);

            const Sinogram ax = forward_project(x, geom);
            const Image aty = back_project(y);

            const double lhs = support::dot(ax.data, y.data);
            const double rhs = support::dot(x.data(), aty.data());
            const double bound = 1e-6 * (support::nrm2(ax.data) * support::nrm2(y.data) +
                                         support::nrm2(x.data()) * support::nrm2(aty.data()));
            CHECK(std::abs(lhs - rhs) <= bound);
        }
    }
}

TEST_CASE("forward projection is linear") {
    const int M = 16;
    const Geometry geom = Geometry::parallel(M, M, 11);
    const Image x = support::random_image(M, 7, -1.0, 1.0);
    const Image y = support::random_image(M, 8, -1.0, 1.0);
    const double a = 1.7, b = -0.4;

    Image combo(M);
    for (std::size_t p = 0; p < combo.pixels(); ++p)
        combo.data()[p] = a * x.data()[p] + b * y.data()[p];

    const Sinogram lhs = forward_project(combo, geom);
    const Sinogram ax = forward_project(x, geom);
    const Sinogram by = forward_project(y, geom);
    for (std::size_t p = 0; p < lhs.data.size(); ++p)
        CHECK(lhs.data[p] == doctest::Approx(a * ax.data[p] + b * by.data[p]).epsilon(1e-12));
}

TEST_CASE("projecting a centered disk gives angle-independent columns") {
    const int M = 128;
    const Image disk = support::disk_image(M, M / 4.0);
    const Geometry geom = Geometry::parallel(M, M, 16);
    const Sinogram sino = forward_project(disk, geom);

    double peak = 0.0;
    for (double v : sino.data) peak = std::max(peak, v);

    double max_dev = 0.0;
    for (int k = 1; k < geom.n_angles(); ++k)
        for (int t = 0; t < geom.n_bins; ++t)
            max_dev = std::max(max_dev, std::abs(sino.at(t, k) - sino.at(t, 0)));
    CHECK(max_dev <= 0.02 * peak);
}

TEST_CASE("back projection of a zero sinogram is zero") {
    const Geometry geom = Geometry::parallel(16, 16, 12);
    const Image img = back_project(Sinogram(geom));
    for (double v : img.data()) CHECK(v == 0.0);
}

TEST_CASE("a single-ray sinogram back-projects onto that ray only") {
    const int M = 16;
    const Geometry geom = Geometry::parallel(M, M, 9);
    Sinogram sino(geom);
    const int t = 4, k = 3;
    sino.at(t, k) = 1.0;

    const Image img = back_project(sino);
    const double th = geom.angles_deg[k] * support::kPi / 180.0;
    const double sn = std::sin(th), cs = std::cos(th);
    const double s = geom.bin_center(t);
    const double c = 0.5 * (M - 1);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            if (img(i, j) == 0.0) continue;
            // Nonzero pixels must lie within one interpolation cell of the line.
            const double dist = std::abs(-(i - c) * sn + (j - c) * cs - s);
            CHECK(dist <= 1.0 + 1e-12);
        }
}

TEST_CASE("dimension mismatches are rejected") {
    const Geometry geom = Geometry::parallel(16, 16, 8);
    CHECK_THROWS_AS(forward_project(Image(8), geom), DimensionError);
    Sinogram bad(geom);
    bad.data.pop_back();
    CHECK_THROWS_AS(back_project(bad), DimensionError);
}

TEST_CASE("operator norm estimate stabilizes and handles the degenerate grid") {
    const Geometry geom = Geometry::parallel(16, 16, 16);
    const double e50 = operator_norm_estimate(geom, 50);
    const double e60 = operator_norm_estimate(geom, 60);
    CHECK(std::abs(e60 - e50) / e50 < 1e-3);

    // M = 1, one bin, one angle: the operator is the single weight 1.
    const Geometry tiny = Geometry::parallel(1, 1, 1);
    CHECK(operator_norm_estimate(tiny, 5) == doctest::Approx(1.0).epsilon(1e-12));

    // Sign flip of the start vector does not change the estimate.
    const Geometry g8 = Geometry::parallel(8, 8, 6);
    std::vector<double> start = support::random_vector(64, 42, -1.0, 1.0);
    std::vector<double> flipped = start;
    for (double& v : flipped) v = -v;
    const double a = operator_norm_estimate(g8, 25, start);
    const double b = operator_norm_estimate(g8, 25, flipped);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
}
