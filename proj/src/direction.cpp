#include "dtvtomo/direction.hpp"

#include <cmath>
#include <complex>

#include <fftw3.h>

namespace dtvtomo {

DirectionEstimate estimate_direction(const Sinogram& sino, bool include_dc) {
    const Geometry& geom = sino.geometry;
    geom.validate();
    if (geom.n_bins < 2) throw ParamError("estimate_direction: need at least 2 detector bins");
    if (sino.data.size() != geom.n_rays())
        throw DimensionError("estimate_direction: sinogram data does not match geometry");

    const int nb = geom.n_bins;
    const int na = geom.n_angles();

    std::vector<double> buf(nb);
    std::vector<std::complex<double>> spec(nb / 2 + 1);
    fftw_plan plan = fftw_plan_dft_r2c_1d(nb, buf.data(),
                                          reinterpret_cast<fftw_complex*>(spec.data()),
                                          FFTW_ESTIMATE);

    DirectionEstimate est;
    est.scores.resize(na);
    for (int k = 0; k < na; ++k) {
        const double* col = sino.data.data() + static_cast<std::size_t>(k) * nb;
        std::copy(col, col + nb, buf.begin());
        fftw_execute(plan);

        // Two-sided magnitude sum reconstructed from the half spectrum of the
        // real input: |F[nb - w]| = |F[w]|.
        double s = include_dc ? std::abs(spec[0]) : 0.0;
        const int half = nb / 2;
        for (int w = 1; w < (nb + 1) / 2; ++w) s += 2.0 * std::abs(spec[w]);
        if (nb % 2 == 0) s += std::abs(spec[half]);
        est.scores[k] = s;
    }
    fftw_destroy_plan(plan);

    est.argmax_index = 0;
    for (int k = 1; k < na; ++k)
        if (est.scores[k] > est.scores[est.argmax_index]) est.argmax_index = k;
    est.theta_deg = geom.angles_deg[est.argmax_index];
    return est;
}

} // namespace dtvtomo
