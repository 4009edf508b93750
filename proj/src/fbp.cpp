#include "dtvtomo/fbp.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include <fftw3.h>

namespace dtvtomo {

namespace {

constexpr double kPi = 3.14159265358979323846;

int next_pow2(int n) {
    int p = 1;
    while (p < n) p *= 2;
    return p;
}

double min_circular_gap_rad(const std::vector<double>& angles_deg) {
    const int n = static_cast<int>(angles_deg.size());
    if (n < 2) return kPi;
    double min_gap = angles_deg[0] + 180.0 - angles_deg[n - 1]; // wrap gap, mod 180
    for (int k = 1; k < n; ++k) min_gap = std::min(min_gap, angles_deg[k] - angles_deg[k - 1]);
    return min_gap * kPi / 180.0;
}

// Frequency response of the band-limited ramp, sampled by transforming the
// real-space filter (Kak & Slaney): h(0) = 1/(4 d^2), h(n odd) = -1/(pi n d)^2.
std::vector<double> ramp_response(int n_fft, double d, FbpFilter filter) {
    std::vector<double> h(n_fft, 0.0);
    h[0] = 1.0 / (4.0 * d * d);
    for (int n = 1; n <= n_fft / 2; ++n) {
        if (n % 2 == 1) {
            const double v = -1.0 / (kPi * kPi * n * n * d * d);
            h[n] = v;
            h[n_fft - n] = v;
        }
    }

    std::vector<std::complex<double>> spec(n_fft / 2 + 1);
    fftw_plan plan = fftw_plan_dft_r2c_1d(n_fft, h.data(),
                                          reinterpret_cast<fftw_complex*>(spec.data()),
                                          FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    std::vector<double> H(n_fft / 2 + 1);
    for (int w = 0; w < n_fft / 2 + 1; ++w) {
        H[w] = std::max(spec[w].real(), 0.0); // imaginary part is zero up to roundoff
        if (filter == FbpFilter::shepp_logan && w > 0) {
            const double f = static_cast<double>(w) / (n_fft / 2); // fraction of Nyquist
            const double arg = 0.5 * kPi * f;
            H[w] *= std::sin(arg) / arg;
        }
    }
    return H;
}

} // namespace

Image fbp_reconstruct(const Sinogram& sino, const FbpConfig& cfg) {
    const Geometry& geom = sino.geometry;
    if (geom.n_angles() == 0 || sino.data.empty())
        throw EmptyDataError("fbp_reconstruct: empty angle set");
    geom.validate();
    if (sino.data.size() != geom.n_rays())
        throw DimensionError("fbp_reconstruct: sinogram data does not match geometry");
    if (cfg.pad_factor != 1 && cfg.pad_factor != 2 && cfg.pad_factor != 4)
        throw ParamError("FbpConfig: pad_factor must be 1, 2 or 4");

    const int M = geom.image_size;
    const int nb = geom.n_bins;
    const int na = geom.n_angles();
    const double d = geom.det_spacing;
    const int n_fft = next_pow2(nb * cfg.pad_factor);

    const std::vector<double> H = ramp_response(n_fft, d, cfg.filter);

    // Filter all columns: q = IFFT(FFT(p) .* H) * d.
    std::vector<double> filtered(static_cast<std::size_t>(na) * nb);
    {
        std::vector<double> buf(n_fft);
        std::vector<std::complex<double>> spec(n_fft / 2 + 1);
        fftw_plan fwd = fftw_plan_dft_r2c_1d(n_fft, buf.data(),
                                             reinterpret_cast<fftw_complex*>(spec.data()),
                                             FFTW_ESTIMATE);
        fftw_plan bwd = fftw_plan_dft_c2r_1d(n_fft, reinterpret_cast<fftw_complex*>(spec.data()),
                                             buf.data(), FFTW_ESTIMATE);
        for (int k = 0; k < na; ++k) {
            std::fill(buf.begin(), buf.end(), 0.0);
            const double* col = sino.data.data() + static_cast<std::size_t>(k) * nb;
            std::copy(col, col + nb, buf.begin());
            fftw_execute(fwd);
            for (int w = 0; w < n_fft / 2 + 1; ++w) spec[w] *= H[w];
            fftw_execute(bwd);
            double* out = filtered.data() + static_cast<std::size_t>(k) * nb;
            const double scale = d / n_fft; // FFTW c2r is unnormalized
            for (int t = 0; t < nb; ++t) out[t] = buf[t] * scale;
        }
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }

    const double dtheta = min_circular_gap_rad(geom.angles_deg);
    std::vector<double> cs(na), sn(na);
    for (int k = 0; k < na; ++k) {
        const double th = geom.angles_deg[k] * kPi / 180.0;
        cs[k] = std::cos(th);
        sn[k] = std::sin(th);
    }

    Image out(M);
    const double c = 0.5 * (M - 1);
    const double s_off = 0.5 * (nb - 1);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < M; ++j) {
            const double pi = i - c, pj = j - c;
            double acc = 0.0;
            for (int k = 0; k < na; ++k) {
                const double s = -pi * sn[k] + pj * cs[k];
                const double u = s / d + s_off;
                const double fl = std::floor(u);
                const int t0 = static_cast<int>(fl);
                const double f = u - fl;
                const double* q = filtered.data() + static_cast<std::size_t>(k) * nb;
                double v = 0.0;
                if (t0 >= 0 && t0 < nb) v += (1.0 - f) * q[t0];
                if (t0 + 1 >= 0 && t0 + 1 < nb) v += f * q[t0 + 1];
                acc += v;
            }
            out(i, j) = acc * dtheta;
        }
    }
    return out;
}

} // namespace dtvtomo
