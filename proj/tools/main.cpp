// dtvtomo command line: phantom generation, projection, noise, direction
// estimation, FBP / variational reconstruction, sinogram splitting and
// DTV-decomposition.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dtvtomo/decompose.hpp"
#include "dtvtomo/direction.hpp"
#include "dtvtomo/fbp.hpp"
#include "dtvtomo/io.hpp"
#include "dtvtomo/metrics.hpp"
#include "dtvtomo/phantom.hpp"
#include "dtvtomo/projector.hpp"
#include "dtvtomo/recon.hpp"
#include "dtvtomo/split.hpp"

namespace {

using namespace dtvtomo;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

/// Collects resolved parameters of one run and writes them as key=value lines.
struct Manifest {
    std::vector<std::pair<std::string, std::string>> kv;

    void add(const std::string& k, const std::string& v) { kv.emplace_back(k, v); }
    void add(const std::string& k, double v) { kv.emplace_back(k, fmt(v)); }
    void add(const std::string& k, int v) { kv.emplace_back(k, std::to_string(v)); }
    void add(const std::string& k, std::uint64_t v) { kv.emplace_back(k, std::to_string(v)); }
    void write(const std::string& path) const { write_manifest(path, kv); }
};

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

PhantomSpec::Kind parse_kind(const std::string& kind) {
    if (kind == "fibre") return PhantomSpec::Kind::fibre;
    if (kind == "fibre-crack") return PhantomSpec::Kind::fibre_crack;
    throw ParamError("unknown phantom kind: " + kind);
}

FbpFilter parse_filter(const std::string& name) {
    if (name == "ram-lak") return FbpFilter::ram_lak;
    if (name == "shepp-logan") return FbpFilter::shepp_logan;
    throw ParamError("unknown filter: " + name);
}

int nearest_angle_index(const Geometry& geom, double theta_deg) {
    int best = 0;
    double best_d = 1e300;
    for (int k = 0; k < geom.n_angles(); ++k) {
        double d = std::abs(geom.angles_deg[k] - theta_deg);
        d = std::min(d, 180.0 - d); // directions are 180-periodic
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

/// Resolves the main direction: explicit --theta wins, otherwise Algorithm-1
/// estimation from the data.
double resolve_theta(const Sinogram& sino, double theta_flag, bool theta_given) {
    if (theta_given) return theta_flag;
    const DirectionEstimate est = estimate_direction(sino);
    std::cout << "estimated main direction: " << est.theta_deg << " deg (index "
              << est.argmax_index << ")\n";
    return est.theta_deg;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot open " + path + " for writing");
    out << header << '\n';
    for (const auto& r : rows) out << r << '\n';
}

void add_phantom(CLI::App& app) {
    auto* cmd = app.add_subcommand("phantom", "Generate a fibre or fibre-crack phantom");
    cmd->set_config("--config");
    auto size = std::make_shared<int>(256);
    auto kind = std::make_shared<std::string>("fibre-crack");
    auto angle = std::make_shared<double>(20.0);
    auto stripes = std::make_shared<int>(16);
    auto cracks = std::make_shared<int>(12);
    auto crack_width = std::make_shared<double>(3.0);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto out = std::make_shared<std::string>();
    auto pgm = std::make_shared<std::string>();
    auto mask_out = std::make_shared<std::string>();
    cmd->add_option("--size", *size, "grid size M");
    cmd->add_option("--kind", *kind, "fibre | fibre-crack");
    cmd->add_option("--angle", *angle, "main direction in degrees, [0,180)");
    cmd->add_option("--stripes", *stripes, "stripe bands in the seeded profile");
    cmd->add_option("--cracks", *cracks, "number of crack bars");
    cmd->add_option("--crack-width", *crack_width, "crack bar width in pixels");
    cmd->add_option("--seed", *seed, "stripe profile seed");
    cmd->add_option("-o,--output", *out, "output image (TIM1)")->required();
    cmd->add_option("--pgm", *pgm, "also export an 8-bit PGM preview");
    cmd->add_option("--crack-mask-out", *mask_out, "write the crack mask image");
    cmd->callback([=]() {
        PhantomSpec spec;
        spec.size = *size;
        spec.kind = parse_kind(*kind);
        spec.main_angle_deg = *angle;
        spec.n_stripes = *stripes;
        spec.crack_count = *cracks;
        spec.crack_width_px = *crack_width;
        spec.seed = *seed;
        const Image img = make_phantom(spec);
        write_image(*out, img);
        if (!pgm->empty()) write_pgm(*pgm, img);
        if (!mask_out->empty()) write_image(*mask_out, make_crack_mask(spec));
        Manifest m;
        m.add("command", "phantom");
        m.add("size", *size);
        m.add("kind", *kind);
        m.add("angle", *angle);
        m.add("stripes", *stripes);
        m.add("cracks", *cracks);
        m.add("crack_width", *crack_width);
        m.add("seed", *seed);
        m.add("output", *out);
        m.write(*out + ".manifest");
    });
}

void add_project(CLI::App& app) {
    auto* cmd = app.add_subcommand("project", "Forward-project an image to a sinogram");
    cmd->set_config("--config");
    auto input = std::make_shared<std::string>();
    auto bins = std::make_shared<int>(0);
    auto nangles = std::make_shared<int>(171);
    auto spacing = std::make_shared<double>(1.0);
    auto out = std::make_shared<std::string>();
    cmd->add_option("-i,--input", *input, "input image (TIM1)")->required();
    cmd->add_option("--bins", *bins, "detector bins (default: image size)");
    cmd->add_option("--nangles", *nangles, "number of angles, equispaced on [0,180)");
    cmd->add_option("--det-spacing", *spacing, "detector bin width");
    cmd->add_option("-o,--output", *out, "output sinogram (TSG1)")->required();
    cmd->callback([=]() {
        const Image img = read_image(*input);
        const int nb = *bins > 0 ? *bins : img.size();
        const Geometry geom = Geometry::parallel(img.size(), nb, *nangles, *spacing);
        write_sinogram(*out, forward_project(img, geom));
        Manifest m;
        m.add("command", "project");
        m.add("input", *input);
        m.add("bins", nb);
        m.add("nangles", *nangles);
        m.add("det_spacing", *spacing);
        m.add("output", *out);
        m.write(*out + ".manifest");
    });
}

void add_noise(CLI::App& app) {
    auto* cmd = app.add_subcommand("noise", "Add relative Gaussian noise to a sinogram");
    cmd->set_config("--config");
    auto input = std::make_shared<std::string>();
    auto level = std::make_shared<double>(0.01);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto out = std::make_shared<std::string>();
    cmd->add_option("-i,--input", *input)->required();
    cmd->add_option("--level", *level, "relative noise level, ||e|| = level*||b||");
    cmd->add_option("--seed", *seed);
    cmd->add_option("-o,--output", *out)->required();
    cmd->callback([=]() {
        const Sinogram sino = read_sinogram(*input);
        write_sinogram(*out, add_noise(sino, NoiseSpec{*level, *seed}));
        Manifest m;
        m.add("command", "noise");
        m.add("input", *input);
        m.add("level", *level);
        m.add("seed", *seed);
        m.add("output", *out);
        m.write(*out + ".manifest");
    });
}

void add_estimate_direction(CLI::App& app) {
    auto* cmd = app.add_subcommand("estimate-direction",
                                   "Estimate the main object direction from a sinogram");
    cmd->set_config("--config");
    auto input = std::make_shared<std::string>();
    auto scores = std::make_shared<std::string>();
    auto include_dc = std::make_shared<bool>(false);
    cmd->add_option("-i,--input", *input)->required();
    cmd->add_option("--scores", *scores, "write per-angle scores CSV");
    cmd->add_flag("--include-dc", *include_dc, "keep the DC term in the magnitude sums");
    cmd->callback([=]() {
        const Sinogram sino = read_sinogram(*input);
        const DirectionEstimate est = estimate_direction(sino, *include_dc);
        std::cout << "theta_deg=" << est.theta_deg << "\nargmax_index=" << est.argmax_index
                  << "\n";
        if (!scores->empty()) {
            std::vector<std::string> rows;
            for (int k = 0; k < static_cast<int>(est.scores.size()); ++k)
                rows.push_back(fmt(sino.geometry.angles_deg[k]) + "," + fmt(est.scores[k]));
            write_csv(*scores, "angle_deg,score", rows);
        }
    });
}

void add_fbp(CLI::App& app) {
    auto* cmd = app.add_subcommand("fbp", "Filtered back-projection reconstruction");
    cmd->set_config("--config");
    auto input = std::make_shared<std::string>();
    auto size = std::make_shared<int>(0);
    auto filter = std::make_shared<std::string>("ram-lak");
    auto pad = std::make_shared<int>(2);
    auto out = std::make_shared<std::string>();
    auto ref = std::make_shared<std::string>();
    auto metrics = std::make_shared<std::string>("metrics.csv");
    auto pgm = std::make_shared<std::string>();
    cmd->add_option("-i,--input", *input)->required();
    cmd->add_option("--size", *size, "reconstruction grid (default: detector bins)");
    cmd->add_option("--filter", *filter, "ram-lak | shepp-logan");
    cmd->add_option("--pad", *pad, "FFT zero-padding multiple (1, 2 or 4)");
    cmd->add_option("-o,--output", *out)->required();
    cmd->add_option("--ref", *ref, "ground truth for a PSNR metrics row");
    cmd->add_option("--metrics", *metrics, "metrics CSV to append to");
    cmd->add_option("--pgm", *pgm);
    cmd->callback([=]() {
        Timer timer;
        const Sinogram sino = read_sinogram(*input, *size);
        FbpConfig cfg;
        cfg.filter = parse_filter(*filter);
        cfg.pad_factor = *pad;
        const Image rec = fbp_reconstruct(sino, cfg);
        write_image(*out, rec);
        if (!pgm->empty()) write_pgm(*pgm, rec);
        if (!ref->empty()) {
            MetricRow row;
            row.method = "fbp";
            row.params = "filter=" + *filter + ";pad=" + std::to_string(*pad);
            row.psnr_db = psnr(rec, read_image(*ref));
            row.iterations = 0;
            row.wall_seconds = timer.seconds();
            append_metric_row(*metrics, row);
        }
        Manifest m;
        m.add("command", "fbp");
        m.add("input", *input);
        m.add("filter", *filter);
        m.add("pad", *pad);
        m.add("output", *out);
        m.write(*out + ".manifest");
    });
}

void add_reconstruct(CLI::App& app) {
    auto* cmd = app.add_subcommand("reconstruct", "Variational reconstruction (TV or DTV)");
    cmd->set_config("--config");
    auto input = std::make_shared<std::string>();
    auto size = std::make_shared<int>(0);
    auto reg = std::make_shared<std::string>("tv");
    auto lambda = std::make_shared<double>(0.004);
    auto theta = std::make_shared<double>(0.0);
    auto width = std::make_shared<double>(0.15);
    auto l1 = std::make_shared<double>(0.0);
    auto nonneg = std::make_shared<bool>(false);
    auto tol = std::make_shared<double>(1e-5);
    auto max_iters = std::make_shared<int>(5000);
    auto out = std::make_shared<std::string>();
    auto ref = std::make_shared<std::string>();
    auto metrics = std::make_shared<std::string>("metrics.csv");
    auto pgm = std::make_shared<std::string>();
    cmd->add_option("-i,--input", *input)->required();
    cmd->add_option("--size", *size, "reconstruction grid (default: detector bins)");
    cmd->add_option("--reg", *reg, "tv | dtv");
    cmd->add_option("--lambda", *lambda, "regularization weight");
    auto* theta_opt = cmd->add_option("--theta", *theta, "DTV main direction (default: estimated)");
    cmd->add_option("--a", *width, "DTV width parameter");
    cmd->add_option("--l1", *l1, "additional l1 weight");
    cmd->add_flag("--nonneg", *nonneg, "constrain pixels to be nonnegative");
    cmd->add_option("--tol", *tol, "relative objective-change tolerance");
    cmd->add_option("--max-iters", *max_iters);
    cmd->add_option("-o,--output", *out)->required();
    cmd->add_option("--ref", *ref, "ground truth for a PSNR metrics row");
    cmd->add_option("--metrics", *metrics);
    cmd->add_option("--pgm", *pgm);
    cmd->callback([=]() {
        Timer timer;
        const Sinogram sino = read_sinogram(*input, *size);
        ReconParams params;
        if (*reg == "tv")
            params.reg = Regularizer::tv;
        else if (*reg == "dtv")
            params.reg = Regularizer::dtv;
        else
            throw ParamError("unknown regularizer: " + *reg);
        params.lambda = *lambda;
        params.l1_weight = *l1;
        params.nonneg = *nonneg;
        double theta_used = 0.0;
        if (params.reg == Regularizer::dtv) {
            theta_used = resolve_theta(sino, *theta, theta_opt->count() > 0);
            params.dtv_params = DtvParams{theta_used, *width};
        }
        SolveConfig cfg;
        cfg.tol = *tol;
        cfg.max_iters = *max_iters;
        auto [rec, report] = reconstruct(sino, params, cfg);
        write_image(*out, rec);
        if (!pgm->empty()) write_pgm(*pgm, rec);
        std::cout << "iterations=" << report.iterations << " objective=" << report.objective
                  << " converged=" << (report.converged ? "yes" : "no") << "\n";
        if (!ref->empty()) {
            MetricRow row;
            row.method = *reg;
            row.params = "lambda=" + fmt(*lambda) +
                         (params.reg == Regularizer::dtv
                              ? ";theta=" + fmt(theta_used) + ";a=" + fmt(*width)
                              : std::string());
            row.psnr_db = psnr(rec, read_image(*ref));
            row.iterations = report.iterations;
            row.wall_seconds = timer.seconds();
            append_metric_row(*metrics, row);
        }
        Manifest m;
        m.add("command", "reconstruct");
        m.add("input", *input);
        m.add("reg", *reg);
        m.add("lambda", *lambda);
        if (params.reg == Regularizer::dtv) {
            m.add("theta", theta_used);
            m.add("a", *width);
        }
        m.add("l1", *l1);
        m.add("nonneg", *nonneg ? 1 : 0);
        m.add("tol", *tol);
        m.add("max_iters", *max_iters);
        m.add("output", *out);
        m.write(*out + ".manifest");
    });
}

void add_split(CLI::App& app) {
    auto* cmd = app.add_subcommand("split", "Sinogram-splitting decomposition");
    cmd->set_config("--config");
    auto input = std::make_shared<std::string>();
    auto size = std::make_shared<int>(0);
    auto K = std::make_shared<int>(10);
    auto method = std::make_shared<std::string>("variational");
    auto theta = std::make_shared<double>(0.0);
    auto lambda_u = std::make_shared<double>(0.002);
    auto lambda_v = std::make_shared<double>(0.002);
    auto beta = std::make_shared<double>(1e-4);
    auto width = std::make_shared<double>(0.15);
    auto filter = std::make_shared<std::string>("ram-lak");
    auto pad = std::make_shared<int>(2);
    auto tol = std::make_shared<double>(1e-5);
    auto max_iters = std::make_shared<int>(5000);
    auto prefix = std::make_shared<std::string>();
    cmd->add_option("-i,--input", *input)->required();
    cmd->add_option("--size", *size);
    cmd->add_option("--K", *K, "range-width index: part 1 gets K+1 angles");
    cmd->add_option("--method", *method, "fbp | variational");
    auto* theta_opt = cmd->add_option("--theta", *theta, "main direction (default: estimated)");
    cmd->add_option("--lambda-u", *lambda_u);
    cmd->add_option("--lambda-v", *lambda_v);
    cmd->add_option("--beta", *beta, "l1 weight on the crack component");
    cmd->add_option("--a", *width, "DTV width of the fibre component");
    cmd->add_option("--filter", *filter);
    cmd->add_option("--pad", *pad);
    cmd->add_option("--tol", *tol);
    cmd->add_option("--max-iters", *max_iters);
    cmd->add_option("--prefix", *prefix, "output prefix: writes <prefix>_u.tim, <prefix>_v.tim")
        ->required();
    cmd->callback([=]() {
        const Sinogram sino = read_sinogram(*input, *size);
        const double theta_used = resolve_theta(sino, *theta, theta_opt->count() > 0);
        SplitSpec spec;
        spec.main_index = nearest_angle_index(sino.geometry, theta_used);
        spec.K = *K;
        SplitResult result;
        if (*method == "fbp") {
            FbpConfig cfg;
            cfg.filter = parse_filter(*filter);
            cfg.pad_factor = *pad;
            result = split_fbp(sino, spec, cfg);
        } else if (*method == "variational") {
            SplitParams params;
            params.lambda_u = *lambda_u;
            params.lambda_v = *lambda_v;
            params.beta = *beta;
            params.dtv_u = DtvParams{theta_used, *width};
            SolveConfig cfg;
            cfg.tol = *tol;
            cfg.max_iters = *max_iters;
            result = split_variational(sino, spec, params, cfg);
            std::cout << "fibre-component:  iterations=" << result.report_u.iterations
                      << " converged=" << (result.report_u.converged ? "yes" : "no") << "\n";
            std::cout << "crack-component:  iterations=" << result.report_v.iterations
                      << " converged=" << (result.report_v.converged ? "yes" : "no") << "\n";
        } else {
            throw ParamError("unknown split method: " + *method);
        }
        write_image(*prefix + "_u.tim", result.u);
        write_image(*prefix + "_v.tim", result.v);
        Manifest m;
        m.add("command", "split");
        m.add("input", *input);
        m.add("K", *K);
        m.add("method", *method);
        m.add("theta", theta_used);
        m.add("main_index", spec.main_index);
        if (*method == "variational") {
            m.add("lambda_u", *lambda_u);
            m.add("lambda_v", *lambda_v);
            m.add("beta", *beta);
            m.add("a", *width);
        } else {
            m.add("filter", *filter);
            m.add("pad", *pad);
        }
        m.add("prefix", *prefix);
        m.write(*prefix + ".manifest");
    });
}

void add_decompose(CLI::App& app) {
    auto* cmd = app.add_subcommand("decompose", "DTV-decomposition (joint fibre/crack model)");
    cmd->set_config("--config");
    auto input = std::make_shared<std::string>();
    auto size = std::make_shared<int>(0);
    auto lambda = std::make_shared<double>(0.0038);
    auto alpha = std::make_shared<double>(0.7);
    auto beta = std::make_shared<double>(1e-4);
    auto a_u = std::make_shared<double>(0.15);
    auto a_v = std::make_shared<double>(0.5);
    auto theta = std::make_shared<double>(0.0);
    auto tol = std::make_shared<double>(1e-5);
    auto max_iters = std::make_shared<int>(5000);
    auto prefix = std::make_shared<std::string>();
    auto ref = std::make_shared<std::string>();
    auto metrics = std::make_shared<std::string>("metrics.csv");
    cmd->add_option("-i,--input", *input)->required();
    cmd->add_option("--size", *size);
    cmd->add_option("--lambda", *lambda);
    cmd->add_option("--alpha", *alpha, "DTV balance, a_u < alpha < 1/a_v");
    cmd->add_option("--beta", *beta, "crack sparsity weight");
    cmd->add_option("--a-u", *a_u);
    cmd->add_option("--a-v", *a_v);
    auto* theta_opt = cmd->add_option("--theta", *theta, "main direction (default: estimated)");
    cmd->add_option("--tol", *tol);
    cmd->add_option("--max-iters", *max_iters);
    cmd->add_option("--prefix", *prefix,
                    "output prefix: writes <prefix>_u.tim, <prefix>_v.tim, <prefix>_sum.tim")
        ->required();
    cmd->add_option("--ref", *ref, "ground truth for a PSNR metrics row");
    cmd->add_option("--metrics", *metrics);
    cmd->callback([=]() {
        Timer timer;
        const Sinogram sino = read_sinogram(*input, *size);
        DecompParams params;
        params.lambda = *lambda;
        params.alpha = *alpha;
        params.beta = *beta;
        params.a_u = *a_u;
        params.a_v = *a_v;
        params.theta_deg = resolve_theta(sino, *theta, theta_opt->count() > 0);
        SolveConfig cfg;
        cfg.tol = *tol;
        cfg.max_iters = *max_iters;
        const DecompResult result = decompose(sino, params, cfg);
        write_image(*prefix + "_u.tim", result.u);
        write_image(*prefix + "_v.tim", result.v);
        write_image(*prefix + "_sum.tim", result.u + result.v);
        std::cout << "iterations=" << result.report.iterations
                  << " objective=" << result.report.objective
                  << " converged=" << (result.report.converged ? "yes" : "no") << "\n";
        if (!ref->empty()) {
            MetricRow row;
            row.method = "decompose";
            row.params = "lambda=" + fmt(*lambda) + ";alpha=" + fmt(*alpha) +
                         ";beta=" + fmt(*beta);
            row.psnr_db = psnr(result.u + result.v, read_image(*ref));
            row.iterations = result.report.iterations;
            row.wall_seconds = timer.seconds();
            append_metric_row(*metrics, row);
        }
        Manifest m;
        m.add("command", "decompose");
        m.add("input", *input);
        m.add("lambda", *lambda);
        m.add("alpha", *alpha);
        m.add("beta", *beta);
        m.add("a_u", *a_u);
        m.add("a_v", *a_v);
        m.add("theta", params.theta_deg);
        m.add("tol", *tol);
        m.add("max_iters", *max_iters);
        m.add("prefix", *prefix);
        m.write(*prefix + ".manifest");
    });
}

void add_sweep_alpha(CLI::App& app) {
    auto* cmd = app.add_subcommand("sweep-alpha", "DTV balance parameter sweep");
    cmd->set_config("--config");
    auto input = std::make_shared<std::string>();
    auto size = std::make_shared<int>(0);
    auto lambda = std::make_shared<double>(0.0038);
    auto a_u = std::make_shared<double>(0.15);
    auto a_v = std::make_shared<double>(0.5);
    auto theta = std::make_shared<double>(0.0);
    auto alphas = std::make_shared<std::vector<double>>();
    auto ref = std::make_shared<std::string>();
    auto mask = std::make_shared<std::string>();
    auto tol = std::make_shared<double>(1e-5);
    auto max_iters = std::make_shared<int>(5000);
    auto out = std::make_shared<std::string>();
    cmd->add_option("-i,--input", *input)->required();
    cmd->add_option("--size", *size);
    cmd->add_option("--lambda", *lambda);
    cmd->add_option("--a-u", *a_u);
    cmd->add_option("--a-v", *a_v);
    auto* theta_opt = cmd->add_option("--theta", *theta);
    cmd->add_option("--alphas", *alphas, "alpha values to test")->required()->delimiter(',');
    cmd->add_option("--ref", *ref, "ground truth image")->required();
    cmd->add_option("--mask", *mask, "crack mask image")->required();
    cmd->add_option("--tol", *tol);
    cmd->add_option("--max-iters", *max_iters);
    cmd->add_option("-o,--output", *out, "output CSV")->required();
    cmd->callback([=]() {
        const Sinogram sino = read_sinogram(*input, *size);
        DecompParams params;
        params.lambda = *lambda;
        params.a_u = *a_u;
        params.a_v = *a_v;
        params.beta = 1e-6; // alpha_sweep pins beta anyway
        params.alpha = 0.5 * (*a_u + 1.0 / *a_v);
        params.theta_deg = resolve_theta(sino, *theta, theta_opt->count() > 0);
        SolveConfig cfg;
        cfg.tol = *tol;
        cfg.max_iters = *max_iters;
        const auto rows = alpha_sweep(sino, params, *alphas, read_image(*ref),
                                      read_image(*mask), cfg);
        std::vector<std::string> lines;
        for (const auto& r : rows)
            lines.push_back(fmt(r.alpha) + "," + fmt6(r.psnr_db) + "," + fmt6(r.crack_capture) +
                            "," + std::to_string(r.iterations));
        write_csv(*out, "alpha,psnr_db,crack_capture,iterations", lines);
        Manifest m;
        m.add("command", "sweep-alpha");
        m.add("input", *input);
        m.add("lambda", *lambda);
        m.add("theta", params.theta_deg);
        m.add("output", *out);
        m.write(*out + ".manifest");
    });
}

void add_sweep_K(CLI::App& app) {
    auto* cmd = app.add_subcommand("sweep-K", "Range-width sweep for sinogram splitting");
    cmd->set_config("--config");
    auto input = std::make_shared<std::string>();
    auto size = std::make_shared<int>(0);
    auto Ks = std::make_shared<std::vector<int>>();
    auto theta = std::make_shared<double>(0.0);
    auto lambda_u = std::make_shared<double>(0.002);
    auto lambda_v = std::make_shared<double>(0.002);
    auto beta = std::make_shared<double>(1e-4);
    auto width = std::make_shared<double>(0.15);
    auto mask = std::make_shared<std::string>();
    auto tol = std::make_shared<double>(1e-5);
    auto max_iters = std::make_shared<int>(5000);
    auto out = std::make_shared<std::string>();
    cmd->add_option("-i,--input", *input)->required();
    cmd->add_option("--size", *size);
    cmd->add_option("--Ks", *Ks, "K values to test")->required()->delimiter(',');
    auto* theta_opt = cmd->add_option("--theta", *theta);
    cmd->add_option("--lambda-u", *lambda_u);
    cmd->add_option("--lambda-v", *lambda_v);
    cmd->add_option("--beta", *beta);
    cmd->add_option("--a", *width);
    cmd->add_option("--mask", *mask, "crack mask image")->required();
    cmd->add_option("--tol", *tol);
    cmd->add_option("--max-iters", *max_iters);
    cmd->add_option("-o,--output", *out, "output CSV")->required();
    cmd->callback([=]() {
        const Sinogram sino = read_sinogram(*input, *size);
        const double theta_used = resolve_theta(sino, *theta, theta_opt->count() > 0);
        const Image crack_mask = read_image(*mask);
        SolveConfig cfg;
        cfg.tol = *tol;
        cfg.max_iters = *max_iters;
        std::vector<std::string> lines;
        for (int K : *Ks) {
            SplitSpec spec;
            spec.main_index = nearest_angle_index(sino.geometry, theta_used);
            spec.K = K;
            SplitParams params;
            params.lambda_u = *lambda_u;
            params.lambda_v = *lambda_v;
            params.beta = *beta;
            params.dtv_u = DtvParams{theta_used, *width};
            const SplitResult res = split_variational(sino, spec, params, cfg);
            lines.push_back(std::to_string(K) + "," + fmt6(crack_dip_depth(res.u, crack_mask)) +
                            "," + fmt6(crack_dip_ratio(res.v, crack_mask)) + "," +
                            std::to_string(res.report_u.iterations) + "," +
                            std::to_string(res.report_v.iterations));
        }
        write_csv(*out, "K,crack_depth_u,crack_dip_ratio_v,iterations_u,iterations_v", lines);
        Manifest m;
        m.add("command", "sweep-K");
        m.add("input", *input);
        m.add("theta", theta_used);
        m.add("output", *out);
        m.write(*out + ".manifest");
    });
}

void add_sweep_noise(CLI::App& app) {
    auto* cmd = app.add_subcommand("sweep-noise",
                                   "Direction-estimation noise robustness table");
    cmd->set_config("--config");
    auto size = std::make_shared<int>(256);
    auto angle = std::make_shared<double>(20.0);
    auto stripes = std::make_shared<int>(16);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto bins = std::make_shared<int>(256);
    auto nangles = std::make_shared<int>(171);
    auto levels = std::make_shared<std::vector<double>>(
        std::vector<double>{0.0, 0.01, 0.03, 0.05, 0.10, 0.20, 0.30, 0.40});
    auto runs = std::make_shared<int>(1);
    auto out = std::make_shared<std::string>();
    cmd->add_option("--size", *size);
    cmd->add_option("--angle", *angle, "true fibre direction");
    cmd->add_option("--stripes", *stripes);
    cmd->add_option("--seed", *seed, "phantom seed; noise seeds derive from it");
    cmd->add_option("--bins", *bins);
    cmd->add_option("--nangles", *nangles);
    cmd->add_option("--levels", *levels, "noise levels")->delimiter(',');
    cmd->add_option("--runs", *runs, "seeded repetitions per level");
    cmd->add_option("-o,--output", *out, "output CSV")->required();
    cmd->callback([=]() {
        PhantomSpec spec;
        spec.size = *size;
        spec.kind = PhantomSpec::Kind::fibre;
        spec.main_angle_deg = *angle;
        spec.n_stripes = *stripes;
        spec.seed = *seed;
        const Image img = make_phantom(spec);
        const Geometry geom = Geometry::parallel(*size, *bins, *nangles);
        const Sinogram clean = forward_project(img, geom);
        std::vector<std::string> lines;
        for (std::size_t li = 0; li < levels->size(); ++li) {
            for (int run = 0; run < *runs; ++run) {
                NoiseSpec noise;
                noise.level = (*levels)[li];
                noise.seed = *seed + 131 * static_cast<std::uint64_t>(li) + run;
                const DirectionEstimate est = estimate_direction(add_noise(clean, noise));
                lines.push_back(fmt((*levels)[li]) + "," + std::to_string(run) + "," +
                                fmt(est.theta_deg));
            }
        }
        write_csv(*out, "eta,run,theta_est_deg", lines);
        Manifest m;
        m.add("command", "sweep-noise");
        m.add("size", *size);
        m.add("angle", *angle);
        m.add("stripes", *stripes);
        m.add("seed", *seed);
        m.add("bins", *bins);
        m.add("nangles", *nangles);
        m.add("runs", *runs);
        m.add("output", *out);
        m.write(*out + ".manifest");
    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Directional-TV tomography: reconstruction and fibre/crack decomposition"};
    app.require_subcommand(1);
    add_phantom(app);
    add_project(app);
    add_noise(app);
    add_estimate_direction(app);
    add_fbp(app);
    add_reconstruct(app);
    add_split(app);
    add_decompose(app);
    add_sweep_alpha(app);
    add_sweep_K(app);
    add_sweep_noise(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const dtvtomo::FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 3;
    } catch (const dtvtomo::ParamError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const dtvtomo::DivergenceError& e) {
        std::cerr << "divergence at iteration " << e.iteration << ": " << e.what() << "\n";
        return 4;
    } catch (const dtvtomo::DimensionError& e) {
        std::cerr << "dimension error: " << e.what() << "\n";
        return 4;
    } catch (const dtvtomo::EmptyDataError& e) {
        std::cerr << "empty data: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
