#include "dtvtomo/io.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>

namespace dtvtomo {

namespace {

constexpr std::uint32_t kMaxDim = 1u << 16; // absurd-dimension guard

void put_u32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& in, const std::string& what) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) throw FormatError("truncated " + what);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f32(std::ostream& out, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32(out, bits);
}

float get_f32(std::istream& in, const std::string& what) {
    const std::uint32_t bits = get_u32(in, what);
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
}

void put_f64(std::ostream& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    put_u32(out, static_cast<std::uint32_t>(bits));
    put_u32(out, static_cast<std::uint32_t>(bits >> 32));
}

double get_f64(std::istream& in, const std::string& what) {
    const std::uint64_t lo = get_u32(in, what);
    const std::uint64_t hi = get_u32(in, what);
    const std::uint64_t bits = lo | (hi << 32);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

void expect_magic(std::istream& in, const char* magic, const std::string& what) {
    char buf[4];
    if (!in.read(buf, 4)) throw FormatError("truncated " + what + " header");
    if (std::memcmp(buf, magic, 4) != 0) throw FormatError("bad magic in " + what + " file");
}

void expect_eof(std::istream& in, const std::string& what) {
    char probe;
    if (in.read(&probe, 1)) throw FormatError(what + " file has trailing bytes");
}

} // namespace

void write_image(const std::string& path, const Image& img) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot open " + path + " for writing");
    out.write("TIM1", 4);
    put_u32(out, static_cast<std::uint32_t>(img.size()));
    for (double v : img.data()) put_f32(out, static_cast<float>(v));
    if (!out) throw FormatError("short write to " + path);
}

Image read_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    expect_magic(in, "TIM1", "image");
    const std::uint32_t m = get_u32(in, "image header");
    if (m == 0 || m > kMaxDim) throw FormatError("image dimension out of range");
    Image img(static_cast<int>(m));
    for (double& v : img.data()) v = get_f32(in, "image payload");
    expect_eof(in, "image");
    return img;
}

void write_sinogram(const std::string& path, const Sinogram& sino) {
    sino.geometry.validate();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot open " + path + " for writing");
    out.write("TSG1", 4);
    put_u32(out, static_cast<std::uint32_t>(sino.geometry.n_bins));
    put_u32(out, static_cast<std::uint32_t>(sino.geometry.n_angles()));
    put_f64(out, sino.geometry.det_spacing);
    for (double a : sino.geometry.angles_deg) put_f64(out, a);
    for (double v : sino.data) put_f32(out, static_cast<float>(v));
    if (!out) throw FormatError("short write to " + path);
}

Sinogram read_sinogram(const std::string& path, int image_size) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    expect_magic(in, "TSG1", "sinogram");
    const std::uint32_t nb = get_u32(in, "sinogram header");
    const std::uint32_t na = get_u32(in, "sinogram header");
    if (nb == 0 || nb > kMaxDim || na == 0 || na > kMaxDim)
        throw FormatError("sinogram dimensions out of range");
    Geometry geom;
    geom.n_bins = static_cast<int>(nb);
    geom.image_size = image_size > 0 ? image_size : static_cast<int>(nb);
    geom.det_spacing = get_f64(in, "sinogram header");
    geom.angles_deg.resize(na);
    for (double& a : geom.angles_deg) a = get_f64(in, "sinogram angles");
    geom.validate();
    Sinogram sino(geom);
    for (double& v : sino.data) v = get_f32(in, "sinogram payload");
    expect_eof(in, "sinogram");
    return sino;
}

void write_pgm(const std::string& path, const Image& img) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot open " + path + " for writing");
    const auto [lo_it, hi_it] = std::minmax_element(img.data().begin(), img.data().end());
    const double lo = *lo_it, hi = *hi_it;
    const double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;
    out << "P5\n" << img.size() << ' ' << img.size() << "\n255\n";
    for (double v : img.data()) {
        const int g = static_cast<int>(std::clamp((v - lo) * scale, 0.0, 255.0) + 0.5);
        out.put(static_cast<char>(std::min(g, 255)));
    }
    if (!out) throw FormatError("short write to " + path);
}

void write_manifest(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& entries) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot open " + path + " for writing");
    for (const auto& [key, value] : entries) out << key << '=' << value << '\n';
}

} // namespace dtvtomo
