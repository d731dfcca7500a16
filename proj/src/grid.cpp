#include "gapfill/grid.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

namespace gapfill {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void check_grid_size(std::size_t n) {
    if (!is_pow2(n) || n < 16)
        throw SizeError("grid side must be a power of two >= 16, got " + std::to_string(n));
}

Grid2D::Grid2D(std::size_t n_, bool real_) : n(n_), real(real_) {
    check_grid_size(n);
    values.assign(n * n, cplx(0.0, 0.0));
}

double Grid2D::norm() const {
    double s = 0.0;
    for (const auto& v : values) s += std::norm(v);
    return std::sqrt(s / static_cast<double>(n * n));
}

Spectrum2D::Spectrum2D(std::size_t n_) : n(n_) {
    check_grid_size(n);
    values.assign(n * n, cplx(0.0, 0.0));
}

double Spectrum2D::norm() const {
    double s = 0.0;
    for (const auto& v : values) s += std::norm(v);
    return std::sqrt(s);
}

Spectrum2D dft(const Grid2D& g) {
    check_grid_size(g.n);
    if (g.values.size() != g.n * g.n) throw ShapeError("grid storage does not match n");
    Spectrum2D s;
    s.n = g.n;
    s.values = g.values;
    fft2_inplace(s.values.data(), g.n, g.n, -1);
    const double scale = 1.0 / static_cast<double>(g.n * g.n);
    for (auto& v : s.values) v *= scale;
    return s;
}

Grid2D idft(const Spectrum2D& s) {
    check_grid_size(s.n);
    if (s.values.size() != s.n * s.n) throw ShapeError("spectrum storage does not match n");
    Grid2D g;
    g.n = s.n;
    g.real = false;
    g.values = s.values;
    fft2_inplace(g.values.data(), s.n, s.n, +1);
    return g;
}

Grid2D real_part(Grid2D g) {
    for (auto& v : g.values) v = cplx(v.real(), 0.0);
    g.real = true;
    return g;
}

bool supported_in_corona(const Spectrum2D& s, int j) {
    const double outer = std::ldexp(1.0, 2 * j - 1);
    const double inner = std::ldexp(1.0, 2 * j - 4);
    for (std::size_t a = 0; a < s.n; ++a) {
        for (std::size_t b = 0; b < s.n; ++b) {
            if (s.values[a * s.n + b] == cplx(0.0, 0.0)) continue;
            double x1 = std::abs(static_cast<double>(centered(a, s.n)));
            double x2 = std::abs(static_cast<double>(centered(b, s.n)));
            double inf = std::max(x1, x2);
            if (inf > outer || inf <= inner) return false;
        }
    }
    return true;
}

namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

void put_f64(std::ostream& os, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(const unsigned char* p) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

}  // namespace

void write_grid(const Grid2D& g, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path + " for writing");
    os.write("G2D1", 4);
    put_u32(os, static_cast<std::uint32_t>(g.n));
    char flag = g.real ? 0 : 1;
    os.write(&flag, 1);
    for (const auto& v : g.values) {
        put_f64(os, v.real());
        if (!g.real) put_f64(os, v.imag());
    }
    if (!os) throw IoError("write failed: " + path);
}

Grid2D read_grid(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path);
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)),
                                     std::istreambuf_iterator<char>());
    if (bytes.size() < 4) throw FormatError("truncated magic", bytes.size());
    if (std::memcmp(bytes.data(), "G2D1", 4) != 0) throw FormatError("bad magic", 0);
    if (bytes.size() < 9) throw FormatError("truncated header", bytes.size());
    std::uint32_t n = static_cast<std::uint32_t>(bytes[4]) | (static_cast<std::uint32_t>(bytes[5]) << 8) |
                      (static_cast<std::uint32_t>(bytes[6]) << 16) |
                      (static_cast<std::uint32_t>(bytes[7]) << 24);
    unsigned char flag = bytes[8];
    if (flag > 1) throw FormatError("bad type flag", 8);
    if (!is_pow2(n) || n < 16) throw FormatError("bad grid size", 4);
    const std::size_t per = flag ? 16 : 8;
    const std::size_t need = 9 + static_cast<std::size_t>(n) * n * per;
    if (bytes.size() < need) throw FormatError("truncated data", bytes.size());
    if (bytes.size() > need) throw FormatError("trailing bytes", need);
    Grid2D g(n, flag == 0);
    const unsigned char* p = bytes.data() + 9;
    for (auto& v : g.values) {
        double re = get_f64(p);
        double im = flag ? get_f64(p + 8) : 0.0;
        v = cplx(re, im);
        p += per;
    }
    return g;
}

void export_pgm(const std::vector<double>& values, std::size_t width, std::size_t height, const std::string& path,
                std::optional<std::pair<double, double>> range) {
    if (values.size() != width * height) throw ShapeError("raster size does not match its dimensions");
    double lo, hi;
    if (range) {
        lo = range->first;
        hi = range->second;
    } else {
        lo = std::numeric_limits<double>::infinity();
        hi = -lo;
        for (double v : values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    std::vector<unsigned char> px(values.size());
    const double span = hi - lo;
    for (std::size_t i = 0; i < px.size(); ++i) {
        double t = span > 0 ? (values[i] - lo) / span : 0.5;
        t = std::clamp(t, 0.0, 1.0);
        px[i] = static_cast<unsigned char>(std::lround(t * 255.0));
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path + " for writing");
    os << "P5\n" << width << " " << height << "\n255\n";
    os.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
    if (!os) throw IoError("write failed: " + path);
}

void export_pgm(const Grid2D& g, const std::string& path, std::optional<std::pair<double, double>> range) {
    if (!g.real) throw TypeError("PGM export needs a real-valued grid");
    std::vector<double> v(g.values.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = g.values[i].real();
    export_pgm(v, g.n, g.n, path, range);
}

GrayImage read_pgm(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path);
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)),
                                     std::istreambuf_iterator<char>());
    std::size_t pos = 0;
    auto skip_space = [&] {
        while (pos < bytes.size()) {
            if (bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (std::isspace(bytes[pos])) {
                ++pos;
            } else {
                break;
            }
        }
    };
    auto read_int = [&] {
        skip_space();
        std::size_t start = pos;
        long v = 0;
        while (pos < bytes.size() && std::isdigit(bytes[pos])) v = v * 10 + (bytes[pos++] - '0');
        if (pos == start) throw FormatError("expected integer in PGM header", start);
        return v;
    };
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') throw FormatError("not a P5 PGM", 0);
    pos = 2;
    GrayImage img;
    img.width = static_cast<std::size_t>(read_int());
    img.height = static_cast<std::size_t>(read_int());
    img.maxval = static_cast<int>(read_int());
    if (img.maxval <= 0 || img.maxval > 65535) throw FormatError("bad maxval", pos);
    if (pos >= bytes.size() || !std::isspace(bytes[pos])) throw FormatError("bad header end", pos);
    ++pos;
    const std::size_t per = img.maxval > 255 ? 2 : 1;
    const std::size_t count = img.width * img.height;
    if (bytes.size() - pos < count * per) throw FormatError("truncated pixel data", bytes.size());
    img.pixels.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        img.pixels[i] = per == 1 ? bytes[pos + i]
                                 : static_cast<std::uint16_t>((bytes[pos + 2 * i] << 8) | bytes[pos + 2 * i + 1]);
    }
    return img;
}

}  // namespace gapfill
