#include "gapfill/frame.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>

namespace gapfill {

const char* orient_name(Orient o) {
    switch (o) {
        case Orient::coarse: return "coarse";
        case Orient::h: return "h";
        case Orient::v: return "v";
        case Orient::d: return "d";
        case Orient::seam: return "seam";
        case Orient::residual: return "residual";
    }
    return "?";
}

std::size_t CoefficientSet::count() const {
    std::size_t c = 0;
    for (const auto& b : bands) c += b.size();
    return c;
}

double CoefficientSet::l2_norm() const {
    double s = 0.0;
    for (const auto& b : bands)
        for (const auto& v : b) s += std::norm(v);
    return std::sqrt(s);
}

double CoefficientSet::l1_norm() const {
    double s = 0.0;
    for (const auto& b : bands)
        for (const auto& v : b) s += std::abs(v);
    return s;
}

std::size_t RealCoefficients::count() const {
    std::size_t c = 0;
    for (const auto& b : bands) c += b.size();
    return c;
}

double RealCoefficients::l2_norm() const {
    double s = 0.0;
    for (const auto& b : bands)
        for (double v : b) s += v * v;
    return std::sqrt(s);
}

double RealCoefficients::l1_norm() const {
    double s = 0.0;
    for (const auto& b : bands)
        for (double v : b) s += std::abs(v);
    return s;
}

HalfSpectrum real_dft(const Grid2D& g) {
    check_grid_size(g.n);
    if (!g.real) throw TypeError("real transform of a complex grid");
    const std::size_t n = g.n;
    std::vector<double> x(n * n);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = g.values[i].real();
    HalfSpectrum s;
    s.n = n;
    s.values.resize(n * (n / 2 + 1));
    r2c_2d(x.data(), s.values.data(), n, n);
    const double scale = 1.0 / static_cast<double>(n * n);
    for (auto& v : s.values) v *= scale;
    return s;
}

Grid2D real_idft(HalfSpectrum s) {
    const std::size_t n = s.n;
    std::vector<double> x(n * n);
    c2r_2d(s.values.data(), x.data(), n, n);
    Grid2D g(n, true);
    for (std::size_t i = 0; i < x.size(); ++i) g.values[i] = x[i];
    return g;
}

Frame::Frame(FrameKind kind, std::size_t n, std::vector<Band> bands)
    : kind_(kind), n_(n), bands_(std::move(bands)) {
    check_grid_size(n);
}

std::size_t Frame::coefficient_count() const {
    std::size_t c = 0;
    for (const auto& b : bands_) c += b.size();
    return c;
}

CoefficientSet Frame::analyze(const Grid2D& f) const {
    if (f.n != n_) throw ShapeError("grid size does not match frame");
    return analyze(dft(f));
}

CoefficientSet Frame::analyze(const Spectrum2D& s) const {
    return analyze(s, std::vector<std::uint8_t>(bands_.size(), 1));
}

CoefficientSet Frame::analyze(const Spectrum2D& s, const std::vector<std::uint8_t>& which) const {
    if (s.n != n_) throw ShapeError("spectrum size does not match frame");
    CoefficientSet out;
    out.bands.resize(bands_.size());
    for (std::size_t i = 0; i < bands_.size(); ++i) {
        if (!which[i]) continue;
        const Band& b = bands_[i];
        auto& a = out.bands[i];
        a.assign(b.size(), cplx(0.0, 0.0));
        for (std::size_t p = 0; p < b.freq.size(); ++p) a[b.fold[p]] = s.values[b.freq[p]] * std::conj(b.win[p]);
        fft2_inplace(a.data(), b.m1, b.m2, b.sign > 0 ? +1 : -1);
        for (auto& v : a) v *= b.norm;
    }
    return out;
}

Spectrum2D Frame::synthesize_spectrum(const CoefficientSet& c) const {
    if (c.bands.size() != bands_.size()) throw ShapeError("coefficient set has wrong band count");
    Spectrum2D s(n_);
    std::vector<cplx> tmp;
    for (std::size_t i = 0; i < bands_.size(); ++i) {
        const Band& b = bands_[i];
        if (c.bands[i].empty()) continue;
        if (c.bands[i].size() != b.size()) throw ShapeError("coefficient lattice size mismatch");
        tmp = c.bands[i];
        fft2_inplace(tmp.data(), b.m1, b.m2, b.sign > 0 ? -1 : +1);
        for (std::size_t p = 0; p < b.freq.size(); ++p) s.values[b.freq[p]] += b.win[p] * b.norm * tmp[b.fold[p]];
    }
    return s;
}

Grid2D Frame::synthesize(const CoefficientSet& c) const { return idft(synthesize_spectrum(c)); }

RealCoefficients Frame::analyze_real(const Grid2D& f) const {
    if (f.n != n_) throw ShapeError("grid size does not match frame");
    return analyze_real(real_dft(f));
}

RealCoefficients Frame::analyze_real(const HalfSpectrum& s) const {
    return analyze_real(s, std::vector<std::uint8_t>(bands_.size(), 1));
}

RealCoefficients Frame::analyze_real(const HalfSpectrum& s, const std::vector<std::uint8_t>& which) const {
    if (s.n != n_) throw ShapeError("spectrum size does not match frame");
    if (which.size() != bands_.size()) throw ShapeError("band selection has wrong length");
    RealCoefficients out;
    out.bands.resize(bands_.size());
    std::vector<cplx> work;
    for (std::size_t i = 0; i < bands_.size(); ++i)
        if (which[i]) analyze_band_real(bands_[i], s, out.bands[i], work);
    return out;
}

void analyze_band_real(const Band& b, const HalfSpectrum& s, std::vector<double>& out, std::vector<cplx>& work,
                       double shift2) {
    const std::size_t n = s.n, h2 = b.m2 / 2 + 1;
    work.assign(b.m1 * h2, cplx(0.0, 0.0));
    const double pi = std::numbers::pi;
    for (std::size_t p = 0; p < b.freq.size(); ++p) {
        const std::size_t r1 = b.fold[p] / b.m2, r2 = b.fold[p] % b.m2;
        if (r2 >= h2) continue;
        cplx v = s.at(b.freq[p]) * std::conj(b.win[p]);
        if (shift2 != 0.0) {
            const double xi2 = static_cast<double>(centered(b.freq[p] % n, n));
            v *= std::polar(1.0, -2.0 * pi * xi2 * shift2);
        }
        work[r1 * h2 + r2] = b.sign > 0 ? v : std::conj(v);
    }
    out.resize(b.size());
    c2r_2d(work.data(), out.data(), b.m1, b.m2);
    for (auto& v : out) v *= b.norm;
}

Grid2D Frame::synthesize_real(const RealCoefficients& c) const {
    if (c.bands.size() != bands_.size()) throw ShapeError("coefficient set has wrong band count");
    const std::size_t hn = n_ / 2 + 1;
    HalfSpectrum s;
    s.n = n_;
    s.values.assign(n_ * hn, cplx(0.0, 0.0));
    std::vector<cplx> half;
    for (std::size_t i = 0; i < bands_.size(); ++i) {
        const Band& b = bands_[i];
        if (c.bands[i].empty()) continue;
        if (c.bands[i].size() != b.size()) throw ShapeError("coefficient lattice size mismatch");
        const std::size_t h2 = b.m2 / 2 + 1;
        half.resize(b.m1 * h2);
        r2c_2d(c.bands[i].data(), half.data(), b.m1, b.m2);
        for (std::size_t p = 0; p < b.freq.size(); ++p) {
            const std::size_t col = b.freq[p] % n_;
            if (col >= hn) continue;
            const std::size_t r1 = b.fold[p] / b.m2, r2 = b.fold[p] % b.m2;
            cplx v = r2 < h2 ? half[r1 * h2 + r2] : std::conj(half[((b.m1 - r1) % b.m1) * h2 + (b.m2 - r2)]);
            if (b.sign < 0) v = std::conj(v);
            s.values[(b.freq[p] / n_) * hn + col] += b.win[p] * b.norm * v;
        }
    }
    return real_idft(std::move(s));
}

RealCoefficients Frame::real_zeros() const {
    RealCoefficients c;
    c.bands.resize(bands_.size());
    for (std::size_t i = 0; i < bands_.size(); ++i) c.bands[i].assign(bands_[i].size(), 0.0);
    return c;
}

std::vector<double> Frame::coverage() const {
    std::vector<double> cov(n_ * n_, 0.0);
    for (const auto& b : bands_) {
        const double w = static_cast<double>(b.size()) * b.norm * b.norm;
        for (std::size_t p = 0; p < b.freq.size(); ++p) cov[b.freq[p]] += std::norm(b.win[p]) * w;
    }
    return cov;
}

IndexMask Frame::empty_mask() const {
    IndexMask m(bands_.size());
    for (std::size_t i = 0; i < bands_.size(); ++i) m[i].assign(bands_[i].size(), 0);
    return m;
}

IndexMask Frame::full_mask() const {
    IndexMask m(bands_.size());
    for (std::size_t i = 0; i < bands_.size(); ++i) m[i].assign(bands_[i].size(), 1);
    return m;
}

CoefficientSet Frame::zeros() const {
    CoefficientSet c;
    c.bands.resize(bands_.size());
    for (std::size_t i = 0; i < bands_.size(); ++i) c.bands[i].assign(bands_[i].size(), cplx(0.0, 0.0));
    return c;
}

Spectrum2D Frame::atom_spectrum(std::size_t band, std::size_t a, std::size_t b) const {
    const Band& bd = bands_.at(band);
    if (a >= bd.m1 || b >= bd.m2) throw ArgumentError("lattice index out of range");
    CoefficientSet c;
    c.bands.resize(bands_.size());
    c.bands[band].assign(bd.size(), cplx(0.0, 0.0));
    c.bands[band][a * bd.m2 + b] = 1.0;
    return synthesize_spectrum(c);
}

Band make_band(BandKey key, std::size_t n, const std::vector<std::uint32_t>& freq,
               const std::vector<cplx>& win, std::size_t m1, std::size_t m2, double norm, int sign) {
    Band b;
    b.key = key;
    b.m1 = m1;
    b.m2 = m2;
    b.norm = norm;
    b.sign = sign;
    std::vector<std::uint8_t> used(m1 * m2, 0);
    const long l1 = static_cast<long>(m1), l2 = static_cast<long>(m2);
    b.freq.reserve(freq.size());
    b.fold.reserve(freq.size());
    b.win.reserve(freq.size());
    for (std::size_t p = 0; p < freq.size(); ++p) {
        if (win[p] == cplx(0.0, 0.0)) continue;
        const long xi1 = centered(freq[p] / n, n), xi2 = centered(freq[p] % n, n);
        const std::size_t r1 = static_cast<std::size_t>(((xi1 % l1) + l1) % l1);
        const std::size_t r2 = static_cast<std::size_t>(((xi2 % l2) + l2) % l2);
        const std::size_t slot = r1 * m2 + r2;
        if (used[slot])
            throw ScaleError(std::string("band ") + orient_name(key.orient) + " scale " +
                             std::to_string(key.scale) + " aliases under its folding lattice");
        used[slot] = 1;
        b.freq.push_back(freq[p]);
        b.fold.push_back(static_cast<std::uint32_t>(slot));
        b.win.push_back(win[p]);
    }
    return b;
}

Band make_band(BandKey key, std::size_t n, const std::vector<cplx>& window, std::size_t m1,
               std::size_t m2, double norm, int sign) {
    std::vector<std::uint32_t> freq;
    std::vector<cplx> win;
    for (std::size_t i = 0; i < n * n; ++i) {
        if (window[i] == cplx(0.0, 0.0)) continue;
        freq.push_back(static_cast<std::uint32_t>(i));
        win.push_back(window[i]);
    }
    return make_band(key, n, freq, win, m1, m2, norm, sign);
}

bool residual_band(std::size_t n, const std::vector<Band>& bands, Band& out) {
    std::vector<double> cov(n * n, 0.0);
    for (const auto& b : bands) {
        const double w = static_cast<double>(b.size()) * b.norm * b.norm;
        for (std::size_t p = 0; p < b.freq.size(); ++p) cov[b.freq[p]] += std::norm(b.win[p]) * w;
    }
    std::vector<cplx> win(n * n);
    bool any = false;
    for (std::size_t i = 0; i < n * n; ++i) {
        double r = 1.0 - cov[i];
        double v = r > 1e-15 ? std::sqrt(r) : 0.0;
        win[i] = v;
        any = any || v > 0.0;
    }
    if (!any) return false;
    out = make_band({Orient::residual, 0, 0}, n, win, n, n, 1.0 / static_cast<double>(n), +1);
    return true;
}

void dump_coefficients(const Frame& frame, const CoefficientSet& c, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path + " for writing");
    const auto& bands = frame.bands();
    if (c.bands.size() != bands.size()) throw ShapeError("coefficient set has wrong band count");
    for (std::size_t i = 0; i < bands.size(); ++i) {
        const Band& b = bands[i];
        if (frame.kind() == FrameKind::meyer)
            os << orient_name(b.key.orient) << ' ' << b.key.scale << ' ' << b.m1 << '\n';
        else
            os << orient_name(b.key.orient) << ' ' << b.key.scale << ' ' << b.key.shear << ' ' << b.m1 << ' '
               << b.m2 << '\n';
        os.write("G2D1", 4);
        const std::uint32_t m = static_cast<std::uint32_t>(b.m1);
        unsigned char hdr[5] = {static_cast<unsigned char>(m), static_cast<unsigned char>(m >> 8),
                                static_cast<unsigned char>(m >> 16), static_cast<unsigned char>(m >> 24), 1};
        os.write(reinterpret_cast<const char*>(hdr), 5);
        const auto& arr = c.bands[i].empty() ? std::vector<cplx>(b.size()) : c.bands[i];
        for (const auto& v : arr) {
            double parts[2] = {v.real(), v.imag()};
            for (double p : parts) {
                std::uint64_t bits;
                std::memcpy(&bits, &p, 8);
                unsigned char bytes[8];
                for (int k = 0; k < 8; ++k) bytes[k] = static_cast<unsigned char>(bits >> (8 * k));
                os.write(reinterpret_cast<const char*>(bytes), 8);
            }
        }
    }
    if (!os) throw IoError("write failed: " + path);
}

}  // namespace gapfill
