#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gapfill/harness.hpp"

namespace gapfill {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 170, kTop = 30, kBottom = 50;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_sweep_svg(const std::vector<SweepRecord>& rows) {
    // series in order of first appearance
    std::vector<std::pair<std::string, std::string>> keys;
    std::map<std::pair<std::string, std::string>, std::vector<std::pair<int, double>>> series;
    for (const auto& r : rows) {
        if (!(r.relative_error > 0.0) || !std::isfinite(r.relative_error)) continue;
        const auto key = std::make_pair(r.frame, r.algorithm);
        if (!series.count(key)) keys.push_back(key);
        series[key].emplace_back(r.j, std::log2(r.relative_error));
    }
    int jlo = 0, jhi = 1;
    double ylo = -1, yhi = 0;
    bool any = false;
    for (const auto& [k, pts] : series) {
        for (const auto& [j, y] : pts) {
            if (!any) {
                jlo = jhi = j;
                ylo = yhi = y;
                any = true;
            }
            jlo = std::min(jlo, j);
            jhi = std::max(jhi, j);
            ylo = std::min(ylo, y);
            yhi = std::max(yhi, y);
        }
    }
    const int tick_lo = static_cast<int>(std::floor(ylo));
    int tick_hi = static_cast<int>(std::ceil(yhi));
    if (tick_hi == tick_lo) ++tick_hi;
    const double xa = jlo == jhi ? jlo - 0.5 : jlo, xb = jlo == jhi ? jhi + 0.5 : jhi;
    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto px = [&](double j) { return kLeft + (j - xa) / (xb - xa) * pw; };
    auto py = [&](double y) { return kTop + (tick_hi - y) / (tick_hi - tick_lo) * ph; };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
       << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n"
       << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int j = static_cast<int>(std::ceil(xa)); j <= static_cast<int>(std::floor(xb)); ++j) {
        const std::string x = num(px(j));
        os << "<line x1=\"" << x << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << x << "\" y2=\"" << num(kTop + ph + 5)
           << "\" stroke=\"black\"/>\n"
           << "<text class=\"xtick\" x=\"" << x << "\" y=\"" << num(kTop + ph + 20)
           << "\" text-anchor=\"middle\" font-size=\"12\">" << j << "</text>\n";
    }
    for (int k = tick_lo; k <= tick_hi; ++k) {
        const std::string y = num(py(k));
        char label[32];
        std::snprintf(label, sizeof label, "%g", std::ldexp(1.0, k));
        os << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << y << "\" x2=\"" << kLeft << "\" y2=\"" << y
           << "\" stroke=\"black\"/>\n"
           << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << num(kLeft + pw) << "\" y2=\"" << y
           << "\" stroke=\"#dddddd\"/>\n"
           << "<text class=\"ytick\" x=\"" << num(kLeft - 8) << "\" y=\"" << num(py(k) + 4)
           << "\" text-anchor=\"end\" font-size=\"12\">" << label << "</text>\n";
    }
    os << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 10)
       << "\" text-anchor=\"middle\" font-size=\"13\">level j</text>\n"
       << "<text x=\"16\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
       << num(kTop + ph / 2) << ")\">relative error (log2 scale)</text>\n";

    for (std::size_t s = 0; s < keys.size(); ++s) {
        auto pts = series[keys[s]];
        std::sort(pts.begin(), pts.end());
        const char* color = kColors[s % std::size(kColors)];
        os << "<polyline class=\"series\" data-frame=\"" << escape(keys[s].first) << "\" data-algorithm=\""
           << escape(keys[s].second) << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i)
            os << (i ? " " : "") << num(px(pts[i].first)) << ',' << num(py(pts[i].second));
        os << "\"/>\n";
        for (const auto& [j, y] : pts)
            os << "<circle cx=\"" << num(px(j)) << "\" cy=\"" << num(py(y)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        const double ly = kTop + 14 + 18.0 * static_cast<double>(s);
        const double lx = kLeft + pw + 12;
        os << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(lx + 20) << "\" y2=\""
           << num(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
           << "<text class=\"legend\" x=\"" << num(lx + 26) << "\" y=\"" << num(ly) << "\" font-size=\"12\">"
           << escape(keys[s].first) << " / " << escape(keys[s].second) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace gapfill
