#include "gapfill/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss.hpp>

#include "gapfill/errors.hpp"
#include "gapfill/meyer.hpp"
#include "gapfill/shearlet.hpp"

namespace gapfill {

namespace {

void check_members(const IndexMask& m, const Frame& frame) {
    const auto& bands = frame.bands();
    if (m.size() != bands.size()) throw ShapeError("index mask has wrong band count");
    for (std::size_t i = 0; i < bands.size(); ++i)
        if (m[i].size() != bands[i].size()) throw ShapeError("index mask lattice size mismatch");
}

void check_coeffs(const RealCoefficients& c, const IndexMask& m) {
    if (c.bands.size() != m.size()) throw ShapeError("coefficients and index mask differ in band count");
    for (std::size_t i = 0; i < m.size(); ++i)
        if (c.bands[i].size() != m[i].size()) throw ShapeError("coefficients and index mask differ in size");
}

// Masked atom as a real grid.
Grid2D masked_atom(const Frame& frame, std::size_t band, std::size_t a1, std::size_t a2, const MaskSpec& mask) {
    Grid2D g = real_part(idft(frame.atom_spectrum(band, a1, a2)));
    for (std::size_t i = 0; i < g.values.size(); ++i)
        if (mask.indicator.values[i].real() == 0.0) g.values[i] = 0.0;
    return g;
}

bool invariant_along_x2(const MaskSpec& mask) {
    const std::size_t n = mask.indicator.n;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 1; c < n; ++c)
            if (mask.indicator(r, c) != mask.indicator(r, 0)) return false;
    return true;
}

// out[k] += sum_{d=lo}^{hi} v[(k + d) mod P] for k in [0, P).
void add_cyclic_window(const std::vector<double>& v, long lo, long hi, std::vector<double>& out,
                       std::vector<double>& prefix) {
    const long P = static_cast<long>(v.size());
    const long len = hi - lo + 1;
    prefix.assign(2 * v.size() + 1, 0.0);
    for (long i = 0; i < 2 * P; ++i) prefix[i + 1] = prefix[i] + v[i % P];
    const double full = static_cast<double>(len / P) * prefix[P];
    const long rem = len % P;
    for (long k = 0; k < P; ++k) {
        const long st = (((k + lo) % P) + P) % P;
        out[k] += full + prefix[st + rem] - prefix[st];
    }
}

}  // namespace

std::size_t ClusterSet::size() const {
    std::size_t s = 0;
    for (const auto& b : members)
        for (auto v : b) s += v;
    return s;
}

double cluster_width(FrameKind kind, int j, double eps) {
    return std::exp2((kind == FrameKind::shearlet ? 2.0 : 1.0) * eps * j);
}

ClusterSet cluster_set(const Frame& frame, int j, double eps, double rho) {
    if (!(eps > 0.0)) throw ArgumentError("cluster parameter eps must be positive");
    if (frame.kind() == FrameKind::shearlet && eps >= 0.25)
        throw ArgumentError("shearlet cluster needs eps < 1/4");
    if (!(rho > 0.0)) throw ArgumentError("rho must be positive");
    ClusterSet cs;
    cs.kind = frame.kind();
    cs.j = j;
    cs.eps = eps;
    cs.rho = rho;
    const double nj = cluster_width(frame.kind(), j, eps);
    const auto& bands = frame.bands();
    cs.members.resize(bands.size());
    for (std::size_t b = 0; b < bands.size(); ++b) {
        const Band& bd = bands[b];
        auto& m = cs.members[b];
        m.assign(bd.size(), 0);
        double fine;  // lattice spacing in x2 of the uncapped system
        if (frame.kind() == FrameKind::meyer) {
            const Orient o = bd.key.orient;
            if (o != Orient::h && o != Orient::v && o != Orient::d) continue;
            if (bd.key.scale != 2 * j && bd.key.scale != 2 * j + 1) continue;
            fine = std::exp2(-bd.key.scale);
        } else {
            if (bd.key.orient != Orient::v || bd.key.scale != j || bd.key.shear != 0) continue;
            fine = std::exp2(-2.0 * j);
        }
        const double lim1 = rho * nj * static_cast<double>(bd.m1);
        const double lim2 = nj * fine * static_cast<double>(bd.m2);
        for (std::size_t a1 = 0; a1 < bd.m1; ++a1) {
            if (std::abs(static_cast<double>(centered(a1, bd.m1))) > lim1 + 1e-9) continue;
            for (std::size_t a2 = 0; a2 < bd.m2; ++a2)
                if (std::abs(static_cast<double>(centered(a2, bd.m2))) <= lim2 + 1e-9) m[a1 * bd.m2 + a2] = 1;
        }
    }
    return cs;
}

double clustered_sparsity_delta(const RealCoefficients& c, const IndexMask& members) {
    check_coeffs(c, members);
    double s = 0.0;
    for (std::size_t b = 0; b < c.bands.size(); ++b)
        for (std::size_t i = 0; i < c.bands[b].size(); ++i)
            if (!members[b][i]) s += std::abs(c.bands[b][i]);
    return s;
}

double cluster_mass(const RealCoefficients& c, const IndexMask& members) {
    check_coeffs(c, members);
    double s = 0.0;
    for (std::size_t b = 0; b < c.bands.size(); ++b)
        for (std::size_t i = 0; i < c.bands[b].size(); ++i)
            if (members[b][i]) s += std::abs(c.bands[b][i]);
    return s;
}

// For each member band, masked atoms that differ by a multiple of R lattice
// steps along x2 are translates of one another (the mask is constant along
// x2). Their analyses are shifted copies in every probe band whose x2 lattice
// the shift maps to itself; those bands take one analysis per residue mod R
// and a cyclic window sum. The remaining (coarse) probe bands are analysed
// per member from the translated spectrum.
double cluster_coherence(const IndexMask& members, const MaskSpec& mask, const Frame& frame) {
    check_members(members, frame);
    if (mask.indicator.n != frame.n()) throw ShapeError("mask size does not match frame");
    const auto& bands = frame.bands();
    const std::size_t n = frame.n();
    const bool shiftable = invariant_along_x2(mask);

    std::size_t total = 0, total_support = 0;
    for (const auto& b : bands) {
        total += b.size();
        total_support += b.freq.size();
    }
    const double full_cost = static_cast<double>(total + total_support) + 3.0 * static_cast<double>(n * n) * std::log2(n);

    std::vector<std::vector<double>> acc(bands.size());
    for (std::size_t q = 0; q < bands.size(); ++q) acc[q].assign(bands[q].size(), 0.0);

    std::vector<double> coeff, col, sums, prefix;
    std::vector<cplx> work;
    for (std::size_t b = 0; b < bands.size(); ++b) {
        const Band& bd = bands[b];
        const std::size_t m2 = bd.m2;
        std::size_t rows = 0, count = 0;
        for (std::size_t a1 = 0; a1 < bd.m1; ++a1) {
            std::size_t c = 0;
            for (std::size_t a2 = 0; a2 < m2; ++a2) c += members[b][a1 * m2 + a2];
            rows += c > 0;
            count += c;
        }
        if (count == 0) continue;

        // residue modulus R (power of two dividing m2) by a simple cost model
        std::size_t R = m2;
        if (shiftable) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t r = 1; r <= m2; r *= 2) {
                double direct = 0.0;
                for (const auto& q : bands)
                    if ((q.m2 * r) % m2 != 0) direct += static_cast<double>(q.freq.size() + 2 * q.size());
                const double per_row = static_cast<double>(std::min(r, count / rows + 1));
                const double cost = static_cast<double>(rows) * per_row * full_cost + static_cast<double>(count) * direct;
                if (cost < best) {
                    best = cost;
                    R = r;
                }
            }
        }
        const std::size_t P = m2 / R;

        for (std::size_t a1 = 0; a1 < bd.m1; ++a1) {
            for (std::size_t r = 0; r < R; ++r) {
                std::vector<long> ts;
                for (std::size_t t = 0; t < P; ++t)
                    if (members[b][a1 * m2 + r + R * t]) ts.push_back(static_cast<long>(t));
                if (ts.empty()) continue;
                const HalfSpectrum H = real_dft(masked_atom(frame, b, a1, r, mask));
                for (std::size_t q = 0; q < bands.size(); ++q) {
                    const Band& pb = bands[q];
                    auto& aq = acc[q];
                    if ((pb.m2 * R) % m2 == 0) {
                        analyze_band_real(pb, H, coeff, work);
                        for (auto& v : coeff) v = std::abs(v);
                        const std::size_t u = pb.m2 * R / m2;
                        if (u % pb.m2 == 0) {
                            const double mult = static_cast<double>(ts.size());
                            for (std::size_t i = 0; i < aq.size(); ++i) aq[i] += mult * coeff[i];
                            continue;
                        }
                        // coefficient of the member t at lattice column p2 is coeff[p2 - s u t]
                        const int s = pb.sign * bd.sign;
                        const std::size_t Pq = pb.m2 / u;
                        col.resize(Pq);
                        sums.resize(Pq);
                        for (std::size_t p1 = 0; p1 < pb.m1; ++p1) {
                            for (std::size_t c0 = 0; c0 < u; ++c0) {
                                for (std::size_t k = 0; k < Pq; ++k) col[k] = coeff[p1 * pb.m2 + c0 + u * k];
                                std::fill(sums.begin(), sums.end(), 0.0);
                                std::size_t i = 0;
                                while (i < ts.size()) {
                                    std::size_t e = i;
                                    while (e + 1 < ts.size() && ts[e + 1] == ts[e] + 1) ++e;
                                    if (s > 0)
                                        add_cyclic_window(col, -ts[e], -ts[i], sums, prefix);
                                    else
                                        add_cyclic_window(col, ts[i], ts[e], sums, prefix);
                                    i = e + 1;
                                }
                                for (std::size_t k = 0; k < Pq; ++k) aq[p1 * pb.m2 + c0 + u * k] += sums[k];
                            }
                        }
                    } else {
                        for (long t : ts) {
                            const double shift = bd.sign * static_cast<double>(R * t) / static_cast<double>(m2);
                            analyze_band_real(pb, H, coeff, work, shift);
                            for (std::size_t i = 0; i < aq.size(); ++i) aq[i] += std::abs(coeff[i]);
                        }
                    }
                }
            }
        }
    }
    double best = 0.0;
    for (const auto& a : acc)
        for (double v : a) best = std::max(best, v);
    return best;
}

double cluster_coherence_bruteforce(const IndexMask& members, const MaskSpec& mask, const Frame& frame) {
    check_members(members, frame);
    const auto& bands = frame.bands();
    std::vector<Grid2D> masked;
    for (std::size_t b = 0; b < bands.size(); ++b)
        for (std::size_t i = 0; i < bands[b].size(); ++i)
            if (members[b][i]) masked.push_back(masked_atom(frame, b, i / bands[b].m2, i % bands[b].m2, mask));
    const double nn = static_cast<double>(frame.n() * frame.n());
    double best = 0.0;
    for (std::size_t q = 0; q < bands.size(); ++q) {
        for (std::size_t p = 0; p < bands[q].size(); ++p) {
            const Grid2D probe = idft(frame.atom_spectrum(q, p / bands[q].m2, p % bands[q].m2));
            double s = 0.0;
            for (const auto& g : masked) {
                cplx ip = 0.0;
                for (std::size_t x = 0; x < g.values.size(); ++x) ip += g.values[x] * std::conj(probe.values[x]);
                s += std::abs(ip) / nn;
            }
            best = std::max(best, s);
        }
    }
    return best;
}

double concentration_estimate(const IndexMask& members, const MaskSpec& mask, const Frame& frame,
                              std::size_t n_probes, std::uint64_t seed) {
    check_members(members, frame);
    if (n_probes < 1) throw ArgumentError("need at least one probe");
    if (mask.indicator.n != frame.n()) throw ShapeError("mask size does not match frame");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double best = 0.0;
    for (std::size_t p = 0; p < n_probes; ++p) {
        for (int attempt = 0; attempt < 16; ++attempt) {
            Grid2D f(frame.n(), true);
            for (std::size_t i = 0; i < f.values.size(); ++i)
                if (mask.indicator.values[i].real() != 0.0) f.values[i] = gauss(rng);
            const RealCoefficients c = frame.analyze_real(f);
            const double total = c.l1_norm();
            if (total == 0.0) continue;  // nothing inside the mask; draw again
            best = std::max(best, cluster_mass(c, members) / total);
            break;
        }
    }
    return best;
}

BoundReport error_bounds(double delta, double mu_c, double eps_noise, double frame_norm_c,
                         double masked_cluster_mass) {
    if (!(delta >= 0.0) || !(mu_c >= 0.0) || !(eps_noise >= 0.0)) throw ArgumentError("bound inputs must be non-negative");
    BoundReport r;
    r.delta = delta;
    r.mu_c = mu_c;
    r.eps_noise = eps_noise;
    r.valid = mu_c < 0.5;
    r.bound_l1 = r.valid ? (2.0 * delta + (3.0 + 2.0 * mu_c) * eps_noise) / (1.0 - 2.0 * mu_c)
                         : std::numeric_limits<double>::infinity();
    r.bound_thresh = frame_norm_c * (masked_cluster_mass + delta + eps_noise);
    return r;
}

double frame_norm_constant(const Frame& frame, const IndexMask& members) {
    check_members(members, frame);
    double c = 0.0;
    for (std::size_t b = 0; b < members.size(); ++b) {
        if (std::none_of(members[b].begin(), members[b].end(), [](std::uint8_t v) { return v != 0; })) continue;
        const Band& bd = frame.bands()[b];
        double s = 0.0;
        for (const auto& w : bd.win) s += std::norm(w);
        c = std::max(c, bd.norm * std::sqrt(s));
    }
    return c;
}

double masked_cluster_mass(const IndexMask& T, const MaskSpec& mask, const Grid2D& x0, const Frame& frame) {
    check_members(T, frame);
    return cluster_mass(frame.analyze_real(apply_missing(x0, mask)), T);
}

int meyer_K0() {
    // int_{-K}^{K} phi = 2 int_0^{1/8} phi_hat(xi) sin(2 pi K xi) / (pi xi) dxi
    using boost::math::quadrature::gauss;
    const double pi = std::numbers::pi;
    const int panels = 64;
    const double w = 0.125 / panels;
    for (int K = 1; K < 64; ++K) {
        double s = 0.0;
        for (int p = 0; p < panels; ++p) {
            const double lo = p * w;
            s += gauss<double, 20>::integrate(
                [&](double xi) {
                    const double k = xi == 0.0 ? 2.0 * K : std::sin(2.0 * pi * K * xi) / (pi * xi);
                    return meyer_phi_hat(xi) * k;
                },
                lo, lo + w);
        }
        if (std::abs(2.0 * s) >= 0.5) return K;
    }
    throw ModelError("scaling function mass never reaches one half");
}

std::vector<ProfileEntry> decay_profile(const RealCoefficients& c, const Frame& frame, ProfileAxis axis,
                                        int scale, bool on_axis, Orient cone) {
    const auto& bands = frame.bands();
    if (c.bands.size() != bands.size()) throw ShapeError("coefficients do not match frame");
    std::vector<ProfileEntry> out;
    auto bump = [&](long idx, double v) {
        auto it = std::lower_bound(out.begin(), out.end(), idx,
                                   [](const ProfileEntry& e, long k) { return e.index < k; });
        if (it == out.end() || it->index != idx)
            out.insert(it, ProfileEntry{idx, v});
        else
            it->value = std::max(it->value, v);
    };
    for (std::size_t b = 0; b < bands.size(); ++b) {
        const Band& bd = bands[b];
        if (bd.key.scale != scale || c.bands[b].empty()) continue;
        const Orient o = bd.key.orient;
        if (frame.kind() == FrameKind::meyer) {
            if (o != Orient::h && o != Orient::v && o != Orient::d) continue;
        } else if (o != cone) {
            continue;
        }
        if (axis == ProfileAxis::shear && frame.kind() != FrameKind::shearlet)
            throw ArgumentError("shear profile needs a shearlet frame");
        for (std::size_t a1 = 0; a1 < bd.m1; ++a1) {
            const long k1 = bd.sign * centered(a1, bd.m1);
            for (std::size_t a2 = 0; a2 < bd.m2; ++a2) {
                const long k2 = bd.sign * centered(a2, bd.m2);
                const double v = std::abs(c.bands[b][a1 * bd.m2 + a2]);
                switch (axis) {
                    case ProfileAxis::k1:
                        if (!on_axis || k2 == 0) bump(k1, v);
                        break;
                    case ProfileAxis::k2:
                        if (!on_axis || k1 == 0) bump(k2, v);
                        break;
                    case ProfileAxis::shear:
                        if (!on_axis || (k1 == 0 && k2 == 0)) bump(bd.key.shear, v);
                        break;
                }
            }
        }
    }
    return out;
}

std::vector<double> uniform_grid_t(std::size_t count) {
    if (count == 0) throw ArgumentError("translation grid must not be empty");
    std::vector<double> t(count);
    for (std::size_t i = 0; i < count; ++i)
        t[i] = -0.5 + static_cast<double>(i) / static_cast<double>(count);
    return t;
}

Portrait phase_space_portrait(const Spectrum2D& f, double a, const std::vector<double>& grid_t,
                              const std::vector<double>& shears, Orient cone) {
    if (!(a > 0.0) || a > 1.0) throw ScaleError("shearlet scale a must lie in (0, 1]");
    if (0.5 / (a * a) > static_cast<double>(f.n) / 2.0 + 1e-12) throw ScaleError("scale too fine for the grid");
    if (cone != Orient::h && cone != Orient::v) throw ArgumentError("portrait cone must be h or v");
    const long half = static_cast<long>(f.n / 2);
    Portrait p;
    p.s = shears;
    p.t = grid_t;
    const std::size_t nt = grid_t.size();
    p.values.assign(shears.size() * nt, 0.0);
    const double norm = std::pow(a, 1.5);
    // only frequencies with |a^2 xi|_inf < 1/2 carry the window
    const long reach = std::min(half - 1, static_cast<long>(std::ceil(0.5 / (a * a))));
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<cplx> column(static_cast<std::size_t>(2 * reach + 1));
    for (std::size_t si = 0; si < shears.size(); ++si) {
        // t2 = 0: sum the windowed spectrum over xi2, leaving a 1D series in xi1
        for (long x1 = -reach; x1 <= reach; ++x1) {
            cplx acc = 0.0;
            for (long x2 = -reach; x2 <= reach; ++x2) {
                const cplx fv = f.at(x1, x2);
                if (fv == cplx(0.0, 0.0)) continue;
                const double w = corona_window(a * a * x1, a * a * x2);
                if (w == 0.0) continue;
                double v;
                if (cone == Orient::h)
                    v = x1 == 0 ? 0.0 : bump_V(static_cast<double>(x2) / (a * x1) - shears[si]);
                else
                    v = x2 == 0 ? 0.0 : bump_V(static_cast<double>(x1) / (a * x2) - shears[si]);
                acc += fv * (norm * w * v);
            }
            column[static_cast<std::size_t>(x1 + reach)] = acc;
        }
        for (std::size_t ti = 0; ti < nt; ++ti) {
            cplx sum = 0.0;
            for (long x1 = -reach; x1 <= reach; ++x1) {
                const cplx c = column[static_cast<std::size_t>(x1 + reach)];
                if (c == cplx(0.0, 0.0)) continue;
                sum += c * std::polar(1.0, two_pi * static_cast<double>(x1) * grid_t[ti]);
            }
            p.values[si * nt + ti] = std::abs(sum);
        }
    }
    return p;
}

Portrait phase_space_portrait(const Spectrum2D& f, double a, const std::vector<double>& shears, Orient cone) {
    return phase_space_portrait(f, a, uniform_grid_t(f.n), shears, cone);
}

void export_portrait(const Portrait& p, const std::string& path) {
    export_pgm(p.values, p.t.size(), p.s.size(), path);
}

GapEdges ridge_gap(const Portrait& masked, const Portrait& reference, std::size_t shear_row, double frac) {
    const std::size_t n = masked.t.size();
    if (reference.t != masked.t || reference.s.size() != masked.s.size()) throw ShapeError("portraits differ in shape");
    if (shear_row >= masked.s.size()) throw ArgumentError("shear row out of range");
    if (n == 0) throw ArgumentError("empty portrait");
    const double* row = masked.values.data() + shear_row * n;
    const double* ref = reference.values.data() + shear_row * n;
    auto below = [&](long i) { return row[i] < frac * ref[i]; };
    long mid = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(masked.t[i]) < std::abs(masked.t[static_cast<std::size_t>(mid)])) mid = static_cast<long>(i);
    GapEdges g;
    if (!below(mid)) {
        g.left = mid;
        g.right = mid - 1;
        g.t_left = g.t_right = masked.t[static_cast<std::size_t>(mid)];
        return g;
    }
    long l = mid, r = mid;
    while (l > 0 && below(l - 1)) --l;
    while (r + 1 < static_cast<long>(n) && below(r + 1)) ++r;
    g.left = l;
    g.right = r;
    const auto& t = masked.t;
    g.t_left = l > 0 ? 0.5 * (t[l - 1] + t[l]) : t[l];
    g.t_right = r + 1 < static_cast<long>(n) ? 0.5 * (t[r] + t[r + 1]) : t[r];
    g.width = g.t_right - g.t_left;
    return g;
}

}  // namespace gapfill
