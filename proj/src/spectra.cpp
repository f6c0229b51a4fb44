#include "pitfdtd/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace pit {

void Spectrum::validate() const {
    if (wavelengths_nm.size() != values.size()) throw analysis_error("spectrum length mismatch");
    if (wavelengths_nm.size() < 2) throw analysis_error("spectrum needs at least 2 samples");
    for (size_t i = 1; i < wavelengths_nm.size(); ++i)
        if (wavelengths_nm[i] <= wavelengths_nm[i - 1])
            throw analysis_error("spectrum wavelengths must ascend");
    for (double v : values)
        if (!std::isfinite(v)) throw analysis_error("non-finite spectrum value");
}

Spectrum transmission(const Spectrum& run_flux, const Spectrum& reference_flux) {
    run_flux.validate();
    reference_flux.validate();
    if (run_flux.wavelengths_nm != reference_flux.wavelengths_nm)
        throw analysis_error("transmission requires identical frequency grids");
    double ref_peak = 0;
    for (double v : reference_flux.values) ref_peak = std::max(ref_peak, std::abs(v));
    Spectrum t;
    t.kind = Spectrum::Kind::transmission;
    t.wavelengths_nm = run_flux.wavelengths_nm;
    t.values.resize(run_flux.values.size());
    for (size_t i = 0; i < t.values.size(); ++i) {
        const double ref = reference_flux.values[i];
        if (!(std::abs(ref) > 1e-12 * ref_peak) || ref_peak == 0)
            throw analysis_error("reference flux vanishes at " +
                                 std::to_string(run_flux.wavelengths_nm[i]) + " nm");
        t.values[i] = run_flux.values[i] / ref;
    }
    return t;
}

double default_prominence(const Spectrum& s) {
    const auto [lo, hi] = std::minmax_element(s.values.begin(), s.values.end());
    return 0.05 * (*hi - *lo);
}

namespace {

// Classic peak prominence: drop from the peak to the higher of the two lowest
// saddles separating it from higher ground (or from the series ends).
double prominence_at(const std::vector<double>& v, size_t i) {
    double lmin = v[i];
    for (size_t l = i; l-- > 0;) {
        lmin = std::min(lmin, v[l]);
        if (v[l] > v[i]) break;
    }
    double rmin = v[i];
    for (size_t r = i + 1; r < v.size(); ++r) {
        rmin = std::min(rmin, v[r]);
        if (v[r] > v[i]) break;
    }
    return v[i] - std::max(lmin, rmin);
}

double refine_quadratic(const Spectrum& s, size_t i) {
    const double x1 = s.wavelengths_nm[i - 1] - s.wavelengths_nm[i];
    const double x3 = s.wavelengths_nm[i + 1] - s.wavelengths_nm[i];
    const double y1 = s.values[i - 1] - s.values[i];
    const double y3 = s.values[i + 1] - s.values[i];
    // Parabola y = a x^2 + b x through (x1,y1), (0,0), (x3,y3); vertex at -b/2a.
    const double det = x1 * x1 * x3 - x3 * x3 * x1;
    if (det == 0) return s.wavelengths_nm[i];
    const double a = (y1 * x3 - y3 * x1) / det;
    const double b = (y3 * x1 * x1 - y1 * x3 * x3) / det;
    if (a == 0) return s.wavelengths_nm[i];
    const double dx = -b / (2 * a);
    // Keep the vertex inside the bracketing interval.
    return s.wavelengths_nm[i] + std::clamp(dx, x1, x3);
}

double half_prominence_width(const Spectrum& s, size_t i, double prom) {
    const double level = s.values[i] - prom / 2;
    double left = s.wavelengths_nm.front();
    for (size_t l = i; l-- > 0;) {
        if (s.values[l] <= level) {
            const double f = (s.values[l + 1] - level) / (s.values[l + 1] - s.values[l]);
            left = s.wavelengths_nm[l + 1] + f * (s.wavelengths_nm[l] - s.wavelengths_nm[l + 1]);
            break;
        }
    }
    double right = s.wavelengths_nm.back();
    for (size_t r = i + 1; r < s.values.size(); ++r) {
        if (s.values[r] <= level) {
            const double f = (s.values[r - 1] - level) / (s.values[r - 1] - s.values[r]);
            right = s.wavelengths_nm[r - 1] + f * (s.wavelengths_nm[r] - s.wavelengths_nm[r - 1]);
            break;
        }
    }
    return right - left;
}

void collect(const Spectrum& s, double threshold, ResonanceFeature::Kind kind,
             std::vector<ResonanceFeature>& out) {
    const size_t n = s.values.size();
    for (size_t i = 1; i + 1 < n; ++i) {
        if (!(s.values[i] > s.values[i - 1] && s.values[i] >= s.values[i + 1])) continue;
        const double prom = prominence_at(s.values, i);
        if (prom < threshold) continue;
        ResonanceFeature f;
        f.kind = kind;
        f.prominence = prom;
        f.wavelength_nm = refine_quadratic(s, i);
        f.width_nm = half_prominence_width(s, i, prom);
        out.push_back(f);
    }
}

} // namespace

std::vector<ResonanceFeature> find_extrema(const Spectrum& s, double prominence_threshold) {
    s.validate();
    if (s.values.size() < 5) throw analysis_error("find_extrema needs at least 5 samples");
    std::vector<ResonanceFeature> out;
    collect(s, prominence_threshold, ResonanceFeature::Kind::peak, out);
    Spectrum neg = s;
    for (double& v : neg.values) v = -v;
    collect(neg, prominence_threshold, ResonanceFeature::Kind::dip, out);
    std::sort(out.begin(), out.end(),
              [](const ResonanceFeature& a, const ResonanceFeature& b) {
                  return a.wavelength_nm < b.wavelength_nm;
              });
    return out;
}

BranchResult sweep_branches(const std::vector<SweepPoint>& points) {
    if (points.size() < 3) throw analysis_error("branch tracking needs at least 3 sweep points");
    std::vector<SweepPoint> pts = points;
    std::sort(pts.begin(), pts.end(),
              [](const SweepPoint& a, const SweepPoint& b) { return a.delta_nm < b.delta_nm; });
    for (const SweepPoint& p : pts) {
        if (p.features.empty())
            throw analysis_error("no resonance found at delta=" + std::to_string(p.delta_nm) + " nm");
        if (p.features.size() > 2)
            throw analysis_error("ambiguous sweep: more than two resonances at delta=" +
                                 std::to_string(p.delta_nm) + " nm");
    }

    BranchResult br;
    const auto wavelengths = [](const SweepPoint& p) {
        double lo = p.features.front().wavelength_nm;
        double hi = p.features.back().wavelength_nm;
        if (lo > hi) std::swap(lo, hi);
        return std::pair<double, double>(lo, hi);
    };
    auto [b1, b2] = wavelengths(pts.front());
    for (const SweepPoint& p : pts) {
        const auto [lo, hi] = wavelengths(p);
        // Nearest-wavelength continuation; ties keep branch 1 on the lower
        // wavelength so the assignment is sweep-direction independent.
        const double keep = std::abs(lo - b1) + std::abs(hi - b2);
        const double swap = std::abs(hi - b1) + std::abs(lo - b2);
        if (swap < keep) {
            b1 = hi;
            b2 = lo;
        } else {
            b1 = lo;
            b2 = hi;
        }
        br.deltas_nm.push_back(p.delta_nm);
        br.branch1_nm.push_back(b1);
        br.branch2_nm.push_back(b2);
    }

    br.min_separation_nm = std::numeric_limits<double>::infinity();
    size_t min_at = 0;
    for (size_t i = 0; i < br.deltas_nm.size(); ++i) {
        const double sep = std::abs(br.branch1_nm[i] - br.branch2_nm[i]);
        if (sep < br.min_separation_nm) {
            br.min_separation_nm = sep;
            min_at = i;
        }
    }
    br.crossing_delta_nm = br.deltas_nm[min_at];
    // Exact degeneracy can persist over several sweep points when a single
    // merged resonance is all the spectra resolve. The crossing estimate is
    // then the centre of that plateau; reporting an endpoint would bias the
    // answer toward whichever side happens to be sampled more densely.
    double zero_sum = 0;
    int zero_count = 0;
    for (size_t i = 0; i < br.deltas_nm.size(); ++i) {
        if (br.branch1_nm[i] == br.branch2_nm[i]) {
            zero_sum += br.deltas_nm[i];
            ++zero_count;
        }
    }
    if (zero_count > 0) {
        br.crossed = true;
        br.crossing_delta_nm = zero_sum / zero_count;
        return br;
    }
    for (size_t i = 0; i + 1 < br.deltas_nm.size(); ++i) {
        const double s0 = br.branch1_nm[i] - br.branch2_nm[i];
        const double s1 = br.branch1_nm[i + 1] - br.branch2_nm[i + 1];
        if (s0 * s1 < 0) {
            br.crossed = true;
            const double f = std::abs(s0) / (std::abs(s0) + std::abs(s1));
            br.crossing_delta_nm = br.deltas_nm[i] + f * (br.deltas_nm[i + 1] - br.deltas_nm[i]);
            break;
        }
    }
    return br;
}

double field_symmetry_score(const std::vector<std::complex<double>>& phasors, const GridSpec& g,
                            int k_plane, const UnitCellParams& geom) {
    const int my = g.my();
    if (phasors.size() != static_cast<size_t>(g.mx()) * my)
        throw config_error("field map size does not match grid plane");
    const double offset = 10e-9; // window center beyond the end facet
    const double ya = -(geom.u / 2 + geom.w2 / 2);
    const double a_minus = -geom.l2 / 2 - geom.delta / 2;
    const double a_plus = geom.l2 / 2 - geom.delta / 2;

    // Snap the two strip-A windows (E_y stagger: x on integer nodes, y on
    // half nodes); strip-B windows follow by exact index inversion so paired
    // samples sit at exactly mirrored positions.
    const auto snap_i = [&](double x) { return static_cast<int>(std::lround((x - g.origin[0]) / g.dx)); };
    const auto snap_j = [&](double y) {
        return static_cast<int>(std::lround((y - g.origin[1]) / g.dy - 0.5));
    };
    const long two_ox = std::lround(2 * g.origin[0] / g.dx);
    const long two_oy = std::lround(2 * g.origin[1] / g.dy);
    if (std::abs(2 * g.origin[0] / g.dx - two_ox) > 1e-9 || std::abs(2 * g.origin[1] / g.dy - two_oy) > 1e-9)
        throw config_error("map grid origin is not aligned for inversion pairing");
    const auto inv_i = [&](int i) { return static_cast<int>(-i - two_ox); };
    const auto inv_j = [&](int j) { return static_cast<int>(-j - 1 - two_oy); };

    struct Window {
        int ic, jc;
    };
    const Window wa_minus{snap_i(a_minus - offset), snap_j(ya)};
    const Window wa_plus{snap_i(a_plus + offset), snap_j(ya)};
    const Window wb_plus{inv_i(wa_minus.ic), inv_j(wa_minus.jc)}; // pairs with A-
    const Window wb_minus{inv_i(wa_plus.ic), inv_j(wa_plus.jc)};  // pairs with A+

    // The derived windows must land where the geometry says strip B ends are.
    const double yb = geom.u / 2 + geom.w2 / 2;
    const double b_plus = geom.l2 / 2 + geom.delta / 2;
    const double b_minus = -geom.l2 / 2 + geom.delta / 2;
    const auto near = [&](const Window& w, double x, double y) {
        const Vec3 p = sample_pos(g, Comp::Ey, w.ic, w.jc, k_plane);
        return std::abs(p[0] - x) <= g.dx && std::abs(p[1] - y) <= g.dy;
    };
    if (!near(wb_plus, b_plus + offset, yb) || !near(wb_minus, b_minus - offset, yb))
        throw config_error("inversion-paired windows do not match strip-B end facets");

    const Scene pair = build_isolated_pair(geom);
    const Window windows[4] = {wa_minus, wa_plus, wb_minus, wb_plus};
    for (const Window& w : windows)
        for (int a = -1; a <= 1; ++a)
            for (int b = -1; b <= 1; ++b) {
                const int i = w.ic + a, j = w.jc + b;
                if (i < 0 || i > g.nx || j < 0 || j > g.ny)
                    throw config_error("symmetry window leaves the field map");
                const Vec3 p = sample_pos(g, Comp::Ey, i, j, k_plane);
                for (const Box& box : pair.boxes)
                    if (box.contains(p)) throw config_error("symmetry window overlaps metal");
            }

    // Optimal global phase: maximize sum |Re(e^{i phi} z)|^2 over all samples.
    const auto sample = [&](const Window& w, int a, int b) {
        return phasors[static_cast<long>(w.ic + a) * my + (w.jc + b)];
    };
    double m00 = 0, m01 = 0, m11 = 0;
    for (const Window& w : windows)
        for (int a = -1; a <= 1; ++a)
            for (int b = -1; b <= 1; ++b) {
                const std::complex<double> z = sample(w, a, b);
                m00 += z.real() * z.real();
                m01 += z.real() * -z.imag();
                m11 += z.imag() * z.imag();
            }
    const double theta = 0.5 * std::atan2(2 * m01, m00 - m11);
    const double cph = std::cos(theta), sph = std::sin(theta);
    const auto re_opt = [&](const std::complex<double>& z) { return cph * z.real() - sph * z.imag(); };

    // Correlate across strips under inversion: A- pairs with B+, A+ with B-,
    // sample offset (a,b) with (-a,-b).
    double num = 0, den = 0;
    const Window* pairs[2][2] = {{&wa_minus, &wb_plus}, {&wa_plus, &wb_minus}};
    for (const auto& pr : pairs)
        for (int a = -1; a <= 1; ++a)
            for (int b = -1; b <= 1; ++b) {
                const double r1 = re_opt(sample(*pr[0], a, b));
                const double r2 = re_opt(sample(*pr[1], -a, -b));
                num += 2 * r1 * r2;
                den += r1 * r1 + r2 * r2;
            }
    if (den == 0) return 0;
    return num / den;
}

} // namespace pit
