#include "pitfdtd/monitors.hpp"

#include "pitfdtd/constants.hpp"

#include <cmath>
#include <string>

namespace pit {

FrequencyList FrequencyList::uniform(double lo, double hi, int count) {
    if (!(lo > 0) || !(hi > lo) || count < 2) throw config_error("bad frequency list bounds/count");
    FrequencyList fl;
    fl.wavelengths.resize(count);
    fl.omegas.resize(count);
    for (int i = 0; i < count; ++i) {
        fl.wavelengths[i] = lo + (hi - lo) * i / (count - 1);
        fl.omegas[i] = 2 * pi * c0 / fl.wavelengths[i];
    }
    return fl;
}

void FrequencyList::validate(const PulseSpec& pulse) const {
    if (wavelengths.empty()) throw config_error("empty frequency list");
    for (size_t i = 1; i < wavelengths.size(); ++i)
        if (wavelengths[i] <= wavelengths[i - 1]) throw config_error("wavelengths must be ascending");
    if (wavelengths.front() < pulse.band_lo - 1e-15 || wavelengths.back() > pulse.band_hi + 1e-15)
        throw config_error("frequency list extends beyond the pulse band");
}

size_t FrequencyList::nearest(double lambda) const {
    size_t best = 0;
    double err = std::abs(wavelengths[0] - lambda);
    for (size_t i = 1; i < wavelengths.size(); ++i) {
        const double e = std::abs(wavelengths[i] - lambda);
        if (e < err) {
            err = e;
            best = i;
        }
    }
    return best;
}

namespace {

int snap_index(double coord, double origin, double offset_cells, double spacing, int max_index,
               const char* what) {
    const int idx = static_cast<int>(std::lround((coord - origin) / spacing - offset_cells));
    if (idx < 0 || idx > max_index) throw config_error(std::string(what) + " outside the grid");
    return idx;
}

} // namespace

PointProbe::PointProbe(const GridSpec& g, Comp c, const Vec3& pos, const FrequencyList& freqs, int interval)
    : g_(g), comp_(c), freqs_(freqs), interval_(interval) {
    g.validate();
    if (interval < 1) throw config_error("monitor interval must be >= 1");
    const Vec3 off = comp_offset(c);
    i_ = snap_index(pos[0], g.origin[0], off[0], g.dx, g.nx, "probe x");
    j_ = snap_index(pos[1], g.origin[1], off[1], g.dy, g.ny, "probe y");
    k_ = snap_index(pos[2], g.origin[2], off[2], g.dz, g.nz, "probe z");
    acc_.assign(freqs_.size(), {0, 0});
}

Vec3 PointProbe::snapped_pos() const { return sample_pos(g_, comp_, i_, j_, k_); }

void PointProbe::accumulate(const YeeFields& f) {
    if (f.step_index % interval_ != 0) return;
    const bool is_h = comp_ == Comp::Hx || comp_ == Comp::Hy || comp_ == Comp::Hz;
    const double t = (f.step_index - (is_h ? 0.5 : 0.0)) * f.dt;
    const double dt_eff = f.dt * interval_;
    const Grid3& arr = is_h ? (comp_ == Comp::Hx   ? f.Hx
                               : comp_ == Comp::Hy ? f.Hy
                                                   : f.Hz)
                            : (comp_ == Comp::Ex   ? f.Ex
                               : comp_ == Comp::Ey ? f.Ey
                                                   : f.Ez);
    const double v = arr(i_, j_, k_);
    for (size_t q = 0; q < freqs_.size(); ++q) {
        const double ph = freqs_.omegas[q] * t;
        acc_[q] += v * dt_eff * std::complex<double>(std::cos(ph), std::sin(ph));
    }
}

FluxPlane::FluxPlane(const GridSpec& g, const PeriodicSpec& per, int k_plane, const FrequencyList& freqs,
                     int interval, double normal_sign)
    : g_(g), per_(per), k_(k_plane), freqs_(freqs), interval_(interval), normal_sign_(normal_sign) {
    g.validate();
    if (interval < 1) throw config_error("monitor interval must be >= 1");
    if (k_plane < 1 || k_plane > g.nz - 1)
        throw config_error("flux plane k=" + std::to_string(k_plane) + " needs both H neighbors in-grid");
    plane_ = static_cast<long>(g.mx()) * g.my();
    const size_t n = freqs_.size() * static_cast<size_t>(plane_);
    ex_.assign(n, {0, 0});
    ey_.assign(n, {0, 0});
    hx_.assign(n, {0, 0});
    hy_.assign(n, {0, 0});
}

void FluxPlane::accumulate(const YeeFields& f) {
    if (f.step_index % interval_ != 0) return;
    const double dt_eff = f.dt * interval_;
    const double te = f.step_index * f.dt;
    const double th = (f.step_index - 0.5) * f.dt;
    const int my = g_.my();
    for (size_t q = 0; q < freqs_.size(); ++q) {
        const double w = freqs_.omegas[q];
        const std::complex<double> pe = dt_eff * std::complex<double>(std::cos(w * te), std::sin(w * te));
        const std::complex<double> ph = dt_eff * std::complex<double>(std::cos(w * th), std::sin(w * th));
        std::complex<double>* EX = ex_.data() + q * plane_;
        std::complex<double>* EY = ey_.data() + q * plane_;
        std::complex<double>* HX = hx_.data() + q * plane_;
        std::complex<double>* HY = hy_.data() + q * plane_;
        for (int i = 0; i <= g_.nx; ++i)
            for (int j = 0; j <= g_.ny; ++j) {
                const long n = static_cast<long>(i) * my + j;
                EX[n] += f.Ex(i, j, k_) * pe;
                EY[n] += f.Ey(i, j, k_) * pe;
                HX[n] += 0.5 * (f.Hx(i, j, k_) + f.Hx(i, j, k_ - 1)) * ph;
                HY[n] += 0.5 * (f.Hy(i, j, k_) + f.Hy(i, j, k_ - 1)) * ph;
            }
    }
}

Spectrum FluxPlane::power() const {
    Spectrum s;
    s.kind = Spectrum::Kind::raw;
    s.wavelengths_nm.resize(freqs_.size());
    s.values.resize(freqs_.size());
    const double dA = g_.dx * g_.dy;
    const int my = g_.my();
    for (size_t q = 0; q < freqs_.size(); ++q) {
        s.wavelengths_nm[q] = freqs_.wavelengths[q] * 1e9;
        const std::complex<double>* EX = ex_.data() + q * plane_;
        const std::complex<double>* EY = ey_.data() + q * plane_;
        const std::complex<double>* HX = hx_.data() + q * plane_;
        const std::complex<double>* HY = hy_.data() + q * plane_;
        double p = 0;
        // S_z = Ex Hy* - Ey Hx*, each product at its own co-located point;
        // halo planes of periodic axes excluded so every sample counts once.
        for (int i = 0; i < g_.nx; ++i)
            for (int j = 0; j <= (per_.y ? g_.ny - 1 : g_.ny); ++j) {
                const long n = static_cast<long>(i) * my + j;
                p += std::real(EX[n] * std::conj(HY[n]));
            }
        for (int i = 0; i <= (per_.x ? g_.nx - 1 : g_.nx); ++i)
            for (int j = 0; j < g_.ny; ++j) {
                const long n = static_cast<long>(i) * my + j;
                p -= std::real(EY[n] * std::conj(HX[n]));
            }
        s.values[q] = 0.5 * normal_sign_ * p * dA;
    }
    return s;
}

FieldMapMonitor::FieldMapMonitor(const GridSpec& g, Comp c, int k_plane, const FrequencyList& freqs,
                                 int interval)
    : g_(g), comp_(c), k_(k_plane), freqs_(freqs), interval_(interval) {
    g.validate();
    if (interval < 1) throw config_error("monitor interval must be >= 1");
    if (k_plane < 0 || k_plane > g.nz) throw config_error("field-map plane outside the grid");
    plane_ = static_cast<long>(g.mx()) * g.my();
    acc_.assign(freqs_.size() * static_cast<size_t>(plane_), {0, 0});
}

void FieldMapMonitor::accumulate(const YeeFields& f) {
    if (f.step_index % interval_ != 0) return;
    const bool is_h = comp_ == Comp::Hx || comp_ == Comp::Hy || comp_ == Comp::Hz;
    const double t = (f.step_index - (is_h ? 0.5 : 0.0)) * f.dt;
    const double dt_eff = f.dt * interval_;
    const Grid3& arr = is_h ? (comp_ == Comp::Hx   ? f.Hx
                               : comp_ == Comp::Hy ? f.Hy
                                                   : f.Hz)
                            : (comp_ == Comp::Ex   ? f.Ex
                               : comp_ == Comp::Ey ? f.Ey
                                                   : f.Ez);
    const int my = g_.my();
    for (size_t q = 0; q < freqs_.size(); ++q) {
        const double w = freqs_.omegas[q];
        const std::complex<double> phase = dt_eff * std::complex<double>(std::cos(w * t), std::sin(w * t));
        std::complex<double>* A = acc_.data() + q * plane_;
        for (int i = 0; i <= g_.nx; ++i)
            for (int j = 0; j <= g_.ny; ++j) A[static_cast<long>(i) * my + j] += arr(i, j, k_) * phase;
    }
}

std::vector<std::complex<double>> FieldMapMonitor::slice(size_t fi) const {
    if (fi >= freqs_.size()) throw config_error("field-map frequency index out of range");
    return {acc_.begin() + fi * plane_, acc_.begin() + (fi + 1) * plane_};
}

Spectrum probe_spectrum(const PointProbe& probe, const PulseSpec& pulse) {
    const FrequencyList& fl = probe.freqs();
    Spectrum s;
    s.kind = Spectrum::Kind::near_field;
    s.wavelengths_nm.resize(fl.size());
    s.values.resize(fl.size());
    for (size_t q = 0; q < fl.size(); ++q) {
        s.wavelengths_nm[q] = fl.wavelengths[q] * 1e9;
        const double ref = std::abs(pulse_spectrum(fl.omegas[q], pulse));
        if (ref <= 0) throw analysis_error("pulse spectrum vanishes inside the band");
        s.values[q] = std::abs(probe.phasors()[q]) / ref;
    }
    return s;
}

} // namespace pit
