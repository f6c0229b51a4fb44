#include "pitfdtd/sources.hpp"

#include "pitfdtd/constants.hpp"

#include <cmath>
#include <string>

namespace pit {

PulseSpec PulseSpec::from_band(double lambda0, double band_lo, double band_hi, double amplitude) {
    PulseSpec p;
    p.lambda0 = lambda0;
    p.band_lo = band_lo;
    p.band_hi = band_hi;
    p.amplitude = amplitude;
    if (!(band_lo > 0) || !(band_hi > band_lo) || !(lambda0 > band_lo) || !(lambda0 < band_hi))
        throw config_error("pulse band must satisfy 0 < band_lo < lambda0 < band_hi");
    const double w0 = 2 * pi * c0 / lambda0;
    const double dw = std::max(2 * pi * c0 / band_lo - w0, w0 - 2 * pi * c0 / band_hi);
    // envelope spectrum exp(-tau^2 dw^2 / 2) = 0.1 at the worse band edge
    p.tau = std::sqrt(2.0 * std::log(10.0)) / dw;
    p.t0 = 5 * p.tau;
    return p;
}

double PulseSpec::omega0() const { return 2 * pi * c0 / lambda0; }

void PulseSpec::validate() const {
    if (!(tau > 0)) throw config_error("pulse tau must be positive (use PulseSpec::from_band)");
    if (!(amplitude > 0)) throw config_error("pulse amplitude must be positive");
    const double w0 = omega0();
    for (double edge : {band_lo, band_hi}) {
        const double dw = 2 * pi * c0 / edge - w0;
        if (std::exp(-tau * tau * dw * dw / 2) < 0.1 - 1e-12)
            throw config_error("pulse spectrum falls below 10% inside the requested band");
    }
}

double pulse_value(double t, const PulseSpec& p) {
    const double u = t - p.t0;
    return p.amplitude * std::exp(-u * u / (2 * p.tau * p.tau)) * std::cos(p.omega0() * u);
}

std::complex<double> pulse_spectrum(double omega, const PulseSpec& p) {
    const double w0 = p.omega0();
    const double g1 = std::exp(-p.tau * p.tau * (omega - w0) * (omega - w0) / 2);
    const double g2 = std::exp(-p.tau * p.tau * (omega + w0) * (omega + w0) / 2);
    const double mag = 0.5 * p.amplitude * p.tau * std::sqrt(2 * pi) * (g1 + g2);
    return mag * std::exp(std::complex<double>(0.0, omega * p.t0));
}

TfsfSource::TfsfSource(const GridSpec& g, const TfsfBox& box, const PulseSpec& pulse, int pml_cells)
    : g_(g), box_(box), pulse_(pulse) {
    g.validate();
    pulse.validate();
    const int m = pml_cells;
    if (box.i0 >= box.i1 || box.j0 >= box.j1 || box.k0 >= box.k1)
        throw config_error("total-field box is degenerate");
    // Corrections write one sample beyond the low faces; everything must stay
    // clear of the absorbing slabs.
    if (box.i0 - 1 <= m || box.j0 - 1 <= m || box.k0 - 1 <= m || box.i1 + 1 >= g.nx - m ||
        box.j1 + 1 >= g.ny - m || box.k1 + 1 >= g.nz - m)
        throw config_error("total-field box touches the boundary region");
    y_ref_ = g.origin[1] + box.j0 * g.dy;
}

double TfsfSource::incident_ex(double y, double t) const {
    return pulse_value(t - (y - y_ref_) / c0, pulse_);
}

void TfsfSource::correct_h(YeeFields& f) const {
    const TfsfBox& b = box_;
    const double t_e = f.step_index * f.dt; // E arrays are at this time
    const double cy = f.dt / (mu0 * g_.dy);
    const double cz = f.dt / (mu0 * g_.dz);
    // Hz just outside the y-faces sees total-field Ex through its y-difference.
    const double ex_lo = incident_ex(g_.origin[1] + b.j0 * g_.dy, t_e);
    const double ex_hi = incident_ex(g_.origin[1] + b.j1 * g_.dy, t_e);
    for (int i = b.i0; i < b.i1; ++i)
        for (int k = b.k0; k <= b.k1; ++k) {
            f.Hz(i, b.j0 - 1, k) -= cy * ex_lo;
            f.Hz(i, b.j1, k) += cy * ex_hi;
        }
    // Hy just outside the z-faces sees total-field Ex through its z-difference.
    for (int j = b.j0; j <= b.j1; ++j) {
        const double ex = incident_ex(g_.origin[1] + j * g_.dy, t_e);
        for (int i = b.i0; i < b.i1; ++i) {
            f.Hy(i, j, b.k0 - 1) += cz * ex;
            f.Hy(i, j, b.k1) -= cz * ex;
        }
    }
}

void TfsfSource::correct_e(YeeFields& f) const {
    const TfsfBox& b = box_;
    const double t_h = (f.step_index - 0.5) * f.dt; // H arrays are at this time
    const double cx = f.dt / (eps0 * g_.dx);
    const double cy = f.dt / (eps0 * g_.dy);
    // Ex on the y-faces references scattered-field Hz beyond the face.
    const double hz_lo = -incident_ex(g_.origin[1] + (b.j0 - 0.5) * g_.dy, t_h) / eta0;
    const double hz_hi = -incident_ex(g_.origin[1] + (b.j1 + 0.5) * g_.dy, t_h) / eta0;
    for (int i = b.i0; i < b.i1; ++i)
        for (int k = b.k0; k <= b.k1; ++k) {
            f.Ex(i, b.j0, k) -= cy * hz_lo;
            f.Ex(i, b.j1, k) += cy * hz_hi;
        }
    // Ey on the x-faces references scattered-field Hz beyond the face.
    for (int j = b.j0; j < b.j1; ++j) {
        const double hz = -incident_ex(g_.origin[1] + (j + 0.5) * g_.dy, t_h) / eta0;
        for (int k = b.k0; k <= b.k1; ++k) {
            f.Ey(b.i0, j, k) += cx * hz;
            f.Ey(b.i1, j, k) -= cx * hz;
        }
    }
}

PlaneSource::PlaneSource(const GridSpec& g, const PeriodicSpec& per, int k_plane, Polarization pol,
                         const PulseSpec& pulse, int pml_cells)
    : g_(g), per_(per), k_(k_plane), pol_(pol), pulse_(pulse) {
    g.validate();
    pulse.validate();
    if (!per.x || !per.y || per.z) throw config_error("plane source needs periodic x/y and open z");
    if (k_plane <= pml_cells || k_plane >= g.nz - pml_cells)
        throw config_error("source plane at k=" + std::to_string(k_plane) + " lies inside the absorber");
}

void PlaneSource::inject(YeeFields& f) const {
    const double v = pulse_value(f.step_index * f.dt, pulse_);
    if (pol_ == Polarization::s) {
        for (int i = 0; i < g_.nx; ++i)
            for (int j = 0; j < g_.ny; ++j) f.Ey(i, j, k_) += v;
    } else {
        for (int i = 0; i < g_.nx; ++i)
            for (int j = 0; j < g_.ny; ++j) f.Ex(i, j, k_) += v;
    }
}

} // namespace pit
