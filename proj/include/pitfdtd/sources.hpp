#pragma once

#include "pitfdtd/grid.hpp"

#include <complex>

namespace pit {

// Gaussian-enveloped carrier pulse. tau is fitted so the spectral envelope
// stays at >= 10% of its peak over [band_lo, band_hi]; the pulse starts 5*tau
// before the envelope peak.
struct PulseSpec {
    double lambda0 = 700e-9; // m
    double band_lo = 600e-9, band_hi = 800e-9;
    double amplitude = 1.0;
    double tau = 0; // s, derived by from_band
    double t0 = 0;  // s, = 5*tau

    static PulseSpec from_band(double lambda0, double band_lo, double band_hi, double amplitude = 1.0);
    double omega0() const;
    void validate() const; // throws config_error
};

// amplitude * exp(-(t-t0)^2/(2 tau^2)) * cos(omega0 (t-t0))
double pulse_value(double t, const PulseSpec& p);

// Analytic Fourier integral of pulse_value with kernel e^{+i omega t}.
std::complex<double> pulse_spectrum(double omega, const PulseSpec& p);

// Normal incidence along z onto the crossed-strip cell. s keeps E parallel to
// the upper strip (along y), so only that strip is driven directly; p keeps H
// parallel to it, putting E along x so the incidence drives the lower pair
// directly and leaves the upper strip dark.
enum class Polarization { s, p }; // s: E along y; p: E along x

// Total-field/scattered-field box for a +y-propagating plane wave with E along
// x and H along z, evaluated analytically (vacuum background, no 1D auxiliary
// grid). The wave travels across the strip pair so its in-plane magnetic field
// threads the loop between the strips. Box extents are inclusive E-plane
// indices; total-field samples are those whose staggered position lies within
// [i0,i1]x[j0,j1]x[k0,k1] in cell units. Faces must be in vacuum and outside
// any absorber.
struct TfsfBox {
    int i0 = 0, i1 = 0, j0 = 0, j1 = 0, k0 = 0, k1 = 0;
};

class TfsfSource {
  public:
    // pml_cells: absorber thickness to keep clear of (0 when no absorber).
    TfsfSource(const GridSpec& g, const TfsfBox& box, const PulseSpec& pulse, int pml_cells);

    void correct_h(YeeFields& f) const; // call right after step_h
    void correct_e(YeeFields& f) const; // call right after step_e

    const TfsfBox& box() const { return box_; }
    // Incident E_x at position y (meters, absolute) and time t.
    double incident_ex(double y, double t) const;

  private:
    GridSpec g_{};
    TfsfBox box_{};
    PulseSpec pulse_{};
    double y_ref_ = 0; // incident-wave time reference: pulse phase applies at the entry plane
};

// Soft additive plane-wave source on a z-plane of a transversely periodic
// domain: drives Ex (s) or Ey (p) uniformly; the upward half-wave is absorbed
// by the top boundary.
class PlaneSource {
  public:
    PlaneSource(const GridSpec& g, const PeriodicSpec& per, int k_plane, Polarization pol,
                const PulseSpec& pulse, int pml_cells);

    void inject(YeeFields& f) const; // call right after step_e

    int k_plane() const { return k_; }

  private:
    GridSpec g_{};
    PeriodicSpec per_{};
    int k_ = 0;
    Polarization pol_ = Polarization::s;
    PulseSpec pulse_{};
};

} // namespace pit
