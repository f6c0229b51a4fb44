#pragma once

#include "pitfdtd/grid.hpp"
#include "pitfdtd/sources.hpp"
#include "pitfdtd/spectra.hpp"

#include <complex>
#include <vector>

namespace pit {

struct FrequencyList {
    std::vector<double> wavelengths; // m, ascending
    std::vector<double> omegas;      // rad/s, derived

    static FrequencyList uniform(double lo, double hi, int count);
    size_t size() const { return wavelengths.size(); }
    // All wavelengths must sit inside the pulse's >= 10% band.
    void validate(const PulseSpec& pulse) const; // throws config_error
    // Index of the listed wavelength closest to lambda (meters).
    size_t nearest(double lambda) const;
};

// On-the-fly DFT accumulation: acc(w) += f(t) e^{+iwt} dt_eff, where dt_eff =
// dt * interval and samples are taken every `interval` full steps. E samples
// use t = n*dt, H samples their natural t = (n-1/2)*dt. Call accumulate(f)
// after every E half-step; off-cadence calls return immediately.

class PointProbe {
  public:
    PointProbe(const GridSpec& g, Comp c, const Vec3& pos, const FrequencyList& freqs, int interval);

    void accumulate(const YeeFields& f);
    const std::vector<std::complex<double>>& phasors() const { return acc_; }
    Vec3 snapped_pos() const;
    const FrequencyList& freqs() const { return freqs_; }

  private:
    GridSpec g_{};
    Comp comp_ = Comp::Ey;
    int i_ = 0, j_ = 0, k_ = 0;
    FrequencyList freqs_;
    int interval_ = 1;
    std::vector<std::complex<double>> acc_;
};

// Tangential E and z-interpolated H phasors over a full z-plane; power() gives
// the Poynting flux through the plane along `normal_sign`*z.
class FluxPlane {
  public:
    FluxPlane(const GridSpec& g, const PeriodicSpec& per, int k_plane, const FrequencyList& freqs,
              int interval, double normal_sign);

    void accumulate(const YeeFields& f);
    Spectrum power() const; // kind = raw, one value per frequency
    int k_plane() const { return k_; }

  private:
    GridSpec g_{};
    PeriodicSpec per_{};
    int k_ = 0;
    FrequencyList freqs_;
    int interval_ = 1;
    double normal_sign_ = 1.0;
    long plane_ = 0; // samples per component plane (mx*my)
    // Layout: [freq][i*my+j], one vector per component.
    std::vector<std::complex<double>> ex_, ey_, hx_, hy_;
};

// Full-plane phasors of one component on a z-plane, one (mx*my) slice per
// listed frequency.
class FieldMapMonitor {
  public:
    FieldMapMonitor(const GridSpec& g, Comp c, int k_plane, const FrequencyList& freqs, int interval);

    void accumulate(const YeeFields& f);
    // Row-major (i*my + j) phasor slice for frequency index fi.
    std::vector<std::complex<double>> slice(size_t fi) const;
    int k_plane() const { return k_; }
    Comp comp() const { return comp_; }
    const FrequencyList& freqs() const { return freqs_; }

  private:
    GridSpec g_{};
    Comp comp_ = Comp::Ey;
    int k_ = 0;
    FrequencyList freqs_;
    int interval_ = 1;
    long plane_ = 0;
    std::vector<std::complex<double>> acc_; // [freq][i*my+j]
};

// |probe phasor| normalized by the analytic pulse spectrum magnitude.
Spectrum probe_spectrum(const PointProbe& probe, const PulseSpec& pulse);

} // namespace pit
