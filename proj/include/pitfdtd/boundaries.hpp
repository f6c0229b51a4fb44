#pragma once

#include "pitfdtd/grid.hpp"
#include "pitfdtd/materials.hpp"

#include <vector>

namespace pit {

struct CpmlParams {
    int cells = 10;            // absorber thickness per face
    double grading_order = 3.0;
    double sigma_scale = 0.8;  // sigma_max = scale * (order+1) / (eta0 * spacing)
    double kappa_max = 1.0;
    double alpha_max = 0.0;

    void validate() const; // throws config_error
};

// Convolutional PML on both faces of every non-periodic axis. The main update
// runs unmodified everywhere; apply_h / apply_e then add the stored
// convolution corrections to samples inside the absorbing slabs. Call apply_h
// immediately after step_h and apply_e immediately after step_e, before any
// periodic halo sync.
class Cpml {
  public:
    Cpml() = default;
    Cpml(const GridSpec& g, const PeriodicSpec& per, const CpmlParams& p, double dt);

    void apply_h(YeeFields& f, WorkerPool& pool);
    void apply_e(YeeFields& f, const MaterialMap& m, WorkerPool& pool);

    bool active(int axis) const { return active_[axis]; }
    int cells() const { return params_.cells; }

  private:
    struct AxisProfile {
        std::vector<double> be, ae, ike; // integer depth nodes, size n+1
        std::vector<double> bh, ah, ikh; // half depth nodes, size n
        int lo_e1 = 0, lo_e2 = -1, hi_e1 = 0, hi_e2 = -1; // inclusive slab ranges
        int lo_h1 = 0, lo_h2 = -1, hi_h1 = 0, hi_h2 = -1;
    };

    void pass(int a, bool e_pass, YeeFields& f, const MaterialMap* m, WorkerPool& pool);

    GridSpec g_{};
    PeriodicSpec per_{};
    CpmlParams params_{};
    double dt_ = 0;
    bool active_[3] = {false, false, false};
    AxisProfile prof_[3];
    Grid3 psi_e1_[3], psi_e2_[3]; // correction state for the two E terms per axis
    Grid3 psi_h1_[3], psi_h2_[3];
};

} // namespace pit
