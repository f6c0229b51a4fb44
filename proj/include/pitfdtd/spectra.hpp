#pragma once

#include "pitfdtd/geometry.hpp"
#include "pitfdtd/grid.hpp"

#include <complex>
#include <string>
#include <vector>

namespace pit {

struct Spectrum {
    enum class Kind { raw, near_field, transmission };
    std::vector<double> wavelengths_nm; // ascending
    std::vector<double> values;
    Kind kind = Kind::raw;

    void validate() const; // throws analysis_error on shape problems
};

struct ResonanceFeature {
    double wavelength_nm = 0; // quadratically refined
    enum class Kind { peak, dip } kind = Kind::peak;
    double prominence = 0;
    double width_nm = 0; // half-prominence width estimate
};

// Pointwise run/reference ratio. Throws analysis_error on mismatched grids or
// reference values below 1e-12.
Spectrum transmission(const Spectrum& run_flux, const Spectrum& reference_flux);

// Local maxima and minima with prominence above threshold (absolute, same
// units as values), positions refined by 3-point quadratic interpolation,
// sorted by wavelength.
std::vector<ResonanceFeature> find_extrema(const Spectrum& s, double prominence_threshold);

// Default prominence threshold: 5% of the spectrum's value range.
double default_prominence(const Spectrum& s);

struct SweepPoint {
    double delta_nm = 0;
    std::vector<ResonanceFeature> features; // peaks only, ascending wavelength, size 1 or 2
};

struct BranchResult {
    std::vector<double> deltas_nm;
    std::vector<double> branch1_nm, branch2_nm; // tracked by nearest-wavelength continuation
    bool crossed = false;
    double crossing_delta_nm = 0; // sign-change interpolation, else minimum-separation location
    double min_separation_nm = 0;
};

// Tracks two resonance branches across a delta sweep and estimates where they
// cross (or come closest). Points with one feature are treated as degenerate
// (both branches there). Throws analysis_error when a point has zero or more
// than two features, or fewer than 3 points are given.
BranchResult sweep_branches(const std::vector<SweepPoint>& points);

// Classifies a resonance of the strip pair as symmetric (+1) or asymmetric
// (-1) from a complex field map on the pair's mid-plane. Samples Re(e^{i phi}
// E_y) in 3x3-cell windows centered 10 nm beyond each of the four strip end
// facets (at facet-center y), with phi chosen to maximize total sampled power,
// and correlates samples across the two strips under the inversion
// (x,y) -> (-x,-y). phasors: row-major (i*my + j) over the map plane.
// Throws config_error when a window overlaps metal or leaves the map.
double field_symmetry_score(const std::vector<std::complex<double>>& phasors, const GridSpec& g,
                            int k_plane, const UnitCellParams& geom);

} // namespace pit
