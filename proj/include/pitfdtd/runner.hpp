#pragma once

#include "pitfdtd/config.hpp"
#include "pitfdtd/csv_io.hpp"
#include "pitfdtd/spectra.hpp"
#include "pitfdtd/svg_plot.hpp"

#include <string>
#include <vector>

namespace pit {

/// One completed (or cache-loaded) scenario run. Data files live in `dir`:
/// spectrum.csv, features.csv, scores.csv, metadata.json and, when enabled,
/// map_<wavelength>nm.{csv,json} at each detected resonance.
struct RunResult {
    std::string dir;
    bool from_cache = false;
    long steps = 0;
    double wall_seconds = 0;
    bool decayed = false;     ///< field energy fell below the decay threshold
    double decay_ratio = 0;   ///< final energy / peak energy
    Spectrum spectrum;        ///< near-field enhancement or transmission
    std::vector<ResonanceFeature> features;
    std::vector<double> scores; ///< mode-symmetry score per spectrum sample
};

/// Runs the configured scenario, or returns the cached result when a
/// completed run with the same physics hash exists under out_root.
/// periodic_transmission also runs (and caches) an empty-cell reference for
/// the flux normalization.
RunResult run_scenario(const SimulationConfig& cfg, const std::string& out_root);

struct SweepResult {
    std::vector<SweepPoint> points; ///< peak features per delta
    BranchResult branches;
    std::vector<RunResult> runs;
};

/// Near-field runs over the listed shift values (nm), then branch tracking.
/// Writes branches.csv under out_root.
SweepResult run_delta_sweep(SimulationConfig cfg, const std::vector<double>& deltas_nm,
                            const std::string& out_root);

/// Strip footprints in the map plane (for plots), in nm.
std::vector<MapOutline> strip_outlines(const UnitCellParams& geom, bool include_upper);

} // namespace pit
