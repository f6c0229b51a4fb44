#pragma once

#include "pitfdtd/csv_io.hpp"

#include <string>
#include <vector>

namespace pit {

struct LineSeries {
    std::string label;
    Spectrum spectrum;
    bool dashed = false; ///< convention: p-polarization curves are dashed
};

/// Renders an SVG line chart (wavelength on x). Throws analysis_error on
/// empty input or inconsistent series.
void plot_spectra(const std::string& svg_path, const std::string& title, const std::string& y_label,
                  const std::vector<LineSeries>& series);

/// Axis-aligned rectangle drawn over a field map (strip footprints).
struct MapOutline {
    double x0_nm = 0, y0_nm = 0, x1_nm = 0, y1_nm = 0;
};

/// Renders the real part of the map (after a global phase rotation that
/// maximizes the plotted power) on a diverging color scale symmetric about
/// zero, with outlines overlaid.
void plot_field_map(const std::string& svg_path, const std::string& title, const FieldMapData& map,
                    const std::vector<MapOutline>& outlines);

} // namespace pit
