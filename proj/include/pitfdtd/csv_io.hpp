#pragma once

#include "pitfdtd/spectra.hpp"

#include <complex>
#include <string>
#include <vector>

namespace pit {

/// Writes `wavelength_nm,value` rows; floats printed with %.17g so repeated
/// identical runs produce byte-identical files.
void write_spectrum(const std::string& path, const Spectrum& s);

/// Reads a file written by write_spectrum. Throws analysis_error on a
/// missing, empty, or malformed file.
Spectrum read_spectrum(const std::string& path, Spectrum::Kind kind);

/// `wavelength_nm,kind,prominence,width_nm` with kind peak|dip.
void write_features(const std::string& path, const std::vector<ResonanceFeature>& features);
std::vector<ResonanceFeature> read_features(const std::string& path);

/// `wavelength_nm,score` rows (mode-symmetry scores per resonance).
void write_scores(const std::string& path, const std::vector<double>& wavelengths_nm,
                  const std::vector<double>& scores);

/// `delta_nm,branch1_nm,branch2_nm` rows.
void write_branches(const std::string& path, const BranchResult& br);

/// A complex field slice on a uniform transverse grid, row-major values
/// indexed i * ny + j.
struct FieldMapData {
    int nx = 0, ny = 0;
    double x0_nm = 0, y0_nm = 0; ///< position of sample (0, 0)
    double dx_nm = 0, dy_nm = 0;
    double wavelength_nm = 0;
    double plane_z_nm = 0;
    std::string component; ///< e.g. "Ey"
    std::vector<std::complex<double>> values;
};

/// Writes base_path + ".csv" (`x_nm,y_nm,re,im` rows) and base_path + ".json"
/// (grid metadata).
void write_field_map(const std::string& base_path, const FieldMapData& map);
FieldMapData read_field_map(const std::string& base_path);

} // namespace pit
