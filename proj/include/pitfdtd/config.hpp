#pragma once

#include <string>

#include <json.hpp>

#include "pitfdtd/boundaries.hpp"
#include "pitfdtd/errors.hpp"
#include "pitfdtd/geometry.hpp"
#include "pitfdtd/materials.hpp"
#include "pitfdtd/monitors.hpp"
#include "pitfdtd/sources.hpp"

namespace pit {

enum class Scenario { near_field_pair, periodic_transmission };

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& s);

/// Full simulation description. All lengths are stored in meters; the JSON
/// schema uses nanometers for geometry and wavelengths.
struct SimulationConfig {
    Scenario scenario = Scenario::near_field_pair;
    double resolution = 5e-9;
    double courant_factor = 0.5;
    UnitCellParams geometry;
    DrudeParams silver;
    CpmlParams boundaries;
    Polarization polarization = Polarization::p;
    PulseSpec pulse;
    double freq_min = 600e-9;
    double freq_max = 800e-9;
    int freq_count = 201;
    double decay_threshold = 1e-5;
    long max_steps = 200000;
    int dft_interval = 8;
    int workers = 0; ///< 0 = use PITFDTD_WORKERS or hardware concurrency
    std::string out_dir = "out";
    bool field_maps = true;

    /// Throws config_error on any inconsistent combination.
    void validate() const;

    FrequencyList frequencies() const;

    /// Canonical JSON with every field spelled out (defaults included),
    /// in schema units. Excludes workers and the output directory.
    nlohmann::json canonical_json() const;
};

/// Parses a config object. Unknown keys anywhere raise config_error naming
/// the offending dotted path; missing keys take documented defaults.
SimulationConfig parse_config(const nlohmann::json& j);

/// Reads and parses a JSON config file.
SimulationConfig load_config(const std::string& path);

/// FNV-1a 64-bit hash of the canonical config JSON, as 16 hex digits.
/// Identifies a run's physics for caching; workers and output paths are
/// excluded so they cannot fork the cache.
std::string config_hash(const SimulationConfig& c);

} // namespace pit
