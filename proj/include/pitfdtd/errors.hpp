#pragma once

#include <stdexcept>
#include <string>

namespace pit {

// Bad user input: config keys, geometry that cannot be built, monitor placement.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid grid parameters (non-positive spacing, too few cells).
struct grid_error : std::runtime_error {
    explicit grid_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct geometry_error : std::runtime_error {
    explicit geometry_error(const std::string& msg) : std::runtime_error(msg) {}
};

// NaN/overflow detected during time stepping. Carries the step index.
struct instability_error : std::runtime_error {
    instability_error(const std::string& msg, long step)
        : std::runtime_error(msg + " at step " + std::to_string(step)), step_index(step) {}
    long step_index;
};

// Analysis failure (e.g. more than two prominent features in a sweep point).
struct analysis_error : std::runtime_error {
    explicit analysis_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace pit
