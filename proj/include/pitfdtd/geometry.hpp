#pragma once

#include "pitfdtd/grid.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace pit {

inline constexpr std::uint8_t kVacuum = 0;
inline constexpr std::uint8_t kSilver = 1;

// Stacked-strip unit cell: a lower pair of parallel strips extending along x
// plus one upper strip extending along y, crossed over the pair and stacked
// along z. The crossed orientation is what lets the two polarizations address
// the two layers separately: E along y drives only the upper strip, E along x
// drives only the lower pair. All lengths in meters (configs use nm and
// convert on load).
struct UnitCellParams {
    double l1 = 136e-9, w1 = 50e-9;  // upper strip length (along y) / width (along x)
    double l2 = 120e-9, w2 = 30e-9;  // lower strips, lengths along x / widths along y
    double u = 30e-9;                // edge-to-edge gap between the lower strips along y
    double thickness = 20e-9;        // per-strip thickness along z
    double h = 30e-9;                // surface-to-surface spacing between layers
    double s = 35e-9;                // upper-strip center offset along x from the pair center
    double delta = 65e-9;            // longitudinal shift between the two lower strips
    double period_x = 400e-9, period_y = 400e-9;

    // clearance: minimum free margin (meters) between any strip and the period
    // boundary, typically 2 cells.
    void validate(double clearance = 0) const; // throws geometry_error
};

struct Box {
    Vec3 lo, hi;
    std::uint8_t material = kSilver;

    // Closed-interval test with a femtometer tolerance: faces that coincide
    // with sample planes by design stay inclusive despite round-off in the
    // coordinate arithmetic, while no physical feature is near this scale.
    bool contains(const Vec3& p) const {
        constexpr double eps = 1e-15;
        return p[0] >= lo[0] - eps && p[0] <= hi[0] + eps && p[1] >= lo[1] - eps &&
               p[1] <= hi[1] + eps && p[2] >= lo[2] - eps && p[2] <= hi[2] + eps;
    }
};

struct Scene {
    std::vector<Box> boxes;
    PeriodicSpec periodic;
    Vec3 period{0, 0, 0}; // period length per periodic axis (meters)
    Vec3 bbox_lo{0, 0, 0}, bbox_hi{0, 0, 0};
};

// Three strips; the lower pair straddles y=0 with gap u, shifted -delta/2 (A,
// at y<0) and +delta/2 (B, at y>0) along x; lower layer at z in [0, thickness],
// upper strip along y centered at x=s in the next layer. Periodic in x and y.
Scene build_unit_cell(const UnitCellParams& p);

// The lower pair only, no upper strip, non-periodic.
Scene build_isolated_pair(const UnitCellParams& p);

// Midpoint sampling of every E-component sample position; the last listed box
// containing the point wins. On periodic axes boxes are tested shifted by
// -period, 0, +period so the map is exactly translation invariant.
std::array<Grid3u8, 3> voxelize(const Scene& scene, const GridSpec& grid);

// Count of silver samples for one E component (testing/diagnostics).
long silver_sample_count(const Grid3u8& index);

} // namespace pit
