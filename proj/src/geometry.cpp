#include "pitfdtd/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace pit {

void UnitCellParams::validate(double clearance) const {
    const auto positive = [](double v, const char* name) {
        if (!(v > 0)) throw geometry_error(std::string(name) + " must be positive");
    };
    positive(l1, "l1");
    positive(w1, "w1");
    positive(l2, "l2");
    positive(w2, "w2");
    positive(u, "u");
    positive(thickness, "thickness");
    positive(h, "h");
    positive(period_x, "period_x");
    positive(period_y, "period_y");
    if (delta < 0) throw geometry_error("delta must be non-negative");
    if (l2 + delta + 2 * clearance > period_x)
        throw geometry_error("lower strips (l2 + delta) do not fit inside period_x with clearance");
    if (l1 + 2 * clearance > period_y) throw geometry_error("upper strip does not fit inside period_y");
    if (u + 2 * w2 + 2 * clearance > period_y)
        throw geometry_error("lower strip pair does not fit inside period_y");
    if (std::abs(s) + w1 / 2 + clearance > period_x / 2)
        throw geometry_error("upper strip does not fit inside period_x at offset s");
}

namespace {

void set_bbox(Scene& sc) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    sc.bbox_lo = {inf, inf, inf};
    sc.bbox_hi = {-inf, -inf, -inf};
    for (const Box& b : sc.boxes)
        for (int a = 0; a < 3; ++a) {
            sc.bbox_lo[a] = std::min(sc.bbox_lo[a], b.lo[a]);
            sc.bbox_hi[a] = std::max(sc.bbox_hi[a], b.hi[a]);
        }
}

std::vector<Box> lower_pair(const UnitCellParams& p) {
    const double t = p.thickness;
    Box a{{-p.l2 / 2 - p.delta / 2, -p.u / 2 - p.w2, 0}, {p.l2 / 2 - p.delta / 2, -p.u / 2, t}, kSilver};
    Box b{{-p.l2 / 2 + p.delta / 2, p.u / 2, 0}, {p.l2 / 2 + p.delta / 2, p.u / 2 + p.w2, t}, kSilver};
    return {a, b};
}

// Boxes shifted by -period, 0, +period along every periodic axis so sample
// tests near a cell boundary see the neighboring cell's strips.
std::vector<Box> replicated_boxes(const Scene& scene) {
    std::vector<Box> boxes;
    const int sx = scene.periodic.x ? 1 : 0;
    const int sy = scene.periodic.y ? 1 : 0;
    const int sz = scene.periodic.z ? 1 : 0;
    for (const Box& b : scene.boxes)
        for (int ix = -sx; ix <= sx; ++ix)
            for (int iy = -sy; iy <= sy; ++iy)
                for (int iz = -sz; iz <= sz; ++iz) {
                    Box r = b;
                    const double off[3] = {ix * scene.period[0], iy * scene.period[1], iz * scene.period[2]};
                    for (int a = 0; a < 3; ++a) {
                        r.lo[a] += off[a];
                        r.hi[a] += off[a];
                    }
                    boxes.push_back(r);
                }
    return boxes;
}

} // namespace

Scene build_unit_cell(const UnitCellParams& p) {
    p.validate();
    Scene sc;
    sc.boxes = lower_pair(p);
    const double t = p.thickness;
    sc.boxes.push_back(
        {{p.s - p.w1 / 2, -p.l1 / 2, t + p.h}, {p.s + p.w1 / 2, p.l1 / 2, 2 * t + p.h}, kSilver});
    sc.periodic.x = sc.periodic.y = true;
    sc.period = {p.period_x, p.period_y, 0};
    set_bbox(sc);
    return sc;
}

Scene build_isolated_pair(const UnitCellParams& p) {
    p.validate();
    Scene sc;
    sc.boxes = lower_pair(p);
    set_bbox(sc);
    return sc;
}

std::array<Grid3u8, 3> voxelize(const Scene& scene, const GridSpec& grid) {
    grid.validate();
    const std::vector<Box> boxes = replicated_boxes(scene);
    std::array<Grid3u8, 3> out;
    for (int c = 0; c < 3; ++c) {
        out[c] = Grid3u8(grid.mx(), grid.my(), grid.mz());
        for (int i = 0; i <= grid.nx; ++i)
            for (int j = 0; j <= grid.ny; ++j)
                for (int k = 0; k <= grid.nz; ++k) {
                    const Vec3 pos = sample_pos(grid, static_cast<Comp>(c), i, j, k);
                    std::uint8_t mat = kVacuum;
                    for (const Box& b : boxes)
                        if (b.contains(pos)) mat = b.material;
                    out[c](i, j, k) = mat;
                }
    }
    return out;
}

long silver_sample_count(const Grid3u8& index) {
    long n = 0;
    for (long i = 0; i < index.size(); ++i)
        if (index[i] != kVacuum) ++n;
    return n;
}

} // namespace pit
