#pragma once

#include "pitfdtd/errors.hpp"
#include "pitfdtd/parallel.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace pit {

using Vec3 = std::array<double, 3>;

// Uniformly spaced Yee grid: nx*ny*nz cells, spacing d* in meters, origin at
// the low corner of cell (0,0,0).
struct GridSpec {
    int nx = 0, ny = 0, nz = 0;
    double dx = 0, dy = 0, dz = 0;
    double courant_factor = 0.5;
    Vec3 origin{0, 0, 0};

    void validate() const; // throws grid_error

    double cell_volume() const { return dx * dy * dz; }
    // Sample-array dims: every component is stored on an (nx+1,ny+1,nz+1) box;
    // samples beyond a component's staggered extent stay zero.
    int mx() const { return nx + 1; }
    int my() const { return ny + 1; }
    int mz() const { return nz + 1; }
};

// Time step from the 3D Courant bound scaled by grid.courant_factor.
double courant_dt(const GridSpec& grid);

// Shifts one axis origin (by less than a cell, toward low coordinates) so
// that `face` lands exactly on the half-offset sample planes origin +
// (n + 1/2)*res. Strip end faces terminate a longitudinal current chain;
// whether such a face sits on or between the planes of the E component along
// that axis moves plasmon resonances by whole-cell jumps when the resolution
// changes, so scenario grids conform every resolution to the same face. When
// `count` is non-null the axis grows one cell to preserve coverage of the
// high edge; periodic axes pass nullptr since their extent is fixed at one
// period and only the phase of the wrap moves.
void align_face_to_half_grid(double face, double res, double& origin, int* count);

// Flat 3D array of double, z-fastest storage.
class Grid3 {
  public:
    Grid3() = default;
    Grid3(int mx, int my, int mz) : mx_(mx), my_(my), mz_(mz), v_(static_cast<size_t>(mx) * my * mz, 0.0) {}

    long idx(int i, int j, int k) const { return (static_cast<long>(i) * my_ + j) * mz_ + k; }
    double& operator()(int i, int j, int k) { return v_[idx(i, j, k)]; }
    double operator()(int i, int j, int k) const { return v_[idx(i, j, k)]; }
    double& operator[](long n) { return v_[n]; }
    double operator[](long n) const { return v_[n]; }

    int mx() const { return mx_; }
    int my() const { return my_; }
    int mz() const { return mz_; }
    long size() const { return static_cast<long>(v_.size()); }
    double* data() { return v_.data(); }
    const double* data() const { return v_.data(); }
    void fill(double value);

    bool operator==(const Grid3&) const = default;

  private:
    int mx_ = 0, my_ = 0, mz_ = 0;
    std::vector<double> v_;
};

// Same layout for per-sample material indices.
class Grid3u8 {
  public:
    Grid3u8() = default;
    Grid3u8(int mx, int my, int mz) : mx_(mx), my_(my), mz_(mz), v_(static_cast<size_t>(mx) * my * mz, 0) {}

    long idx(int i, int j, int k) const { return (static_cast<long>(i) * my_ + j) * mz_ + k; }
    std::uint8_t& operator()(int i, int j, int k) { return v_[idx(i, j, k)]; }
    std::uint8_t operator()(int i, int j, int k) const { return v_[idx(i, j, k)]; }
    std::uint8_t& operator[](long n) { return v_[n]; }
    std::uint8_t operator[](long n) const { return v_[n]; }
    int mx() const { return mx_; }
    int my() const { return my_; }
    int mz() const { return mz_; }
    long size() const { return static_cast<long>(v_.size()); }
    const std::uint8_t* data() const { return v_.data(); }

    bool operator==(const Grid3u8&) const = default;

  private:
    int mx_ = 0, my_ = 0, mz_ = 0;
    std::vector<std::uint8_t> v_;
};

enum class Comp { Ex, Ey, Ez, Hx, Hy, Hz };

// Staggered offset of a component's sample within cell (i,j,k), in cell units.
Vec3 comp_offset(Comp c);

// Physical position of sample (i,j,k) of component c.
Vec3 sample_pos(const GridSpec& g, Comp c, int i, int j, int k);

struct PeriodicSpec {
    bool x = false, y = false, z = false;
    bool axis(int a) const { return a == 0 ? x : (a == 1 ? y : z); }
};

// Staggered E/H field state plus Drude polarization currents, leapfrogged in
// time. After step_e the E arrays hold time step_index*dt; the H arrays lag by
// half a step.
struct YeeFields {
    Grid3 Ex, Ey, Ez;
    Grid3 Hx, Hy, Hz;
    Grid3 Jx, Jy, Jz;
    long step_index = 0;
    double dt = 0;

    static YeeFields make(const GridSpec& grid);
    static YeeFields make(const GridSpec& grid, double dt);

    Grid3& e(int axis) { return axis == 0 ? Ex : (axis == 1 ? Ey : Ez); }
    Grid3& h(int axis) { return axis == 0 ? Hx : (axis == 1 ? Hy : Hz); }
    Grid3& j(int axis) { return axis == 0 ? Jx : (axis == 1 ? Jy : Jz); }
    const Grid3& e(int axis) const { return axis == 0 ? Ex : (axis == 1 ? Ey : Ez); }
    const Grid3& h(int axis) const { return axis == 0 ? Hx : (axis == 1 ? Hy : Hz); }
};

struct MaterialMap; // materials.hpp

// H <- H - (dt/mu0) curl E over owned samples. Halos must be in sync on
// periodic axes (apply_periodic after the previous E half-step).
void step_h(YeeFields& f, const GridSpec& g, const PeriodicSpec& per, WorkerPool& pool);

// E <- Ca*E + Cb*(curl H - J) over owned samples. Tangential E on closed-axis
// boundaries stays zero (PEC behind the absorber).
void step_e(YeeFields& f, const GridSpec& g, const MaterialMap& m, const PeriodicSpec& per, WorkerPool& pool);

// Copies owned face samples (index 0) into the halo plane (index n) of every
// component along each periodic axis. Bloch phase is 1 (normal incidence).
void apply_periodic(YeeFields& f, const GridSpec& g, const PeriodicSpec& per);

// Total discrete EM energy sum (eps0 |E|^2 + mu0 |H|^2)/2 * cell volume.
// Halo planes on periodic axes are excluded so each sample counts once.
double field_energy(const YeeFields& f, const GridSpec& g, const PeriodicSpec& per);

// Largest |value| over all E and H samples.
double max_field_abs(const YeeFields& f);

// Throws instability_error if any field sample is NaN/Inf or exceeds the
// given amplitude limit.
void check_stable(const YeeFields& f, double amplitude_limit);

// Discrete divergence of H at dual-cell centers; returns the largest |div H|
// (units A/m^2). Zero initially and preserved exactly by the update.
double max_div_h(const YeeFields& f, const GridSpec& g);

} // namespace pit
