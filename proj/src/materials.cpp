#include "pitfdtd/materials.hpp"

#include "pitfdtd/constants.hpp"

namespace pit {

void DrudeParams::validate() const {
    if (eps_inf <= 0) throw config_error("eps_inf must be positive, got " + std::to_string(eps_inf));
    if (omega_p < 0) throw config_error("omega_p must be non-negative");
    if (gamma < 0) throw config_error("gamma must be non-negative");
}

std::complex<double> drude_permittivity(double omega, const DrudeParams& p) {
    if (omega <= 0) throw config_error("permittivity requested at non-positive frequency");
    const std::complex<double> denom(omega * omega, p.gamma * omega);
    return p.eps_inf - p.omega_p * p.omega_p / denom;
}

std::vector<MaterialCoeffs> build_update_coefficients(const std::vector<DrudeParams>& materials, double dt) {
    if (dt <= 0) throw config_error("time step must be positive");
    if (materials.size() + 1 > 256) throw config_error("more than 255 materials");
    std::vector<MaterialCoeffs> table;
    table.reserve(materials.size() + 1);
    table.push_back({1.0, dt / eps0, 0.0, 0.0}); // vacuum
    for (const DrudeParams& p : materials) {
        p.validate();
        const double gdt = p.gamma * dt;
        if (gdt >= 2.0)
            throw config_error("gamma*dt = " + std::to_string(gdt) + " >= 2: current recurrence diverges");
        MaterialCoeffs c;
        c.ca = 1.0;
        c.cb = dt / (eps0 * p.eps_inf);
        c.alpha = (2.0 - gdt) / (2.0 + gdt);
        c.beta = 2.0 * eps0 * p.omega_p * p.omega_p * dt / (2.0 + gdt);
        table.push_back(c);
    }
    return table;
}

MaterialMap MaterialMap::build(const GridSpec& grid, std::array<Grid3u8, 3> sample_index,
                               const std::vector<DrudeParams>& materials, double dt) {
    grid.validate();
    MaterialMap m;
    m.table = build_update_coefficients(materials, dt);
    m.index = std::move(sample_index);
    const long want = static_cast<long>(grid.mx()) * grid.my() * grid.mz();
    for (int a = 0; a < 3; ++a) {
        const Grid3u8& g8 = m.index[a];
        if (g8.size() != want) throw config_error("material index array does not match the grid");
        for (long n = 0; n < g8.size(); ++n) {
            const std::uint8_t mat = g8[n];
            if (mat >= m.table.size()) throw config_error("material index out of table range");
            if (m.table[mat].beta != 0.0) m.dispersive[a].push_back({n, mat});
        }
    }
    return m;
}

MaterialMap MaterialMap::vacuum(const GridSpec& grid, double dt) {
    std::array<Grid3u8, 3> idx;
    for (auto& a : idx) a = Grid3u8(grid.mx(), grid.my(), grid.mz());
    return build(grid, std::move(idx), {}, dt);
}

void MaterialMap::check_shape(const GridSpec& grid) const {
    const long want = static_cast<long>(grid.mx()) * grid.my() * grid.mz();
    for (const auto& g8 : index)
        if (g8.size() != want) throw config_error("material map does not match grid dimensions");
    if (table.empty()) throw config_error("material table is empty");
}

void step_currents(YeeFields& f, const MaterialMap& m, WorkerPool& pool) {
    const MaterialCoeffs* tbl = m.table.data();
    for (int axis = 0; axis < 3; ++axis) {
        const auto& list = m.dispersive[axis];
        if (list.empty()) continue;
        double* J = f.j(axis).data();
        const double* E = f.e(axis).data();
        pool.parallel_for(0, static_cast<long>(list.size()), [&](long s) {
            const DispersiveSample& d = list[s];
            J[d.idx] = tbl[d.mat].alpha * J[d.idx] + tbl[d.mat].beta * E[d.idx];
        });
    }
}

} // namespace pit
