#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "pitfdtd/boundaries.hpp"
#include "pitfdtd/constants.hpp"
#include "pitfdtd/grid.hpp"
#include "pitfdtd/materials.hpp"
#include "pitfdtd/monitors.hpp"
#include "pitfdtd/parallel.hpp"
#include "pitfdtd/sources.hpp"

using namespace pit;

TEST_CASE("a plane pulse advects at the speed of light") {
    GridSpec g;
    g.dx = g.dy = g.dz = 5e-9;
    g.nx = g.ny = 4;
    g.nz = 400;
    g.validate();
    const double dt = courant_dt(g);
    PeriodicSpec per;
    per.x = per.y = true;
    const MaterialMap vac = MaterialMap::vacuum(g, dt);
    WorkerPool pool(1);
    YeeFields f = YeeFields::make(g, dt);

    const double z0 = 500e-9, sigma = 75e-9, lam_c = 150e-9;
    const auto wave = [&](double z) {
        return std::exp(-(z - z0) * (z - z0) / (2 * sigma * sigma)) *
               std::cos(2 * pi * (z - z0) / lam_c);
    };
    for (int i = 0; i <= g.nx; ++i)
        for (int j = 0; j <= g.ny; ++j)
            for (int k = 0; k <= g.nz; ++k) {
                const double z = g.origin[2] + k * g.dz;
                f.Ex(i, j, k) = wave(z);
                f.Hy(i, j, k) = wave(z + g.dz / 2 + c0 * dt / 2) / eta0;
            }

    const auto centroid = [&] {
        double num = 0, den = 0;
        for (int k = 0; k <= g.nz; ++k) {
            const double e = f.Ex(2, 2, k);
            num += (g.origin[2] + k * g.dz) * e * e;
            den += e * e;
        }
        return num / den;
    };
    const double start = centroid();
    CHECK(start == doctest::Approx(z0).epsilon(1e-3));

    const long steps = 692; // approximately 200 cells of travel
    for (long n = 0; n < steps; ++n) {
        step_h(f, g, per, pool);
        apply_periodic(f, g, per);
        step_e(f, g, vac, per, pool);
        apply_periodic(f, g, per);
    }
    const double expect = start + c0 * steps * dt;
    CHECK(centroid() == doctest::Approx(expect).epsilon(0.01));
}

TEST_CASE("a closed-cavity eigenmode oscillates at the discrete eigenfrequency") {
    const int n = 32;
    GridSpec g;
    g.nx = g.ny = g.nz = n;
    g.dx = g.dy = g.dz = 5e-9;
    const double dt = courant_dt(g);
    const MaterialMap vac = MaterialMap::vacuum(g, dt);
    WorkerPool pool(1);
    const PeriodicSpec per;
    YeeFields f = YeeFields::make(g, dt);
    const auto pattern = [&](int i, int k) {
        return std::sin(pi * i / double(n)) * std::sin(pi * k / double(n));
    };
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 1; k < n; ++k) f.Ey(i, j, k) = pattern(i, k);

    std::vector<double> a;
    for (int step = 0; step < 400; ++step) {
        step_h(f, g, per, pool);
        step_e(f, g, vac, per, pool);
        double acc = 0;
        for (int i = 1; i < n; ++i)
            for (int k = 1; k < n; ++k) acc += f.Ey(i, 16, k) * pattern(i, k);
        a.push_back(acc);
    }
    // For a pure cosine sequence, (a[m-1] + a[m+1]) / (2 a[m]) = cos(w dt).
    double best = 0;
    int count = 0;
    for (int m = 50; m < 350; ++m) {
        if (std::abs(a[m]) < 0.2 * std::abs(a[0])) continue;
        best += std::acos(std::clamp((a[m - 1] + a[m + 1]) / (2 * a[m]), -1.0, 1.0));
        ++count;
    }
    REQUIRE(count > 100);
    const double omega_sim = best / count / dt;
    const double omega_pred = 8321856364038273.0; // 2/dt asin(c dt sqrt(2) sin(pi dx / 2L) / dx)
    CHECK(omega_sim == doctest::Approx(omega_pred).epsilon(1e-7));
    // And well separated from the continuum frequency at this resolution.
    CHECK(std::abs(omega_sim - 8324642478979741.0) / omega_pred > 1e-4);
}

TEST_CASE("TFSF interior reproduces the analytic incident wave") {
    GridSpec g;
    g.dx = g.dy = g.dz = 5e-9;
    g.nx = 60;
    g.ny = g.nz = 40;
    g.origin = {0, 0, 0};
    const double dt = courant_dt(g);
    const MaterialMap vac = MaterialMap::vacuum(g, dt);
    WorkerPool pool(1);
    const PeriodicSpec per;
    CpmlParams cp;
    cp.cells = 8;
    Cpml cpml(g, per, cp, dt);
    const PulseSpec pulse = PulseSpec::from_band(700e-9, 600e-9, 800e-9);
    const TfsfBox box{20, 40, 10, 30, 10, 30};
    TfsfSource tfsf(g, box, pulse, cp.cells);
    YeeFields f = YeeFields::make(g, dt);

    double worst = 0;
    const long sample_from = 3500, sample_to = 6000;
    for (long nstep = 0; nstep < sample_to; ++nstep) {
        step_h(f, g, per, pool);
        cpml.apply_h(f, pool);
        tfsf.correct_h(f);
        step_e(f, g, vac, per, pool);
        cpml.apply_e(f, vac, pool);
        tfsf.correct_e(f);
        if (f.step_index >= sample_from && f.step_index % 50 == 0) {
            const double t = f.step_index * f.dt;
            for (int j : {12, 20, 28}) {
                const double y = g.origin[1] + j * g.dy;
                const double expect = tfsf.incident_ex(y, t);
                const double got = f.Ex(30, j, 20);
                worst = std::max(worst, std::abs(got - expect));
            }
        }
    }
    CHECK(worst < 0.01 * pulse.amplitude);
}

TEST_CASE("periodic vacuum column: uniformity, two-plane flux, passivity") {
    GridSpec g;
    g.dx = g.dy = g.dz = 5e-9;
    g.nx = g.ny = 4;
    g.nz = 104;
    g.origin = {0, 0, -200e-9};
    const double dt = courant_dt(g);
    PeriodicSpec per;
    per.x = per.y = true;
    const MaterialMap vac = MaterialMap::vacuum(g, dt);
    WorkerPool pool(1);
    CpmlParams cp;
    Cpml cpml(g, per, cp, dt);
    const PulseSpec pulse = PulseSpec::from_band(700e-9, 600e-9, 800e-9);
    PlaneSource src(g, per, 74, Polarization::s, pulse, cp.cells);
    const FrequencyList freqs = FrequencyList::uniform(600e-9, 800e-9, 21);
    FluxPlane fa(g, per, 30, freqs, 4, -1.0);
    FluxPlane fb(g, per, 40, freqs, 4, -1.0);
    YeeFields f = YeeFields::make(g, dt);

    double nonuniform = 0, peak = 0;
    for (long n = 0; n < 15000; ++n) {
        step_h(f, g, per, pool);
        cpml.apply_h(f, pool);
        apply_periodic(f, g, per);
        step_e(f, g, vac, per, pool);
        cpml.apply_e(f, vac, pool);
        src.inject(f);
        apply_periodic(f, g, per);
        fa.accumulate(f);
        fb.accumulate(f);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                // s polarization drives Ey.
                nonuniform = std::max(nonuniform, std::abs(f.Ey(i, j, 50) - f.Ey(0, 0, 50)));
                peak = std::max(peak, std::abs(f.Ey(0, 0, 50)));
            }
    }
    CHECK(peak > 1e-3);
    CHECK(nonuniform < 1e-6 * peak);

    const Spectrum pa = fa.power(), pb = fb.power();
    double pmax = 0;
    for (double v : pa.values) pmax = std::max(pmax, std::abs(v));
    CHECK(pmax > 0);
    for (size_t i = 0; i < pa.values.size(); ++i) {
        CHECK(std::abs(pa.values[i] - pb.values[i]) < 5e-3 * pmax);
        CHECK(pa.values[i] > -1e-6 * pmax); // transmitted power flows downward
    }
}
