#include "pitfdtd/boundaries.hpp"

#include "pitfdtd/constants.hpp"

#include <cmath>

namespace pit {

void CpmlParams::validate() const {
    if (cells < 4) throw config_error("absorber needs at least 4 cells");
    if (sigma_scale < 0) throw config_error("absorber sigma_scale must be non-negative");
    if (grading_order < 1) throw config_error("absorber grading_order must be >= 1");
    if (kappa_max < 1) throw config_error("absorber kappa_max must be >= 1");
    if (alpha_max < 0) throw config_error("absorber alpha_max must be non-negative");
}

namespace {

int axis_cells(const GridSpec& g, int a) { return a == 0 ? g.nx : (a == 1 ? g.ny : g.nz); }
double axis_spacing(const GridSpec& g, int a) { return a == 0 ? g.dx : (a == 1 ? g.dy : g.dz); }

} // namespace

Cpml::Cpml(const GridSpec& g, const PeriodicSpec& per, const CpmlParams& p, double dt)
    : g_(g), per_(per), params_(p), dt_(dt) {
    g.validate();
    p.validate();
    if (dt <= 0) throw config_error("time step must be positive");
    const int N = p.cells;
    for (int a = 0; a < 3; ++a) {
        if (per.axis(a)) continue;
        const int n = axis_cells(g, a);
        if (2 * N + 2 >= n)
            throw config_error("absorber (" + std::to_string(N) + " cells per face) leaves no interior on a " +
                               std::to_string(n) + "-cell axis");
        active_[a] = true;

        const double d = axis_spacing(g, a);
        const double sigma_max = p.sigma_scale * (p.grading_order + 1.0) / (eta0 * d);
        AxisProfile& P = prof_[a];
        P.be.resize(n + 1);
        P.ae.resize(n + 1);
        P.ike.resize(n + 1);
        P.bh.resize(n);
        P.ah.resize(n);
        P.ikh.resize(n);
        const auto coeffs = [&](double frac, double& b, double& acoef, double& ik) {
            frac = std::max(0.0, frac);
            const double gpow = std::pow(frac, p.grading_order);
            const double sigma = sigma_max * gpow;
            const double kappa = 1.0 + (p.kappa_max - 1.0) * gpow;
            const double alpha = p.alpha_max * (1.0 - frac);
            b = std::exp(-(sigma / kappa + alpha) * dt / eps0);
            const double denom = sigma * kappa + kappa * kappa * alpha;
            acoef = denom > 0 ? sigma * (b - 1.0) / denom : 0.0;
            ik = 1.0 / kappa - 1.0;
        };
        for (int i = 0; i <= n; ++i) {
            double frac = 0;
            if (i <= N)
                frac = static_cast<double>(N - i) / N;
            else if (i >= n - N)
                frac = static_cast<double>(i - (n - N)) / N;
            coeffs(frac, P.be[i], P.ae[i], P.ike[i]);
        }
        for (int i = 0; i < n; ++i) {
            const double x = i + 0.5;
            double frac = 0;
            if (x <= N)
                frac = (N - x) / N;
            else if (x >= n - N)
                frac = (x - (n - N)) / N;
            coeffs(frac, P.bh[i], P.ah[i], P.ikh[i]);
        }
        P.lo_e1 = 1;
        P.lo_e2 = N - 1;
        P.hi_e1 = n - N + 1;
        P.hi_e2 = n - 1;
        P.lo_h1 = 0;
        P.lo_h2 = N - 1;
        P.hi_h1 = n - N;
        P.hi_h2 = n - 1;

        psi_e1_[a] = Grid3(g.mx(), g.my(), g.mz());
        psi_e2_[a] = Grid3(g.mx(), g.my(), g.mz());
        psi_h1_[a] = Grid3(g.mx(), g.my(), g.mz());
        psi_h2_[a] = Grid3(g.mx(), g.my(), g.mz());
    }
}

void Cpml::apply_h(YeeFields& f, WorkerPool& pool) {
    for (int a = 0; a < 3; ++a)
        if (active_[a]) pass(a, false, f, nullptr, pool);
}

void Cpml::apply_e(YeeFields& f, const MaterialMap& m, WorkerPool& pool) {
    m.check_shape(g_);
    for (int a = 0; a < 3; ++a)
        if (active_[a]) pass(a, true, f, &m, pool);
}

// One absorbing axis, one field kind. Corrects the two components that carry a
// derivative along `a`: with b, c the cyclic successors of a,
//   E_b gets -d/da H_c, E_c gets +d/da H_b (backward differences),
//   H_b gets -d/da E_c, H_c gets +d/da E_b (forward differences).
void Cpml::pass(int a, bool e_pass, YeeFields& f, const MaterialMap* m, WorkerPool& pool) {
    const AxisProfile& P = prof_[a];
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    const long stride[3] = {static_cast<long>(g_.my()) * g_.mz(), static_cast<long>(g_.mz()), 1};
    const int cells[3] = {g_.nx, g_.ny, g_.nz};
    const double inv_d = 1.0 / axis_spacing(g_, a);
    const double dsgn = e_pass ? -1.0 : 1.0; // backward vs forward difference
    const long doff = e_pass ? -stride[a] : stride[a];
    const double* B = e_pass ? P.be.data() : P.bh.data();
    const double* A = e_pass ? P.ae.data() : P.ah.data();
    const double* IK = e_pass ? P.ike.data() : P.ikh.data();
    const double hcoef = -dt_ / mu0;

    struct Term {
        int fc, sc;
        double sign;
        Grid3* psi;
    };
    Term terms[2];
    if (e_pass) {
        terms[0] = {b, c, -1.0, &psi_e1_[a]};
        terms[1] = {c, b, +1.0, &psi_e2_[a]};
    } else {
        terms[0] = {b, c, -1.0, &psi_h1_[a]};
        terms[1] = {c, b, +1.0, &psi_h2_[a]};
    }

    for (const Term& t : terms) {
        // Owned index ranges of the corrected component on the two non-absorbing
        // axes; they mirror the main update loops exactly.
        int lo[3], hi[3];
        for (int q = 0; q < 3; ++q) {
            if (q == a) continue;
            const int n = cells[q];
            if (e_pass) {
                if (q == t.fc) {
                    lo[q] = 0;
                    hi[q] = n - 1;
                } else {
                    lo[q] = per_.axis(q) ? 0 : 1;
                    hi[q] = n - 1;
                }
            } else {
                if (q == t.fc) {
                    lo[q] = 0;
                    hi[q] = per_.axis(q) ? n - 1 : n;
                } else {
                    lo[q] = 0;
                    hi[q] = n - 1;
                }
            }
        }
        double* F = (e_pass ? f.e(t.fc) : f.h(t.fc)).data();
        const double* S = (e_pass ? f.h(t.sc) : f.e(t.sc)).data();
        double* PSI = t.psi->data();
        const std::uint8_t* MI = e_pass ? m->index[t.fc].data() : nullptr;
        const MaterialCoeffs* tbl = e_pass ? m->table.data() : nullptr;
        const double sign = t.sign;

        const int slab[2][2] = {{e_pass ? P.lo_e1 : P.lo_h1, e_pass ? P.lo_e2 : P.lo_h2},
                                {e_pass ? P.hi_e1 : P.hi_h1, e_pass ? P.hi_e2 : P.hi_h2}};
        for (const auto& sl : slab) {
            lo[a] = sl[0];
            hi[a] = sl[1];
            if (lo[a] > hi[a]) continue;
            pool.parallel_for(lo[0], hi[0] + 1L, [&](long i) {
                for (int j = lo[1]; j <= hi[1]; ++j) {
                    const long base = i * stride[0] + j * stride[1];
                    for (int k = lo[2]; k <= hi[2]; ++k) {
                        const long n = base + k;
                        const int da = a == 0 ? static_cast<int>(i) : (a == 1 ? j : k);
                        const double d = dsgn * (S[n + doff] - S[n]) * inv_d;
                        PSI[n] = B[da] * PSI[n] + A[da] * d;
                        const double corr = IK[da] * d + PSI[n];
                        const double coef = e_pass ? tbl[MI[n]].cb : hcoef;
                        F[n] += sign * coef * corr;
                    }
                }
            });
        }
    }
}

} // namespace pit
