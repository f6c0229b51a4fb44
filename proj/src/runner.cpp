#include "pitfdtd/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>

#include "pitfdtd/boundaries.hpp"
#include "pitfdtd/monitors.hpp"
#include "pitfdtd/parallel.hpp"
#include "pitfdtd/sources.hpp"

namespace fs = std::filesystem;

namespace pit {

namespace {

constexpr double nm = 1e-9;

// ---------------------------------------------------------------------------
// Cache bookkeeping: a run directory is valid when metadata.json exists, is
// marked complete, and records exactly the canonical config we want.

nlohmann::json read_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) return nlohmann::json();
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception&) {
        return nlohmann::json();
    }
    return j;
}

bool cache_valid(const fs::path& dir, const nlohmann::json& want_config) {
    const nlohmann::json meta = read_json_file(dir / "metadata.json");
    return meta.is_object() && meta.value("complete", false) && meta.contains("config") &&
           meta.at("config") == want_config;
}

std::vector<double> read_scores_file(const fs::path& path, size_t expect) {
    std::ifstream in(path);
    if (!in) throw analysis_error("cannot open file: " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "wavelength_nm,score")
        throw analysis_error(path.string() + ": bad header");
    std::vector<double> scores;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw analysis_error(path.string() + ": bad row");
        scores.push_back(std::stod(line.substr(comma + 1)));
    }
    if (scores.size() != expect) throw analysis_error(path.string() + ": row count mismatch");
    return scores;
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ---------------------------------------------------------------------------
// Scenario assembly.

struct Setup {
    GridSpec g;
    PeriodicSpec per;
    MaterialMap mat;
    Cpml cpml;
    std::optional<TfsfSource> tfsf;
    std::optional<PlaneSource> plane;
    double dt = 0;
};

// Snaps [lo, hi] outward to grid planes that are whole multiples of res, so
// geometry coordinates (multiples of the design step) land exactly on sample
// positions and the x=y=0 axes stay inversion centers of the sample lattice.
void snap_axis(double lo, double hi, double res, double& origin, int& count) {
    origin = std::floor(lo / res + 1e-9) * res;
    count = static_cast<int>(std::ceil((hi - origin) / res - 1e-9));
}

Setup make_near_field_setup(const SimulationConfig& cfg) {
    const UnitCellParams& p = cfg.geometry;
    const double res = cfg.resolution;
    const Scene scene = build_isolated_pair(p);

    // Probe and classification windows reach 10 nm past the strip ends; keep
    // them well inside the total-field box.
    const double reach = 15 * nm + 2 * res;
    const double tf_gap = 3 * res;              // strips to TFSF faces
    const double scatter = 12 * res;            // scattered-field ring
    const double absorber = cfg.boundaries.cells * res;

    Vec3 tf_lo = scene.bbox_lo, tf_hi = scene.bbox_hi;
    for (int a = 0; a < 2; ++a) {
        tf_lo[a] -= reach;
        tf_hi[a] += reach;
    }
    for (int a = 0; a < 3; ++a) {
        tf_lo[a] -= tf_gap;
        tf_hi[a] += tf_gap;
    }

    Setup s;
    s.g.dx = s.g.dy = s.g.dz = res;
    s.g.courant_factor = cfg.courant_factor;
    const double pad = scatter + absorber;
    snap_axis(tf_lo[0] - pad, tf_hi[0] + pad, res, s.g.origin[0], s.g.nx);
    snap_axis(tf_lo[1] - pad, tf_hi[1] + pad, res, s.g.origin[1], s.g.ny);
    snap_axis(tf_lo[2] - pad, tf_hi[2] + pad, res, s.g.origin[2], s.g.nz);
    // The pair's end faces (all congruent modulo the cell for sweep deltas in
    // whole nanometre steps) must sit on Ex sample planes at every resolution.
    align_face_to_half_grid(scene.bbox_lo[0], res, s.g.origin[0], &s.g.nx);
    s.g.validate();
    s.dt = courant_dt(s.g);

    s.per = PeriodicSpec{};
    s.mat = MaterialMap::build(s.g, voxelize(scene, s.g), {cfg.silver}, s.dt);
    s.cpml = Cpml(s.g, s.per, cfg.boundaries, s.dt);

    TfsfBox box;
    box.i0 = static_cast<int>(std::floor((tf_lo[0] - s.g.origin[0]) / res + 1e-9));
    box.j0 = static_cast<int>(std::floor((tf_lo[1] - s.g.origin[1]) / res + 1e-9));
    box.k0 = static_cast<int>(std::floor((tf_lo[2] - s.g.origin[2]) / res + 1e-9));
    box.i1 = static_cast<int>(std::ceil((tf_hi[0] - s.g.origin[0]) / res - 1e-9));
    box.j1 = static_cast<int>(std::ceil((tf_hi[1] - s.g.origin[1]) / res - 1e-9));
    box.k1 = static_cast<int>(std::ceil((tf_hi[2] - s.g.origin[2]) / res - 1e-9));
    s.tfsf.emplace(s.g, box, cfg.pulse, cfg.boundaries.cells);
    return s;
}

Setup make_periodic_setup(const SimulationConfig& cfg, bool with_structure, int& k_source,
                          int& k_flux, int& k_map) {
    const UnitCellParams& p = cfg.geometry;
    const double res = cfg.resolution;
    const int nx = static_cast<int>(std::lround(p.period_x / res));
    const int ny = static_cast<int>(std::lround(p.period_y / res));
    if (std::abs(nx * res - p.period_x) > 1e-15 || std::abs(ny * res - p.period_y) > 1e-15)
        throw config_error("resolution_nm must divide both periods");

    const double absorber = cfg.boundaries.cells * res;
    const double stack_top = 2 * p.thickness + p.h;
    const double z_flux = -50 * nm;        // below the lowest strip face at z=0
    const double z_source = stack_top + 100 * nm;
    const double z_lo = z_flux - 100 * nm - absorber;
    const double z_hi = z_source + 100 * nm + absorber;

    Setup s;
    s.g.dx = s.g.dy = s.g.dz = res;
    s.g.courant_factor = cfg.courant_factor;
    s.g.nx = nx;
    s.g.ny = ny;
    s.g.origin[0] = -p.period_x / 2;
    s.g.origin[1] = -p.period_y / 2;
    snap_axis(z_lo, z_hi, res, s.g.origin[2], s.g.nz);
    // Conform each transverse axis to the end faces of the strip that is long
    // along it: the lower pair along x, the upper strip along y. Periodic
    // extents stay nx, ny cells; only the wrap phase moves.
    align_face_to_half_grid(-p.l2 / 2 - p.delta / 2, res, s.g.origin[0], nullptr);
    align_face_to_half_grid(-p.l1 / 2, res, s.g.origin[1], nullptr);
    s.g.validate();
    s.dt = courant_dt(s.g);

    s.per.x = s.per.y = true;
    if (with_structure) {
        s.mat = MaterialMap::build(s.g, voxelize(build_unit_cell(p), s.g), {cfg.silver}, s.dt);
    } else {
        s.mat = MaterialMap::vacuum(s.g, s.dt);
    }
    s.cpml = Cpml(s.g, s.per, cfg.boundaries, s.dt);

    const auto k_of = [&](double z) { return static_cast<int>(std::lround((z - s.g.origin[2]) / res)); };
    k_source = k_of(z_source);
    k_flux = k_of(z_flux);
    k_map = k_of(p.thickness / 2);
    s.plane.emplace(s.g, s.per, k_source, cfg.polarization, cfg.pulse, cfg.boundaries.cells);
    return s;
}

// ---------------------------------------------------------------------------
// Time stepping.

struct LoopStats {
    long steps = 0;
    bool decayed = false;
    double decay_ratio = 0;
};

template <typename MonitorFn>
LoopStats time_loop(const SimulationConfig& cfg, Setup& s, WorkerPool& pool, MonitorFn&& monitors) {
    YeeFields f = YeeFields::make(s.g, s.dt);
    const double settle = 2 * cfg.pulse.t0; // source envelope has fully passed
    const double limit = 1e7 * std::max(cfg.pulse.amplitude, 1e-300);
    double peak_energy = 0;
    LoopStats st;
    for (long n = 0; n < cfg.max_steps; ++n) {
        step_h(f, s.g, s.per, pool);
        s.cpml.apply_h(f, pool);
        if (s.tfsf) s.tfsf->correct_h(f);
        apply_periodic(f, s.g, s.per);
        step_currents(f, s.mat, pool);
        step_e(f, s.g, s.mat, s.per, pool);
        s.cpml.apply_e(f, s.mat, pool);
        if (s.tfsf) s.tfsf->correct_e(f);
        if (s.plane) s.plane->inject(f);
        apply_periodic(f, s.g, s.per);
        monitors(f);
        st.steps = f.step_index;
        if (f.step_index % 500 == 0) {
            check_stable(f, limit);
            const double en = field_energy(f, s.g, s.per);
            peak_energy = std::max(peak_energy, en);
            if (peak_energy > 0) st.decay_ratio = en / peak_energy;
            if (f.step_index * f.dt > settle && peak_energy > 0 &&
                en <= cfg.decay_threshold * peak_energy) {
                st.decayed = true;
                break;
            }
        }
    }
    return st;
}

// ---------------------------------------------------------------------------
// Output writing.

void write_metadata(const fs::path& dir, const nlohmann::json& config, const std::string& hash,
                    const Setup& s, const LoopStats& st, double wall_seconds,
                    const std::vector<std::string>& outputs) {
    nlohmann::json meta;
    meta["complete"] = true;
    meta["config"] = config;
    meta["hash"] = hash;
    meta["steps"] = st.steps;
    meta["wall_seconds"] = wall_seconds;
    meta["decayed"] = st.decayed;
    meta["decay_ratio"] = st.decay_ratio;
    meta["dt_s"] = s.dt;
    meta["grid"] = {{"nx", s.g.nx},
                    {"ny", s.g.ny},
                    {"nz", s.g.nz},
                    {"origin_nm", {s.g.origin[0] / nm, s.g.origin[1] / nm, s.g.origin[2] / nm}},
                    {"resolution_nm", s.g.dx / nm}};
    meta["outputs"] = outputs;
    std::ofstream out(dir / "metadata.json");
    if (!out) throw analysis_error("cannot write " + (dir / "metadata.json").string());
    out << meta.dump(2) << '\n';
}

// Owned E_y samples of a z-plane slice as a writable map (drops halo rows).
FieldMapData to_map_data(const std::vector<std::complex<double>>& slice, const GridSpec& g,
                         int k_plane, double wavelength_nm) {
    FieldMapData map;
    map.nx = g.nx + 1;
    map.ny = g.ny; // E_y sits on half-integer y nodes; j = ny would leave the domain
    map.x0_nm = g.origin[0] / nm;
    map.y0_nm = (g.origin[1] + g.dy / 2) / nm;
    map.dx_nm = g.dx / nm;
    map.dy_nm = g.dy / nm;
    map.wavelength_nm = wavelength_nm;
    map.plane_z_nm = (g.origin[2] + k_plane * g.dz) / nm;
    map.component = "Ey";
    map.values.resize(static_cast<size_t>(map.nx) * map.ny);
    for (int i = 0; i < map.nx; ++i)
        for (int j = 0; j < map.ny; ++j)
            map.values[static_cast<size_t>(i) * map.ny + j] = slice[static_cast<size_t>(i) * g.my() + j];
    return map;
}

void write_common_outputs(const fs::path& dir, const SimulationConfig& cfg, RunResult& r,
                          const FieldMapMonitor& map_mon, const GridSpec& g, int k_map,
                          std::vector<std::string>& outputs) {
    write_spectrum((dir / "spectrum.csv").string(), r.spectrum);
    outputs.push_back("spectrum.csv");
    write_features((dir / "features.csv").string(), r.features);
    outputs.push_back("features.csv");

    const FrequencyList freqs = cfg.frequencies();
    r.scores.resize(freqs.size());
    for (size_t fi = 0; fi < freqs.size(); ++fi)
        r.scores[fi] = field_symmetry_score(map_mon.slice(fi), g, k_map, cfg.geometry);
    write_scores((dir / "scores.csv").string(), r.spectrum.wavelengths_nm, r.scores);
    outputs.push_back("scores.csv");

    if (cfg.field_maps) {
        for (const ResonanceFeature& feat : r.features) {
            const size_t fi = freqs.nearest(feat.wavelength_nm * nm);
            char name[64];
            std::snprintf(name, sizeof name, "map_%04dnm", static_cast<int>(std::lround(feat.wavelength_nm)));
            const fs::path base = dir / name;
            if (fs::exists(base.string() + ".csv")) continue;
            write_field_map(base.string(), to_map_data(map_mon.slice(fi), g, k_map,
                                                       freqs.wavelengths[fi] / nm));
            outputs.push_back(std::string(name) + ".csv");
        }
    }
}

RunResult load_cached(const fs::path& dir, const SimulationConfig& cfg) {
    RunResult r;
    r.dir = dir.string();
    r.from_cache = true;
    const nlohmann::json meta = read_json_file(dir / "metadata.json");
    r.steps = meta.value("steps", 0L);
    r.wall_seconds = meta.value("wall_seconds", 0.0);
    r.decayed = meta.value("decayed", false);
    r.decay_ratio = meta.value("decay_ratio", 0.0);
    const auto kind = cfg.scenario == Scenario::near_field_pair ? Spectrum::Kind::near_field
                                                                : Spectrum::Kind::transmission;
    r.spectrum = read_spectrum((dir / "spectrum.csv").string(), kind);
    r.features = read_features((dir / "features.csv").string());
    r.scores = read_scores_file(dir / "scores.csv", r.spectrum.values.size());
    return r;
}

// ---------------------------------------------------------------------------
// Scenarios.

RunResult run_near_field(const SimulationConfig& cfg, const fs::path& dir, WorkerPool& pool) {
    Setup s = make_near_field_setup(cfg);
    const UnitCellParams& p = cfg.geometry;
    const FrequencyList freqs = cfg.frequencies();

    const Vec3 probe_pos{p.l2 / 2 + p.delta / 2 + 10 * nm, p.u / 2 + p.w2 / 2, p.thickness / 2};
    PointProbe probe(s.g, Comp::Ey, probe_pos, freqs, cfg.dft_interval);
    const int k_map = static_cast<int>(std::lround((p.thickness / 2 - s.g.origin[2]) / s.g.dz));
    FieldMapMonitor map_mon(s.g, Comp::Ey, k_map, freqs, cfg.dft_interval);

    const auto start = std::chrono::steady_clock::now();
    const LoopStats st = time_loop(cfg, s, pool, [&](const YeeFields& f) {
        probe.accumulate(f);
        map_mon.accumulate(f);
    });

    RunResult r;
    r.dir = dir.string();
    r.steps = st.steps;
    r.decayed = st.decayed;
    r.decay_ratio = st.decay_ratio;
    r.spectrum = probe_spectrum(probe, cfg.pulse);
    r.features = find_extrema(r.spectrum, default_prominence(r.spectrum));
    std::vector<std::string> outputs;
    write_common_outputs(dir, cfg, r, map_mon, s.g, k_map, outputs);
    r.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_metadata(dir, cfg.canonical_json(), config_hash(cfg), s, st, r.wall_seconds, outputs);
    return r;
}

nlohmann::json reference_json(const SimulationConfig& cfg) {
    nlohmann::json j = cfg.canonical_json();
    j["scenario"] = "periodic_reference";
    // The empty cell only depends on the domain extents, not the strips.
    j["geometry"] = {{"period_x", cfg.geometry.period_x / nm},
                     {"period_y", cfg.geometry.period_y / nm},
                     {"stack_top_nm", (2 * cfg.geometry.thickness + cfg.geometry.h) / nm}};
    j.erase("output");
    return j;
}

Spectrum reference_flux(const SimulationConfig& cfg, const fs::path& out_root, WorkerPool& pool) {
    const nlohmann::json want = reference_json(cfg);
    const fs::path dir = out_root / fnv1a_hex(want.dump());
    if (cache_valid(dir, want)) return read_spectrum((dir / "flux.csv").string(), Spectrum::Kind::raw);

    fs::create_directories(dir);
    int k_source = 0, k_flux = 0, k_map = 0;
    Setup s = make_periodic_setup(cfg, /*with_structure=*/false, k_source, k_flux, k_map);
    FluxPlane flux(s.g, s.per, k_flux, cfg.frequencies(), cfg.dft_interval, /*normal_sign=*/-1);
    const auto start = std::chrono::steady_clock::now();
    const LoopStats st = time_loop(cfg, s, pool, [&](const YeeFields& f) { flux.accumulate(f); });
    const Spectrum p = flux.power();
    write_spectrum((dir / "flux.csv").string(), p);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_metadata(dir, want, fnv1a_hex(want.dump()), s, st, wall, {"flux.csv"});
    return p;
}

RunResult run_periodic(const SimulationConfig& cfg, const fs::path& dir, const fs::path& out_root,
                       WorkerPool& pool) {
    const Spectrum ref = reference_flux(cfg, out_root, pool);

    int k_source = 0, k_flux = 0, k_map = 0;
    Setup s = make_periodic_setup(cfg, /*with_structure=*/true, k_source, k_flux, k_map);
    FluxPlane flux(s.g, s.per, k_flux, cfg.frequencies(), cfg.dft_interval, /*normal_sign=*/-1);
    FieldMapMonitor map_mon(s.g, Comp::Ey, k_map, cfg.frequencies(), cfg.dft_interval);

    const auto start = std::chrono::steady_clock::now();
    const LoopStats st = time_loop(cfg, s, pool, [&](const YeeFields& f) {
        flux.accumulate(f);
        map_mon.accumulate(f);
    });

    RunResult r;
    r.dir = dir.string();
    r.steps = st.steps;
    r.decayed = st.decayed;
    r.decay_ratio = st.decay_ratio;
    const Spectrum raw = flux.power();
    write_spectrum((dir / "flux.csv").string(), raw);
    r.spectrum = transmission(raw, ref);
    r.features = find_extrema(r.spectrum, default_prominence(r.spectrum));
    std::vector<std::string> outputs{"flux.csv"};
    write_common_outputs(dir, cfg, r, map_mon, s.g, k_map, outputs);
    r.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_metadata(dir, cfg.canonical_json(), config_hash(cfg), s, st, r.wall_seconds, outputs);
    return r;
}

} // namespace

RunResult run_scenario(const SimulationConfig& cfg, const std::string& out_root) {
    cfg.validate();
    const std::string hash = config_hash(cfg);
    const fs::path dir = fs::path(out_root) / hash;
    if (cache_valid(dir, cfg.canonical_json())) return load_cached(dir, cfg);
    fs::create_directories(dir);
    WorkerPool pool(cfg.workers > 0 ? cfg.workers : WorkerPool::default_workers());
    if (cfg.scenario == Scenario::near_field_pair) return run_near_field(cfg, dir, pool);
    return run_periodic(cfg, dir, fs::path(out_root), pool);
}

SweepResult run_delta_sweep(SimulationConfig cfg, const std::vector<double>& deltas_nm,
                            const std::string& out_root) {
    cfg.scenario = Scenario::near_field_pair;
    SweepResult sw;
    for (double d : deltas_nm) {
        cfg.geometry.delta = d * nm;
        RunResult r = run_scenario(cfg, out_root);
        SweepPoint pt;
        pt.delta_nm = d;
        for (const ResonanceFeature& f : r.features)
            if (f.kind == ResonanceFeature::Kind::peak) pt.features.push_back(f);
        sw.points.push_back(pt);
        sw.runs.push_back(std::move(r));
    }
    sw.branches = sweep_branches(sw.points);
    write_branches((fs::path(out_root) / "branches.csv").string(), sw.branches);
    return sw;
}

std::vector<MapOutline> strip_outlines(const UnitCellParams& p, bool include_upper) {
    std::vector<MapOutline> out;
    const auto add = [&](double x0, double y0, double x1, double y1) {
        out.push_back({x0 / nm, y0 / nm, x1 / nm, y1 / nm});
    };
    add(-p.l2 / 2 - p.delta / 2, -p.u / 2 - p.w2, p.l2 / 2 - p.delta / 2, -p.u / 2);
    add(-p.l2 / 2 + p.delta / 2, p.u / 2, p.l2 / 2 + p.delta / 2, p.u / 2 + p.w2);
    if (include_upper) add(p.s - p.w1 / 2, -p.l1 / 2, p.s + p.w1 / 2, p.l1 / 2);
    return out;
}

} // namespace pit
