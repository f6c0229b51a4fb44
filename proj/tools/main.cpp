#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pitfdtd/config.hpp"
#include "pitfdtd/csv_io.hpp"
#include "pitfdtd/runner.hpp"
#include "pitfdtd/svg_plot.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string scenario;
    std::string polarization;
    double resolution_nm = 0;
    int workers = -1;
    std::string out_dir;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("config_file", o.config_path, "JSON config file (defaults apply without it)");
    cmd->add_option("--config", o.config_path, "JSON config file (same as the positional)");
    cmd->add_option("--scenario", o.scenario, "near_field_pair | periodic_transmission");
    cmd->add_option("--polarization", o.polarization, "s | p")->check(CLI::IsMember({"s", "p"}));
    cmd->add_option("--resolution-nm", o.resolution_nm, "grid spacing in nm");
    cmd->add_option("--workers", o.workers, "worker threads (0 = auto)");
    cmd->add_option("--out", o.out_dir, "output root directory");
}

pit::SimulationConfig make_config(const CommonOpts& o) {
    pit::SimulationConfig cfg = o.config_path.empty() ? pit::parse_config(nlohmann::json::object())
                                                      : pit::load_config(o.config_path);
    if (!o.scenario.empty()) cfg.scenario = pit::scenario_from_string(o.scenario);
    if (!o.polarization.empty())
        cfg.polarization = o.polarization == "s" ? pit::Polarization::s : pit::Polarization::p;
    if (o.resolution_nm > 0) cfg.resolution = o.resolution_nm * 1e-9;
    if (o.workers >= 0) cfg.workers = o.workers;
    if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
    cfg.validate();
    return cfg;
}

void print_run(const pit::RunResult& r) {
    std::printf("run %s: %s, steps=%ld, wall=%.1fs, decayed=%s (ratio %.3g)\n", r.dir.c_str(),
                r.from_cache ? "cached" : "fresh", r.steps, r.wall_seconds,
                r.decayed ? "yes" : "NO", r.decay_ratio);
    for (const pit::ResonanceFeature& f : r.features)
        std::printf("  %s at %.1f nm (prominence %.4g, width %.1f nm)\n",
                    f.kind == pit::ResonanceFeature::Kind::peak ? "peak" : "dip ", f.wavelength_nm,
                    f.prominence, f.width_nm);
}

int finish(const std::vector<pit::RunResult>& runs) {
    for (const pit::RunResult& r : runs)
        if (!r.decayed) {
            std::fprintf(stderr, "warning: %s hit the step limit before fields decayed\n",
                         r.dir.c_str());
            return 3;
        }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"3D FDTD solver and scenario runner for stacked plasmonic strip resonators"};
    app.require_subcommand(1);

    CommonOpts run_opts;
    CLI::App* run_cmd = app.add_subcommand("run", "run one scenario");
    add_common(run_cmd, run_opts);
    double run_delta_nm = -1;
    run_cmd->add_option("--delta-nm", run_delta_nm, "longitudinal shift of the strip pair in nm");

    CommonOpts sweep_opts;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "near-field runs over a list of shifts");
    add_common(sweep_cmd, sweep_opts);
    std::vector<double> deltas{45, 55, 65, 75, 85};
    sweep_cmd->add_option("--delta", deltas, "shift values in nm (comma separated)")
        ->delimiter(',');

    CLI::App* an_cmd = app.add_subcommand("analyze", "find resonances in a stored spectrum");
    std::string an_in, an_out;
    double an_prominence = -1;
    an_cmd->add_option("spectrum", an_in, "spectrum CSV (wavelength_nm,value)")->required();
    an_cmd->add_option("--prominence", an_prominence, "absolute prominence threshold");
    an_cmd->add_option("--out", an_out, "write features CSV here");

    CLI::App* plot_cmd = app.add_subcommand("plot", "render spectra or field maps to SVG");
    std::string plot_out, plot_map, plot_title = "spectrum", plot_config;
    std::vector<std::string> plot_spectra, plot_labels;
    plot_cmd->add_option("out", plot_out, "output SVG path")->required();
    plot_cmd->add_option("--spectrum", plot_spectra, "spectrum CSV (repeatable)");
    plot_cmd->add_option("--label", plot_labels, "series label (repeatable; labels starting "
                                                 "with 'p' are drawn dashed)");
    plot_cmd->add_option("--map", plot_map, "field map base path (without .csv/.json)");
    plot_cmd->add_option("--title", plot_title, "plot title");
    plot_cmd->add_option("--config", plot_config, "config JSON for strip outlines on maps");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            pit::SimulationConfig cfg = make_config(run_opts);
            if (run_delta_nm >= 0) {
                cfg.geometry.delta = run_delta_nm * 1e-9;
                cfg.validate();
            }
            pit::RunResult r = pit::run_scenario(cfg, cfg.out_dir);
            print_run(r);
            return finish({r});
        }
        if (*sweep_cmd) {
            pit::SimulationConfig cfg = make_config(sweep_opts);
            pit::SweepResult sw = pit::run_delta_sweep(cfg, deltas, cfg.out_dir);
            for (const pit::RunResult& r : sw.runs) print_run(r);
            std::printf("branches: min separation %.2f nm; %s at delta = %.1f nm\n",
                        sw.branches.min_separation_nm,
                        sw.branches.crossed ? "crossing" : "closest approach",
                        sw.branches.crossing_delta_nm);
            return finish(sw.runs);
        }
        if (*an_cmd) {
            const pit::Spectrum s = pit::read_spectrum(an_in, pit::Spectrum::Kind::raw);
            const double prom = an_prominence > 0 ? an_prominence : pit::default_prominence(s);
            const auto features = pit::find_extrema(s, prom);
            for (const pit::ResonanceFeature& f : features)
                std::printf("%s at %.2f nm (prominence %.4g, width %.2f nm)\n",
                            f.kind == pit::ResonanceFeature::Kind::peak ? "peak" : "dip",
                            f.wavelength_nm, f.prominence, f.width_nm);
            if (features.empty()) std::printf("no features above prominence %.4g\n", prom);
            if (!an_out.empty()) pit::write_features(an_out, features);
            return 0;
        }
        if (*plot_cmd) {
            if (!plot_map.empty()) {
                const pit::FieldMapData map = pit::read_field_map(plot_map);
                std::vector<pit::MapOutline> outlines;
                if (!plot_config.empty()) {
                    const pit::SimulationConfig cfg = pit::load_config(plot_config);
                    outlines = pit::strip_outlines(
                        cfg.geometry, cfg.scenario == pit::Scenario::periodic_transmission);
                }
                char title[128];
                std::snprintf(title, sizeof title, "%s at %.0f nm (z = %.0f nm)",
                              map.component.c_str(), map.wavelength_nm, map.plane_z_nm);
                pit::plot_field_map(plot_out, plot_title == "spectrum" ? title : plot_title, map,
                                    outlines);
                return 0;
            }
            if (plot_spectra.empty())
                throw pit::config_error("plot needs --spectrum or --map");
            std::vector<pit::LineSeries> series;
            for (size_t i = 0; i < plot_spectra.size(); ++i) {
                pit::LineSeries ls;
                ls.spectrum = pit::read_spectrum(plot_spectra[i], pit::Spectrum::Kind::raw);
                ls.label = i < plot_labels.size()
                               ? plot_labels[i]
                               : std::filesystem::path(plot_spectra[i]).stem().string();
                ls.dashed = !ls.label.empty() && ls.label[0] == 'p';
                series.push_back(std::move(ls));
            }
            pit::plot_spectra(plot_out, plot_title, "value", series);
            return 0;
        }
    } catch (const pit::instability_error& e) {
        std::fprintf(stderr, "instability: %s\n", e.what());
        return 2;
    } catch (const pit::analysis_error& e) {
        std::fprintf(stderr, "analysis error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) { // config, grid, geometry, I/O
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
