// antisway: batch front end for the fuzzy anti-sway toolkit.
//
//   antisway infer    --config cfg.json --phi 0.1 --phidot -0.05
//   antisway surface  --config cfg.json --n 41 --out surface.csv
//   antisway simulate --config cfg.json --out run.csv [--open-loop]
//   antisway sweep    --config cfg.json --out sweep.csv
//
// Exit codes: 0 success, 1 usage/argument error, 2 config error, 3 I/O error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "antisway/antisway.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

antisway::ExperimentConfig load_or_exit(const std::string& path) {
    try {
        return antisway::load_config(path);
    } catch (const std::exception& e) {
        std::cerr << "antisway: " << e.what() << '\n';
        std::exit(kExitConfig);
    }
}

antisway::Engine build_engine_or_exit(const antisway::ExperimentConfig& cfg) {
    try {
        return antisway::make_engine(cfg.controller);
    } catch (const std::exception& e) {
        std::cerr << "antisway: " << e.what() << '\n';
        std::exit(kExitConfig);
    }
}

std::ofstream open_output_or_exit(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        std::cerr << "antisway: cannot open output file: " << path << '\n';
        std::exit(kExitIo);
    }
    return out;
}

void flush_or_exit(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) {
        std::cerr << "antisway: failed writing output file: " << path << '\n';
        std::exit(kExitIo);
    }
}

std::string settle_text(const std::optional<double>& settle) {
    return settle.has_value() ? antisway::format_real(*settle) : "NOT_SETTLED";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fuzzy anti-sway controller toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    double phi = 0.0;
    double phidot = 0.0;
    int n = 41;
    bool open_loop = false;

    auto* infer = app.add_subcommand("infer", "Evaluate the controller once");
    infer->add_option("--config", config_path, "Experiment config (JSON)")
        ->required();
    infer->add_option("--phi", phi, "Deflection input, controller units")
        ->required();
    infer->add_option("--phidot", phidot, "Rate input, controller units")
        ->required();

    auto* surface = app.add_subcommand("surface", "Export the control surface");
    surface->add_option("--config", config_path, "Experiment config (JSON)")
        ->required();
    surface->add_option("--n", n, "Grid points per axis (default 41)");
    surface->add_option("--out", out_path, "Output CSV path")->required();

    auto* simulate =
        app.add_subcommand("simulate", "Run one pendulum simulation");
    simulate->add_option("--config", config_path, "Experiment config (JSON)")
        ->required();
    simulate->add_option("--out", out_path, "Output CSV path")->required();
    simulate->add_flag("--open-loop", open_loop, "Disable the controller");

    auto* sweep =
        app.add_subcommand("sweep", "Suspension-length sensitivity sweep");
    sweep->add_option("--config", config_path, "Experiment config (JSON)")
        ->required();
    sweep->add_option("--out", out_path, "Output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help lands here too; CLI11 returns 0 for it.
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (infer->parsed()) {
        if (!std::isfinite(phi) || !std::isfinite(phidot)) {
            std::cerr << "antisway: --phi and --phidot must be finite\n";
            return kExitUsage;
        }
        const auto cfg = load_or_exit(config_path);
        const auto engine = build_engine_or_exit(cfg);
        std::cout << antisway::format_real(engine.infer(phi, phidot)) << '\n';
        return 0;
    }

    if (surface->parsed()) {
        if (n < 2) {
            std::cerr << "antisway: --n must be at least 2\n";
            return kExitUsage;
        }
        const auto cfg = load_or_exit(config_path);
        const auto engine = build_engine_or_exit(cfg);
        const auto grid = static_cast<std::size_t>(n);
        const auto u = engine.surface(grid, grid);
        const auto phis =
            antisway::detail::mirrored_grid(engine.input_phi().z_max, grid);
        const auto phidots =
            antisway::detail::mirrored_grid(engine.input_phidot().z_max, grid);
        auto out = open_output_or_exit(out_path);
        antisway::write_surface_csv(out, phis, phidots, u);
        flush_or_exit(out, out_path);
        return 0;
    }

    if (simulate->parsed()) {
        const auto cfg = load_or_exit(config_path);
        antisway::SimResult result;
        try {
            if (open_loop) {
                result = antisway::run(antisway::make_run_config(cfg, nullptr));
            } else {
                const auto engine = build_engine_or_exit(cfg);
                result = antisway::run(antisway::make_run_config(cfg, &engine));
            }
        } catch (const std::invalid_argument& e) {
            std::cerr << "antisway: " << e.what() << '\n';
            return kExitConfig;
        }
        auto out = open_output_or_exit(out_path);
        antisway::write_timeseries_csv(out, result);
        flush_or_exit(out, out_path);
        std::cout << "amplitude " << antisway::format_real(result.amplitude)
                  << '\n'
                  << "settle_time " << settle_text(result.settle_time) << '\n';
        return 0;
    }

    // sweep
    const auto cfg = load_or_exit(config_path);
    const auto engine = build_engine_or_exit(cfg);
    antisway::SweepResult result;
    try {
        const auto base = antisway::make_run_config(cfg, &engine);
        result = antisway::sweep_lengths(base, antisway::sweep_grid(cfg));
    } catch (const std::invalid_argument& e) {
        std::cerr << "antisway: " << e.what() << '\n';
        return kExitConfig;
    }
    auto out = open_output_or_exit(out_path);
    antisway::write_sweep_csv(out, result);
    flush_or_exit(out, out_path);
    return 0;
}
