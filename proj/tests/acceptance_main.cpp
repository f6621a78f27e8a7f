// Acceptance gate for the anti-sway toolkit. Runs ten end-to-end checks
// and prints exactly one PASS/FAIL line per check; exits nonzero if any
// check fails. Expected wall time: well under a minute.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "antisway/antisway.hpp"

namespace {

using namespace antisway;

int g_failures = 0;

void report(int index, const std::string& name, bool ok,
            const std::string& detail) {
    std::printf("%s %2d/10 %s (%s)\n", ok ? "PASS" : "FAIL", index,
                name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

Partition unit3(const std::string& name) {
    return build_partition(name, 1.0, 3, {"N", "Z", "P"});
}

Engine engine3(InferenceMode mode, int grid_points = 1001) {
    return Engine(unit3("phi"), unit3("phidot"), unit3("u"), principles_3x3(),
                  mode, grid_points);
}

Engine engine5(InferenceMode mode) {
    const std::vector<std::string> in{"NB", "NM", "Z", "PM", "PB"};
    const std::vector<std::string> out{"NB", "NM", "NS", "Z", "PS", "PM", "PB"};
    return Engine(build_partition("phi", 1.0, 5, in),
                  build_partition("phidot", 1.0, 5, in),
                  build_partition("u", 1.0, 7, out), table_i(), mode);
}

// 1. Adjacent-center midpoints of every built partition cross at 1/2.
void check_midpoints() {
    double worst = 0.0;
    for (const std::size_t n : {3u, 5u, 7u}) {
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < n; ++k) labels.push_back("t" + std::to_string(k));
        const auto p = build_partition("x", 1.0, n, labels);
        for (std::size_t k = 0; k + 1 < n; ++k) {
            const double mid = 0.5 * (p.terms[k].center + p.terms[k + 1].center);
            worst = std::max(worst,
                             std::abs(eval_membership(p.terms[k], mid) - 0.5));
            worst = std::max(
                worst, std::abs(eval_membership(p.terms[k + 1], mid) - 0.5));
        }
    }
    std::ostringstream d;
    d << "max |mu(mid) - 0.5| = " << worst << " over 3/5/7-term partitions";
    report(1, "membership midpoint crossings at one half", worst <= 1e-12,
           d.str());
}

// 2. The shipped composition table matches the reference cells exactly.
void check_table_golden() {
    const auto rb = table_i();
    const std::vector<std::vector<std::string>> expected = {
        {"NB", "NB", "NM", "NS", "Z"},
        {"NB", "NM", "NS", "Z", "PS"},
        {"NM", "NS", "Z", "PS", "PM"},
        {"NS", "Z", "PS", "PM", "PB"},
        {"Z", "PS", "PM", "PB", "PB"},
    };
    int mismatches = 0;
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) {
            const auto& got =
                rb.out_labels[static_cast<std::size_t>(rb.grid[i][j])];
            if (got != expected[i][j]) ++mismatches;
        }
    }
    std::ostringstream d;
    d << mismatches << " of 25 cells differ";
    report(2, "five-by-five composition table golden match", mismatches == 0,
           d.str());
}

// 3. The worked single-point example of the three-term controller.
void check_worked_example() {
    const auto e = engine3(InferenceMode::mamdani);
    const double u = e.infer(-0.2, 0.6);
    std::ostringstream d;
    d << "infer(-0.2, 0.6) = " << u << ", window [0.133, 0.253]";
    report(3, "worked inference example inside reference window",
           u >= 0.133 && u <= 0.253, d.str());
}

// 4. Point-reflection antisymmetry and the exact zero fixed point.
void check_antisymmetry() {
    const auto grid = detail::mirrored_grid(1.0, 41);
    double worst = 0.0;
    double worst_zero = 0.0;
    for (const auto mode :
         {InferenceMode::mamdani, InferenceMode::sugeno_singleton}) {
        for (const bool five : {false, true}) {
            const Engine e = five ? engine5(mode) : engine3(mode);
            for (const double phi : grid) {
                for (const double phidot : grid) {
                    worst = std::max(worst, std::abs(e.infer(-phi, -phidot) +
                                                     e.infer(phi, phidot)));
                }
            }
            worst_zero = std::max(worst_zero, std::abs(e.infer(0.0, 0.0)));
        }
    }
    std::ostringstream d;
    d << "max |u(-x) + u(x)| = " << worst << ", |u(0,0)| = " << worst_zero
      << " over 41x41, both tables, both modes";
    report(4, "controller point-reflection antisymmetry",
           worst < 1e-9 && worst_zero < 1e-9, d.str());
}

// 5. Plant fidelity: conserved energy and the period law.
void check_plant() {
    PlantParams p;
    PendulumState s{0.1, 0.0, 0.0};
    const double e0 = pendulum_energy(p, s);
    const double dt = natural_period(p) / 1000.0;
    for (int k = 0; k < 10000; ++k) s = rk4_step(p, s, 0.0, dt);
    const double drift = std::abs(pendulum_energy(p, s) - e0) / e0;

    double worst_period_err = 0.0;
    for (const double l : {0.3, 1.0, 3.4}) {
        PlantParams pl;
        pl.length = l;
        const double t_nat = natural_period(pl);
        PendulumState st{0.05, 0.0, 0.0};
        const double h = t_nat / 1000.0;
        std::vector<double> crossings;
        double prev_phi = st.phi, prev_t = st.t;
        while (st.t < 10.0 * t_nat) {
            st = rk4_step(pl, st, 0.0, h);
            if (prev_phi < 0.0 && st.phi >= 0.0) {
                const double frac = -prev_phi / (st.phi - prev_phi);
                crossings.push_back(prev_t + frac * (st.t - prev_t));
            }
            prev_phi = st.phi;
            prev_t = st.t;
        }
        const double period =
            crossings.size() >= 2
                ? (crossings.back() - crossings.front()) /
                      static_cast<double>(crossings.size() - 1)
                : 0.0;
        worst_period_err =
            std::max(worst_period_err, std::abs(period - t_nat) / t_nat);
    }
    std::ostringstream d;
    d << "energy drift " << drift << " over 10 periods, worst period error "
      << worst_period_err * 100.0 << "% at lengths {0.3, 1, 3.4}";
    report(5, "plant energy conservation and period law",
           drift < 1e-6 && worst_period_err < 0.01, d.str());
}

std::string config_dir() { return ANTISWAY_CONFIG_DIR; }

// 6. The shipped default closes the loop: finite settle, smaller amplitude.
void check_closed_loop_damping(const ExperimentConfig& cfg,
                               const Engine& engine) {
    const auto closed = antisway::run(make_run_config(cfg, &engine));
    const auto open = antisway::run(make_run_config(cfg, nullptr));
    const bool ok = closed.amplitude < open.amplitude &&
                    closed.settle_time.has_value() &&
                    !open.settle_time.has_value();
    std::ostringstream d;
    d << "closed amplitude " << closed.amplitude << " vs open "
      << open.amplitude << ", closed settles at "
      << (closed.settle_time ? format_real(*closed.settle_time)
                             : std::string("never"))
      << " periods, open "
      << (open.settle_time ? format_real(*open.settle_time)
                           : std::string("NOT_SETTLED"));
    report(6, "default controller damps the default pendulum", ok, d.str());
}

// 7 and 8 share one sweep of the default grid.
void check_sweep_criteria(const ExperimentConfig& cfg, const Engine& engine) {
    const auto base = make_run_config(cfg, &engine);
    const auto grid = default_length_grid();
    const auto sw = sweep_lengths(base, grid);

    bool all_below_one = true;
    double worst_v = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] >= 0.3 - 1e-9 && grid[i] <= 3.4 + 1e-9) {
            worst_v = std::max(worst_v, sw.V[i]);
            if (!(sw.V[i] < 1.0)) all_below_one = false;
        }
    }
    std::ostringstream d7;
    d7 << "max V over [0.3, 3.4] = " << worst_v;
    report(7, "design-range robustness, V below one", all_below_one, d7.str());

    auto v_at = [&](double l) {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (std::abs(grid[i] - l) < 1e-9) return sw.V[i];
        }
        return -1.0;
    };
    const std::vector<double> knees{3.4, 4.0, 4.4, 4.8};
    bool nondecreasing = true;
    std::ostringstream d8;
    d8 << "V(l) =";
    double prev = -1.0;
    for (const double l : knees) {
        const double v = v_at(l);
        d8 << " " << v;
        if (v < prev) nondecreasing = false;
        prev = v;
    }
    d8 << " at l = {3.4, 4.0, 4.4, 4.8}";
    report(8, "degradation trend beyond the design range", nondecreasing,
           d8.str());
}

// 9. Defuzzifier grid-refinement convergence on random inputs.
void check_convergence() {
    const auto coarse = engine3(InferenceMode::mamdani, 1001);
    const auto fine = engine3(InferenceMode::mamdani, 2001);
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double phi = dist(rng);
        const double phidot = dist(rng);
        worst = std::max(worst, std::abs(coarse.infer(phi, phidot) -
                                         fine.infer(phi, phidot)));
    }
    std::ostringstream d;
    d << "max |u_2001 - u_1001| = " << worst << " over 100 random inputs";
    report(9, "centroid grid-refinement convergence", worst < 1e-3, d.str());
}

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 10. Determinism of the sweep command plus rule-table round-trip.
void check_determinism() {
    const std::string cli = ANTISWAY_CLI_PATH;
    const std::string cfg = config_dir() + "/default.json";
    const std::string out_a = "acceptance_sweep_a.csv";
    const std::string out_b = "acceptance_sweep_b.csv";
    const std::string cmd_a = cli + " sweep --config " + cfg + " --out " +
                              out_a + " > /dev/null 2>&1";
    const std::string cmd_b = cli + " sweep --config " + cfg + " --out " +
                              out_b + " > /dev/null 2>&1";
    const bool ran = std::system(cmd_a.c_str()) == 0 &&
                     std::system(cmd_b.c_str()) == 0;
    const auto bytes_a = read_file(out_a);
    const auto bytes_b = read_file(out_b);
    const bool identical =
        ran && bytes_a.has_value() && bytes_a == bytes_b && !bytes_a->empty();

    bool round_trips = true;
    for (const auto& rb : {table_i(), principles_3x3()}) {
        if (parse_rulebase(serialize_rulebase(rb), rb.row_labels,
                           rb.col_labels, rb.out_labels) != rb) {
            round_trips = false;
        }
    }
    std::ostringstream d;
    d << "two sweep runs " << (identical ? "byte-identical" : "DIFFER") << " ("
      << (bytes_a ? bytes_a->size() : 0)
      << " bytes), rule tables round-trip: " << (round_trips ? "yes" : "no");
    report(10, "sweep determinism and rule-table round-trip",
           identical && round_trips, d.str());
}

}  // namespace

int main() {
    check_midpoints();
    check_table_golden();
    check_worked_example();
    check_antisymmetry();
    check_plant();

    ExperimentConfig cfg;
    try {
        cfg = load_config(config_dir() + "/default.json");
    } catch (const std::exception& e) {
        std::cerr << "cannot load the shipped default config: " << e.what()
                  << '\n';
        report(6, "default controller damps the default pendulum", false,
               "config load failed");
        report(7, "design-range robustness, V below one", false,
               "config load failed");
        report(8, "degradation trend beyond the design range", false,
               "config load failed");
        check_convergence();
        check_determinism();
        return g_failures == 0 ? 0 : 1;
    }
    const Engine engine = make_engine(cfg.controller);
    check_closed_loop_damping(cfg, engine);
    check_sweep_criteria(cfg, engine);
    check_convergence();
    check_determinism();

    if (g_failures != 0) {
        std::printf("%d of 10 acceptance checks failed\n", g_failures);
        return 1;
    }
    std::printf("all 10 acceptance checks passed\n");
    return 0;
}
