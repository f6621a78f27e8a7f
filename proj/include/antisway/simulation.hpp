#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "antisway/inference.hpp"
#include "antisway/plant.hpp"

namespace antisway {

/// Reference oscillation period at the unit design length, 2*pi*sqrt(1/g).
/// Horizons and settle times are expressed in multiples of this period.
inline double design_period(const PlantParams& p) {
    return 2.0 * std::numbers::pi * std::sqrt(1.0 / p.gravity);
}

/// One closed- or open-loop experiment. The engine is optional: without
/// one the pendulum swings freely. Scales map the physical state onto the
/// controller's [-1, 1] universes.
struct RunConfig {
    PlantParams plant;
    const Engine* engine = nullptr;
    double phi0 = 0.1;
    double phidot0 = 0.0;
    double horizon_periods = 10.0;
    double dt = 2.0 * std::numbers::pi / 1000.0;
    double settle_fraction = 0.05;
    double phi_scale = 0.3;
    double phidot_scale = 0.1;
};

/// Trajectory plus the two scalar metrics of the sensitivity study.
/// settle_time is empty when the deflection never stays inside the settle
/// band through the end of the horizon.
struct SimResult {
    std::vector<double> times;
    std::vector<double> phis;
    std::vector<double> phidots;
    std::vector<double> controls;  // empty for open-loop runs
    double amplitude = 0.0;
    std::optional<double> settle_time;
};

struct SweepResult {
    std::vector<double> lengths;
    std::vector<double> V;
    std::vector<std::optional<double>> t_pp;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("run: " + what);
}

}  // namespace detail

/// Integrates the pendulum for horizon_periods reference periods with a
/// zero-order hold on the control input. Amplitude is measured after the
/// first natural period of the configured length, so the initial deflection
/// itself is not counted; settle_time is the earliest time after which the
/// deflection stays within settle_fraction * |phi0|, in reference periods.
inline SimResult run(const RunConfig& cfg) {
    detail::require(cfg.plant.length > 0.0, "plant.l must be > 0");
    detail::require(cfg.plant.gravity > 0.0, "plant.g must be > 0");
    detail::require(cfg.plant.damping >= 0.0, "plant.damping must be >= 0");
    detail::require(std::isfinite(cfg.plant.accel_gain),
                    "plant.accel_gain must be finite");
    detail::require(std::isfinite(cfg.phi0), "phi0 must be finite");
    detail::require(std::isfinite(cfg.phidot0), "phidot0 must be finite");
    detail::require(cfg.horizon_periods > 0.0, "horizon_periods must be > 0");
    detail::require(cfg.dt > 0.0, "dt must be > 0");
    detail::require(cfg.settle_fraction > 0.0 && cfg.settle_fraction < 1.0,
                    "settle_fraction must lie in (0, 1)");
    if (cfg.engine != nullptr) {
        detail::require(cfg.phi_scale > 0.0, "phi_scale must be > 0");
        detail::require(cfg.phidot_scale > 0.0, "phidot_scale must be > 0");
    }

    const double t_ref = design_period(cfg.plant);
    const double horizon = cfg.horizon_periods * t_ref;
    const auto n_steps =
        static_cast<std::size_t>(std::llround(horizon / cfg.dt));
    detail::require(n_steps >= 1, "horizon shorter than one step");

    SimResult res;
    res.times.reserve(n_steps + 1);
    res.phis.reserve(n_steps + 1);
    res.phidots.reserve(n_steps + 1);
    if (cfg.engine != nullptr) res.controls.reserve(n_steps + 1);

    PendulumState s{cfg.phi0, cfg.phidot0, 0.0};
    auto control_at = [&](const PendulumState& st) {
        return cfg.engine->infer(st.phi / cfg.phi_scale,
                                 st.phidot / cfg.phidot_scale);
    };
    auto record = [&](const PendulumState& st, double u) {
        res.times.push_back(st.t);
        res.phis.push_back(st.phi);
        res.phidots.push_back(st.phidot);
        if (cfg.engine != nullptr) res.controls.push_back(u);
    };

    for (std::size_t k = 0; k < n_steps; ++k) {
        const double u = cfg.engine != nullptr ? control_at(s) : 0.0;
        record(s, u);
        s = rk4_step(cfg.plant, s, u, cfg.dt);
    }
    record(s, cfg.engine != nullptr ? control_at(s) : 0.0);

    // Max |phi| once one natural period of this length has elapsed. The
    // epsilon keeps the window start sample itself inside the window.
    const double window_start = natural_period(cfg.plant) - 1e-12;
    double amp = 0.0;
    for (std::size_t k = 0; k < res.times.size(); ++k) {
        if (res.times[k] >= window_start) amp = std::max(amp, std::abs(res.phis[k]));
    }
    res.amplitude = amp;

    // Scan from the end: the settle point is where the band is first left
    // when walking backwards.
    const double band = cfg.settle_fraction * std::abs(cfg.phi0);
    std::size_t first_settled = res.times.size();
    for (std::size_t k = res.times.size(); k-- > 0;) {
        if (std::abs(res.phis[k]) <= band) {
            first_settled = k;
        } else {
            break;
        }
    }
    if (first_settled < res.times.size()) {
        res.settle_time = res.times[first_settled] / t_ref;
    }
    return res;
}

/// V, the controlled-to-uncontrolled amplitude ratio of the study.
inline double amplitude_ratio(const SimResult& controlled,
                              const SimResult& uncontrolled) {
    if (uncontrolled.amplitude == 0.0) {
        throw std::domain_error(
            "amplitude_ratio: uncontrolled amplitude is zero");
    }
    return controlled.amplitude / uncontrolled.amplitude;
}

/// The sensitivity-study grid: suspension lengths 0.1 to 4.8, step 0.1.
inline std::vector<double> default_length_grid() {
    std::vector<double> lengths(48);
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        lengths[i] = static_cast<double>(i + 1) / 10.0;
    }
    return lengths;
}

/// Runs the closed/open-loop pair at every suspension length with the one
/// engine designed at unit length, recording V and the closed-loop settle
/// time per point. Output order matches the input order.
inline SweepResult sweep_lengths(const RunConfig& base,
                                 const std::vector<double>& lengths) {
    if (base.engine == nullptr) {
        throw std::invalid_argument("sweep_lengths: an engine is required");
    }
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        if (!(lengths[i] > 0.0)) {
            throw std::invalid_argument(
                "sweep_lengths: lengths[" + std::to_string(i) +
                "] must be > 0");
        }
    }
    SweepResult out;
    out.lengths = lengths;
    out.V.reserve(lengths.size());
    out.t_pp.reserve(lengths.size());
    for (const double l : lengths) {
        RunConfig closed = base;
        closed.plant.length = l;
        RunConfig open = closed;
        open.engine = nullptr;
        const SimResult with = run(closed);
        const SimResult without = run(open);
        out.V.push_back(amplitude_ratio(with, without));
        out.t_pp.push_back(with.settle_time);
    }
    return out;
}

}  // namespace antisway
