#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace antisway {

/// Pendulum-on-trolley parameters in relative units (unit rope length and
/// unit gravity give a natural period of 2*pi).
struct PlantParams {
    double length = 1.0;
    double gravity = 1.0;
    double damping = 0.0;
    double accel_gain = 1.0;  // trolley acceleration per unit of control output
};

struct PendulumState {
    double phi = 0.0;
    double phidot = 0.0;
    double t = 0.0;
};

struct StateDeriv {
    double dphi = 0.0;
    double dphidot = 0.0;
};

/// Small-amplitude oscillation period, 2*pi*sqrt(l/g).
inline double natural_period(const PlantParams& p) {
    return 2.0 * std::numbers::pi * std::sqrt(p.length / p.gravity);
}

/// Sway dynamics under horizontal trolley acceleration a = accel_gain * u:
/// phi'' = -(g/l) sin(phi) - (a/l) cos(phi) - damping * phi'.
inline StateDeriv derivatives(const PlantParams& p, const PendulumState& s,
                              double u) {
    if (!std::isfinite(u)) {
        throw std::invalid_argument("derivatives: control input must be finite");
    }
    const double a = p.accel_gain * u;
    StateDeriv d;
    d.dphi = s.phidot;
    d.dphidot = -(p.gravity / p.length) * std::sin(s.phi) -
                (a / p.length) * std::cos(s.phi) - p.damping * s.phidot;
    return d;
}

/// One classical fourth-order Runge-Kutta step with the control input held
/// constant over the step.
inline PendulumState rk4_step(const PlantParams& p, const PendulumState& s,
                              double u, double dt) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("rk4_step: dt must be positive");
    }
    const StateDeriv k1 = derivatives(p, s, u);
    PendulumState s2{s.phi + 0.5 * dt * k1.dphi, s.phidot + 0.5 * dt * k1.dphidot,
                     s.t + 0.5 * dt};
    const StateDeriv k2 = derivatives(p, s2, u);
    PendulumState s3{s.phi + 0.5 * dt * k2.dphi, s.phidot + 0.5 * dt * k2.dphidot,
                     s.t + 0.5 * dt};
    const StateDeriv k3 = derivatives(p, s3, u);
    PendulumState s4{s.phi + dt * k3.dphi, s.phidot + dt * k3.dphidot, s.t + dt};
    const StateDeriv k4 = derivatives(p, s4, u);
    PendulumState out;
    out.phi = s.phi + dt / 6.0 *
                          (k1.dphi + 2.0 * k2.dphi + 2.0 * k3.dphi + k4.dphi);
    out.phidot = s.phidot + dt / 6.0 *
                                (k1.dphidot + 2.0 * k2.dphidot +
                                 2.0 * k3.dphidot + k4.dphidot);
    out.t = s.t + dt;
    return out;
}

/// Pendulum energy per unit mass, for conservation checks of the
/// uncontrolled, undamped system.
inline double pendulum_energy(const PlantParams& p, const PendulumState& s) {
    return 0.5 * p.length * p.length * s.phidot * s.phidot +
           p.gravity * p.length * (1.0 - std::cos(s.phi));
}

}  // namespace antisway
