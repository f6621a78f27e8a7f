#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "antisway/simulation.hpp"

namespace antisway {

/// Fixed nine-decimal rendering shared by every CSV and stdout number.
/// Negative zero is normalized so equal values always print identically.
inline std::string format_real(double v) {
    if (v == 0.0) v = 0.0;  // collapse -0.0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9f", v);
    return buf;
}

/// Surface CSV: one row per (phi, phidot) grid node, phi varying slowest.
inline void write_surface_csv(std::ostream& os,
                              const std::vector<double>& phis,
                              const std::vector<double>& phidots,
                              const std::vector<std::vector<double>>& u) {
    os << "phi,phidot,u\n";
    for (std::size_t a = 0; a < phis.size(); ++a) {
        for (std::size_t b = 0; b < phidots.size(); ++b) {
            os << format_real(phis[a]) << ',' << format_real(phidots[b])
               << ',' << format_real(u[a][b]) << '\n';
        }
    }
}

/// Time-series CSV; the u column is zero for open-loop runs.
inline void write_timeseries_csv(std::ostream& os, const SimResult& r) {
    os << "t,phi,phidot,u\n";
    for (std::size_t k = 0; k < r.times.size(); ++k) {
        const double u = r.controls.empty() ? 0.0 : r.controls[k];
        os << format_real(r.times[k]) << ',' << format_real(r.phis[k]) << ','
           << format_real(r.phidots[k]) << ',' << format_real(u) << '\n';
    }
}

/// Sweep CSV; the t_pp field is left empty when a run never settles.
inline void write_sweep_csv(std::ostream& os, const SweepResult& r) {
    os << "l,V,t_pp\n";
    for (std::size_t k = 0; k < r.lengths.size(); ++k) {
        os << format_real(r.lengths[k]) << ',' << format_real(r.V[k]) << ',';
        if (r.t_pp[k].has_value()) os << format_real(*r.t_pp[k]);
        os << '\n';
    }
}

}  // namespace antisway
