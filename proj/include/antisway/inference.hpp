#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "antisway/membership.hpp"
#include "antisway/rulebase.hpp"

namespace antisway {

enum class InferenceMode {
    mamdani,           // clip-max aggregation, center-of-gravity output
    sugeno_singleton,  // weighted average of singletons at term centers
};

/// Rule activation for one input pair: per-cell min strengths and the
/// per-output-term max over cells sharing that consequent.
struct FiringRecord {
    std::vector<std::vector<double>> strengths;
    std::vector<double> aggregated;
};

namespace detail {

// Clip-and-max aggregate membership of the output set at point y.
inline double clipped_level(const Partition& output,
                            std::span<const double> aggregated, double y) {
    double level = 0.0;
    for (std::size_t t = 0; t < output.terms.size(); ++t) {
        level = std::max(
            level, std::min(aggregated[t], eval_membership(output.terms[t], y)));
    }
    return level;
}

inline void warn_degenerate(const char* where) {
    std::cerr << "antisway: warning: degenerate output aggregate in " << where
              << "; returning 0\n";
}

}  // namespace detail

/// Center of gravity of the clipped-and-maxed output set, discretized on
/// `n_points` uniform samples. Sample pairs mirrored about zero are summed
/// together so symmetric aggregates defuzzify to exactly zero.
inline double defuzz_centroid_grid(const Partition& output,
                                   std::span<const double> aggregated,
                                   std::size_t n_points) {
    const auto samples = detail::mirrored_grid(output.z_max, n_points);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t a = 0, b = n_points - 1; a < b; ++a, --b) {
        const double ma = detail::clipped_level(output, aggregated, samples[a]);
        const double mb = detail::clipped_level(output, aggregated, samples[b]);
        num += samples[a] * ma + samples[b] * mb;
        den += ma + mb;
    }
    if (n_points % 2 == 1) {
        const std::size_t mid = n_points / 2;
        const double mm = detail::clipped_level(output, aggregated, samples[mid]);
        num += samples[mid] * mm;
        den += mm;
    }
    if (den == 0.0) {
        detail::warn_degenerate("defuzz_centroid");
        return 0.0;
    }
    return num / den;
}

/// The fuzzy controller: two Gaussian input partitions, one output
/// partition, a complete rule table, and a defuzzification mode. Immutable
/// after construction and safe to share across threads.
class Engine {
  public:
    static constexpr int default_grid_points = 1001;

    Engine(Partition input_phi, Partition input_phidot, Partition output,
           RuleBase rules, InferenceMode mode = InferenceMode::mamdani,
           int grid_points = default_grid_points, bool clamp_inputs = false)
        : phi_(std::move(input_phi)),
          phidot_(std::move(input_phidot)),
          output_(std::move(output)),
          rules_(std::move(rules)),
          mode_(mode),
          grid_points_(grid_points),
          clamp_inputs_(clamp_inputs) {
        validate_partition(phi_, "input_phi");
        validate_partition(phidot_, "input_phidot");
        validate_partition(output_, "output");
        if (grid_points_ < 101 || grid_points_ % 2 == 0) {
            throw std::invalid_argument(
                "Engine: grid_points must be an odd integer >= 101");
        }
        if (rules_.row_labels != phi_.labels()) {
            throw std::invalid_argument(
                "Engine: rule table row labels do not match the phi "
                "partition terms");
        }
        if (rules_.col_labels != phidot_.labels()) {
            throw std::invalid_argument(
                "Engine: rule table column labels do not match the phidot "
                "partition terms");
        }
        if (rules_.out_labels != output_.labels()) {
            throw std::invalid_argument(
                "Engine: rule table output labels do not match the output "
                "partition terms");
        }
        // Precompute the output discretization; defuzzification is then
        // free of exp() calls on the hot path.
        samples_ =
            detail::mirrored_grid(output_.z_max, static_cast<std::size_t>(grid_points_));
        term_samples_.resize(output_.terms.size());
        for (std::size_t t = 0; t < output_.terms.size(); ++t) {
            term_samples_[t].resize(samples_.size());
            for (std::size_t s = 0; s < samples_.size(); ++s) {
                term_samples_[t][s] =
                    eval_membership(output_.terms[t], samples_[s]);
            }
        }
    }

    const Partition& input_phi() const noexcept { return phi_; }
    const Partition& input_phidot() const noexcept { return phidot_; }
    const Partition& output() const noexcept { return output_; }
    const RuleBase& rules() const noexcept { return rules_; }
    InferenceMode mode() const noexcept { return mode_; }
    int grid_points() const noexcept { return grid_points_; }
    bool clamp_inputs() const noexcept { return clamp_inputs_; }

    /// Min-fires every rule and max-aggregates per output term.
    FiringRecord fire_rules(double phi, double phidot) const {
        if (!std::isfinite(phi) || !std::isfinite(phidot)) {
            throw std::invalid_argument("fire_rules: inputs must be finite");
        }
        if (clamp_inputs_) {
            phi = std::clamp(phi, phi_.z_min, phi_.z_max);
            phidot = std::clamp(phidot, phidot_.z_min, phidot_.z_max);
        }
        const auto mu_phi = fuzzify(phi_, phi);
        const auto mu_phidot = fuzzify(phidot_, phidot);
        FiringRecord rec;
        rec.strengths.assign(mu_phi.size(),
                             std::vector<double>(mu_phidot.size(), 0.0));
        rec.aggregated.assign(output_.terms.size(), 0.0);
        for (std::size_t i = 0; i < mu_phi.size(); ++i) {
            for (std::size_t j = 0; j < mu_phidot.size(); ++j) {
                const double s = std::min(mu_phi[i], mu_phidot[j]);
                rec.strengths[i][j] = s;
                double& agg =
                    rec.aggregated[static_cast<std::size_t>(rules_.grid[i][j])];
                agg = std::max(agg, s);
            }
        }
        return rec;
    }

    /// Center-of-gravity defuzzification on the cached discretization.
    double defuzz_centroid(const FiringRecord& rec) const {
        const std::size_t n = samples_.size();
        double num = 0.0;
        double den = 0.0;
        auto level = [&](std::size_t s) {
            double m = 0.0;
            for (std::size_t t = 0; t < term_samples_.size(); ++t) {
                m = std::max(m, std::min(rec.aggregated[t], term_samples_[t][s]));
            }
            return m;
        };
        for (std::size_t a = 0, b = n - 1; a < b; ++a, --b) {
            const double ma = level(a);
            const double mb = level(b);
            num += samples_[a] * ma + samples_[b] * mb;
            den += ma + mb;
        }
        const std::size_t mid = n / 2;  // grid_points is odd
        const double mm = level(mid);
        num += samples_[mid] * mm;
        den += mm;
        if (den == 0.0) {
            detail::warn_degenerate("defuzz_centroid");
            return 0.0;
        }
        return num / den;
    }

    /// Zero-order Sugeno output: firing-weighted average of singleton
    /// consequents placed at the output term centers.
    double defuzz_sugeno(const FiringRecord& rec) const {
        const std::size_t n = output_.terms.size();
        double num = 0.0;
        double den = 0.0;
        for (std::size_t a = 0, b = n - 1; a < b; ++a, --b) {
            num += rec.aggregated[a] * output_.terms[a].center +
                   rec.aggregated[b] * output_.terms[b].center;
            den += rec.aggregated[a] + rec.aggregated[b];
        }
        if (n % 2 == 1) {
            const std::size_t mid = n / 2;
            num += rec.aggregated[mid] * output_.terms[mid].center;
            den += rec.aggregated[mid];
        }
        if (den == 0.0) {
            detail::warn_degenerate("defuzz_sugeno");
            return 0.0;
        }
        return num / den;
    }

    /// Full controller evaluation; output lies inside the output universe.
    double infer(double phi, double phidot) const {
        const auto rec = fire_rules(phi, phidot);
        return mode_ == InferenceMode::mamdani ? defuzz_centroid(rec)
                                               : defuzz_sugeno(rec);
    }

    /// Control surface over the uniform n_phi x n_phidot grid spanning the
    /// two input universes; element [a][b] = infer(phi_a, phidot_b).
    std::vector<std::vector<double>> surface(std::size_t n_phi,
                                             std::size_t n_phidot) const {
        if (n_phi < 2 || n_phidot < 2) {
            throw std::invalid_argument("surface: need at least 2 grid points per axis");
        }
        const auto phis = detail::mirrored_grid(phi_.z_max, n_phi);
        const auto phidots = detail::mirrored_grid(phidot_.z_max, n_phidot);
        std::vector<std::vector<double>> m(n_phi, std::vector<double>(n_phidot));
        for (std::size_t a = 0; a < n_phi; ++a) {
            for (std::size_t b = 0; b < n_phidot; ++b) {
                m[a][b] = infer(phis[a], phidots[b]);
            }
        }
        return m;
    }

  private:
    static void validate_partition(const Partition& p, const char* name) {
        if (p.terms.size() < 2) {
            throw std::invalid_argument(std::string("Engine: partition ") +
                                        name + " needs at least 2 terms");
        }
        if (!(p.z_min < p.z_max) || p.z_min != -p.z_max) {
            throw std::invalid_argument(std::string("Engine: partition ") +
                                        name +
                                        " universe must be symmetric, "
                                        "z_min = -z_max < z_max");
        }
        for (std::size_t k = 0; k < p.terms.size(); ++k) {
            if (!(p.terms[k].sigma > 0.0)) {
                throw std::invalid_argument(std::string("Engine: partition ") +
                                            name + " has a non-positive sigma");
            }
            if (k > 0 && !(p.terms[k - 1].center < p.terms[k].center)) {
                throw std::invalid_argument(
                    std::string("Engine: partition ") + name +
                    " centers must be strictly increasing");
            }
        }
    }

    Partition phi_;
    Partition phidot_;
    Partition output_;
    RuleBase rules_;
    InferenceMode mode_;
    int grid_points_;
    bool clamp_inputs_;
    std::vector<double> samples_;
    std::vector<std::vector<double>> term_samples_;
};

}  // namespace antisway
