#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace antisway {

/// One linguistic term with a Gaussian membership curve centered at
/// `center` and width `sigma` (> 0).
struct GaussianTerm {
    std::string label;
    double center = 0.0;
    double sigma = 1.0;
};

/// Membership degree of `z` in `term`: exp(-(z - c)^2 / (2 sigma^2)).
/// Equals 1 exactly at the center; positive everywhere short of
/// floating-point underflow (hundreds of sigmas out).
inline double eval_membership(const GaussianTerm& term, double z) {
    const double d = z - term.center;
    return std::exp(-(d * d) / (2.0 * term.sigma * term.sigma));
}

/// Width that makes two adjacent terms, spaced `spacing` apart, cross at
/// membership 1/2 midway between their centers: spacing / sqrt(8 ln 2).
inline double sigma_from_spacing(double spacing) {
    if (!(spacing > 0.0)) {
        throw std::invalid_argument("sigma_from_spacing: spacing must be > 0");
    }
    return spacing / std::sqrt(8.0 * std::log(2.0));
}

/// An ordered linguistic variable over the symmetric universe
/// [z_min, z_max] with z_min = -z_max.
struct Partition {
    std::string name;
    double z_min = -1.0;
    double z_max = 1.0;
    std::vector<GaussianTerm> terms;

    std::size_t size() const noexcept { return terms.size(); }

    std::vector<std::string> labels() const {
        std::vector<std::string> out;
        out.reserve(terms.size());
        for (const auto& t : terms) out.push_back(t.label);
        return out;
    }
};

namespace detail {

// n uniformly spaced points over [-half_width, half_width], built so that
// point[n-1-k] == -point[k] bitwise and the midpoint of an odd grid is
// exactly 0. Downstream symmetry guarantees rely on this.
inline std::vector<double> mirrored_grid(double half_width, std::size_t n) {
    std::vector<double> pts(n);
    const double step = 2.0 * half_width / static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double v = -half_width + static_cast<double>(k) * step;
        pts[k] = v;
        pts[n - 1 - k] = -v;
    }
    if (n % 2 == 1) pts[n / 2] = 0.0;
    return pts;
}

}  // namespace detail

/// Evenly spaced partition over [-z_max, z_max] with one term per label and
/// a uniform sigma satisfying the half-crossing rule for the spacing.
inline Partition build_partition(std::string name, double z_max,
                                 std::size_t n_terms,
                                 const std::vector<std::string>& labels) {
    if (n_terms < 2) {
        throw std::invalid_argument("build_partition: need at least 2 terms");
    }
    if (!(z_max > 0.0)) {
        throw std::invalid_argument("build_partition: z_max must be > 0");
    }
    if (labels.size() != n_terms) {
        throw std::invalid_argument(
            "build_partition: label count does not match term count");
    }
    const double spacing = 2.0 * z_max / static_cast<double>(n_terms - 1);
    const double sigma = sigma_from_spacing(spacing);
    const auto centers = detail::mirrored_grid(z_max, n_terms);

    Partition p;
    p.name = std::move(name);
    p.z_min = -z_max;
    p.z_max = z_max;
    p.terms.reserve(n_terms);
    for (std::size_t k = 0; k < n_terms; ++k) {
        p.terms.push_back({labels[k], centers[k], sigma});
    }
    return p;
}

/// Membership degrees of `z` across all terms of `p`, in term order.
inline std::vector<double> fuzzify(const Partition& p, double z) {
    std::vector<double> mu;
    mu.reserve(p.terms.size());
    for (const auto& t : p.terms) mu.push_back(eval_membership(t, z));
    return mu;
}

}  // namespace antisway
