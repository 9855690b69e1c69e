#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "json.hpp"

namespace wasep {

struct EstimateReport {
    std::string name;
    double estimate = 0.0;
    double standard_error = 0.0;
    std::size_t replicas = 0;
    std::optional<double> theory;
    std::optional<double> z;

    /// Attaches a theory value and the z-score (estimate - theory) / SE.
    /// A zero SE gives z = 0 on exact agreement and +-inf otherwise.
    EstimateReport& against(double theory_value);
    /// |z| <= k; false when no theory is attached.
    bool within(double k) const;
};

/// Sample mean with the usual SE; requires at least 2 values.
EstimateReport estimate_mean(const std::string& name, std::span<const double> x);

/// Unbiased sample covariance of (x, y), times `scale`. The SE is the
/// jackknife over replicas; for exactly two replicas, where leave-one-out
/// covariances are undefined, the normal-theory SE is used instead.
/// Throws DomainError for mismatched lengths or fewer than 2 replicas.
EstimateReport estimate_covariance(const std::string& name, std::span<const double> x, std::span<const double> y,
                                   double scale = 1.0);

nlohmann::json to_json(const EstimateReport& report);

}  // namespace wasep
