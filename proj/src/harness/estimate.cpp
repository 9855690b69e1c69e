#include "wasep/harness/estimate.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "wasep/errors.hpp"

namespace wasep {

EstimateReport& EstimateReport::against(double theory_value) {
    theory = theory_value;
    const double diff = estimate - theory_value;
    if (standard_error > 0.0)
        z = diff / standard_error;
    else
        z = diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
    return *this;
}

bool EstimateReport::within(double k) const { return z.has_value() && std::fabs(*z) <= k; }

EstimateReport estimate_mean(const std::string& name, std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 2) throw DomainError("estimate_mean: at least 2 replicas are required");
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    const double var = ss / static_cast<double>(n - 1);
    return {name, mean, std::sqrt(var / static_cast<double>(n)), n, std::nullopt, std::nullopt};
}

EstimateReport estimate_covariance(const std::string& name, std::span<const double> x, std::span<const double> y,
                                   double scale) {
    const std::size_t n = x.size();
    if (y.size() != n) throw DomainError("estimate_covariance: series lengths differ");
    if (n < 2) throw DomainError("estimate_covariance: at least 2 replicas are required");
    const double N = static_cast<double>(n);

    // Centre first so that the running sums do not cancel catastrophically.
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= N;
    my /= N;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    const double cov = sxy / (N - 1.0);

    double se;
    if (n == 2) {
        const double vx = sxx / (N - 1.0), vy = syy / (N - 1.0);
        se = std::sqrt((vx * vy + cov * cov) / (N - 1.0));
    } else {
        // Leave-one-out covariance from the centred sums: removing point i
        // shifts the means by -d_i / (N - 1).
        const double M = N - 1.0;
        std::vector<double> loo(n);
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double dx = x[i] - mx, dy = y[i] - my;
            loo[i] = (sxy - dx * dy - dx * dy / M) / (M - 1.0);
            mean += loo[i];
        }
        mean /= N;
        double spread = 0.0;
        for (double v : loo) spread += (v - mean) * (v - mean);
        spread /= N;
        se = std::sqrt(M * spread);
    }
    return {name, cov * scale, se * std::fabs(scale), n, std::nullopt, std::nullopt};
}

nlohmann::json to_json(const EstimateReport& r) {
    nlohmann::json j = {{"name", r.name},
                        {"estimate", r.estimate},
                        {"standard_error", r.standard_error},
                        {"replicas", r.replicas}};
    j["theory"] = r.theory ? nlohmann::json(*r.theory) : nlohmann::json(nullptr);
    j["z"] = r.z && std::isfinite(*r.z) ? nlohmann::json(*r.z) : nlohmann::json(nullptr);
    return j;
}

}  // namespace wasep
