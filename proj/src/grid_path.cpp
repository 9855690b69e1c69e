#include "wasep/grid_path.hpp"

#include <algorithm>
#include <cmath>

#include "wasep/errors.hpp"

namespace wasep {

GridPath::GridPath(std::vector<double> times_, std::vector<double> values_)
    : times(std::move(times_)), values(std::move(values_)) {
    if (times.size() != values.size()) throw DomainError("GridPath: times and values differ in length");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || !std::isfinite(values[i])) throw DomainError("GridPath: non-finite entry");
        if (times[i] < 0.0) throw DomainError("GridPath: negative time");
        if (i > 0 && !(times[i] > times[i - 1])) throw DomainError("GridPath: times must increase strictly");
    }
}

double GridPath::at(double t) const {
    if (times.empty()) throw DomainError("GridPath: empty path");
    if (t > times.back() * (1.0 + 1e-12) + 1e-300) throw DomainError("GridPath: evaluation beyond last time");
    if (t <= times.front()) {
        if (t == times.front()) return values.front();
        if (times.front() == 0.0 || t < 0.0) throw DomainError("GridPath: evaluation before first time");
        return values.front() * t / times.front();
    }
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    if (it == times.end()) return values.back();
    const auto i = static_cast<std::size_t>(it - times.begin());
    const double w = (t - times[i - 1]) / (times[i] - times[i - 1]);
    return values[i - 1] + w * (values[i] - values[i - 1]);
}

double GridPath::uniform_step() const noexcept {
    if (times.size() < 2) return 0.0;
    const double step = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    for (std::size_t i = 1; i < times.size(); ++i)
        if (std::fabs(times[i] - times[i - 1] - step) > 1e-9 * step) return 0.0;
    return step;
}

}  // namespace wasep
