#include "wasep/grid_function.hpp"

#include <algorithm>
#include <cmath>

#include "wasep/errors.hpp"
#include "wasep/profiles.hpp"

namespace wasep {

GridFunction::GridFunction(double origin, double step, std::vector<double> values)
    : origin_(origin), step_(step), values_(std::move(values)) {
    if (!(step_ > 0.0) || !std::isfinite(step_) || !std::isfinite(origin_))
        throw DomainError("GridFunction: step must be positive and finite");
    if (values_.size() < 2) throw DomainError("GridFunction: at least two nodes required");
    for (double v : values_)
        if (!std::isfinite(v)) throw DomainError("GridFunction: non-finite value");
}

GridFunction GridFunction::sample(const std::function<double(double)>& f, double lo, double hi, double max_step) {
    if (!(hi > lo) || !(max_step > 0.0)) throw DomainError("GridFunction::sample: need lo < hi and a positive step");
    const auto cells = static_cast<std::size_t>(std::ceil((hi - lo) / max_step - 1e-9));
    const std::size_t count = std::max<std::size_t>(cells, 1) + 1;
    const double step = (hi - lo) / static_cast<double>(count - 1);
    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i) values[i] = f(lo + step * static_cast<double>(i));
    return GridFunction(lo, step, std::move(values));
}

GridFunction GridFunction::zero() { return GridFunction(0.0, 1.0, {0.0, 0.0}); }

namespace {

// Cell index for u in [lo, hi], clamped so the last node belongs to the last cell.
std::size_t cell_of(double u, double lo, double step, std::size_t size) {
    const double pos = (u - lo) / step;
    const auto i = static_cast<std::size_t>(std::max(0.0, std::floor(pos)));
    return std::min(i, size - 2);
}

}  // namespace

double GridFunction::operator()(double u) const noexcept {
    if (u < lo() || u > hi()) return 0.0;
    const std::size_t i = cell_of(u, origin_, step_, values_.size());
    const double w = (u - node(i)) / step_;
    return values_[i] + w * (values_[i + 1] - values_[i]);
}

double GridFunction::slope(double u) const noexcept {
    if (u < lo() || u > hi()) return 0.0;
    const std::size_t i = cell_of(u, origin_, step_, values_.size());
    return (values_[i + 1] - values_[i]) / step_;
}

double GridFunction::integral(double a, double b) const noexcept {
    if (a > b) return -integral(b, a);
    const double left = std::max(a, lo());
    const double right = std::min(b, hi());
    if (!(right > left)) return 0.0;
    const std::size_t first = cell_of(left, origin_, step_, values_.size());
    const std::size_t last = cell_of(right, origin_, step_, values_.size());
    double total = 0.0;
    for (std::size_t i = first; i <= last; ++i) {
        const double x0 = node(i);
        const double c0 = std::max(left, x0);
        const double c1 = std::min(right, x0 + step_);
        if (!(c1 > c0)) continue;
        const double k = (values_[i + 1] - values_[i]) / step_;
        const double mid = 0.5 * (c0 + c1);
        total += (c1 - c0) * (values_[i] + k * (mid - x0));
    }
    return total;
}

double GridFunction::squared_norm() const noexcept {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
        const double a = values_[i];
        const double b = values_[i + 1];
        total += (a * a + a * b + b * b) / 3.0;
    }
    return total * step_;
}

double GridFunction::gradient_squared_norm() const noexcept {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
        const double d = values_[i + 1] - values_[i];
        total += d * d;
    }
    return total / step_;
}

GridFunction GridFunction::scaled(double c) const {
    std::vector<double> v = values_;
    for (double& x : v) x *= c;
    return GridFunction(origin_, step_, std::move(v));
}

bool GridFunction::same_grid(const GridFunction& other) const noexcept {
    return values_.size() == other.values_.size() && origin_ == other.origin_ && step_ == other.step_;
}

SpaceTimeGridFunction::SpaceTimeGridFunction(std::vector<double> times, std::vector<GridFunction> slices)
    : times_(std::move(times)), slices_(std::move(slices)) {
    if (times_.size() < 2 || times_.size() != slices_.size())
        throw DomainError("SpaceTimeGridFunction: need matching times and slices, at least two");
    if (times_.front() != 0.0) throw DomainError("SpaceTimeGridFunction: first time must be 0");
    for (std::size_t k = 1; k < times_.size(); ++k) {
        if (!(times_[k] > times_[k - 1])) throw DomainError("SpaceTimeGridFunction: times must increase");
        if (!slices_[k].same_grid(slices_[0])) throw DomainError("SpaceTimeGridFunction: slices must share a grid");
    }
}

SpaceTimeGridFunction SpaceTimeGridFunction::constant(const GridFunction& g, double horizon) {
    if (!(horizon > 0.0)) throw DomainError("SpaceTimeGridFunction::constant: horizon must be positive");
    return SpaceTimeGridFunction({0.0, horizon}, {g, g});
}

GridFunction SpaceTimeGridFunction::at(double t) const {
    if (t < 0.0 || t > horizon() * (1.0 + 1e-12)) throw DomainError("SpaceTimeGridFunction::at: time out of range");
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    if (it == times_.end()) return slices_.back();
    const auto k = static_cast<std::size_t>(it - times_.begin());
    const double w = (t - times_[k - 1]) / (times_[k] - times_[k - 1]);
    const auto& a = slices_[k - 1].values();
    const auto& b = slices_[k].values();
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = (1.0 - w) * a[i] + w * b[i];
    return GridFunction(slices_[0].origin(), slices_[0].step(), std::move(v));
}

double SpaceTimeGridFunction::dirichlet_form() const noexcept {
    // Within a slab the slope on each cell is linear in time, so its square
    // integrates to (p^2 + p q + q^2) / 3 times the slab length.
    double total = 0.0;
    const double h = slices_.empty() ? 1.0 : slices_[0].step();
    for (std::size_t k = 0; k + 1 < slices_.size(); ++k) {
        const auto& a = slices_[k].values();
        const auto& b = slices_[k + 1].values();
        double slab = 0.0;
        for (std::size_t i = 0; i + 1 < a.size(); ++i) {
            const double p = (a[i + 1] - a[i]) / h;
            const double q = (b[i + 1] - b[i]) / h;
            slab += (p * p + p * q + q * q) / 3.0;
        }
        total += slab * h * (times_[k + 1] - times_[k]);
    }
    return total;
}

GridFunction ramp_G(int l) {
    if (l < 1) throw DomainError("ramp_G: l must be a positive integer");
    const double L = static_cast<double>(l);
    return GridFunction::sample([L](double u) { return u >= L ? 0.0 : 1.0 - u / L; }, 0.0, L, kDefaultGridStep);
}

GridFunction smooth_ramp_G(int l) {
    if (l < 1) throw DomainError("smooth_ramp_G: l must be a positive integer");
    const double L = static_cast<double>(l);
    const double half = 0.5 * smooth_ramp_width(L);
    const double step = std::min(kDefaultGridStep, 0.25 / L);
    return GridFunction::sample([L](double u) { return smooth_ramp(u, L); }, -half, L + half, step);
}

GridFunction gaussian_bump_G(double center, double width, double amplitude) {
    if (!(width > 0.0)) throw DomainError("gaussian_bump_G: width must be positive");
    const double step = std::min(kDefaultGridStep, width / 16.0);
    return GridFunction::sample([=](double u) { return amplitude * gaussian_bump(u, center, width); },
                                center - 8.0 * width, center + 8.0 * width, step);
}

}  // namespace wasep
