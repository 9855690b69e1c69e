#include "wasep/process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "wasep/errors.hpp"

namespace wasep {

std::int64_t ring_floor(int n, double alpha, double horizon) {
    const double diffusive = std::ceil(8.0 * n * std::sqrt(horizon));
    const double transport = std::ceil(8.0 * alpha * n * horizon);
    auto floor = static_cast<std::int64_t>(std::max({diffusive, transport, 1024.0}));
    return floor + (floor % 2);
}

ProcessParams::ProcessParams(int n, double alpha, double beta, double rho, double horizon,
                             std::optional<std::int64_t> ring_size)
    : n_(n), alpha_(alpha), beta_(beta), gamma_(std::min(1.0 + beta, 2.0)), rho_(rho),
      horizon_(horizon), ring_size_(0) {
    if (n <= 0) throw DomainError("n must be positive");
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be non-negative");
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw DomainError("beta must be non-negative");
    if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("rho must lie in [0, 1]");
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("horizon must be positive");

    const std::int64_t floor = ring_floor(n, alpha, horizon);
    ring_size_ = ring_size.value_or(floor);
    if (ring_size_ % 2 != 0) throw DomainError("ring size must be even");
    if (ring_size_ < floor)
        throw DomainError("ring size " + std::to_string(ring_size_) + " below ring floor " +
                          std::to_string(floor));
    if (ring_size_ > std::numeric_limits<std::int32_t>::max())
        throw DomainError("ring size too large");
}

double ProcessParams::rate_right() const noexcept {
    return std::pow(n_, gamma_) * (0.5 + alpha_ * std::pow(n_, -beta_));
}

double ProcessParams::rate_left() const noexcept { return 0.5 * std::pow(n_, gamma_); }

double ProcessParams::drift_scale() const noexcept { return alpha_ * std::pow(n_, gamma_ - beta_); }

ProcessParams ProcessParams::with_ring(std::int64_t ring_size) const {
    return ProcessParams(n_, alpha_, beta_, rho_, horizon_, ring_size);
}

Configuration::Configuration(std::vector<std::uint8_t> occupancy) : occ_(std::move(occupancy)) {
    if (occ_.empty() || occ_.size() % 2 != 0) throw DomainError("configuration needs an even, non-zero length");
    count_ = 0;
    for (auto& v : occ_) {
        if (v > 1) throw DomainError("occupancies must be 0 or 1");
        count_ += v;
    }
}

Configuration sample_initial(const ProcessParams& params, Rng& rng, bool tagged) {
    const std::int64_t L = params.ring_size();
    std::vector<std::uint8_t> occ(static_cast<std::size_t>(L));
    const double rho = params.rho();
    for (auto& v : occ) v = rng.uniform() < rho ? 1 : 0;
    if (tagged) occ[static_cast<std::size_t>(L / 2)] = 1;
    return Configuration(std::move(occ));
}

Configuration sample_initial(const ProcessParams& params, std::uint64_t seed, bool tagged) {
    Rng rng(seed);
    return sample_initial(params, rng, tagged);
}

std::vector<std::int64_t> all_bonds(const ProcessParams& params) {
    const std::int64_t L = params.ring_size();
    std::vector<std::int64_t> bonds(static_cast<std::size_t>(L));
    for (std::int64_t i = 0; i < L; ++i) bonds[static_cast<std::size_t>(i)] = i - L / 2;
    return bonds;
}

SimState::SimState(const ProcessParams& params, Configuration config, Rng rng, bool tagged,
                   const std::vector<std::int64_t>& tracked_bonds)
    : config_(std::move(config)), rng_(rng) {
    const std::int64_t L = params.ring_size();
    if (config_.size() != L) throw DomainError("configuration size does not match ring size");

    positions_.reserve(static_cast<std::size_t>(config_.particle_count()));
    for (std::int64_t i = 0; i < L; ++i) {
        if (config_.occ_[static_cast<std::size_t>(i)]) {
            if (tagged && i == L / 2) tagged_index_ = static_cast<std::int64_t>(positions_.size());
            positions_.push_back(static_cast<std::int32_t>(i));
        }
    }
    if (tagged && tagged_index_ < 0) throw DomainError("tagged state requires an occupied origin");

    bond_slot_.assign(static_cast<std::size_t>(L), -1);
    for (std::int64_t x : tracked_bonds) {
        auto& slot = bond_slot_[static_cast<std::size_t>(config_.index_of(x))];
        if (slot < 0) {
            slot = static_cast<std::int32_t>(bond_counts_.size());
            bond_counts_.push_back(0);
        }
    }
}

bool SimState::tracks(std::int64_t x) const noexcept {
    return bond_slot_[static_cast<std::size_t>(config_.index_of(x))] >= 0;
}

std::int64_t SimState::bond_current(std::int64_t x) const {
    const auto slot = bond_slot_[static_cast<std::size_t>(config_.index_of(x))];
    if (slot < 0) throw UntrackedBond("bond (" + std::to_string(x) + "," + std::to_string(x + 1) + ") is not tracked");
    return bond_counts_[static_cast<std::size_t>(slot)];
}

void advance(SimState& state, const ProcessParams& params, double t_target) {
    if (!(t_target >= state.time_)) throw DomainError("advance: target time precedes current time");
    const std::int64_t L = state.config_.size();
    if (L != params.ring_size()) throw DomainError("advance: ring size mismatch");

    const auto particles = static_cast<std::uint64_t>(state.positions_.size());
    const double p = params.rate_right();
    const double q = params.rate_left();
    const double dt = t_target - state.time_;
    state.time_ = t_target;
    if (particles == 0 || particles == static_cast<std::uint64_t>(L) || dt == 0.0) return;

    // Each attempt is, independently, a forced right move with probability
    // (p - q) / (p + q) and otherwise a move in a fair-coin direction. The
    // forced moves are placed at geometric gaps so that an ordinary attempt
    // costs a single draw over (particle, direction) pairs.
    const double forced = (p - q) / (p + q);
    const double log_keep = std::log1p(-forced);
    // Local copy: stores through the uint8_t occupancy pointer may alias
    // anything, which would otherwise force the generator state through memory.
    Rng rng = state.rng_;
    auto gap = [&rng, forced, log_keep]() -> std::int64_t {
        if (!(forced > 0.0)) return std::numeric_limits<std::int64_t>::max();
        const double g = std::floor(std::log(1.0 - rng.uniform()) / log_keep);
        return g < 9.0e18 ? static_cast<std::int64_t>(g) : std::numeric_limits<std::int64_t>::max();
    };

    const std::int64_t attempts = rng.poisson(static_cast<double>(particles) * (p + q) * dt);
    std::int64_t until_forced = gap();

    std::uint8_t* occ = state.config_.occ_.data();
    std::int32_t* pos = state.positions_.data();
    const std::int32_t* slot_of = state.bond_slot_.data();
    // Counts shifted by one so that untracked bonds (slot -1) land in a
    // scratch cell; this keeps the update free of data-dependent branches.
    std::vector<std::int64_t> counts(state.bond_counts_.size() + 1, 0);
    std::copy(state.bond_counts_.begin(), state.bond_counts_.end(), counts.begin() + 1);
    std::int64_t* shifted = counts.data() + 1;
    const auto last = static_cast<std::int32_t>(L - 1);
    const std::int64_t tagged = state.tagged_index_;
    const std::int64_t guard = L / 4;
    std::int64_t accepted = 0;

    auto finish = [&] {
        std::copy(counts.begin() + 1, counts.end(), state.bond_counts_.begin());
        state.accepted_ += accepted;
        state.rng_ = rng;
    };

    for (std::int64_t k = 0; k < attempts; ++k) {
        std::uint64_t idx;
        std::int32_t step;
        if (until_forced == 0) {
            idx = rng.below(particles);
            step = 1;
            until_forced = gap();
        } else {
            --until_forced;
            const std::uint64_t v = rng.below(2 * particles);
            idx = v >> 1;
            step = static_cast<std::int32_t>(v & 1) * 2 - 1;
        }
        const std::int32_t from = pos[idx];
        std::int32_t to = from + step;
        to = to < 0 ? last : to;
        to = to > last ? 0 : to;
        const std::int32_t bond = step > 0 ? from : to;
        const std::int32_t open = 1 - occ[to];
        occ[from] = static_cast<std::uint8_t>(1 - open);
        occ[to] = 1;
        pos[idx] = open ? to : from;
        accepted += open;
        shifted[slot_of[bond]] += open * step;
        if (static_cast<std::int64_t>(idx) == tagged && open) {
            state.tagged_position_ += step;
            if (state.tagged_position_ > guard || state.tagged_position_ < -guard) {
                finish();
                throw RingBreach("tagged particle displaced by " + std::to_string(state.tagged_position_) +
                                 " sites on a ring of " + std::to_string(L));
            }
        }
    }
    finish();
}

double centered_current(const SimState& state, const ProcessParams& params) {
    return static_cast<double>(state.bond_current(-1)) - state.time() * params.drift_scale() * params.chi();
}

double centered_tagged(const SimState& state, const ProcessParams& params) {
    if (!state.tagged_enabled()) throw std::logic_error("centered_tagged: no tagged particle");
    return static_cast<double>(state.tagged_position()) -
           state.time() * params.drift_scale() * (1.0 - params.rho());
}

}  // namespace wasep
