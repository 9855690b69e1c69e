#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wasep/rng.hpp"

namespace wasep {

class SimState;
class ProcessParams;

/// Smallest admissible ring: max(ceil(8 n sqrt(T)), ceil(8 alpha n T), 1024),
/// rounded up to an even number.
std::int64_t ring_floor(int n, double alpha, double horizon);

/// Model constants of the weakly asymmetric exclusion process on a ring of
/// `ring_size` sites labelled -L/2 .. L/2-1.
///
/// gamma is derived as min(1 + beta, 2). Macroscopic time t corresponds to
/// n^gamma units of microscopic time.
class ProcessParams {
public:
    /// Throws DomainError on invalid input. When `ring_size` is omitted the
    /// ring floor is used.
    ProcessParams(int n, double alpha, double beta, double rho, double horizon,
                  std::optional<std::int64_t> ring_size = std::nullopt);

    int n() const noexcept { return n_; }
    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    double gamma() const noexcept { return gamma_; }
    double rho() const noexcept { return rho_; }
    double horizon() const noexcept { return horizon_; }
    std::int64_t ring_size() const noexcept { return ring_size_; }

    double chi() const noexcept { return rho_ * (1.0 - rho_); }

    /// Per-particle attempt rates in macroscopic time.
    double rate_right() const noexcept;
    double rate_left() const noexcept;

    /// alpha n^(gamma - beta): mean current per unit time is this times chi.
    double drift_scale() const noexcept;

    /// Same constants on a ring of a different size (ring-doubling checks).
    ProcessParams with_ring(std::int64_t ring_size) const;

private:
    int n_;
    double alpha_;
    double beta_;
    double gamma_;
    double rho_;
    double horizon_;
    std::int64_t ring_size_;
};

/// Occupancy of every ring site. Index i holds site label i - L/2.
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(std::vector<std::uint8_t> occupancy);

    std::int64_t size() const noexcept { return static_cast<std::int64_t>(occ_.size()); }
    std::int64_t particle_count() const noexcept { return count_; }

    /// Array index of site label x (wrapping modulo L).
    std::int64_t index_of(std::int64_t x) const noexcept {
        const std::int64_t L = size();
        std::int64_t i = (x + L / 2) % L;
        return i < 0 ? i + L : i;
    }
    std::int64_t label_of(std::int64_t index) const noexcept { return index - size() / 2; }

    bool occupied(std::int64_t x) const noexcept { return occ_[static_cast<std::size_t>(index_of(x))] != 0; }
    int eta(std::int64_t x) const noexcept { return occupied(x) ? 1 : 0; }

    const std::vector<std::uint8_t>& occupancy() const noexcept { return occ_; }

    friend bool operator==(const Configuration&, const Configuration&) = default;

private:
    friend class SimState;
    friend void advance(SimState&, const ProcessParams&, double);

    std::vector<std::uint8_t> occ_;
    std::int64_t count_ = 0;
};

/// Product Bernoulli(rho) configuration; with `tagged` the origin is forced
/// occupied (the Palm measure seen from the tagged particle).
Configuration sample_initial(const ProcessParams& params, Rng& rng, bool tagged);
Configuration sample_initial(const ProcessParams& params, std::uint64_t seed, bool tagged);

/// Bond labels (x, x+1) identified by their left site x.
std::vector<std::int64_t> all_bonds(const ProcessParams& params);

/// A configuration plus the running observables of one trajectory.
class SimState {
public:
    /// `tracked_bonds` lists the left sites x of bonds (x, x+1) whose signed
    /// crossing counts are kept. With `tagged`, site 0 must be occupied and
    /// the particle there becomes the tagged particle.
    SimState(const ProcessParams& params, Configuration config, Rng rng, bool tagged,
             const std::vector<std::int64_t>& tracked_bonds = {-1});

    const Configuration& config() const noexcept { return config_; }
    double time() const noexcept { return time_; }

    bool tracks(std::int64_t x) const noexcept;
    /// Net number of jumps x -> x+1 minus jumps x+1 -> x. Throws UntrackedBond.
    std::int64_t bond_current(std::int64_t x) const;

    bool tagged_enabled() const noexcept { return tagged_index_ >= 0; }
    /// Unwrapped position on Z.
    std::int64_t tagged_position() const noexcept { return tagged_position_; }

    std::int64_t accepted_jumps() const noexcept { return accepted_; }
    const Rng& rng() const noexcept { return rng_; }

private:
    friend void advance(SimState&, const ProcessParams&, double);

    Configuration config_;
    double time_ = 0.0;
    std::vector<std::int32_t> positions_;   // array index of every particle
    std::vector<std::int32_t> bond_slot_;   // per array index, -1 when untracked
    std::vector<std::int64_t> bond_counts_;
    std::int64_t tagged_index_ = -1;
    std::int64_t tagged_position_ = 0;
    std::int64_t accepted_ = 0;
    Rng rng_;
};

/// Evolves `state` to macroscopic time `t_target` under the exact WASEP law.
///
/// Uniformization: the number of attempts on [time, t_target] is Poisson with
/// mean N (p + q) dt; each attempt picks a particle uniformly and moves it
/// right with probability p / (p + q), left otherwise, provided the target
/// site is empty. Blocked attempts are null events of the generator.
///
/// Throws RingBreach when the tagged particle is displaced by more than L/4.
void advance(SimState& state, const ProcessParams& params, double t_target);

/// J_{-1,0}(t) - t alpha n^(gamma-beta) chi(rho).
double centered_current(const SimState& state, const ProcessParams& params);

/// X(t) - t alpha n^(gamma-beta) (1 - rho). Throws std::logic_error when the
/// state has no tagged particle.
double centered_tagged(const SimState& state, const ProcessParams& params);

}  // namespace wasep
