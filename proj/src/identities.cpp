#include "wasep/identities.hpp"

#include <stdexcept>
#include <string>

#include "wasep/errors.hpp"

namespace wasep {

ConservationSides conservation_sides(const SimState& state, const Configuration& initial,
                                     const ProcessParams& params, int l) {
    if (l <= 0) throw DomainError("conservation identity: l must be positive");
    const Configuration& now = state.config();
    const std::int64_t span = static_cast<std::int64_t>(params.n()) * l;
    if (span >= now.size() / 2) throw DomainError("conservation identity: n l must be below L/2");
    if (initial.size() != now.size()) throw DomainError("conservation identity: ring size mismatch");

    ConservationSides sides;
    for (std::int64_t x = 0; x <= span; ++x)
        sides.field_side += (span - x) * (now.eta(x) - initial.eta(x));

    sides.current_side = span * state.bond_current(-1);
    for (std::int64_t x = 0; x < span; ++x) sides.current_side -= state.bond_current(x);
    return sides;
}

bool conservation_identity_check(const SimState& state, const Configuration& initial,
                                 const ProcessParams& params, int l) {
    return conservation_sides(state, initial, params, l).holds();
}

bool tagged_current_identity_check(const SimState& state, const ProcessParams& params) {
    if (!state.tagged_enabled()) throw std::logic_error("tagged identity: no tagged particle");
    const std::int64_t X = state.tagged_position();
    const Configuration& config = state.config();
    if (X >= params.ring_size() / 2 || -X >= params.ring_size() / 2)
        throw RingBreach("tagged identity: |X| = " + std::to_string(X) + " reaches half the ring");

    const std::int64_t J = state.bond_current(-1);
    std::int64_t count = 0;
    if (J >= 0) {
        if (X < 0) return false;
        for (std::int64_t x = 0; x < X; ++x) count += config.eta(x);
        return J == count;
    }
    if (X >= 0) return false;
    for (std::int64_t x = X; x <= -1; ++x) count += config.eta(x);
    return J == -count;
}

}  // namespace wasep
