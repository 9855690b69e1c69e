#pragma once

#include <cstdint>

#include "wasep/process.hpp"

namespace wasep {

/// Both sides of the particle-conservation identity for the ramp G_l, each
/// multiplied by n*l so that they are integers:
///
///   sum_x (n l - x) [eta_x(t) - eta_x(0)]  (x = 0 .. n l)
///     = n l J_{-1,0}(t) - sum_{x=0}^{n l - 1} J_{x,x+1}(t)
struct ConservationSides {
    std::int64_t field_side = 0;
    std::int64_t current_side = 0;
    bool holds() const noexcept { return field_side == current_side; }
};

/// Requires bonds -1 and 0 .. n l - 1 tracked since time 0 and n l < L/2;
/// throws UntrackedBond / DomainError otherwise.
ConservationSides conservation_sides(const SimState& state, const Configuration& initial,
                                     const ProcessParams& params, int l);

bool conservation_identity_check(const SimState& state, const Configuration& initial,
                                 const ProcessParams& params, int l);

/// Order preservation ties the tagged particle to the current across (-1, 0):
///
///   J_{-1,0}(t) =  sum_{x=0}^{X-1} eta_x(t)   if J >= 0  (then X >= 0)
///   J_{-1,0}(t) = -sum_{x=X}^{-1}  eta_x(t)   if J < 0   (then X < 0)
///
/// Returns true iff the sign pairing and the integer equality both hold.
/// Throws RingBreach when |X| >= L/2 and std::logic_error without a tagged
/// particle.
bool tagged_current_identity_check(const SimState& state, const ProcessParams& params);

}  // namespace wasep
