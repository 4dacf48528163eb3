#pragma once

#include <cstddef>
#include <vector>

namespace vp1d {

/// Lattice-initialized macro-particles. Velocities are staggered half a step
/// behind positions once the leap-frog is primed; the previous staggered
/// velocities are kept alongside so time-centered diagnostics (kinetic
/// energy at integer steps) need no extra bookkeeping. All four arrays share
/// one length and zero-weight lattice sites are pruned at initialization.
struct ParticleSet {
    std::vector<double> positions;
    std::vector<double> velocities;       // V at t^{n+1/2} after a push
    std::vector<double> prev_velocities;  // V at t^{n-1/2}
    std::vector<double> charges;

    std::size_t count() const { return positions.size(); }
};

} // namespace vp1d
