#pragma once

#include "uaco/config.hpp"
#include "uaco/world.hpp"

namespace uaco {

/// Circular-track position for UAV u at slot t: angle 2πu/U + (V/r)·t·Δt on a
/// radius-r circle centered in the service area, at the configured altitude.
Position3 circularPosition(int uav, int slot, const WorldConfig& cfg);

/// Center of the service area (the GBS location the circular track orbits).
Position3 areaCenter(const WorldConfig& cfg);

}  // namespace uaco
