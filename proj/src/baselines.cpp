#include "uaco/baselines.hpp"

#include <cmath>

namespace uaco {

Position3 areaCenter(const WorldConfig& cfg) {
    return {0.5 * (cfg.xMin + cfg.xMax), 0.5 * (cfg.yMin + cfg.yMax),
            cfg.circularAltitude};
}

Position3 circularPosition(int uav, int slot, const WorldConfig& cfg) {
    const Position3 c = areaCenter(cfg);
    const double phase = 2.0 * M_PI * uav / cfg.numUavs;
    const double omega = cfg.uavSpeed / cfg.circularRadius;  // rad/s
    const double angle = phase + omega * slot * cfg.slotSeconds;
    return {c.x + cfg.circularRadius * std::cos(angle),
            c.y + cfg.circularRadius * std::sin(angle), cfg.circularAltitude};
}

}  // namespace uaco
