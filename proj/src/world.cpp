#include "uaco/world.hpp"

#include <algorithm>
#include <cmath>

namespace uaco {

namespace {

double clampTo(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

}  // namespace

double distance3d(const Position3& uav, const UserState& user) {
    const double dx = uav.x - user.x;
    const double dy = uav.y - user.y;
    return std::sqrt(uav.h * uav.h + dx * dx + dy * dy);
}

UserState stepUserWith(const UserState& user, double randomAngle, double randomMag,
                       const WorldConfig& cfg) {
    UserState next = user;
    double vx = 0.0, vy = 0.0;
    switch (user.mobility) {
        case Mobility::RandomRoaming:
            vx = randomMag * std::cos(randomAngle);
            vy = randomMag * std::sin(randomAngle);
            break;
        case Mobility::DirectionalWalking: {
            const double directed = 0.8 * cfg.userSpeedMax;
            vx = directed * std::cos(user.heading) + randomMag * std::cos(randomAngle);
            vy = directed * std::sin(user.heading) + randomMag * std::sin(randomAngle);
            break;
        }
    }
    next.x = clampTo(user.x + vx * cfg.slotSeconds, cfg.xMin, cfg.xMax);
    next.y = clampTo(user.y + vy * cfg.slotSeconds, cfg.yMin, cfg.yMax);
    return next;
}

UserState stepUser(const UserState& user, Rng& rng, const WorldConfig& cfg) {
    const double angle = rng.uniform(0.0, 2.0 * M_PI);
    const double magBound = user.mobility == Mobility::RandomRoaming
                                ? cfg.userSpeedMax
                                : 0.2 * cfg.userSpeedMax;
    const double mag = rng.uniform(0.0, magBound);
    return stepUserWith(user, angle, mag, cfg);
}

UavState applyUavMove(const UavState& uav, MovementAction move, const WorldConfig& cfg) {
    const double d = cfg.uavSpeed * cfg.slotSeconds;
    Position3 p = uav.pos;
    switch (move) {
        case MovementAction::Left: p.x -= d; break;
        case MovementAction::Right: p.x += d; break;
        case MovementAction::Forward: p.y += d; break;
        case MovementAction::Backward: p.y -= d; break;
        case MovementAction::Up: p.h += d; break;
        case MovementAction::Down: p.h -= d; break;
        case MovementAction::Hover: break;
    }
    const bool valid = p.x >= cfg.xMin && p.x <= cfg.xMax && p.y >= cfg.yMin &&
                       p.y <= cfg.yMax && p.h >= cfg.hMin && p.h <= cfg.hMax;
    UavState next = uav;
    if (valid) next.pos = p;  // invalid moves hover
    return next;
}

std::vector<UserState> initUsers(const WorldConfig& cfg, Rng& rng) {
    std::vector<UserState> users(cfg.numUsers);
    for (int k = 0; k < cfg.numUsers; ++k) {
        users[k].id = k;
        users[k].x = rng.uniform(cfg.xMin, cfg.xMax);
        users[k].y = rng.uniform(cfg.yMin, cfg.yMax);
        users[k].mobility = cfg.mobility;
        users[k].heading = rng.uniform(0.0, 2.0 * M_PI);
    }
    return users;
}

std::vector<UavState> initUavs(const WorldConfig& cfg) {
    std::vector<UavState> uavs(cfg.numUavs);
    const double span = cfg.yMax - cfg.yMin;
    for (int u = 0; u < cfg.numUavs; ++u) {
        uavs[u].id = u;
        uavs[u].pos.x = cfg.xMin;
        uavs[u].pos.y = cfg.yMin + span * (u + 1) / (cfg.numUavs + 1);
        uavs[u].pos.h = clampTo(cfg.uavInitAltitude, cfg.hMin, cfg.hMax);
    }
    return uavs;
}

}  // namespace uaco
