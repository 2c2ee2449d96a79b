#pragma once

#include <vector>

#include "uaco/config.hpp"
#include "uaco/rng.hpp"

namespace uaco {

struct Position3 {
    double x = 0.0;
    double y = 0.0;
    double h = 0.0;  // altitude
};

struct UserState {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    Mobility mobility = Mobility::RandomRoaming;
    double heading = 0.0;  // Θ, used by directional walking only
};

struct UavState {
    int id = 0;
    Position3 pos;
    // Committed per-associated-user transmit powers (mW), refreshed each slot
    // in decoding order; kept here for inspection/metrics.
    std::vector<double> powerProfile;
};

/// Movement action set. Fixed axis mapping: left/right = -x/+x,
/// forward/backward = +y/-y, up/down = +h/-h.
enum class MovementAction : int {
    Left = 0,
    Right = 1,
    Forward = 2,
    Backward = 3,
    Up = 4,
    Down = 5,
    Hover = 6,
};

/// 3-D distance between a UAV and a ground user.
double distance3d(const Position3& uav, const UserState& user);

/// One mobility slot with explicit random draws (testable core).
/// randomAngle ~ U(0,2π); randomMag is the roaming speed ~ U(0,Vmax) for
/// RandomRoaming, or the random-vector magnitude ~ U(0,Vmax/5) for
/// DirectionalWalking. Result is clamped to the service area.
UserState stepUserWith(const UserState& user, double randomAngle, double randomMag,
                       const WorldConfig& cfg);

/// One mobility slot, drawing angle then magnitude from rng.
UserState stepUser(const UserState& user, Rng& rng, const WorldConfig& cfg);

/// UAV displacement of V·Δt along the chosen axis; any move that would leave
/// the configured box is invalid and the UAV hovers instead.
UavState applyUavMove(const UavState& uav, MovementAction move, const WorldConfig& cfg);

/// Initial deployment: users uniform in the area (heading drawn per user),
/// UAVs evenly spaced along the x_min boundary at the configured altitude.
std::vector<UserState> initUsers(const WorldConfig& cfg, Rng& rng);
std::vector<UavState> initUavs(const WorldConfig& cfg);

}  // namespace uaco
