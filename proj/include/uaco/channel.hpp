#pragma once

#include "uaco/config.hpp"
#include "uaco/rng.hpp"

namespace uaco {

/// Geometry of one UAV-user link. r2d is the ground-projected distance.
struct LinkGeometry {
    double d3d = 0.0;  // m
    double h = 0.0;    // UAV altitude, m
    double r2d = 0.0;  // m, sqrt(d3d^2 - h^2)

    static LinkGeometry fromDistance(double d3d, double h);
};

/// Line-of-sight path loss, dB. f_c in GHz (TR 36.777 convention).
double pathlossLosDb(const LinkGeometry& geom, double fcGhz);

/// Non-line-of-sight path loss, dB (lower-bounded by the LoS loss).
double pathlossNlosDb(const LinkGeometry& geom, double fcGhz);

/// LoS probability. AsPrinted evaluates the published expression and clamps
/// to [0,1]; Corrected applies the (1 - d0/r2d) factor on the exponential
/// term so the value is a probability by construction.
double pLos(const LinkGeometry& geom, PlosMode mode);

/// P_LoS * L_LoS + (1 - P_LoS) * L_NLoS, mixed in dB.
double meanPathlossDb(const LinkGeometry& geom, double fcGhz, PlosMode mode);

/// Linear power gain H * 10^(-L/10). Deterministic fading uses H = 1;
/// RayleighPower draws one unit-mean exponential per call (per link per
/// slot) from fadingRng, which must be non-null in that mode.
double channelGain(const LinkGeometry& geom, double fcGhz, PlosMode mode,
                   FadingKind fading, Rng* fadingRng);

}  // namespace uaco
