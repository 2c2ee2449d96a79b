#include "uaco/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uaco {

LinkGeometry LinkGeometry::fromDistance(double d3d, double h) {
    LinkGeometry g;
    g.d3d = d3d;
    g.h = h;
    g.r2d = std::sqrt(std::max(d3d * d3d - h * h, 0.0));
    return g;
}

namespace {

void requirePositive(const LinkGeometry& geom) {
    if (geom.h <= 0.0) throw std::domain_error("path loss: altitude must be > 0");
    if (geom.d3d <= 0.0) throw std::domain_error("path loss: distance must be > 0");
}

}  // namespace

double pathlossLosDb(const LinkGeometry& geom, double fcGhz) {
    requirePositive(geom);
    return 30.9 + (22.25 - 0.5 * std::log10(geom.h)) * std::log10(geom.d3d) +
           20.0 * std::log10(fcGhz);
}

double pathlossNlosDb(const LinkGeometry& geom, double fcGhz) {
    const double los = pathlossLosDb(geom, fcGhz);
    const double nlos = 32.4 + (43.2 - 7.6 * std::log10(geom.h)) * std::log10(geom.d3d) +
                        20.0 * std::log10(fcGhz);
    return std::max(los, nlos);
}

double pLos(const LinkGeometry& geom, PlosMode mode) {
    if (geom.h <= 0.0) throw std::domain_error("p_los: altitude must be > 0");
    const double p1 = 233.98 * std::log10(geom.h) - 0.95;
    if (p1 <= 0.0)
        throw std::domain_error("p_los: altitude below model validity (p1 <= 0)");
    const double d0 = std::max(294.05 * std::log10(geom.h) - 432.94, 18.0);
    if (geom.r2d <= d0) return 1.0;
    const double ratio = d0 / geom.r2d;
    const double expo = std::exp(-(geom.r2d - d0) / p1);
    double p = 0.0;
    switch (mode) {
        case PlosMode::AsPrinted: p = ratio + expo; break;
        case PlosMode::Corrected: p = ratio + expo * (1.0 - ratio); break;
    }
    return std::clamp(p, 0.0, 1.0);
}

double meanPathlossDb(const LinkGeometry& geom, double fcGhz, PlosMode mode) {
    const double p = pLos(geom, mode);
    // dB values mixed linearly, as the model defines the average.
    return p * pathlossLosDb(geom, fcGhz) + (1.0 - p) * pathlossNlosDb(geom, fcGhz);
}

double channelGain(const LinkGeometry& geom, double fcGhz, PlosMode mode,
                   FadingKind fading, Rng* fadingRng) {
    const double lossDb = meanPathlossDb(geom, fcGhz, mode);
    double h = 1.0;
    if (fading == FadingKind::RayleighPower) {
        if (fadingRng == nullptr)
            throw std::invalid_argument("channel_gain: fading rng required");
        h = fadingRng->exponential();
        if (h <= 0.0) h = 1e-12;  // exponential() can underflow to exactly 0
    }
    return h * std::pow(10.0, -lossDb / 10.0);
}

}  // namespace uaco
