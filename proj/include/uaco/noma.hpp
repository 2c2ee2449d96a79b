#pragma once

#include <vector>

#include "uaco/config.hpp"

namespace uaco {

/// One UAV's NOMA cluster: its member users and the SIC decoding order
/// (members sorted ascending by equivalent channel gain, weakest first).
struct NomaCluster {
    int uav = 0;
    std::vector<int> members;
    std::vector<int> order;  // permutation of members, π(0) decoded first
};

/// Immutable per-slot view of the link layer: channel gains for every
/// (user, UAV) pair, this slot's committed powers, the previous slot's
/// committed totals (interference seen by the equivalent-gain criterion),
/// and the noise power over the full band.
struct LinkSnapshot {
    int numUavs = 0;
    int numUsers = 0;
    std::vector<double> gain;            // [user * numUavs + uav], linear
    std::vector<int> servingUav;         // [user], -1 if unserved
    std::vector<double> userPowerMw;     // [user], committed this slot
    std::vector<double> totalPowerMw;    // [uav], committed this slot
    std::vector<double> prevTotalPowerMw;// [uav], previous slot
    double noiseMw = 0.0;                // σ² over the full band

    double gainAt(int user, int uav) const { return gain[user * numUavs + uav]; }
};

/// Total committed power of one UAV this slot (sum over its served users).
double interfererPowerMw(const LinkSnapshot& snap, int uav);

/// Equivalent channel gain G_k^u: own gain over inter-cluster interference
/// plus noise, with interferer totals taken from the previous slot. Zero if
/// the user is not served by this UAV.
double equivalentGain(const LinkSnapshot& snap, int uav, int user);

/// Members sorted ascending by equivalent gain; ties broken by ascending id.
std::vector<int> decodingOrder(const NomaCluster& cluster, const LinkSnapshot& snap);

/// SINR of the decodedIndex-th decoded user of the cluster (0-based within
/// cluster.order). Intra-cluster interference from later-decoded users,
/// inter-cluster from other UAVs' current committed totals.
double userSinr(const NomaCluster& cluster, const LinkSnapshot& snap, int decodedIndex);

/// Shannon rate B * log2(1 + sinr), bits/s.
double userRateBps(double sinr, double bandwidthHz);

/// Per-user NOMA rates (bits/s, indexed by user id; unserved users get 0).
std::vector<double> nomaRates(const std::vector<NomaCluster>& clusters,
                              const LinkSnapshot& snap, double bandwidthHz);

/// OMA/FDMA comparison rates: each UAV splits its band into |members| equal
/// sub-bands indexed by decoding order; interference couples only
/// same-indexed sub-bands across UAVs; sub-band noise is PSD * (B/|members|).
std::vector<double> omaRates(const std::vector<NomaCluster>& clusters,
                             const LinkSnapshot& snap, double bandwidthHz,
                             double noisePsdMwHz);

double sumRateBps(const std::vector<double>& perUserRates);

/// True when G_{π(k)} >= G_{π(j)} holds for all k > j in the given order.
bool orderSatisfiesSic(const NomaCluster& cluster, const LinkSnapshot& snap);

}  // namespace uaco
