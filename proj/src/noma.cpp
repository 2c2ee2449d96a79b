#include "uaco/noma.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uaco {

double interfererPowerMw(const LinkSnapshot& snap, int uav) {
    return snap.totalPowerMw[uav];
}

double equivalentGain(const LinkSnapshot& snap, int uav, int user) {
    if (snap.servingUav[user] != uav) return 0.0;  // v_{u,k} = 0
    double denom = snap.noiseMw;
    for (int s = 0; s < snap.numUavs; ++s) {
        if (s == uav) continue;
        denom += snap.gainAt(user, s) * snap.prevTotalPowerMw[s];
    }
    return snap.gainAt(user, uav) / denom;
}

std::vector<int> decodingOrder(const NomaCluster& cluster, const LinkSnapshot& snap) {
    std::vector<int> order = cluster.members;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double ga = equivalentGain(snap, cluster.uav, a);
        const double gb = equivalentGain(snap, cluster.uav, b);
        if (ga != gb) return ga < gb;
        return a < b;
    });
    return order;
}

double userSinr(const NomaCluster& cluster, const LinkSnapshot& snap, int decodedIndex) {
    const int n = static_cast<int>(cluster.order.size());
    if (decodedIndex < 0 || decodedIndex >= n)
        throw std::out_of_range("userSinr: decoded index outside cluster");
    const int user = cluster.order[decodedIndex];
    double denom = snap.noiseMw;
    for (int i = decodedIndex + 1; i < n; ++i) {
        const int later = cluster.order[i];
        denom += snap.gainAt(later, cluster.uav) * snap.userPowerMw[later];
    }
    for (int s = 0; s < snap.numUavs; ++s) {
        if (s == cluster.uav) continue;
        denom += snap.gainAt(user, s) * snap.totalPowerMw[s];
    }
    return snap.gainAt(user, cluster.uav) * snap.userPowerMw[user] / denom;
}

double userRateBps(double sinr, double bandwidthHz) {
    return bandwidthHz * std::log2(1.0 + sinr);
}

std::vector<double> nomaRates(const std::vector<NomaCluster>& clusters,
                              const LinkSnapshot& snap, double bandwidthHz) {
    std::vector<double> rates(snap.numUsers, 0.0);
    for (const auto& c : clusters) {
        for (int i = 0; i < static_cast<int>(c.order.size()); ++i)
            rates[c.order[i]] = userRateBps(userSinr(c, snap, i), bandwidthHz);
    }
    return rates;
}

std::vector<double> omaRates(const std::vector<NomaCluster>& clusters,
                             const LinkSnapshot& snap, double bandwidthHz,
                             double noisePsdMwHz) {
    // Sub-band i of cluster u carries its i-th decoded user; interference
    // couples only equal sub-band indices across UAVs.
    std::vector<double> rates(snap.numUsers, 0.0);
    for (const auto& c : clusters) {
        const int n = static_cast<int>(c.order.size());
        if (n == 0) continue;
        const double subBand = bandwidthHz / n;
        const double subNoise = noisePsdMwHz * subBand;
        for (int i = 0; i < n; ++i) {
            const int user = c.order[i];
            double denom = subNoise;
            for (const auto& other : clusters) {
                if (other.uav == c.uav) continue;
                if (i < static_cast<int>(other.order.size())) {
                    const int interferer = other.order[i];
                    denom += snap.gainAt(user, other.uav) * snap.userPowerMw[interferer];
                }
            }
            const double sinr =
                snap.gainAt(user, c.uav) * snap.userPowerMw[user] / denom;
            rates[user] = subBand * std::log2(1.0 + sinr);
        }
    }
    return rates;
}

double sumRateBps(const std::vector<double>& perUserRates) {
    double total = 0.0;
    for (double r : perUserRates) total += r;
    return total;
}

bool orderSatisfiesSic(const NomaCluster& cluster, const LinkSnapshot& snap) {
    for (size_t k = 1; k < cluster.order.size(); ++k) {
        const double later = equivalentGain(snap, cluster.uav, cluster.order[k]);
        const double earlier = equivalentGain(snap, cluster.uav, cluster.order[k - 1]);
        if (later < earlier) return false;
    }
    return true;
}

}  // namespace uaco
