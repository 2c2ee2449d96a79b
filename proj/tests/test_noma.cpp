#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "uaco/noma.hpp"
#include "uaco/rng.hpp"

using namespace uaco;

namespace {

/// Snapshot with users assigned round-robin-free: cluster u serves users
/// [u*perCluster, (u+1)*perCluster).
LinkSnapshot makeSnapshot(int numUavs, int perCluster, double noiseMw) {
    LinkSnapshot snap;
    snap.numUavs = numUavs;
    snap.numUsers = numUavs * perCluster;
    snap.noiseMw = noiseMw;
    snap.gain.assign(static_cast<size_t>(snap.numUsers) * numUavs, 0.0);
    snap.servingUav.assign(snap.numUsers, -1);
    snap.userPowerMw.assign(snap.numUsers, 0.0);
    snap.totalPowerMw.assign(numUavs, 0.0);
    snap.prevTotalPowerMw.assign(numUavs, 0.0);
    for (int k = 0; k < snap.numUsers; ++k) snap.servingUav[k] = k / perCluster;
    return snap;
}

std::vector<NomaCluster> clustersOf(const LinkSnapshot& snap) {
    std::vector<NomaCluster> cs(snap.numUavs);
    for (int u = 0; u < snap.numUavs; ++u) cs[u].uav = u;
    for (int k = 0; k < snap.numUsers; ++k) cs[snap.servingUav[k]].members.push_back(k);
    for (auto& c : cs) c.order = decodingOrder(c, snap);
    return cs;
}

}  // namespace

TEST_SUITE_BEGIN("noma");

TEST_CASE("interferer power sums committed per-user powers") {
    auto snap = makeSnapshot(3, 2, 1.5e-9);
    snap.userPowerMw = {200, 300, 0, 0, 120, 80};
    snap.totalPowerMw = {500, 0, 200};
    CHECK(interfererPowerMw(snap, 0) == 500.0);
    CHECK(interfererPowerMw(snap, 1) == 0.0);
    CHECK(interfererPowerMw(snap, 2) == 200.0);
}

TEST_CASE("equivalent gain single-UAV and inter-cluster cases") {
    auto single = makeSnapshot(1, 1, 1e-9);
    single.gain = {2e-8};
    CHECK(equivalentGain(single, 0, 0) == doctest::Approx(20.0).epsilon(1e-12));

    auto two = makeSnapshot(2, 1, 1.5e-9);
    // user 0 served by uav 0: own gain 1e-8, gain to uav 1 = 1e-9.
    two.gain = {1e-8, 1e-9, 1e-9, 1e-8};
    two.prevTotalPowerMw = {500, 500};
    CHECK(equivalentGain(two, 0, 0) ==
          doctest::Approx(0.01994017946161515).epsilon(1e-12));
    // v_{u,k} = 0: user 0 queried against the wrong UAV.
    CHECK(equivalentGain(two, 1, 0) == 0.0);
}

TEST_CASE("decoding order sorts ascending by equivalent gain, id ties") {
    auto snap = makeSnapshot(1, 3, 1e-9);
    // users 0,1,2 with gains 5e-9, 2e-9, 9e-9 -> order (1, 0, 2)
    snap.gain = {5e-9, 2e-9, 9e-9};
    NomaCluster c;
    c.uav = 0;
    c.members = {0, 1, 2};
    CHECK(decodingOrder(c, snap) == std::vector<int>{1, 0, 2});

    NomaCluster lone;
    lone.uav = 0;
    lone.members = {2};
    CHECK(decodingOrder(lone, snap) == std::vector<int>{2});

    auto tied = makeSnapshot(1, 2, 1e-9);
    tied.gain = {3e-9, 3e-9};
    NomaCluster pair;
    pair.uav = 0;
    pair.members = {1, 0};
    CHECK(decodingOrder(pair, tied) == std::vector<int>{0, 1});
}

TEST_CASE("SINR: last-decoded user of a single UAV") {
    auto snap = makeSnapshot(1, 1, 1.5e-9);
    snap.gain = {1e-8};
    snap.userPowerMw = {100};
    snap.totalPowerMw = {100};
    NomaCluster c;
    c.uav = 0;
    c.members = {0};
    c.order = {0};
    CHECK(userSinr(c, snap, 0) == doctest::Approx(666.6666666666666).epsilon(1e-12));
    CHECK(userRateBps(userSinr(c, snap, 0), 15000.0) ==
          doctest::Approx(140744.76307637326).epsilon(1e-12));
}

TEST_CASE("SINR: first decoded user sees later-decoded power as interference") {
    auto snap = makeSnapshot(1, 2, 1.5e-9);
    snap.gain = {1e-8, 3e-8};  // user 1 has the stronger link
    snap.userPowerMw = {600, 194};
    snap.totalPowerMw = {794};
    auto cs = clustersOf(snap);
    REQUIRE(cs[0].order == std::vector<int>{0, 1});
    const double expected = 1e-8 * 600 / (3e-8 * 194 + 1.5e-9);
    CHECK(userSinr(cs[0], snap, 0) == doctest::Approx(expected).epsilon(1e-12));

    snap.userPowerMw[0] = 0.0;  // zero allocated power -> zero SINR
    CHECK(userSinr(cs[0], snap, 0) == 0.0);
}

TEST_CASE("rate function fixed points") {
    CHECK(userRateBps(0.0, 15000.0) == 0.0);
    CHECK(userRateBps(1.0, 15000.0) == doctest::Approx(15000.0).epsilon(1e-15));
}

TEST_CASE("sum rate equals per-user brute force on a 3x2 snapshot") {
    auto snap = makeSnapshot(3, 2, 1.5e-9);
    Rng rng(11);
    for (auto& g : snap.gain) g = std::pow(10.0, rng.uniform(-11.0, -7.0));
    for (int k = 0; k < snap.numUsers; ++k) snap.userPowerMw[k] = rng.uniform(10, 400);
    for (int k = 0; k < snap.numUsers; ++k)
        snap.totalPowerMw[snap.servingUav[k]] += snap.userPowerMw[k];
    snap.prevTotalPowerMw = snap.totalPowerMw;
    auto cs = clustersOf(snap);

    std::vector<std::vector<double>> g2(snap.numUsers,
                                        std::vector<double>(snap.numUavs));
    std::vector<std::vector<int>> orders(snap.numUavs);
    for (int k = 0; k < snap.numUsers; ++k)
        for (int u = 0; u < snap.numUavs; ++u) g2[k][u] = snap.gainAt(k, u);
    for (const auto& c : cs) orders[c.uav] = c.order;

    const double expected = oracle::sumRate(g2, snap.userPowerMw, snap.totalPowerMw,
                                            orders, 15000.0, snap.noiseMw);
    CHECK(sumRateBps(nomaRates(cs, snap, 15000.0)) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("OMA: two users on half bands with no intra interference") {
    auto snap = makeSnapshot(1, 2, 1.5e-9);
    snap.gain = {1e-8, 1e-8};
    snap.userPowerMw = {100, 100};
    snap.totalPowerMw = {200};
    auto cs = clustersOf(snap);
    const double psd = 1.5e-9 / 15000.0;  // 1e-13 mW/Hz
    const auto rates = omaRates(cs, snap, 15000.0, psd);
    const double sinr = 1e-8 * 100 / (psd * 7500.0);
    CHECK(sinr == doctest::Approx(1333.3333333333333).epsilon(1e-12));
    const double expected = 7500.0 * std::log2(1.0 + sinr);
    CHECK(rates[0] == doctest::Approx(expected).epsilon(1e-12));
    CHECK(rates[1] == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("OMA equals NOMA for one user per UAV at equal powers") {
    auto snap = makeSnapshot(3, 1, 1.5e-9);
    Rng rng(21);
    for (auto& g : snap.gain) g = std::pow(10.0, rng.uniform(-10.0, -7.0));
    for (int k = 0; k < 3; ++k) snap.userPowerMw[k] = 250.0;
    snap.totalPowerMw = {250, 250, 250};
    snap.prevTotalPowerMw = snap.totalPowerMw;
    auto cs = clustersOf(snap);
    const double psd = 1.5e-9 / 15000.0;
    const auto oma = omaRates(cs, snap, 15000.0, psd);
    const auto noma = nomaRates(cs, snap, 15000.0);
    for (int k = 0; k < 3; ++k) CHECK(oma[k] == doctest::Approx(noma[k]).epsilon(1e-12));
}

TEST_CASE("OMA sub-band misalignment: lone user interferes only on its index") {
    auto snap = makeSnapshot(2, 1, 1.5e-9);
    snap.numUsers = 3;
    snap.gain.assign(6, 0.0);
    snap.servingUav = {0, 0, 1};
    snap.userPowerMw = {100, 100, 300};
    snap.totalPowerMw = {200, 300};
    snap.prevTotalPowerMw = {200, 300};
    Rng rng(31);
    for (auto& g : snap.gain) g = std::pow(10.0, rng.uniform(-10.0, -7.0));
    std::vector<NomaCluster> cs(2);
    cs[0].uav = 0;
    cs[0].members = {0, 1};
    cs[1].uav = 1;
    cs[1].members = {2};
    for (auto& c : cs) c.order = decodingOrder(c, snap);

    const double psd = 1e-13;
    const auto rates = omaRates(cs, snap, 15000.0, psd);

    std::vector<std::vector<double>> g2(3, std::vector<double>(2));
    for (int k = 0; k < 3; ++k)
        for (int u = 0; u < 2; ++u) g2[k][u] = snap.gainAt(k, u);
    std::vector<std::vector<int>> orders = {cs[0].order, cs[1].order};
    const auto expected = oracle::omaRates(g2, snap.userPowerMw, orders, 15000.0, psd);
    for (int k = 0; k < 3; ++k) CHECK(rates[k] == doctest::Approx(expected[k]).epsilon(1e-12));

    // The cluster-0 user on sub-band 1 sees no interference at all.
    const int subOneUser = cs[0].order[1];
    const double cleanSinr =
        snap.gainAt(subOneUser, 0) * snap.userPowerMw[subOneUser] / (psd * 7500.0);
    CHECK(rates[subOneUser] == doctest::Approx(7500.0 * std::log2(1 + cleanSinr)));
}

TEST_CASE("SIC pairwise condition holds and matches exhaustive enumeration") {
    Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        auto snap = makeSnapshot(2, 4, 1e-9);
        for (auto& g : snap.gain) g = std::pow(10.0, rng.uniform(-11.0, -7.0));
        snap.prevTotalPowerMw = {600, 700};
        auto cs = clustersOf(snap);
        for (const auto& c : cs) {
            CHECK(orderSatisfiesSic(c, snap));
            const auto rep = oracle::exhaustiveOrderCheck(c, snap);
            CHECK(rep.passed);
        }
    }
}

TEST_CASE("scaling all gains and noise by a common factor leaves SINR unchanged") {
    Rng rng(51);
    auto snap = makeSnapshot(3, 2, 1.5e-9);
    for (auto& g : snap.gain) g = std::pow(10.0, rng.uniform(-11.0, -7.0));
    for (int k = 0; k < snap.numUsers; ++k) snap.userPowerMw[k] = rng.uniform(10, 400);
    for (int k = 0; k < snap.numUsers; ++k)
        snap.totalPowerMw[snap.servingUav[k]] += snap.userPowerMw[k];
    snap.prevTotalPowerMw = snap.totalPowerMw;
    auto cs = clustersOf(snap);

    auto scaled = snap;
    const double factor = 37.5;
    for (auto& g : scaled.gain) g *= factor;
    scaled.noiseMw *= factor;
    auto cs2 = clustersOf(scaled);

    for (const auto& c : cs)
        for (size_t i = 0; i < c.order.size(); ++i)
            CHECK(userSinr(c, snap, static_cast<int>(i)) ==
                  doctest::Approx(userSinr(cs2[c.uav], scaled, static_cast<int>(i)))
                      .epsilon(1e-12));
}

TEST_CASE("sum rate non-decreasing in the last-decoded user's power, single UAV") {
    auto snap = makeSnapshot(1, 2, 1.5e-9);
    snap.gain = {1e-8, 4e-8};
    snap.userPowerMw = {500, 100};
    snap.totalPowerMw = {600};
    auto cs = clustersOf(snap);
    double prev = -1.0;
    for (double p = 50; p <= 400; p += 25) {
        snap.userPowerMw[cs[0].order[1]] = p;
        const double s = sumRateBps(nomaRates(cs, snap, 15000.0));
        CHECK(s >= prev);
        prev = s;
    }
}

TEST_SUITE_END();
