#include <cmath>

#include "doctest.h"
#include "uaco/baselines.hpp"
#include "uaco/env.hpp"

using namespace uaco;

TEST_SUITE_BEGIN("baselines");

TEST_CASE("circular track: phase zero, periodicity, opposition") {
    WorldConfig cfg;
    cfg.numUavs = 2;
    cfg.numUsers = 4;

    const auto p0 = circularPosition(0, 0, cfg);
    CHECK(p0.x == doctest::Approx(250.0 + 150.0));
    CHECK(p0.y == doctest::Approx(250.0));
    CHECK(p0.h == doctest::Approx(100.0));

    // One full revolution = 2*pi*r / (V*dt) slots; compare modulo the angle.
    const double periodSlots = 2.0 * M_PI * cfg.circularRadius / cfg.uavSpeed;
    const int n = 10;
    const auto pa = circularPosition(0, n, cfg);
    const double angleA = std::atan2(pa.y - 250.0, pa.x - 250.0);
    const double angleB = 2.0 * M_PI * (n / periodSlots);
    CHECK(std::remainder(angleA - angleB, 2.0 * M_PI) == doctest::Approx(0.0).epsilon(1e-9));

    for (int t = 0; t < 40; ++t) {
        const auto a = circularPosition(0, t, cfg);
        const auto b = circularPosition(1, t, cfg);
        CHECK(a.x + b.x == doctest::Approx(500.0).epsilon(1e-9));  // opposite phases
        CHECK(a.y + b.y == doctest::Approx(500.0).epsilon(1e-9));
    }
}

TEST_CASE("circular positions never leave the service area") {
    WorldConfig cfg;
    for (int t = 0; t < 400; ++t)
        for (int u = 0; u < cfg.numUavs; ++u) {
            const auto p = circularPosition(u, t, cfg);
            CHECK(p.x >= cfg.xMin);
            CHECK(p.x <= cfg.xMax);
            CHECK(p.y >= cfg.yMin);
            CHECK(p.y <= cfg.yMax);
        }
}

TEST_CASE("circular baseline: max power, on-circle rows, no learning needed") {
    WorldConfig cfg;
    cfg.slotsPerEpisode = 20;
    cfg.reclusterEvery = 10;
    cfg.baseline.circular = true;
    cfg.baseline.maxPower = true;
    Environment env(cfg);
    Rng pol(1);
    EpisodeOptions opt;
    const auto ep = runEpisode(env, nullptr, opt, pol);
    REQUIRE(static_cast<int>(ep.slots.size()) == 20);
    for (const auto& rec : ep.slots)
        for (const auto& p : rec.uavPositions) {
            const double r = std::hypot(p.x - 250.0, p.y - 250.0);
            CHECK(r == doctest::Approx(150.0).epsilon(1e-9));
        }
    // Max power: every UAV commits exactly P_max.
    for (int u = 0; u < cfg.numUavs; ++u)
        CHECK(env.snapshot().totalPowerMw[u] ==
              doctest::Approx(cfg.maxPowerMw()).epsilon(1e-12));
}

TEST_CASE("fixed2d: 5-movement action space pinned to the initial altitude") {
    WorldConfig cfg;
    cfg.baseline.fixed2d = true;
    cfg.slotsPerEpisode = 30;
    cfg.reclusterEvery = 15;
    REQUIRE(cfg.actionCount() == 15);

    // Vertical movements never appear in the decoded action set.
    for (int i = 0; i < cfg.actionCount(); ++i) {
        const auto spec = decodeAction(i, cfg);
        CHECK(spec.move != MovementAction::Up);
        CHECK(spec.move != MovementAction::Down);
    }

    auto sys = MdqnSystem::create(cfg);
    Environment env(cfg);
    Rng pol(3);
    EpisodeOptions opt;
    opt.epsilon = 1.0;  // exercise the whole action space
    const auto ep = runEpisode(env, &sys, opt, pol);
    for (const auto& rec : ep.slots)
        for (const auto& p : rec.uavPositions) CHECK(p.h == doctest::Approx(100.0));
}

TEST_CASE("max power mode: collapsed action space, full budget each slot") {
    WorldConfig cfg;
    cfg.baseline.maxPower = true;
    cfg.slotsPerEpisode = 10;
    cfg.reclusterEvery = 5;
    REQUIRE(cfg.actionCount() == 7);
    auto sys = MdqnSystem::create(cfg);
    Environment env(cfg);
    Rng pol(5);
    EpisodeOptions opt;
    opt.epsilon = 1.0;
    EpisodeResult ep;
    opt.onSlotEnd = [&](const Environment& e) {
        for (int u = 0; u < cfg.numUavs; ++u)
            CHECK(e.snapshot().totalPowerMw[u] ==
                  doctest::Approx(cfg.maxPowerMw()).epsilon(1e-12));
    };
    ep = runEpisode(env, &sys, opt, pol);
    CHECK(ep.slots.size() == 10);
}

TEST_CASE("static decoding matches dynamic when nothing moves") {
    WorldConfig cfg;
    cfg.userSpeedMax = 0.0;
    cfg.slotsPerEpisode = 12;
    cfg.reclusterEvery = 6;

    WorldConfig staticCfg = cfg;
    staticCfg.baseline.staticOrder = true;

    const auto run = [](const WorldConfig& c) {
        Environment env(c);
        env.reclusterNow();
        std::vector<double> rates;
        const std::vector<int> hover(c.numUavs, encodeAction({MovementAction::Hover, 0}, c));
        for (int t = 0; t < c.slotsPerEpisode; ++t)
            rates.push_back(env.step(hover).info.sumRateBps);
        return rates;
    };
    const auto dynamicRates = run(cfg);
    const auto staticRates = run(staticCfg);
    REQUIRE(dynamicRates.size() == staticRates.size());
    for (size_t i = 0; i < dynamicRates.size(); ++i)
        CHECK(dynamicRates[i] == doctest::Approx(staticRates[i]).epsilon(1e-12));
}

TEST_CASE("static decoding flags pairwise violations when users cross") {
    // Directional users moving fast force equivalent-gain crossings within a
    // re-cluster frame; the frozen order must flag, not throw.
    WorldConfig cfg;
    cfg.baseline.staticOrder = true;
    cfg.mobility = Mobility::DirectionalWalking;
    cfg.userSpeedMax = 40.0;  // exaggerated drift
    cfg.slotsPerEpisode = 60;
    cfg.reclusterEvery = 60;
    cfg.seed = 12;
    auto sys = MdqnSystem::create(cfg);
    Environment env(cfg);
    Rng pol(9);
    EpisodeOptions opt;
    opt.epsilon = 1.0;
    const auto ep = runEpisode(env, &sys, opt, pol);
    CHECK(ep.sicViolations > 0);
}

TEST_CASE("baselines respect position and power constraints") {
    for (const bool circular : {true, false}) {
        WorldConfig cfg;
        cfg.slotsPerEpisode = 15;
        cfg.reclusterEvery = 5;
        cfg.baseline.circular = circular;
        cfg.baseline.maxPower = true;
        auto sys = MdqnSystem::create(cfg);
        Environment env(cfg);
        Rng pol(13);
        EpisodeOptions opt;
        opt.epsilon = 1.0;
        opt.onSlotEnd = [&](const Environment& e) {
            for (const auto& uav : e.uavs()) {
                CHECK(uav.pos.x >= cfg.xMin);
                CHECK(uav.pos.x <= cfg.xMax);
                CHECK(uav.pos.h >= cfg.hMin);
                CHECK(uav.pos.h <= cfg.hMax);
            }
            for (double p : e.snapshot().totalPowerMw)
                CHECK(p <= cfg.maxPowerMw() * (1 + 1e-12));
        };
        runEpisode(env, circular ? nullptr : &sys, opt, pol);
    }
}

TEST_SUITE_END();
