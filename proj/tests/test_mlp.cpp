#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "uaco/mlp.hpp"

using namespace uaco;

namespace {

MlpParams tinyIdentity() {
    MlpParams p;
    p.dims = {1, 1, 1};
    p.w1 = {1.0};
    p.b1 = {0.0};
    p.w2 = {1.0};
    p.b2 = {0.0};
    return p;
}

/// Naive forward re-derivation with index-free loops.
std::vector<double> naiveForward(const MlpParams& p, const std::vector<double>& in) {
    std::vector<double> hidden(p.dims.hidden, 0.0);
    for (int j = 0; j < p.dims.hidden; ++j) {
        double acc = 0.0;
        for (int i = 0; i < p.dims.input; ++i) acc += p.w1[j * p.dims.input + i] * in[i];
        acc += p.b1[j];
        hidden[j] = std::max(acc, 0.0);
    }
    std::vector<double> out(p.dims.output, 0.0);
    for (int o = 0; o < p.dims.output; ++o) {
        double acc = 0.0;
        for (int j = 0; j < p.dims.hidden; ++j) acc += p.w2[o * p.dims.hidden + j] * hidden[j];
        out[o] = acc + p.b2[o];
    }
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("mlp");

TEST_CASE("all-zero parameters produce all-zero output") {
    MlpParams p;
    p.dims = {4, 8, 3};
    p.w1.assign(32, 0.0);
    p.b1.assign(8, 0.0);
    p.w2.assign(24, 0.0);
    p.b2.assign(3, 0.0);
    for (double v : mlpForward(p, {1.0, -2.0, 3.0, 0.5})) CHECK(v == 0.0);
}

TEST_CASE("1x1x1 identity net passes positives through relu") {
    const auto p = tinyIdentity();
    CHECK(mlpForward(p, {2.0})[0] == 2.0);
    CHECK(mlpForward(p, {-2.0})[0] == 0.0);
}

TEST_CASE("forward matches a naive loop oracle to 1e-12") {
    Rng rng(61);
    for (int trial = 0; trial < 20; ++trial) {
        Rng netRng(100 + trial);
        const MlpDims dims{15, 40, 21};
        const auto p = mlpInit(dims, netRng);
        std::vector<double> in(dims.input);
        for (auto& x : in) x = rng.uniform(-1, 1);
        const auto a = mlpForward(p, in);
        const auto b = naiveForward(p, in);
        for (int o = 0; o < dims.output; ++o)
            CHECK(a[o] == doctest::Approx(b[o]).epsilon(1e-12));
    }
}

TEST_CASE("backward: zero gradient at a zero-loss point") {
    const auto p = tinyIdentity();
    const auto g = mlpBackward(p, {2.0}, 0, 2.0);  // prediction == target
    for (double v : g.w1) CHECK(v == 0.0);
    for (double v : g.w2) CHECK(v == 0.0);
    for (double v : g.b1) CHECK(v == 0.0);
    for (double v : g.b2) CHECK(v == 0.0);
}

TEST_CASE("backward matches the analytic derivative on a 1-parameter path") {
    // Net output = w2 * relu(w1 * x), loss = (y - w2 relu(w1 x))^2.
    MlpParams p = tinyIdentity();
    p.w1 = {1.5};
    p.w2 = {2.0};
    const double x = 3.0, y = 5.0;
    const auto g = mlpBackward(p, {x}, 0, y);
    const double pred = 2.0 * 1.5 * 3.0;  // 9
    // dL/dw2 = 2 (pred - y) * relu(w1 x) = 2*4*4.5 = 36
    CHECK(g.w2[0] == doctest::Approx(2 * (pred - y) * 4.5).epsilon(1e-14));
    // dL/dw1 = 2 (pred - y) * w2 * x = 2*4*2*3 = 48
    CHECK(g.w1[0] == doctest::Approx(2 * (pred - y) * 2.0 * 3.0).epsilon(1e-14));
    CHECK(g.b2[0] == doctest::Approx(2 * (pred - y)).epsilon(1e-14));
    CHECK(g.b1[0] == doctest::Approx(2 * (pred - y) * 2.0).epsilon(1e-14));
}

TEST_CASE("backward matches central finite differences on random nets") {
    Rng rng(71);
    for (int trial = 0; trial < 10; ++trial) {
        Rng netRng(200 + trial);
        const MlpDims dims{6, 10, 5};
        const auto p = mlpInit(dims, netRng);
        std::vector<double> in(dims.input);
        for (auto& x : in) x = rng.uniform(-1, 1);
        const int action = static_cast<int>(rng.uniformInt(dims.output));
        const auto rep =
            oracle::finiteDiffGrad(p, in, action, rng.uniform(-2, 2), 1e-5);
        CHECK(rep.passed);
        CHECK(rep.maxRelError <= 1e-4);
    }
}

TEST_CASE("adam: zero gradient leaves parameters unchanged") {
    Rng netRng(5);
    auto p = mlpInit({3, 4, 2}, netRng);
    const auto before = p;
    auto s = AdamState::forParams(p, 0.01);
    MlpGrads g;
    g.resize(p.dims);
    adamStep(p, s, g);
    CHECK(p.w1 == before.w1);
    CHECK(p.w2 == before.w2);
    CHECK(p.b1 == before.b1);
    CHECK(p.b2 == before.b2);
    CHECK(s.t == 1);
}

TEST_CASE("adam: first step with unit gradient moves by ~ -lr") {
    MlpParams p = tinyIdentity();
    auto s = AdamState::forParams(p, 0.001);
    MlpGrads g;
    g.resize(p.dims);
    g.w1[0] = 1.0;
    adamStep(p, s, g);
    CHECK(p.w1[0] == doctest::Approx(1.0 - 0.001 / (1.0 + 1e-8)).epsilon(1e-12));
}

TEST_CASE("adam: constant gradient approaches -lr * sign(g) per step") {
    MlpParams p = tinyIdentity();
    auto s = AdamState::forParams(p, 0.01);
    MlpGrads g;
    g.resize(p.dims);
    g.w1[0] = -3.7;  // constant negative gradient -> parameter climbs
    double prev = p.w1[0];
    for (int i = 0; i < 200; ++i) {
        adamStep(p, s, g);
        const double delta = p.w1[0] - prev;
        prev = p.w1[0];
        if (i > 50) CHECK(delta == doctest::Approx(0.01).epsilon(0.01));
    }
}

TEST_CASE("init determinism, bounds and near-zero mean") {
    Rng a(9), b(9);
    const auto p1 = mlpInit({16, 8, 4}, a);
    const auto p2 = mlpInit({16, 8, 4}, b);
    CHECK(p1.w1 == p2.w1);
    CHECK(p1.w2 == p2.w2);
    for (double w : p1.w1) CHECK(std::fabs(w) <= 0.25);  // fan_in 16
    for (double bias : p1.b1) CHECK(bias == 0.0);

    Rng big(10);
    const auto wide = mlpInit({100, 1000, 1}, big);
    double mean = 0.0;
    for (double w : wide.w1) mean += w;
    mean /= wide.w1.size();
    // 3 sigma of the mean of n uniform(-b, b) draws: 3 * b / sqrt(3 n)
    const double bound = 3.0 * 0.1 / std::sqrt(3.0 * wide.w1.size());
    CHECK(std::fabs(mean) <= bound);
}

TEST_CASE("clone_into copies bit-identically and isolates mutation") {
    Rng a(11), b(12);
    auto src = mlpInit({5, 6, 3}, a);
    auto dst = mlpInit({5, 6, 3}, b);
    cloneInto(src, dst);
    std::vector<double> in = {0.1, 0.2, 0.3, 0.4, 0.5};
    CHECK(mlpForward(src, in) == mlpForward(dst, in));
    src.b2[0] += 1.0;  // unconditionally visible at the output
    CHECK(mlpForward(src, in) != mlpForward(dst, in));
    cloneInto(src, dst);
    cloneInto(src, dst);  // idempotent
    CHECK(mlpForward(src, in) == mlpForward(dst, in));
}

TEST_CASE("fits a 4-state bandit below 1e-3 masked MSE in 5000 adam steps") {
    // Four one-hot states, 2 actions, fixed targets.
    const std::vector<std::vector<double>> states = {
        {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    const std::vector<std::vector<double>> targets = {
        {1.0, -0.5}, {0.2, 0.8}, {-1.0, 0.4}, {0.6, 0.0}};
    Rng netRng(13);
    auto p = mlpInit({4, 40, 2}, netRng);
    auto adam = AdamState::forParams(p, 0.001);
    double loss = 1.0;
    for (int step = 0; step < 5000; ++step) {
        MlpGrads g;
        g.resize(p.dims);
        loss = 0.0;
        int count = 0;
        for (size_t s = 0; s < states.size(); ++s) {
            for (int a = 0; a < 2; ++a) {
                const double q = mlpForward(p, states[s])[a];
                loss += (targets[s][a] - q) * (targets[s][a] - q);
                mlpBackwardAccumulate(p, states[s], a, targets[s][a], g, 1.0 / 8);
                ++count;
            }
        }
        loss /= count;
        if (loss < 1e-3) break;
        adamStep(p, adam, g);
    }
    CHECK(loss < 1e-3);
}

TEST_SUITE_END();
