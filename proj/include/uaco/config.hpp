#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace uaco {

enum class Mode { Noma, Oma };
enum class AgentMode { Shared, Independent };
enum class PlosMode { Corrected, AsPrinted };
enum class FadingKind { Deterministic, RayleighPower };
enum class Mobility { RandomRoaming, DirectionalWalking };

/// Baseline scheme flags. circular/fixed2d replace the learned 3-D
/// trajectory and are mutually exclusive; staticOrder and maxPower compose
/// with anything.
struct BaselineSet {
    bool circular = false;
    bool fixed2d = false;
    bool staticOrder = false;
    bool maxPower = false;

    bool any() const { return circular || fixed2d || staticOrder || maxPower; }
};

/// Every experiment knob lives here; defaults reproduce the reference
/// simulation setup (3 UAVs, 6 users, 500 m square, 15 kHz band at 2 GHz).
struct WorldConfig {
    // entities / geometry
    int numUavs = 3;   // U
    int numUsers = 6;  // K
    double xMin = 0.0, xMax = 500.0;  // m
    double yMin = 0.0, yMax = 500.0;  // m
    double hMin = 20.0, hMax = 150.0; // m
    double userSpeedMax = 0.5;        // m/s, V_max
    double uavSpeed = 5.0;            // m/s, V
    double slotSeconds = 1.0;         // Δt
    int slotsPerEpisode = 180;        // T
    int reclusterEvery = 60;          // T_r
    double uavInitAltitude = 100.0;   // initial UAV altitude, m
    Mobility mobility = Mobility::RandomRoaming;

    // channel
    double carrierGhz = 2.0;          // f_c
    double bandwidthHz = 15000.0;     // B
    double noisePsdDbmHz = -100.0;    // AWGN power spectral density
    PlosMode plosMode = PlosMode::Corrected;
    FadingKind fading = FadingKind::Deterministic;

    // link / power
    double maxPowerDbm = 29.0;        // P_max
    double qosRateBps = 150.0;        // R_QoS
    int maxUsersPerUav = 2;           // η
    // Per-cluster transmit split, fraction of P_max per decoding slot
    // (weakest user first). Each profile must have η entries summing to ≤ 1.
    std::vector<std::vector<double>> powerProfiles = {
        {0.8, 0.2}, {0.65, 0.35}, {0.5, 0.5}};

    // state scaling: gain entry = clamp((10*log10 g + gainOffsetDb) / gainScaleDb, 0, 1)
    double gainOffsetDb = 150.0;
    double gainScaleDb = 100.0;

    // clustering
    int kmeansMaxIters = 50;

    // learning
    int episodes = 300;               // E
    double learningRate = 0.001;      // α
    double discount = 1.0;            // β
    int replayCapacity = 10000;       // e
    int batchSize = 128;              // ω
    int targetSyncEvery = 2000;       // υ
    double epsStart = 0.9;
    double epsEnd = 0.0;
    int hiddenUnits = 40;
    // Rewards are fed to the learner as rewardScale * (sum rate / 2^λ); the
    // raw bit/s value is what metrics report. Scale-invariant for the greedy
    // policy, keeps Q magnitudes within reach of Adam at α = 0.001.
    double rewardScale = 1e-5;
    int qosPenaltyCap = 16;
    AgentMode agentMode = AgentMode::Shared;

    // run
    Mode mode = Mode::Noma;
    BaselineSet baseline;
    double circularRadius = 150.0;    // m
    double circularAltitude = 100.0;  // m
    int evalEpisodes = 1;
    uint64_t seed = 1;
    // Offsets the learner-side random streams (net init, replay sampling,
    // exploration) while keeping the seed-defined world scenario fixed;
    // restart k of a seed is an independent training attempt on the same
    // deployment.
    int restart = 0;

    // derived
    double maxPowerMw() const { return std::pow(10.0, maxPowerDbm / 10.0); }
    double noisePsdMwHz() const { return std::pow(10.0, noisePsdDbmHz / 10.0); }
    double noiseMw() const { return noisePsdMwHz() * bandwidthHz; }
    int movementCount() const { return baseline.fixed2d ? 5 : 7; }
    int profileCount() const {
        return baseline.maxPower ? 1 : static_cast<int>(powerProfiles.size());
    }
    int actionCount() const { return movementCount() * profileCount(); }
    int stateDim() const { return 3 * numUavs + numUsers; }
};

/// Throws std::invalid_argument naming the violated invariant.
void validateConfig(const WorldConfig& cfg);

/// Flat `key = value` config text. Unknown keys are hard errors; later
/// assignments override earlier ones (CLI flags are applied on top).
WorldConfig parseConfigText(const std::string& text, const WorldConfig& base = {});
WorldConfig parseConfigFile(const std::string& path, const WorldConfig& base = {});
void applyKeyValue(WorldConfig& cfg, const std::string& key, const std::string& value,
                   int line = 0);

/// Canonical `key = value` listing of the fully resolved config (stable key
/// order; used for the metrics preamble and reproducibility).
std::string resolvedConfigText(const WorldConfig& cfg);

/// Digest over the knobs that determine network/action-space shape; eval
/// refuses a checkpoint with a different digest unless forced.
std::string configDigest(const WorldConfig& cfg);

/// Shortest decimal text that round-trips the exact double value.
std::string formatDouble(double v);

std::string toString(Mode m);
std::string toString(AgentMode m);
std::string toString(Mobility m);
std::string toString(PlosMode m);
std::string toString(FadingKind f);
std::string toString(const BaselineSet& b);

}  // namespace uaco
