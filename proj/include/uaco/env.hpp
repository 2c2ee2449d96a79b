#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "uaco/clustering.hpp"
#include "uaco/config.hpp"
#include "uaco/mdqn.hpp"
#include "uaco/noma.hpp"
#include "uaco/world.hpp"

namespace uaco {

/// Joint movement/power action. Row-major index layout:
/// index = movement * |profiles| + profileIndex.
struct ActionSpec {
    MovementAction move = MovementAction::Hover;
    int profileIndex = 0;
};

ActionSpec decodeAction(int index, const WorldConfig& cfg);
int encodeAction(const ActionSpec& a, const WorldConfig& cfg);

struct RewardInfo {
    double sumRateBps = 0.0;
    int lambda = 0;          // QoS violations this slot (capped)
    double reward = 0.0;     // sumRate / 2^lambda, bits/s
    std::vector<double> userRates;
};

struct StepResult {
    RewardInfo info;
    std::vector<std::vector<double>> nextStates;  // per agent
    int sicViolations = 0;  // frozen-order pairwise violations (static mode)
};

/// The MDP: world state, clustering schedule, per-slot link snapshot, state
/// abstraction and the penalized cooperative reward. Value semantics; copies
/// are independent simulations (used by the hypothetical-action oracle).
class Environment {
public:
    explicit Environment(const WorldConfig& cfg);

    /// Episode start: the seed-defined scenario's initial user layout, UAVs
    /// back at the deployment boundary, slot 0, cleared clusters (the slot-0
    /// re-cluster builds them), full-power interferer totals. The scenario
    /// (user starting positions and headings) is drawn once per Environment;
    /// per-slot motion and fading stay stochastic across episodes.
    void reset();

    bool reclusterDue() const { return slot_ % cfg_.reclusterEvery == 0; }
    void reclusterNow();

    /// Abstracted, shuffled and scaled observation for one agent; length is
    /// always 3U + K with the agent's own data in the leading positions.
    std::vector<double> abstractState(int agent) const;

    /// Joint transition: commit powers by the orders agents observed, apply
    /// all moves, roam users, rebuild the snapshot, evaluate rates and the
    /// shared reward.
    StepResult step(const std::vector<int>& actions);

    int slot() const { return slot_; }
    int clusterEpoch() const { return clusterEpoch_; }
    const WorldConfig& config() const { return cfg_; }
    const std::vector<UavState>& uavs() const { return uavs_; }
    const std::vector<UserState>& users() const { return users_; }
    const std::vector<NomaCluster>& clusters() const { return clusters_; }
    const LinkSnapshot& snapshot() const { return snap_; }

private:
    void recomputeGains();
    void refreshOrders(bool countViolations, int* violations);
    std::vector<double> currentRates() const;

    WorldConfig cfg_;
    std::vector<UserState> scenarioUsers_;  // seed-defined initial layout
    std::vector<UavState> uavs_;
    std::vector<UserState> users_;
    std::vector<NomaCluster> clusters_;
    LinkSnapshot snap_;
    Rng motionRng_, fadingRng_, kmeansRng_;
    int slot_ = 0;
    int clusterEpoch_ = 0;
};

/// QoS penalty exponent: count of users below qosRateBps, capped.
int qosPenalty(const std::vector<double>& userRates, double qosRateBps, int cap);

struct SlotRecord {
    int slot = 0;
    double sumRateBps = 0.0;
    double reward = 0.0;
    int lambda = 0;
    std::vector<Position3> uavPositions;
    int clusterEpoch = 0;
    int sicViolations = 0;
    std::vector<double> losses;   // one entry per gradient step this slot
    std::vector<int> lossAgents;  // acting agent for each loss entry
};

struct EpisodeResult {
    double throughputBits = 0.0;  // Eq-style episode throughput: Σ_t sumRate(t)·Δt
    double meanSumRateBps = 0.0;
    double meanReward = 0.0;
    double meanLambda = 0.0;
    double meanLoss = 0.0;        // mean over training steps this episode (0 if none)
    int trainedSteps = 0;
    int reclusterCount = 0;
    int sicViolations = 0;
    std::vector<SlotRecord> slots;
};

struct EpisodeOptions {
    bool train = false;
    double epsilon = 0.0;
    bool recordSlots = true;
    /// Invoked after every step (acceptance-suite hooks).
    std::function<void(const Environment&)> onSlotEnd;
};

/// Alg-2 inner loops for one episode. `sys` may be null for the circular
/// baseline (no policy consulted). policyRng drives ε-greedy exploration.
EpisodeResult runEpisode(Environment& env, MdqnSystem* sys, const EpisodeOptions& opt,
                         Rng& policyRng);

}  // namespace uaco
