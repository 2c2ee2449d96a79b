#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "uaco/config.hpp"
#include "uaco/mlp.hpp"
#include "uaco/rng.hpp"

namespace uaco {

struct Transition {
    std::vector<double> state;
    int action = 0;
    double reward = 0.0;  // learner units (rewardScale * bits/s, post-penalty)
    std::vector<double> nextState;
    // Episode-final transitions do not bootstrap (finite-horizon episodes; with
    // the undiscounted β = 1 of the reference setup the target would otherwise
    // grow without bound).
    bool terminal = false;
};

/// FIFO ring of transitions with uniform sampling.
class ReplayMemory {
public:
    explicit ReplayMemory(int capacity) : capacity_(capacity) {}

    void push(Transition t);
    int size() const { return static_cast<int>(buf_.size()); }
    int capacity() const { return capacity_; }
    const Transition& at(int i) const { return buf_[i]; }

    /// batch indices drawn uniformly with replacement.
    std::vector<int> sampleIndices(int batch, Rng& rng) const;

private:
    int capacity_;
    int head_ = 0;  // next slot to overwrite once full
    std::vector<Transition> buf_;
};

/// Linear per-episode decay from epsStart to epsEnd across `episodes`.
double epsilonForEpisode(int episode, int episodes, double epsStart, double epsEnd);

/// ε-greedy over the evaluation net; greedy ties go to the lowest index.
int selectAction(const MlpParams& evalNet, const std::vector<double>& state,
                 double epsilon, Rng& rng);

int argmaxAction(const std::vector<double>& q);

/// y_i = R_i + β max_a' Q_target(S'_i, a'); terminal transitions use y_i = R_i.
std::vector<double> computeTargets(const MlpParams& targetNet,
                                   const std::vector<const Transition*>& batch,
                                   double beta);

/// One evaluation/target pair with its Adam state, replay memory and
/// training-step counter. Shared mode uses one Learner for all agents;
/// independent mode one per agent.
struct Learner {
    MlpParams eval;
    MlpParams target;
    AdamState adam;
    ReplayMemory memory;
    uint64_t trainSteps = 0;
    Rng sampler;

    Learner(const MlpDims& dims, const WorldConfig& cfg, Rng netInit, Rng samplerRng);
};

/// Copies eval into target whenever trainSteps is a positive multiple of
/// everySteps; returns true when a sync happened.
bool maybeSyncTarget(Learner& l, int everySteps);

/// Uniform minibatch + masked-MSE Adam step on the eval net. Returns the
/// batch loss, or nullopt when the memory holds fewer than batchSize samples
/// (caller skips). Increments trainSteps and applies the target sync rule.
std::optional<double> trainStep(Learner& l, const WorldConfig& cfg);

/// Exploration stream for a run (restart-dependent, like the learner streams).
Rng policyStream(const WorldConfig& cfg);

/// The full learner bank for a run.
struct MdqnSystem {
    AgentMode agentMode = AgentMode::Shared;
    std::vector<Learner> learners;  // size 1 (shared) or numUavs (independent)

    static MdqnSystem create(const WorldConfig& cfg);
    Learner& forAgent(int agent);
    const Learner& forAgent(int agent) const;
    uint64_t totalTrainSteps() const;
};

}  // namespace uaco
