#include "uaco/mdqn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uaco {

void ReplayMemory::push(Transition t) {
    if (capacity_ <= 0) throw std::logic_error("ReplayMemory: capacity must be > 0");
    if (static_cast<int>(buf_.size()) < capacity_) {
        buf_.push_back(std::move(t));
    } else {
        buf_[head_] = std::move(t);  // FIFO eviction
        head_ = (head_ + 1) % capacity_;
    }
}

std::vector<int> ReplayMemory::sampleIndices(int batch, Rng& rng) const {
    if (size() < batch)
        throw std::logic_error("ReplayMemory: not enough samples");
    std::vector<int> idx(batch);
    for (int i = 0; i < batch; ++i)
        idx[i] = static_cast<int>(rng.uniformInt(static_cast<uint64_t>(size())));
    return idx;
}

double epsilonForEpisode(int episode, int episodes, double epsStart, double epsEnd) {
    if (episodes <= 1) return epsStart;
    const double frac = static_cast<double>(episode) / (episodes - 1);
    return epsStart + (epsEnd - epsStart) * std::clamp(frac, 0.0, 1.0);
}

int argmaxAction(const std::vector<double>& q) {
    int best = 0;
    for (int a = 1; a < static_cast<int>(q.size()); ++a)
        if (q[a] > q[best]) best = a;  // ties keep the lowest index
    return best;
}

int selectAction(const MlpParams& evalNet, const std::vector<double>& state,
                 double epsilon, Rng& rng) {
    const int numActions = evalNet.dims.output;
    if (epsilon > 0.0 && rng.uniform() < epsilon)
        return static_cast<int>(rng.uniformInt(static_cast<uint64_t>(numActions)));
    return argmaxAction(mlpForward(evalNet, state));
}

std::vector<double> computeTargets(const MlpParams& targetNet,
                                   const std::vector<const Transition*>& batch,
                                   double beta) {
    std::vector<double> y(batch.size());
    for (size_t i = 0; i < batch.size(); ++i) {
        const Transition& t = *batch[i];
        double bootstrap = 0.0;
        if (beta != 0.0 && !t.terminal) {
            const auto q = mlpForward(targetNet, t.nextState);
            bootstrap = beta * q[argmaxAction(q)];
        }
        y[i] = t.reward + bootstrap;
    }
    return y;
}

Learner::Learner(const MlpDims& dims, const WorldConfig& cfg, Rng netInit, Rng samplerRng)
    : eval(mlpInit(dims, netInit)),
      target(eval),
      adam(AdamState::forParams(eval, cfg.learningRate)),
      memory(cfg.replayCapacity),
      sampler(samplerRng) {}

bool maybeSyncTarget(Learner& l, int everySteps) {
    if (everySteps < 1) throw std::invalid_argument("target sync period must be >= 1");
    if (l.trainSteps > 0 && l.trainSteps % static_cast<uint64_t>(everySteps) == 0) {
        cloneInto(l.eval, l.target);
        return true;
    }
    return false;
}

std::optional<double> trainStep(Learner& l, const WorldConfig& cfg) {
    if (l.memory.size() < cfg.batchSize) return std::nullopt;

    const auto idx = l.memory.sampleIndices(cfg.batchSize, l.sampler);
    std::vector<const Transition*> batch(idx.size());
    for (size_t i = 0; i < idx.size(); ++i) batch[i] = &l.memory.at(idx[i]);

    const auto targets = computeTargets(l.target, batch, cfg.discount);

    MlpGrads grads;
    grads.resize(l.eval.dims);
    double loss = 0.0;
    const double invBatch = 1.0 / static_cast<double>(batch.size());
    for (size_t i = 0; i < batch.size(); ++i) {
        const Transition& t = *batch[i];
        const auto q = mlpForward(l.eval, t.state);
        const double err = targets[i] - q[t.action];
        loss += err * err;
        mlpBackwardAccumulate(l.eval, t.state, t.action, targets[i], grads, invBatch);
    }
    loss *= invBatch;

    adamStep(l.eval, l.adam, grads);
    l.trainSteps += 1;
    maybeSyncTarget(l, cfg.targetSyncEvery);
    return loss;
}

Rng policyStream(const WorldConfig& cfg) {
    return Rng::substream(cfg.seed,
                          rngtag::kPolicy + 4096ULL * static_cast<uint64_t>(cfg.restart));
}

MdqnSystem MdqnSystem::create(const WorldConfig& cfg) {
    MdqnSystem sys;
    sys.agentMode = cfg.agentMode;
    const MlpDims dims{cfg.stateDim(), cfg.hiddenUnits, cfg.actionCount()};
    const int count = cfg.agentMode == AgentMode::Shared ? 1 : cfg.numUavs;
    const uint64_t restartOffset = 4096ULL * static_cast<uint64_t>(cfg.restart);
    for (int i = 0; i < count; ++i) {
        const int tagAgent = cfg.agentMode == AgentMode::Shared ? -1 : i;
        sys.learners.emplace_back(
            dims, cfg,
            Rng::substream(cfg.seed,
                           rngtag::agentTag(rngtag::kNetInit, tagAgent) + restartOffset),
            Rng::substream(cfg.seed,
                           rngtag::agentTag(rngtag::kReplay, tagAgent) + restartOffset));
    }
    return sys;
}

Learner& MdqnSystem::forAgent(int agent) {
    return learners[agentMode == AgentMode::Shared ? 0 : agent];
}

const Learner& MdqnSystem::forAgent(int agent) const {
    return learners[agentMode == AgentMode::Shared ? 0 : agent];
}

uint64_t MdqnSystem::totalTrainSteps() const {
    uint64_t total = 0;
    for (const auto& l : learners) total += l.trainSteps;
    return total;
}

}  // namespace uaco
