#include "uaco/env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "uaco/baselines.hpp"
#include "uaco/channel.hpp"

namespace uaco {

ActionSpec decodeAction(int index, const WorldConfig& cfg) {
    if (index < 0 || index >= cfg.actionCount())
        throw std::out_of_range("decodeAction: index outside action space");
    const int profiles = cfg.profileCount();
    const int moveIdx = index / profiles;
    ActionSpec a;
    a.profileIndex = index % profiles;
    if (cfg.baseline.fixed2d) {
        // 5-action set: the four horizontal moves then hover.
        a.move = moveIdx < 4 ? static_cast<MovementAction>(moveIdx) : MovementAction::Hover;
    } else {
        a.move = static_cast<MovementAction>(moveIdx);
    }
    return a;
}

int encodeAction(const ActionSpec& a, const WorldConfig& cfg) {
    int moveIdx = static_cast<int>(a.move);
    if (cfg.baseline.fixed2d && a.move == MovementAction::Hover) moveIdx = 4;
    return moveIdx * cfg.profileCount() + a.profileIndex;
}

int qosPenalty(const std::vector<double>& userRates, double qosRateBps, int cap) {
    int lambda = 0;
    for (double r : userRates)
        if (r < qosRateBps) ++lambda;
    return std::min(lambda, cap);
}

Environment::Environment(const WorldConfig& cfg)
    : cfg_(cfg),
      motionRng_(Rng::substream(cfg.seed, rngtag::kUserMotion)),
      fadingRng_(Rng::substream(cfg.seed, rngtag::kFading)),
      kmeansRng_(Rng::substream(cfg.seed, rngtag::kKmeans)) {
    validateConfig(cfg_);
    Rng initRng = Rng::substream(cfg.seed, rngtag::kUserInit);
    scenarioUsers_ = initUsers(cfg_, initRng);
    reset();
}

void Environment::reset() {
    users_ = scenarioUsers_;
    uavs_ = initUavs(cfg_);
    if (cfg_.baseline.circular)
        for (int u = 0; u < cfg_.numUavs; ++u) uavs_[u].pos = circularPosition(u, 0, cfg_);
    clusters_.clear();
    slot_ = 0;
    clusterEpoch_ = 0;

    snap_ = LinkSnapshot{};
    snap_.numUavs = cfg_.numUavs;
    snap_.numUsers = cfg_.numUsers;
    snap_.servingUav.assign(cfg_.numUsers, -1);
    snap_.userPowerMw.assign(cfg_.numUsers, 0.0);
    // Before any action is committed, interferer totals default to the full
    // budget (equal split of P_max across a cluster sums to P_max).
    snap_.totalPowerMw.assign(cfg_.numUavs, cfg_.maxPowerMw());
    snap_.prevTotalPowerMw.assign(cfg_.numUavs, cfg_.maxPowerMw());
    snap_.noiseMw = cfg_.noiseMw();
    recomputeGains();
}

void Environment::recomputeGains() {
    snap_.gain.assign(static_cast<size_t>(cfg_.numUsers) * cfg_.numUavs, 0.0);
    for (int k = 0; k < cfg_.numUsers; ++k) {
        for (int u = 0; u < cfg_.numUavs; ++u) {
            const auto geom =
                LinkGeometry::fromDistance(distance3d(uavs_[u].pos, users_[k]), uavs_[u].pos.h);
            snap_.gain[static_cast<size_t>(k) * cfg_.numUavs + u] =
                channelGain(geom, cfg_.carrierGhz, cfg_.plosMode, cfg_.fading, &fadingRng_);
        }
    }
}

void Environment::refreshOrders(bool countViolations, int* violations) {
    for (auto& c : clusters_) {
        if (cfg_.baseline.staticOrder && !c.order.empty()) {
            // Frozen order: keep it, flag slots where it stops satisfying the
            // SIC condition.
            if (countViolations && !orderSatisfiesSic(c, snap_) && violations != nullptr)
                ++*violations;
            continue;
        }
        c.order = decodingOrder(c, snap_);
    }
}

void Environment::reclusterNow() {
    clusters_ = recluster(users_, uavs_, cfg_, kmeansRng_, nullptr);
    snap_.servingUav.assign(cfg_.numUsers, -1);
    for (const auto& c : clusters_)
        for (int k : c.members) snap_.servingUav[k] = c.uav;
    // New membership needs fresh orders even in static mode.
    for (auto& c : clusters_) c.order.clear();
    refreshOrders(false, nullptr);
    ++clusterEpoch_;
}

std::vector<double> Environment::abstractState(int agent) const {
    if (clusters_.empty())
        throw std::logic_error("abstractState: no clusters yet (recluster first)");
    std::vector<double> s;
    s.reserve(cfg_.stateDim());
    const auto pushCoords = [&](const Position3& p) {
        s.push_back(p.x / cfg_.xMax);
        s.push_back(p.y / cfg_.yMax);
        s.push_back(p.h / cfg_.hMax);
    };
    const auto scaleGain = [&](double g) {
        const double db = 10.0 * std::log10(g);
        return std::clamp((db + cfg_.gainOffsetDb) / cfg_.gainScaleDb, 0.0, 1.0);
    };

    // The connecting agent latches the leading inputs: own coordinates, then
    // the other UAVs ascending, own users in decoding order, other users
    // ascending by id. Gains are each user's gain to its serving UAV.
    pushCoords(uavs_[agent].pos);
    for (int u = 0; u < cfg_.numUavs; ++u)
        if (u != agent) pushCoords(uavs_[u].pos);
    for (int k : clusters_[agent].order) s.push_back(scaleGain(snap_.gainAt(k, agent)));
    for (int k = 0; k < cfg_.numUsers; ++k) {
        const int serving = snap_.servingUav[k];
        if (serving == agent) continue;
        s.push_back(scaleGain(snap_.gainAt(k, serving)));
    }
    if (static_cast<int>(s.size()) != cfg_.stateDim())
        throw std::logic_error("abstractState: dimension mismatch");
    return s;
}

std::vector<double> Environment::currentRates() const {
    return cfg_.mode == Mode::Oma
               ? omaRates(clusters_, snap_, cfg_.bandwidthHz, cfg_.noisePsdMwHz())
               : nomaRates(clusters_, snap_, cfg_.bandwidthHz);
}

StepResult Environment::step(const std::vector<int>& actions) {
    if (static_cast<int>(actions.size()) != cfg_.numUavs)
        throw std::invalid_argument("step: one action per UAV required");
    if (clusters_.empty())
        throw std::logic_error("step: no clusters yet (recluster first)");

    // 1. Commit powers using the decoding orders the agents observed.
    std::fill(snap_.userPowerMw.begin(), snap_.userPowerMw.end(), 0.0);
    const double pMax = cfg_.maxPowerMw();
    // The circular track has no learned power policy and transmits at max power.
    const bool maxPowerRule = cfg_.baseline.maxPower || cfg_.baseline.circular;
    for (int u = 0; u < cfg_.numUavs; ++u) {
        const auto& order = clusters_[u].order;
        const int n = static_cast<int>(order.size());
        uavs_[u].powerProfile.assign(n, 0.0);
        if (n == 0) {
            snap_.totalPowerMw[u] = 0.0;
            continue;
        }
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            double p;
            if (maxPowerRule) {
                p = pMax / n;  // full budget, equal split
            } else {
                const auto spec = decodeAction(actions[u], cfg_);
                p = cfg_.powerProfiles[spec.profileIndex][i] * pMax;
            }
            snap_.userPowerMw[order[i]] = p;
            uavs_[u].powerProfile[i] = p;
            total += p;
        }
        snap_.totalPowerMw[u] = total;
    }

    // 2. Move UAVs (invalid moves hover; circular track overrides).
    for (int u = 0; u < cfg_.numUavs; ++u) {
        if (cfg_.baseline.circular) {
            uavs_[u].pos = circularPosition(u, slot_ + 1, cfg_);
        } else {
            uavs_[u] = applyUavMove(uavs_[u], decodeAction(actions[u], cfg_).move, cfg_);
        }
    }

    // 3. Roam users.
    for (auto& user : users_) user = stepUser(user, motionRng_, cfg_);

    // 4. Fresh channel, then the totals just committed become the
    // "previous slot" interference baseline for the next decisions.
    recomputeGains();
    snap_.prevTotalPowerMw = snap_.totalPowerMw;

    // 5. Decoding orders for reception (frozen in static mode, flagged when
    // the SIC condition no longer holds).
    StepResult res;
    refreshOrders(true, &res.sicViolations);

    // 6. Rates, QoS penalty, shared reward.
    res.info.userRates = currentRates();
    res.info.sumRateBps = sumRateBps(res.info.userRates);
    res.info.lambda = qosPenalty(res.info.userRates, cfg_.qosRateBps, cfg_.qosPenaltyCap);
    res.info.reward = res.info.sumRateBps / std::pow(2.0, res.info.lambda);

    ++slot_;

    res.nextStates.resize(cfg_.numUavs);
    for (int u = 0; u < cfg_.numUavs; ++u) res.nextStates[u] = abstractState(u);
    return res;
}

EpisodeResult runEpisode(Environment& env, MdqnSystem* sys, const EpisodeOptions& opt,
                         Rng& policyRng) {
    const WorldConfig& cfg = env.config();
    env.reset();

    EpisodeResult ep;
    std::vector<std::vector<double>> states(cfg.numUavs);
    std::vector<int> actions(cfg.numUavs, encodeAction({MovementAction::Hover, 0}, cfg));

    double lossSum = 0.0;
    for (int t = 0; t < cfg.slotsPerEpisode; ++t) {
        if (env.reclusterDue()) {
            env.reclusterNow();
            ++ep.reclusterCount;
        }
        if (sys != nullptr) {
            for (int u = 0; u < cfg.numUavs; ++u) states[u] = env.abstractState(u);
            for (int u = 0; u < cfg.numUavs; ++u)
                actions[u] = selectAction(sys->forAgent(u).eval, states[u], opt.epsilon,
                                          policyRng);
        }

        StepResult res = env.step(actions);

        SlotRecord rec;
        rec.slot = t;
        rec.sumRateBps = res.info.sumRateBps;
        rec.reward = res.info.reward;
        rec.lambda = res.info.lambda;
        rec.clusterEpoch = env.clusterEpoch();
        rec.sicViolations = res.sicViolations;
        for (const auto& uav : env.uavs()) rec.uavPositions.push_back(uav.pos);

        if (sys != nullptr && opt.train) {
            const double scaledReward = cfg.rewardScale * res.info.reward;
            // Episode-final transitions still bootstrap: states carry no
            // time-to-go, so terminal targets would pull identical-looking
            // states toward both R and R + maxQ' (measured to destabilize
            // training badly under the undiscounted default).
            for (int u = 0; u < cfg.numUavs; ++u) {
                Learner& l = sys->forAgent(u);
                l.memory.push(
                    {states[u], actions[u], scaledReward, res.nextStates[u], false});
                if (auto loss = trainStep(l, cfg)) {
                    rec.losses.push_back(*loss);
                    rec.lossAgents.push_back(u);
                    lossSum += *loss;
                    ++ep.trainedSteps;
                }
            }
        }

        ep.throughputBits += res.info.sumRateBps * cfg.slotSeconds;
        ep.meanSumRateBps += res.info.sumRateBps;
        ep.meanReward += res.info.reward;
        ep.meanLambda += res.info.lambda;
        ep.sicViolations += res.sicViolations;
        if (opt.recordSlots) ep.slots.push_back(std::move(rec));
        if (opt.onSlotEnd) opt.onSlotEnd(env);
    }

    const double slots = std::max(1, cfg.slotsPerEpisode);
    ep.meanSumRateBps /= slots;
    ep.meanReward /= slots;
    ep.meanLambda /= slots;
    ep.meanLoss = ep.trainedSteps > 0 ? lossSum / ep.trainedSteps : 0.0;
    return ep;
}

}  // namespace uaco
