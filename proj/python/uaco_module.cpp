// Python bindings for the uaco core: channel formulas, clustering, the MLP,
// the environment and one-shot train/eval drivers.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "uaco/baselines.hpp"
#include "uaco/channel.hpp"
#include "uaco/checkpoint.hpp"
#include "uaco/clustering.hpp"
#include "uaco/config.hpp"
#include "uaco/env.hpp"
#include "uaco/metrics.hpp"

namespace py = pybind11;
using namespace uaco;

namespace {

WorldConfig configFromText(const std::string& text) {
    WorldConfig cfg = parseConfigText(text);
    validateConfig(cfg);
    return cfg;
}

struct TrainSummary {
    std::vector<double> episodeThroughputBits;
    std::vector<double> episodeMeanSumRate;
    std::vector<double> episodeMeanLoss;
    std::vector<double> losses;  // per train step, execution order
};

TrainSummary runTraining(const WorldConfig& cfg, const std::string& ckptPath) {
    MdqnSystem sys = MdqnSystem::create(cfg);
    Environment env(cfg);
    Rng policyRng = policyStream(cfg);
    TrainSummary out;
    for (int e = 0; e < cfg.episodes; ++e) {
        EpisodeOptions opt;
        opt.train = true;
        opt.epsilon = epsilonForEpisode(e, cfg.episodes, cfg.epsStart, cfg.epsEnd);
        const EpisodeResult ep = runEpisode(env, &sys, opt, policyRng);
        out.episodeThroughputBits.push_back(ep.throughputBits);
        out.episodeMeanSumRate.push_back(ep.meanSumRateBps);
        out.episodeMeanLoss.push_back(ep.meanLoss);
        for (const auto& rec : ep.slots)
            out.losses.insert(out.losses.end(), rec.losses.begin(), rec.losses.end());
    }
    if (!ckptPath.empty()) writeCheckpoint(ckptPath, sys, cfg);
    return out;
}

std::vector<double> runEval(const WorldConfig& cfg, const std::string& ckptPath,
                            bool force) {
    std::optional<MdqnSystem> sys;
    if (!ckptPath.empty()) sys = readCheckpoint(ckptPath, cfg, force);
    Environment env(cfg);
    Rng policyRng = policyStream(cfg);
    std::vector<double> meanRates;
    for (int e = 0; e < cfg.evalEpisodes; ++e) {
        EpisodeOptions opt;
        const EpisodeResult ep = runEpisode(env, sys ? &*sys : nullptr, opt, policyRng);
        meanRates.push_back(ep.meanSumRateBps);
    }
    return meanRates;
}

}  // namespace

PYBIND11_MODULE(uaco, m) {
    m.doc() = "NOMA multi-UAV cellular offloading simulator (MDQN trainer core)";

    py::class_<WorldConfig>(m, "Config")
        .def(py::init(&configFromText), py::arg("text") = "",
             "Build a config from `key = value` lines (defaults when empty).")
        .def_readwrite("seed", &WorldConfig::seed)
        .def_readwrite("episodes", &WorldConfig::episodes)
        .def_readwrite("eval_episodes", &WorldConfig::evalEpisodes)
        .def_property_readonly("state_dim", &WorldConfig::stateDim)
        .def_property_readonly("action_count", &WorldConfig::actionCount)
        .def_property_readonly("noise_mw", &WorldConfig::noiseMw)
        .def_property_readonly("max_power_mw", &WorldConfig::maxPowerMw)
        .def("set", [](WorldConfig& cfg, const std::string& key, const std::string& value) {
            applyKeyValue(cfg, key, value);
        }, "Set one key; validation happens when the config is used (or via validate()).")
        .def("validate", [](const WorldConfig& cfg) { validateConfig(cfg); })
        .def("resolved_text", &resolvedConfigText)
        .def("digest", &configDigest);

    m.def("pathloss_los_db", [](double d3d, double h, double fcGhz) {
        return pathlossLosDb(LinkGeometry::fromDistance(d3d, h), fcGhz);
    }, py::arg("d3d"), py::arg("h"), py::arg("fc_ghz"));
    m.def("pathloss_nlos_db", [](double d3d, double h, double fcGhz) {
        return pathlossNlosDb(LinkGeometry::fromDistance(d3d, h), fcGhz);
    }, py::arg("d3d"), py::arg("h"), py::arg("fc_ghz"));
    m.def("p_los", [](double d3d, double h, bool corrected) {
        return pLos(LinkGeometry::fromDistance(d3d, h),
                    corrected ? PlosMode::Corrected : PlosMode::AsPrinted);
    }, py::arg("d3d"), py::arg("h"), py::arg("corrected") = true);
    m.def("mean_pathloss_db", [](double d3d, double h, double fcGhz, bool corrected) {
        return meanPathlossDb(LinkGeometry::fromDistance(d3d, h), fcGhz,
                              corrected ? PlosMode::Corrected : PlosMode::AsPrinted);
    }, py::arg("d3d"), py::arg("h"), py::arg("fc_ghz"), py::arg("corrected") = true);
    m.def("channel_gain", [](double d3d, double h, double fcGhz, bool corrected) {
        return channelGain(LinkGeometry::fromDistance(d3d, h), fcGhz,
                           corrected ? PlosMode::Corrected : PlosMode::AsPrinted,
                           FadingKind::Deterministic, nullptr);
    }, py::arg("d3d"), py::arg("h"), py::arg("fc_ghz"), py::arg("corrected") = true,
       "Deterministic-fading linear power gain.");
    m.def("distance3d", [](double ux, double uy, double uh, double kx, double ky) {
        UserState user;
        user.x = kx;
        user.y = ky;
        return distance3d({ux, uy, uh}, user);
    });

    m.def("kmeans_capacitated",
          [](const std::vector<Point2>& points, int clusters, int eta, uint64_t seed) {
              Rng rng(seed);
              auto res = kmeans(points, clusters, 50, rng);
              auto capped = enforceCapacity(res.assignment, eta, points);
              return py::make_tuple(capped.clusters, capped.centroids);
          },
          py::arg("points"), py::arg("clusters"), py::arg("eta"), py::arg("seed") = 1,
          "Capacity-bounded K-means; returns (clusters, centroids).");

    py::class_<Environment>(m, "Environment")
        .def(py::init<const WorldConfig&>())
        .def("reset", &Environment::reset)
        .def("recluster_due", &Environment::reclusterDue)
        .def("recluster_now", &Environment::reclusterNow)
        .def("state", &Environment::abstractState, py::arg("agent"))
        .def("step",
             [](Environment& env, const std::vector<int>& actions) {
                 const StepResult res = env.step(actions);
                 return py::make_tuple(res.info.reward, res.info.sumRateBps,
                                       res.info.lambda, res.nextStates);
             },
             "Joint step; returns (reward, sum_rate_bps, lambda, next_states).")
        .def_property_readonly("slot", &Environment::slot)
        .def_property_readonly("cluster_epoch", &Environment::clusterEpoch);

    py::class_<TrainSummary>(m, "TrainSummary")
        .def_readonly("episode_throughput_bits", &TrainSummary::episodeThroughputBits)
        .def_readonly("episode_mean_sum_rate", &TrainSummary::episodeMeanSumRate)
        .def_readonly("episode_mean_loss", &TrainSummary::episodeMeanLoss)
        .def_readonly("losses", &TrainSummary::losses);

    m.def("train", &runTraining, py::arg("config"), py::arg("checkpoint") = "",
          "Train the MDQN system; optionally write a checkpoint.");
    m.def("evaluate", &runEval, py::arg("config"), py::arg("checkpoint") = "",
          py::arg("force") = false,
          "Frozen-policy eval (epsilon 0); returns per-episode mean sum rates. "
          "Empty checkpoint path runs the policy-free (circular) mode.");
}
