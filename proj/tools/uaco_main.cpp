// uaco: NOMA multi-UAV cellular offloading simulator and MDQN trainer.
//
// Subcommands: train, eval, baseline, cluster, verify.
// Exit codes: 0 success, 1 validation error, 2 runtime error,
//             3 verification failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "oracles.hpp"
#include "uaco/checkpoint.hpp"
#include "uaco/clustering.hpp"
#include "uaco/config.hpp"
#include "uaco/env.hpp"
#include "uaco/metrics.hpp"

namespace {

using namespace uaco;

struct CommonArgs {
    std::string configPath;
    std::vector<std::string> sets;  // key=value overrides
    std::optional<uint64_t> seed;
    std::optional<int> episodes;
    std::optional<int> tr;
    std::string mode;
    std::string agentMode;
    std::string baseline;
    std::string mobility;
    std::string out;
    std::string ckpt;
    bool force = false;
    int jobs = 1;
    std::vector<uint64_t> seeds;  // fan-out list; empty = single run
    int ckptEvery = 0;
};

void addCommonOptions(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.configPath, "config file (key = value lines)");
    cmd->add_option("--set", args.sets,
                    "override any config key, e.g. --set lr=0.01 (repeatable)");
    cmd->add_option("--seed", args.seed, "RNG seed");
    cmd->add_option("--episodes", args.episodes, "training episodes");
    cmd->add_option("--tr", args.tr, "slots between re-clustering (T_r)");
    cmd->add_option("--mode", args.mode, "noma|oma");
    cmd->add_option("--agent-mode", args.agentMode, "shared|independent");
    cmd->add_option("--baseline", args.baseline,
                    "comma list of circular|fixed2d|static-order|max-power");
    cmd->add_option("--mobility", args.mobility, "random|directional");
    cmd->add_option("--out", args.out, "metrics CSV path");
    cmd->add_option("--ckpt", args.ckpt, "checkpoint path");
    cmd->add_flag("--force", args.force, "evaluate despite config digest mismatch");
    cmd->add_option("--jobs", args.jobs, "parallel independent seed runs")
        ->check(CLI::Range(1, 64));
    cmd->add_option("--seeds", args.seeds, "fan out over these seeds");
    cmd->add_option("--ckpt-every", args.ckptEvery,
                    "write <ckpt>.ep<N> every N episodes (0 = off)");
}

WorldConfig buildConfig(const CommonArgs& args) {
    WorldConfig cfg;
    if (!args.configPath.empty()) cfg = parseConfigFile(args.configPath, cfg);
    for (const auto& kv : args.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
        applyKeyValue(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (args.seed) applyKeyValue(cfg, "seed", std::to_string(*args.seed));
    if (args.episodes) applyKeyValue(cfg, "episodes", std::to_string(*args.episodes));
    if (args.tr) applyKeyValue(cfg, "t_r", std::to_string(*args.tr));
    if (!args.mode.empty()) applyKeyValue(cfg, "mode", args.mode);
    if (!args.agentMode.empty()) applyKeyValue(cfg, "agent_mode", args.agentMode);
    if (!args.baseline.empty()) applyKeyValue(cfg, "baseline", args.baseline);
    if (!args.mobility.empty()) applyKeyValue(cfg, "mobility", args.mobility);
    validateConfig(cfg);
    return cfg;
}

std::string withSeedSuffix(const std::string& path, uint64_t seed, bool enabled) {
    if (!enabled || path.empty()) return path;
    return path + ".seed" + std::to_string(seed);
}

void runTrainOne(WorldConfig cfg, const std::string& outPath, const std::string& ckptPath,
                 int ckptEvery) {
    auto sys = MdqnSystem::create(cfg);
    Environment env(cfg);
    Rng policyRng = policyStream(cfg);

    std::optional<MetricsWriter> metrics;
    std::optional<LossWriter> lossLog;
    if (!outPath.empty()) {
        metrics.emplace(outPath, cfg);
        const auto dot = outPath.rfind('.');
        const std::string stem = dot == std::string::npos ? outPath : outPath.substr(0, dot);
        lossLog.emplace(stem + "_loss.csv", cfg);
    }

    long long globalStep = 0;
    for (int e = 0; e < cfg.episodes; ++e) {
        EpisodeOptions opt;
        opt.train = true;
        opt.epsilon = epsilonForEpisode(e, cfg.episodes, cfg.epsStart, cfg.epsEnd);
        const EpisodeResult ep = runEpisode(env, &sys, opt, policyRng);

        if (metrics) {
            std::vector<Position3> finalPos;
            for (const auto& u : env.uavs()) finalPos.push_back(u.pos);
            metrics->writeSummaryRow(e, ep, opt.epsilon, finalPos);
            for (const auto& rec : ep.slots)
                for (size_t i = 0; i < rec.losses.size(); ++i)
                    lossLog->write(++globalStep, e, rec.slot, rec.lossAgents[i],
                                   rec.losses[i]);
        }
        if (!ckptPath.empty() && ckptEvery > 0 && (e + 1) % ckptEvery == 0)
            writeCheckpoint(ckptPath + ".ep" + std::to_string(e + 1), sys, cfg);
        if ((e + 1) % 10 == 0 || e + 1 == cfg.episodes)
            std::cerr << "episode " << (e + 1) << "/" << cfg.episodes
                      << " eps=" << formatDouble(opt.epsilon)
                      << " meanRate=" << formatDouble(ep.meanSumRateBps)
                      << " meanLoss=" << formatDouble(ep.meanLoss) << "\n";
    }
    if (!ckptPath.empty()) writeCheckpoint(ckptPath, sys, cfg);
}

void runEvalOne(const WorldConfig& cfg, MdqnSystem* sys, const std::string& outPath) {
    Environment env(cfg);
    Rng policyRng = policyStream(cfg);
    std::optional<MetricsWriter> metrics;
    if (!outPath.empty()) metrics.emplace(outPath, cfg);
    for (int e = 0; e < cfg.evalEpisodes; ++e) {
        EpisodeOptions opt;  // eval: epsilon 0, no training
        const EpisodeResult ep = runEpisode(env, sys, opt, policyRng);
        if (metrics)
            for (const auto& rec : ep.slots) metrics->writeSlotRow(e, rec, 0.0);
        std::cerr << "eval episode " << (e + 1) << "/" << cfg.evalEpisodes
                  << " meanRate=" << formatDouble(ep.meanSumRateBps)
                  << " throughputBits=" << formatDouble(ep.throughputBits) << "\n";
    }
}

int fanOut(const CommonArgs& args, const WorldConfig& base,
           const std::function<void(WorldConfig, uint64_t, bool)>& runSeed) {
    std::vector<uint64_t> seeds = args.seeds;
    const bool suffix = !seeds.empty();
    if (seeds.empty()) seeds.push_back(base.seed);
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    std::atomic<int> failures{0};
    const int workers = std::min<int>(args.jobs, static_cast<int>(seeds.size()));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= seeds.size()) return;
                try {
                    WorldConfig cfg = base;
                    cfg.seed = seeds[i];
                    runSeed(cfg, seeds[i], suffix);
                } catch (const std::exception& e) {
                    std::cerr << "seed " << seeds[i] << " failed: " << e.what() << "\n";
                    failures.fetch_add(1);
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    return failures.load() == 0 ? 0 : 2;
}

int cmdTrain(const CommonArgs& args) {
    const WorldConfig base = buildConfig(args);
    return fanOut(args, base, [&](WorldConfig cfg, uint64_t seed, bool suffix) {
        runTrainOne(cfg, withSeedSuffix(args.out, seed, suffix),
                    withSeedSuffix(args.ckpt, seed, suffix), args.ckptEvery);
    });
}

int cmdEval(const CommonArgs& args, bool isBaseline) {
    const WorldConfig base = buildConfig(args);
    const bool needsPolicy = !(isBaseline && base.baseline.circular);
    if (isBaseline && !base.baseline.any())
        throw std::invalid_argument("baseline subcommand needs --baseline flags");
    if (needsPolicy && args.ckpt.empty())
        throw std::invalid_argument("eval requires --ckpt (trained checkpoint)");

    return fanOut(args, base, [&](WorldConfig cfg, uint64_t seed, bool suffix) {
        std::optional<MdqnSystem> sys;
        if (needsPolicy) {
            const std::string path = withSeedSuffix(args.ckpt, seed, suffix);
            if (!std::filesystem::exists(path))
                throw std::runtime_error("missing checkpoint: " + path);
            sys = readCheckpoint(path, cfg, args.force);
        }
        runEvalOne(cfg, sys ? &*sys : nullptr, withSeedSuffix(args.out, seed, suffix));
    });
}

int cmdCluster(const CommonArgs& args) {
    const WorldConfig cfg = buildConfig(args);
    Rng initRng = Rng::substream(cfg.seed, rngtag::kUserInit);
    const auto users = initUsers(cfg, initRng);
    const auto uavs = initUavs(cfg);
    Rng kmeansRng = Rng::substream(cfg.seed, rngtag::kKmeans);
    ClusterAssignment assignment;
    const auto clusters = recluster(users, uavs, cfg, kmeansRng, &assignment);

    nlohmann::json j;
    j["seed"] = cfg.seed;
    j["assignments"] = nlohmann::json::object();
    for (const auto& c : clusters)
        for (int k : c.members) j["assignments"][std::to_string(k)] = c.uav;
    j["centroids"] = nlohmann::json::array();
    for (const auto& mu : assignment.centroids)
        j["centroids"].push_back({mu[0], mu[1]});
    j["users"] = nlohmann::json::array();
    for (const auto& u : users) j["users"].push_back({u.x, u.y});

    if (args.out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(args.out);
        if (!out) throw std::runtime_error("cannot open " + args.out);
        out << j.dump(2) << "\n";
    }
    return 0;
}

int cmdVerify(const CommonArgs& args) {
    const WorldConfig cfg = buildConfig(args);
    const bool ok = oracle::runVerifySuite(std::cout, cfg.seed);
    return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "uaco: NOMA-aided multi-UAV cellular offloading simulator "
        "(capacity-bounded K-means clustering + shared-network multi-agent DQN).\n"
        "Movement axes: left/right = -x/+x, forward/backward = +y/-y, "
        "up/down = +h/-h, plus hover."};
    app.require_subcommand(1);

    CommonArgs trainArgs, evalArgs, baselineArgs, clusterArgs, verifyArgs;
    auto* train = app.add_subcommand("train", "train the MDQN policy");
    addCommonOptions(train, trainArgs);
    auto* eval = app.add_subcommand("eval", "evaluate a frozen checkpoint (epsilon 0)");
    addCommonOptions(eval, evalArgs);
    auto* baseline =
        app.add_subcommand("baseline", "evaluate a comparison scheme (as eval)");
    addCommonOptions(baseline, baselineArgs);
    auto* cluster = app.add_subcommand("cluster", "dump one K-means clustering as JSON");
    addCommonOptions(cluster, clusterArgs);
    auto* verify = app.add_subcommand("verify", "run the oracle suite (JSON lines)");
    addCommonOptions(verify, verifyArgs);

    try {
        app.parse(argc, argv);
        if (train->parsed()) return cmdTrain(trainArgs);
        if (eval->parsed()) return cmdEval(evalArgs, false);
        if (baseline->parsed()) return cmdEval(baselineArgs, true);
        if (cluster->parsed()) return cmdCluster(clusterArgs);
        if (verify->parsed()) return cmdVerify(verifyArgs);
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
