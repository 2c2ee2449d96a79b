#include "uaco/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace uaco {

std::string formatDouble(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string toString(Mode m) { return m == Mode::Noma ? "noma" : "oma"; }
std::string toString(AgentMode m) {
    return m == AgentMode::Shared ? "shared" : "independent";
}
std::string toString(Mobility m) {
    return m == Mobility::RandomRoaming ? "random" : "directional";
}
std::string toString(PlosMode m) {
    return m == PlosMode::Corrected ? "corrected" : "as-printed";
}
std::string toString(FadingKind f) {
    return f == FadingKind::Deterministic ? "deterministic" : "rayleigh";
}

std::string toString(const BaselineSet& b) {
    std::string s;
    const auto add = [&](const char* name) {
        if (!s.empty()) s += ",";
        s += name;
    };
    if (b.circular) add("circular");
    if (b.fixed2d) add("fixed2d");
    if (b.staticOrder) add("static-order");
    if (b.maxPower) add("max-power");
    return s.empty() ? "none" : s;
}

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& value, int line,
                       const std::string& why) {
    std::ostringstream os;
    os << "config error";
    if (line > 0) os << " at line " << line;
    os << ": key '" << key << "' value '" << value << "': " << why;
    throw std::invalid_argument(os.str());
}

double parseDouble(const std::string& key, const std::string& value, int line) {
    try {
        size_t pos = 0;
        const double d = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception& e) {
        fail(key, value, line, std::string("not a number (") + e.what() + ")");
    }
}

long long parseInt(const std::string& key, const std::string& value, int line) {
    try {
        size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception& e) {
        fail(key, value, line, std::string("not an integer (") + e.what() + ")");
    }
}

uint64_t parseUint(const std::string& key, const std::string& value, int line) {
    try {
        size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception& e) {
        fail(key, value, line, std::string("not an unsigned integer (") + e.what() + ")");
    }
}

std::vector<std::vector<double>> parseProfiles(const std::string& key,
                                               const std::string& value, int line) {
    // "0.8/0.2,0.65/0.35,0.5/0.5" -> {{0.8,0.2},{0.65,0.35},{0.5,0.5}}
    std::vector<std::vector<double>> profiles;
    std::stringstream list(value);
    std::string item;
    while (std::getline(list, item, ',')) {
        std::vector<double> fractions;
        std::stringstream parts(item);
        std::string frac;
        while (std::getline(parts, frac, '/'))
            fractions.push_back(parseDouble(key, frac, line));
        if (fractions.empty()) fail(key, value, line, "empty profile");
        profiles.push_back(std::move(fractions));
    }
    if (profiles.empty()) fail(key, value, line, "no profiles given");
    return profiles;
}

BaselineSet parseBaseline(const std::string& key, const std::string& value, int line) {
    BaselineSet b;
    if (value == "none" || value.empty()) return b;
    std::stringstream list(value);
    std::string item;
    while (std::getline(list, item, ',')) {
        if (item == "circular") b.circular = true;
        else if (item == "fixed2d") b.fixed2d = true;
        else if (item == "static-order") b.staticOrder = true;
        else if (item == "max-power") b.maxPower = true;
        else fail(key, value, line, "unknown baseline '" + item + "'");
    }
    return b;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string profilesText(const std::vector<std::vector<double>>& profiles) {
    std::string s;
    for (size_t i = 0; i < profiles.size(); ++i) {
        if (i > 0) s += ",";
        for (size_t j = 0; j < profiles[i].size(); ++j) {
            if (j > 0) s += "/";
            s += formatDouble(profiles[i][j]);
        }
    }
    return s;
}

}  // namespace

void applyKeyValue(WorldConfig& cfg, const std::string& key, const std::string& value,
                   int line) {
    const auto asInt = [&] { return parseInt(key, value, line); };
    const auto asDouble = [&] { return parseDouble(key, value, line); };

    if (key == "u") cfg.numUavs = static_cast<int>(asInt());
    else if (key == "k") cfg.numUsers = static_cast<int>(asInt());
    else if (key == "x_min") cfg.xMin = asDouble();
    else if (key == "x_max") cfg.xMax = asDouble();
    else if (key == "y_min") cfg.yMin = asDouble();
    else if (key == "y_max") cfg.yMax = asDouble();
    else if (key == "h_min") cfg.hMin = asDouble();
    else if (key == "h_max") cfg.hMax = asDouble();
    else if (key == "v_user_max") cfg.userSpeedMax = asDouble();
    else if (key == "v_uav") cfg.uavSpeed = asDouble();
    else if (key == "dt") cfg.slotSeconds = asDouble();
    else if (key == "slots") cfg.slotsPerEpisode = static_cast<int>(asInt());
    else if (key == "t_r") cfg.reclusterEvery = static_cast<int>(asInt());
    else if (key == "uav_init_alt") cfg.uavInitAltitude = asDouble();
    else if (key == "mobility") {
        if (value == "random") cfg.mobility = Mobility::RandomRoaming;
        else if (value == "directional") cfg.mobility = Mobility::DirectionalWalking;
        else fail(key, value, line, "expected random|directional");
    } else if (key == "fc_ghz") cfg.carrierGhz = asDouble();
    else if (key == "bandwidth_hz") cfg.bandwidthHz = asDouble();
    else if (key == "noise_psd_dbm_hz") cfg.noisePsdDbmHz = asDouble();
    else if (key == "plos_mode") {
        if (value == "corrected") cfg.plosMode = PlosMode::Corrected;
        else if (value == "as-printed") cfg.plosMode = PlosMode::AsPrinted;
        else fail(key, value, line, "expected corrected|as-printed");
    } else if (key == "fading") {
        if (value == "deterministic") cfg.fading = FadingKind::Deterministic;
        else if (value == "rayleigh") cfg.fading = FadingKind::RayleighPower;
        else fail(key, value, line, "expected deterministic|rayleigh");
    } else if (key == "p_max_dbm") cfg.maxPowerDbm = asDouble();
    else if (key == "r_qos_bps") cfg.qosRateBps = asDouble();
    else if (key == "eta") cfg.maxUsersPerUav = static_cast<int>(asInt());
    else if (key == "power_profiles") cfg.powerProfiles = parseProfiles(key, value, line);
    else if (key == "gain_offset_db") cfg.gainOffsetDb = asDouble();
    else if (key == "gain_scale_db") cfg.gainScaleDb = asDouble();
    else if (key == "kmeans_iters") cfg.kmeansMaxIters = static_cast<int>(asInt());
    else if (key == "episodes") cfg.episodes = static_cast<int>(asInt());
    else if (key == "lr") cfg.learningRate = asDouble();
    else if (key == "discount") cfg.discount = asDouble();
    else if (key == "replay_capacity") cfg.replayCapacity = static_cast<int>(asInt());
    else if (key == "batch") cfg.batchSize = static_cast<int>(asInt());
    else if (key == "target_sync") cfg.targetSyncEvery = static_cast<int>(asInt());
    else if (key == "eps_start") cfg.epsStart = asDouble();
    else if (key == "eps_end") cfg.epsEnd = asDouble();
    else if (key == "hidden") cfg.hiddenUnits = static_cast<int>(asInt());
    else if (key == "reward_scale") cfg.rewardScale = asDouble();
    else if (key == "qos_penalty_cap") cfg.qosPenaltyCap = static_cast<int>(asInt());
    else if (key == "agent_mode") {
        if (value == "shared") cfg.agentMode = AgentMode::Shared;
        else if (value == "independent") cfg.agentMode = AgentMode::Independent;
        else fail(key, value, line, "expected shared|independent");
    } else if (key == "mode") {
        if (value == "noma") cfg.mode = Mode::Noma;
        else if (value == "oma") cfg.mode = Mode::Oma;
        else fail(key, value, line, "expected noma|oma");
    } else if (key == "baseline") cfg.baseline = parseBaseline(key, value, line);
    else if (key == "circular_radius") cfg.circularRadius = asDouble();
    else if (key == "circular_alt") cfg.circularAltitude = asDouble();
    else if (key == "eval_episodes") cfg.evalEpisodes = static_cast<int>(asInt());
    else if (key == "restart") cfg.restart = static_cast<int>(asInt());
    else if (key == "seed") cfg.seed = parseUint(key, value, line);
    else fail(key, value, line, "unknown key");
}

WorldConfig parseConfigText(const std::string& text, const WorldConfig& base) {
    WorldConfig cfg = base;
    std::istringstream in(text);
    std::string rawLine;
    int lineNo = 0;
    while (std::getline(in, rawLine)) {
        ++lineNo;
        const std::string stripped = trim(rawLine);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << "config error at line " << lineNo << ": expected 'key = value', got '"
               << stripped << "'";
            throw std::invalid_argument(os.str());
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        applyKeyValue(cfg, key, value, lineNo);
    }
    return cfg;
}

WorldConfig parseConfigFile(const std::string& path, const WorldConfig& base) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parseConfigText(buf.str(), base);
}

void validateConfig(const WorldConfig& cfg) {
    const auto reject = [](const std::string& what) {
        throw std::invalid_argument("config validation: " + what);
    };
    if (cfg.numUavs < 1) reject("u < 1");
    if (cfg.numUsers < 1) reject("k < 1");
    if (cfg.numUsers < cfg.numUavs) reject("k < u (kmeans needs K >= U)");
    if (cfg.xMin >= cfg.xMax) reject("x_min >= x_max");
    if (cfg.yMin >= cfg.yMax) reject("y_min >= y_max");
    if (cfg.hMin >= cfg.hMax) reject("h_min >= h_max");
    if (cfg.hMin < 1.02) reject("h_min < 1.02 (LoS probability model undefined)");
    if (cfg.userSpeedMax < 0) reject("v_user_max < 0");
    if (cfg.uavSpeed < 0) reject("v_uav < 0");
    if (cfg.slotSeconds <= 0) reject("dt <= 0");
    if (cfg.slotsPerEpisode < 1) reject("slots < 1");
    if (cfg.reclusterEvery < 1) reject("t_r < 1");
    if (cfg.reclusterEvery > cfg.slotsPerEpisode) reject("t_r > slots");
    if (cfg.carrierGhz <= 0) reject("fc_ghz <= 0");
    if (cfg.bandwidthHz <= 0) reject("bandwidth_hz <= 0");
    if (cfg.maxUsersPerUav < 1) reject("eta < 1");
    if (cfg.maxUsersPerUav * cfg.numUavs < cfg.numUsers) reject("eta * u < k");
    if (cfg.powerProfiles.empty()) reject("power_profiles empty");
    for (const auto& profile : cfg.powerProfiles) {
        if (static_cast<int>(profile.size()) != cfg.maxUsersPerUav)
            reject("power profile length != eta");
        double total = 0.0;
        for (double f : profile) {
            if (f < 0) reject("power profile fraction < 0");
            total += f;
        }
        if (total > 1.0 + 1e-12) reject("power profile fractions sum > 1");
    }
    if (cfg.gainScaleDb <= 0) reject("gain_scale_db <= 0");
    if (cfg.kmeansMaxIters < 1) reject("kmeans_iters < 1");
    if (cfg.episodes < 1) reject("episodes < 1");
    if (cfg.learningRate <= 0) reject("lr <= 0");
    if (cfg.discount < 0 || cfg.discount > 1) reject("discount outside [0,1]");
    if (cfg.replayCapacity < 1) reject("replay_capacity < 1");
    if (cfg.batchSize < 1) reject("batch < 1");
    if (cfg.batchSize > cfg.replayCapacity) reject("batch > replay_capacity");
    if (cfg.targetSyncEvery < 1 || cfg.targetSyncEvery > 1000000)
        reject("target_sync outside [1, 1000000]");
    if (cfg.epsStart < 0 || cfg.epsStart > 1) reject("eps_start outside [0,1]");
    if (cfg.epsEnd < 0 || cfg.epsEnd > 1) reject("eps_end outside [0,1]");
    if (cfg.epsEnd > cfg.epsStart) reject("eps_end > eps_start (schedule must decay)");
    if (cfg.hiddenUnits < 1) reject("hidden < 1");
    if (cfg.rewardScale <= 0) reject("reward_scale <= 0");
    if (cfg.qosPenaltyCap < 0) reject("qos_penalty_cap < 0");
    if (cfg.baseline.circular && cfg.baseline.fixed2d)
        reject("baseline circular and fixed2d are mutually exclusive");
    if (cfg.circularRadius <= 0) reject("circular_radius <= 0");
    if (cfg.evalEpisodes < 1) reject("eval_episodes < 1");
    if (cfg.restart < 0) reject("restart < 0");
}

std::string resolvedConfigText(const WorldConfig& cfg) {
    std::ostringstream os;
    const auto put = [&](const char* key, const std::string& value) {
        os << key << " = " << value << "\n";
    };
    const auto putD = [&](const char* key, double v) { put(key, formatDouble(v)); };
    const auto putI = [&](const char* key, long long v) { put(key, std::to_string(v)); };

    putI("u", cfg.numUavs);
    putI("k", cfg.numUsers);
    putD("x_min", cfg.xMin);
    putD("x_max", cfg.xMax);
    putD("y_min", cfg.yMin);
    putD("y_max", cfg.yMax);
    putD("h_min", cfg.hMin);
    putD("h_max", cfg.hMax);
    putD("v_user_max", cfg.userSpeedMax);
    putD("v_uav", cfg.uavSpeed);
    putD("dt", cfg.slotSeconds);
    putI("slots", cfg.slotsPerEpisode);
    putI("t_r", cfg.reclusterEvery);
    putD("uav_init_alt", cfg.uavInitAltitude);
    put("mobility", toString(cfg.mobility));
    putD("fc_ghz", cfg.carrierGhz);
    putD("bandwidth_hz", cfg.bandwidthHz);
    putD("noise_psd_dbm_hz", cfg.noisePsdDbmHz);
    put("plos_mode", toString(cfg.plosMode));
    put("fading", toString(cfg.fading));
    putD("p_max_dbm", cfg.maxPowerDbm);
    putD("r_qos_bps", cfg.qosRateBps);
    putI("eta", cfg.maxUsersPerUav);
    put("power_profiles", profilesText(cfg.powerProfiles));
    putD("gain_offset_db", cfg.gainOffsetDb);
    putD("gain_scale_db", cfg.gainScaleDb);
    putI("kmeans_iters", cfg.kmeansMaxIters);
    putI("episodes", cfg.episodes);
    putD("lr", cfg.learningRate);
    putD("discount", cfg.discount);
    putI("replay_capacity", cfg.replayCapacity);
    putI("batch", cfg.batchSize);
    putI("target_sync", cfg.targetSyncEvery);
    putD("eps_start", cfg.epsStart);
    putD("eps_end", cfg.epsEnd);
    putI("hidden", cfg.hiddenUnits);
    putD("reward_scale", cfg.rewardScale);
    putI("qos_penalty_cap", cfg.qosPenaltyCap);
    put("agent_mode", toString(cfg.agentMode));
    put("mode", toString(cfg.mode));
    put("baseline", toString(cfg.baseline));
    putD("circular_radius", cfg.circularRadius);
    putD("circular_alt", cfg.circularAltitude);
    putI("eval_episodes", cfg.evalEpisodes);
    putI("restart", cfg.restart);
    put("seed", std::to_string(cfg.seed));
    return os.str();
}

std::string configDigest(const WorldConfig& cfg) {
    // Shape-relevant knobs only: a checkpoint is portable across seeds and
    // schedules but not across network/action-space shapes.
    std::ostringstream os;
    os << "u=" << cfg.numUavs << ";k=" << cfg.numUsers << ";hidden=" << cfg.hiddenUnits
       << ";state=" << cfg.stateDim() << ";actions=" << cfg.actionCount()
       << ";agent_mode=" << toString(cfg.agentMode)
       << ";profiles=" << profilesText(cfg.powerProfiles)
       << ";movements=" << cfg.movementCount();
    const std::string s = os.str();
    uint64_t h = 1469598103934665603ULL;  // FNV-1a 64
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf, 16);
}

}  // namespace uaco
