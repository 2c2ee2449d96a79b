#include "uaco/metrics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace uaco {

namespace {

void writePreamble(std::ofstream& out, const WorldConfig& cfg, const char* kind) {
    out << "# uaco " << kind << " v1\n";
    std::istringstream cfgText(resolvedConfigText(cfg));
    std::string line;
    while (std::getline(cfgText, line)) out << "# " << line << "\n";
}

}  // namespace

std::string MetricsWriter::headerLine(int numUavs) {
    std::string h = "episode,slot,sumRate_bps,reward,lambda,epsilon,loss";
    for (int u = 0; u < numUavs; ++u) {
        const std::string n = std::to_string(u);
        h += ",uav" + n + "_x,uav" + n + "_y,uav" + n + "_h";
    }
    h += ",clusterEpoch,sicOrderViolations";
    return h;
}

MetricsWriter::MetricsWriter(const std::string& path, const WorldConfig& cfg)
    : out_(path), numUavs_(cfg.numUavs) {
    if (!out_) throw std::runtime_error("cannot open metrics file: " + path);
    writePreamble(out_, cfg, "metrics");
    out_ << headerLine(numUavs_) << "\n";
}

void MetricsWriter::writeRow(int episode, int slot, double sumRate, double reward,
                             double lambda, double epsilon, double loss,
                             const std::vector<Position3>& pos, int clusterEpoch,
                             int sicViolations) {
    out_ << episode << ',' << slot << ',' << formatDouble(sumRate) << ','
         << formatDouble(reward) << ',' << formatDouble(lambda) << ','
         << formatDouble(epsilon) << ',';
    if (!std::isnan(loss)) out_ << formatDouble(loss);
    for (const auto& p : pos)
        out_ << ',' << formatDouble(p.x) << ',' << formatDouble(p.y) << ','
             << formatDouble(p.h);
    out_ << ',' << clusterEpoch << ',' << sicViolations << "\n";
}

void MetricsWriter::writeSlotRow(int episode, const SlotRecord& rec, double epsilon) {
    double loss = std::nan("");
    if (!rec.losses.empty()) {
        loss = 0.0;
        for (double l : rec.losses) loss += l;
        loss /= rec.losses.size();
    }
    writeRow(episode, rec.slot, rec.sumRateBps, rec.reward, rec.lambda, epsilon, loss,
             rec.uavPositions, rec.clusterEpoch, rec.sicViolations);
}

void MetricsWriter::writeSummaryRow(int episode, const EpisodeResult& ep, double epsilon,
                                    const std::vector<Position3>& finalUavPositions) {
    const double loss = ep.trainedSteps > 0 ? ep.meanLoss : std::nan("");
    writeRow(episode, ep.slots.empty() ? 0 : static_cast<int>(ep.slots.size()),
             ep.meanSumRateBps, ep.meanReward, ep.meanLambda, epsilon, loss,
             finalUavPositions, ep.reclusterCount, ep.sicViolations);
}

LossWriter::LossWriter(const std::string& path, const WorldConfig& cfg) : out_(path) {
    if (!out_) throw std::runtime_error("cannot open loss file: " + path);
    writePreamble(out_, cfg, "loss");
    out_ << "globalStep,episode,slot,agent,loss\n";
}

void LossWriter::write(long long globalStep, int episode, int slot, int agent,
                       double loss) {
    out_ << globalStep << ',' << episode << ',' << slot << ',' << agent << ','
         << formatDouble(loss) << "\n";
}

}  // namespace uaco
