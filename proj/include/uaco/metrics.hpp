#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "uaco/config.hpp"
#include "uaco/env.hpp"

namespace uaco {

/// CSV metrics writer. Every file starts with a reproducibility preamble
/// (the fully resolved config as `# key = value` comment lines) followed by
/// a fixed header row. Column order is part of the v1 format.
class MetricsWriter {
public:
    MetricsWriter(const std::string& path, const WorldConfig& cfg);

    /// One row per (episode, slot).
    void writeSlotRow(int episode, const SlotRecord& rec, double epsilon);

    /// One row per episode (training summaries). `loss` may be NaN to leave
    /// the field blank.
    void writeSummaryRow(int episode, const EpisodeResult& ep, double epsilon,
                         const std::vector<Position3>& finalUavPositions);

    static std::string headerLine(int numUavs);

private:
    void writeRow(int episode, int slot, double sumRate, double reward, double lambda,
                  double epsilon, double loss, const std::vector<Position3>& pos,
                  int clusterEpoch, int sicViolations);

    std::ofstream out_;
    int numUavs_;
};

/// Per-training-step loss records (globalStep counts every gradient update
/// across all networks, in execution order).
class LossWriter {
public:
    LossWriter(const std::string& path, const WorldConfig& cfg);
    void write(long long globalStep, int episode, int slot, int agent, double loss);

private:
    std::ofstream out_;
};

}  // namespace uaco
