#include "uaco/checkpoint.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "uaco/config.hpp"

namespace uaco {

namespace {

constexpr const char* kHeader = "uaco-ckpt v1";

void writeTensor(std::ostream& out, const std::string& name,
                 const std::vector<double>& values) {
    out << "tensor " << name << " " << values.size() << "\n";
    for (size_t i = 0; i < values.size(); ++i) {
        out << formatDouble(values[i]);
        out << (((i + 1) % 8 == 0 || i + 1 == values.size()) ? '\n' : ' ');
    }
    if (values.empty()) out << "\n";
}

std::vector<double> readTensor(std::istream& in, const std::string& expectName) {
    std::string word, name;
    size_t count = 0;
    if (!(in >> word >> name >> count) || word != "tensor" || name != expectName)
        throw std::runtime_error("checkpoint: expected tensor block '" + expectName + "'");
    std::vector<double> values(count);
    for (auto& v : values)
        if (!(in >> v)) throw std::runtime_error("checkpoint: truncated tensor " + name);
    return values;
}

void writeNet(std::ostream& out, const std::string& prefix, const MlpParams& p) {
    out << "dims " << prefix << " " << p.dims.input << " " << p.dims.hidden << " "
        << p.dims.output << "\n";
    writeTensor(out, prefix + ".w1", p.w1);
    writeTensor(out, prefix + ".b1", p.b1);
    writeTensor(out, prefix + ".w2", p.w2);
    writeTensor(out, prefix + ".b2", p.b2);
}

MlpParams readNet(std::istream& in, const std::string& prefix) {
    std::string word, name;
    MlpParams p;
    if (!(in >> word >> name >> p.dims.input >> p.dims.hidden >> p.dims.output) ||
        word != "dims" || name != prefix)
        throw std::runtime_error("checkpoint: expected dims for '" + prefix + "'");
    p.w1 = readTensor(in, prefix + ".w1");
    p.b1 = readTensor(in, prefix + ".b1");
    p.w2 = readTensor(in, prefix + ".w2");
    p.b2 = readTensor(in, prefix + ".b2");
    const size_t w1 = static_cast<size_t>(p.dims.hidden) * p.dims.input;
    const size_t w2 = static_cast<size_t>(p.dims.output) * p.dims.hidden;
    if (p.w1.size() != w1 || p.b1.size() != static_cast<size_t>(p.dims.hidden) ||
        p.w2.size() != w2 || p.b2.size() != static_cast<size_t>(p.dims.output))
        throw std::runtime_error("checkpoint: tensor shape mismatch for '" + prefix + "'");
    return p;
}

}  // namespace

void writeCheckpoint(const std::string& path, const MdqnSystem& sys,
                     const WorldConfig& cfg) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open checkpoint file: " + path);
    out << kHeader << "\n";
    out << "digest " << configDigest(cfg) << "\n";
    out << "agent_mode " << toString(sys.agentMode) << "\n";
    out << "learners " << sys.learners.size() << "\n";
    for (size_t i = 0; i < sys.learners.size(); ++i) {
        const Learner& l = sys.learners[i];
        out << "learner " << i << " steps " << l.trainSteps << " adam_t " << l.adam.t
            << "\n";
        writeNet(out, "eval", l.eval);
        writeNet(out, "target", l.target);
        writeTensor(out, "adam.mW1", l.adam.mW1);
        writeTensor(out, "adam.mB1", l.adam.mB1);
        writeTensor(out, "adam.mW2", l.adam.mW2);
        writeTensor(out, "adam.mB2", l.adam.mB2);
        writeTensor(out, "adam.vW1", l.adam.vW1);
        writeTensor(out, "adam.vB1", l.adam.vB1);
        writeTensor(out, "adam.vW2", l.adam.vW2);
        writeTensor(out, "adam.vB2", l.adam.vB2);
    }
    if (!out) throw std::runtime_error("checkpoint write failed: " + path);
}

MdqnSystem readCheckpoint(const std::string& path, const WorldConfig& cfg, bool force) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open checkpoint file: " + path);

    std::string header;
    std::getline(in, header);
    if (header != kHeader)
        throw std::runtime_error("checkpoint: unsupported header '" + header +
                                 "' (expected '" + std::string(kHeader) + "')");

    std::string word, digest, modeName;
    if (!(in >> word >> digest) || word != "digest")
        throw std::runtime_error("checkpoint: missing digest line");
    if (digest != configDigest(cfg)) {
        if (!force)
            throw std::runtime_error(
                "checkpoint: config digest mismatch (checkpoint " + digest + ", config " +
                configDigest(cfg) + "); pass --force to evaluate anyway");
        std::cerr << "warning: checkpoint digest mismatch, continuing (--force)\n";
    }
    if (!(in >> word >> modeName) || word != "agent_mode")
        throw std::runtime_error("checkpoint: missing agent_mode line");

    size_t learnerCount = 0;
    if (!(in >> word >> learnerCount) || word != "learners")
        throw std::runtime_error("checkpoint: missing learners line");

    MdqnSystem sys = MdqnSystem::create(cfg);
    if (modeName != toString(sys.agentMode))
        throw std::runtime_error("checkpoint: agent_mode '" + modeName +
                                 "' does not match config '" + toString(sys.agentMode) +
                                 "'");
    if (learnerCount != sys.learners.size())
        throw std::runtime_error("checkpoint: learner count mismatch");

    for (size_t i = 0; i < learnerCount; ++i) {
        size_t idx = 0;
        uint64_t steps = 0, adamT = 0;
        std::string stepsWord, adamWord;
        if (!(in >> word >> idx >> stepsWord >> steps >> adamWord >> adamT) ||
            word != "learner" || idx != i || stepsWord != "steps" || adamWord != "adam_t")
            throw std::runtime_error("checkpoint: malformed learner block");
        Learner& l = sys.learners[i];
        MlpParams eval = readNet(in, "eval");
        MlpParams target = readNet(in, "target");
        if (!(eval.dims == l.eval.dims))
            throw std::runtime_error(
                "checkpoint: network shape incompatible with config (cannot force)");
        l.eval = std::move(eval);
        l.target = std::move(target);
        l.trainSteps = steps;
        l.adam.t = adamT;
        l.adam.mW1 = readTensor(in, "adam.mW1");
        l.adam.mB1 = readTensor(in, "adam.mB1");
        l.adam.mW2 = readTensor(in, "adam.mW2");
        l.adam.mB2 = readTensor(in, "adam.mB2");
        l.adam.vW1 = readTensor(in, "adam.vW1");
        l.adam.vB1 = readTensor(in, "adam.vB1");
        l.adam.vW2 = readTensor(in, "adam.vW2");
        l.adam.vB2 = readTensor(in, "adam.vB2");
    }
    return sys;
}

}  // namespace uaco
