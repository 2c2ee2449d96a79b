#include "uaco/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace uaco {

namespace {

void checkDims(const MlpDims& d) {
    if (d.input <= 0 || d.hidden <= 0 || d.output <= 0)
        throw std::invalid_argument("mlp: dims must be positive");
}

}  // namespace

void MlpGrads::resize(const MlpDims& d) {
    w1.assign(static_cast<size_t>(d.hidden) * d.input, 0.0);
    b1.assign(d.hidden, 0.0);
    w2.assign(static_cast<size_t>(d.output) * d.hidden, 0.0);
    b2.assign(d.output, 0.0);
}

void MlpGrads::zero() {
    std::fill(w1.begin(), w1.end(), 0.0);
    std::fill(b1.begin(), b1.end(), 0.0);
    std::fill(w2.begin(), w2.end(), 0.0);
    std::fill(b2.begin(), b2.end(), 0.0);
}

MlpParams mlpInit(const MlpDims& dims, Rng& rng) {
    checkDims(dims);
    MlpParams p;
    p.dims = dims;
    p.w1.resize(static_cast<size_t>(dims.hidden) * dims.input);
    p.b1.assign(dims.hidden, 0.0);
    p.w2.resize(static_cast<size_t>(dims.output) * dims.hidden);
    p.b2.assign(dims.output, 0.0);
    const double bound1 = 1.0 / std::sqrt(static_cast<double>(dims.input));
    for (auto& w : p.w1) w = rng.uniform(-bound1, bound1);
    const double bound2 = 1.0 / std::sqrt(static_cast<double>(dims.hidden));
    for (auto& w : p.w2) w = rng.uniform(-bound2, bound2);
    return p;
}

std::vector<double> mlpForward(const MlpParams& p, const std::vector<double>& in,
                               std::vector<double>* hiddenOut) {
    if (static_cast<int>(in.size()) != p.dims.input)
        throw std::invalid_argument("mlpForward: input size mismatch");
    std::vector<double> hidden(p.dims.hidden);
    for (int j = 0; j < p.dims.hidden; ++j) {
        double acc = p.b1[j];
        const double* row = &p.w1[static_cast<size_t>(j) * p.dims.input];
        for (int i = 0; i < p.dims.input; ++i) acc += row[i] * in[i];
        hidden[j] = acc > 0.0 ? acc : 0.0;  // ReLU
    }
    std::vector<double> out(p.dims.output);
    for (int o = 0; o < p.dims.output; ++o) {
        double acc = p.b2[o];
        const double* row = &p.w2[static_cast<size_t>(o) * p.dims.hidden];
        for (int j = 0; j < p.dims.hidden; ++j) acc += row[j] * hidden[j];
        out[o] = acc;  // linear output layer (Q-values)
    }
    if (hiddenOut != nullptr) *hiddenOut = std::move(hidden);
    return out;
}

void mlpBackwardAccumulate(const MlpParams& p, const std::vector<double>& in,
                           int action, double target, MlpGrads& g, double scale) {
    if (action < 0 || action >= p.dims.output)
        throw std::invalid_argument("mlpBackward: action outside output layer");
    std::vector<double> hidden;
    const std::vector<double> out = mlpForward(p, in, &hidden);

    // loss = (target - Q[action])^2, other outputs masked out.
    const double dOut = scale * 2.0 * (out[action] - target);

    const double* w2row = &p.w2[static_cast<size_t>(action) * p.dims.hidden];
    double* gW2row = &g.w2[static_cast<size_t>(action) * p.dims.hidden];
    g.b2[action] += dOut;
    for (int j = 0; j < p.dims.hidden; ++j) {
        gW2row[j] += dOut * hidden[j];
        if (hidden[j] > 0.0) {
            const double dHidden = dOut * w2row[j];
            g.b1[j] += dHidden;
            double* gW1row = &g.w1[static_cast<size_t>(j) * p.dims.input];
            for (int i = 0; i < p.dims.input; ++i) gW1row[i] += dHidden * in[i];
        }
    }
}

MlpGrads mlpBackward(const MlpParams& p, const std::vector<double>& in, int action,
                     double target) {
    MlpGrads g;
    g.resize(p.dims);
    mlpBackwardAccumulate(p, in, action, target, g, 1.0);
    return g;
}

AdamState AdamState::forParams(const MlpParams& p, double lr) {
    AdamState s;
    s.learningRate = lr;
    s.mW1.assign(p.w1.size(), 0.0);
    s.mB1.assign(p.b1.size(), 0.0);
    s.mW2.assign(p.w2.size(), 0.0);
    s.mB2.assign(p.b2.size(), 0.0);
    s.vW1.assign(p.w1.size(), 0.0);
    s.vB1.assign(p.b1.size(), 0.0);
    s.vW2.assign(p.w2.size(), 0.0);
    s.vB2.assign(p.b2.size(), 0.0);
    return s;
}

namespace {

void adamUpdateBlock(std::vector<double>& theta, std::vector<double>& m,
                     std::vector<double>& v, const std::vector<double>& g,
                     const AdamState& s, double corr1, double corr2) {
    for (size_t i = 0; i < theta.size(); ++i) {
        m[i] = s.beta1 * m[i] + (1.0 - s.beta1) * g[i];
        v[i] = s.beta2 * v[i] + (1.0 - s.beta2) * g[i] * g[i];
        const double mHat = m[i] / corr1;
        const double vHat = v[i] / corr2;
        theta[i] -= s.learningRate * mHat / (std::sqrt(vHat) + s.epsilon);
    }
}

}  // namespace

void adamStep(MlpParams& p, AdamState& s, const MlpGrads& g) {
    if (g.w1.size() != p.w1.size() || g.w2.size() != p.w2.size())
        throw std::invalid_argument("adamStep: gradient shape mismatch");
    s.t += 1;
    const double corr1 = 1.0 - std::pow(s.beta1, static_cast<double>(s.t));
    const double corr2 = 1.0 - std::pow(s.beta2, static_cast<double>(s.t));
    adamUpdateBlock(p.w1, s.mW1, s.vW1, g.w1, s, corr1, corr2);
    adamUpdateBlock(p.b1, s.mB1, s.vB1, g.b1, s, corr1, corr2);
    adamUpdateBlock(p.w2, s.mW2, s.vW2, g.w2, s, corr1, corr2);
    adamUpdateBlock(p.b2, s.mB2, s.vB2, g.b2, s, corr1, corr2);
}

void cloneInto(const MlpParams& src, MlpParams& dst) {
    if (!(src.dims == dst.dims))
        throw std::invalid_argument("cloneInto: shape mismatch");
    dst.w1 = src.w1;
    dst.b1 = src.b1;
    dst.w2 = src.w2;
    dst.b2 = src.b2;
}

}  // namespace uaco
