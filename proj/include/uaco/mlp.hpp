#pragma once

#include <cstdint>
#include <vector>

#include "uaco/rng.hpp"

namespace uaco {

struct MlpDims {
    int input = 0;
    int hidden = 0;
    int output = 0;

    bool operator==(const MlpDims&) const = default;
};

/// Input -> 40-unit ReLU hidden -> linear output. Row-major weights:
/// w1[j * input + i], w2[o * hidden + j].
struct MlpParams {
    MlpDims dims;
    std::vector<double> w1, b1, w2, b2;
};

struct MlpGrads {
    std::vector<double> w1, b1, w2, b2;

    void resize(const MlpDims& d);
    void zero();
};

/// Weights ~ U(-1/sqrt(fan_in), +1/sqrt(fan_in)), biases zero.
MlpParams mlpInit(const MlpDims& dims, Rng& rng);

/// Q-values for one input; hidden activations optionally captured for the
/// backward pass.
std::vector<double> mlpForward(const MlpParams& p, const std::vector<double>& in,
                               std::vector<double>* hiddenOut = nullptr);

/// Gradient of the masked squared error (target - Q[action])^2 with respect
/// to every parameter, accumulated into g (g must be sized and zeroed by the
/// caller; scale multiplies the contribution, e.g. 1/batch for a mean).
void mlpBackwardAccumulate(const MlpParams& p, const std::vector<double>& in,
                           int action, double target, MlpGrads& g, double scale = 1.0);

/// Convenience single-sample gradient.
MlpGrads mlpBackward(const MlpParams& p, const std::vector<double>& in, int action,
                     double target);

struct AdamState {
    double learningRate = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    uint64_t t = 0;
    std::vector<double> mW1, mB1, mW2, mB2;
    std::vector<double> vW1, vB1, vW2, vB2;

    static AdamState forParams(const MlpParams& p, double lr);
};

/// One bias-corrected Adam update of every parameter.
void adamStep(MlpParams& p, AdamState& s, const MlpGrads& g);

/// dst becomes a bit-identical copy of src (shapes must already match).
void cloneInto(const MlpParams& src, MlpParams& dst);

}  // namespace uaco
