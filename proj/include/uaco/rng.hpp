#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace uaco {

inline uint64_t splitmix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic random stream. All variate conversions are done by hand so
/// results do not depend on the standard library's distribution
/// implementations (std::uniform_real_distribution etc. are
/// implementation-defined, which would break run-to-run byte reproducibility
/// across toolchains).
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    /// Independent child stream, stable in (seed, tag).
    static Rng substream(uint64_t seed, uint64_t tag) {
        return Rng(splitmix64(seed ^ splitmix64(tag ^ 0xa5a5a5a5a5a5a5a5ULL)));
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n); n > 0. Rejection sampling, exactly uniform.
    uint64_t uniformInt(uint64_t n) {
        const uint64_t threshold = (-n) % n;
        for (;;) {
            const uint64_t x = eng_();
            if (x >= threshold) return x % n;
        }
    }

    /// Unit-mean exponential variate.
    double exponential() { return -std::log1p(-uniform()); }

private:
    std::mt19937_64 eng_;
};

// Fixed substream tags; every consumer of randomness gets its own stream so
// adding a consumer never perturbs the others.
namespace rngtag {
inline constexpr uint64_t kUserInit = 1;
inline constexpr uint64_t kUserMotion = 2;
inline constexpr uint64_t kFading = 3;
inline constexpr uint64_t kKmeans = 4;
inline constexpr uint64_t kNetInit = 5;
inline constexpr uint64_t kPolicy = 6;
inline constexpr uint64_t kReplay = 7;
// Per-agent streams (independent-DQN mode): tag + 16 * (agent + 1).
inline constexpr uint64_t agentTag(uint64_t base, int agent) {
    return base + 16ULL * static_cast<uint64_t>(agent + 1);
}
}  // namespace rngtag

}  // namespace uaco
