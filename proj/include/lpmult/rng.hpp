#pragma once

#include <cstdint>
#include <random>

namespace lpmult {

/// Seeded generator used for every random draw in the toolkit.
///
/// Engine: std::mt19937_64 (fully specified by the C++ standard).
/// uniform(): top 53 bits of one engine output, times 2^-53, in [0, 1).
/// normal(): Box-Muller on two uniforms, u1 mapped to (0, 1]; both
/// variates of a pair are used, cosine branch first.
/// The distributions are spelled out instead of using <random>'s
/// implementation-defined ones so streams agree across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double normal();
    int sign() { return (engine_() >> 63) != 0 ? -1 : 1; }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace lpmult
