#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "outbreak/types.hpp"

namespace outbreak {

/// Standard normal stream on top of std::mt19937_64 (fully specified by the standard).
/// Uniforms take the top 53 bits; normals come from the Box-Muller transform in pairs.
/// The output is bit-identical across conforming platforms for a given seed.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on (0, 1].
    double uniform()
    {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    double normal()
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const auto [z0, z1] = normal_pair();
        spare_ = z1;
        has_spare_ = true;
        return z0;
    }

    /// Two independent standard normals from one Box-Muller draw.
    Vec2 normal_pair();

private:
    std::mt19937_64 engine_;
    double spare_{};
    bool has_spare_{false};
};

/// Per-path seed schedule.
inline std::uint64_t path_seed(std::uint64_t seed_base, std::uint64_t index)
{
    return seed_base + index;
}

/// n independent pairs (dB1, dB2), each component N(0, dt).
std::vector<Vec2> brownian_increments(std::uint64_t seed, std::size_t n, double dt);

}  // namespace outbreak
