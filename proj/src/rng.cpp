#include "outbreak/rng.hpp"

#include <cmath>
#include <numbers>

namespace outbreak {

Vec2 GaussianStream::normal_pair()
{
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

std::vector<Vec2> brownian_increments(std::uint64_t seed, std::size_t n, double dt)
{
    GaussianStream rng(seed);
    const double sqdt = std::sqrt(dt);
    std::vector<Vec2> out(n);
    for (auto& inc : out) {
        const Vec2 z = rng.normal_pair();
        inc = {sqdt * z[0], sqdt * z[1]};
    }
    return out;
}

}  // namespace outbreak
