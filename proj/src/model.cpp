#include "outbreak/model.hpp"

#include <cmath>
#include <iostream>
#include <string>

#include "outbreak/error.hpp"

namespace outbreak {

namespace {

void require(bool ok, const std::string& what)
{
    if (!ok) {
        throw InvalidParameter(what);
    }
}

}  // namespace

void validate(const DimensionalParams& dim)
{
    require(dim.r > 0 && dim.K > 0 && dim.p > 0 && dim.H > 0 && dim.b > 0 && dim.e > 0 &&
                dim.m > 0,
            "dimensional parameters r, K, p, H, b, e, m must be positive");
    require(dim.zeta1 >= 0 && dim.zeta2 >= 0, "noise intensities must be nonnegative");
    require(dim.b * dim.p < dim.r, "b p must be smaller than r (eps < 1)");
}

void validate(const NondimParams& p, EpsPolicy policy)
{
    require(p.beta > 0 && p.beta < 1, "beta must lie in (0, 1)");
    require(p.d > 0 && p.d < 1, "d must lie in (0, 1)");
    require(p.h > 0, "h must be positive");
    require(p.eps > 0 && p.eps < 1, "eps must lie in (0, 1)");
    require(p.sigma1 >= 0 && p.sigma2 >= 0, "sigma1, sigma2 must be nonnegative");
    if (p.eps >= kEpsBound) {
        require(policy == EpsPolicy::warn,
                "eps = " + std::to_string(p.eps) + " is not small (bound " +
                    std::to_string(kEpsBound) + ")");
        std::clog << "warning: eps = " << p.eps << " exceeds " << kEpsBound
                  << "; the slow-fast analysis may not apply\n";
    }
}

NondimParams nondimensionalize(const DimensionalParams& dim)
{
    validate(dim);
    const double bp = dim.b * dim.p;
    return {
        .beta = dim.H / dim.K,
        .d = dim.e / bp,
        .h = dim.m * dim.r * dim.K / (dim.b * dim.p * dim.p),
        .eps = bp / dim.r,
        .sigma1 = dim.zeta1 / std::sqrt(dim.r),
        .sigma2 = dim.zeta2 / std::sqrt(bp),
    };
}

DimensionalParams redimensionalize(const NondimParams& p, double r, double K, double p_max)
{
    require(r > 0 && K > 0 && p_max > 0, "reference scales must be positive");
    const double b = p.eps * r / p_max;
    const double bp = b * p_max;
    return {
        .r = r,
        .K = K,
        .p = p_max,
        .H = p.beta * K,
        .b = b,
        .e = p.d * bp,
        .m = p.h * b * p_max * p_max / (r * K),
        .zeta1 = p.sigma1 * std::sqrt(r),
        .zeta2 = p.sigma2 * std::sqrt(bp),
    };
}

DimensionalParams canonical_dimensional_preset()
{
    return {.r = 1.0, .K = 1.0, .p = 1.0, .H = 0.25, .b = 0.05, .e = 0.0125, .m = 0.0455,
            .zeta1 = 0.0, .zeta2 = 0.0};
}

NondimParams reference_params()
{
    return {.beta = 0.25, .d = 0.25, .h = 0.91, .eps = 0.05, .sigma1 = 0.0, .sigma2 = 0.0};
}

Vec2 drift(State s, const NondimParams& p, DriftVariant variant)
{
    const double bx = p.beta + s.x;
    if (variant == DriftVariant::time_rescaled) {
        return {s.x * ((1.0 - s.x) * bx - s.y) / p.eps, s.y * (s.x - (p.d + p.h * s.y) * bx)};
    }
    return {s.x * (1.0 - s.x - s.y / bx) / p.eps, s.y * (s.x / bx - p.d - p.h * s.y)};
}

Vec2 diffusion(State s, const NondimParams& p)
{
    return {p.sigma1 / std::sqrt(p.eps) * s.x, p.sigma2 * s.y};
}

}  // namespace outbreak
