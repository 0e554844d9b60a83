#pragma once

#include "outbreak/types.hpp"

namespace outbreak {

/// Parameters of the dimensional stochastic Bazykin model
///   dU = U [r (1 - U/K) - p V / (H + U)] ds + zeta1 U dB1
///   dV = V [b p U / (H + U) - e - m V] ds + zeta2 V dB2
struct DimensionalParams {
    double r{};      ///< prey intrinsic growth rate
    double K{};      ///< carrying capacity
    double p{};      ///< maximum per-capita predation rate
    double H{};      ///< semi-saturation constant
    double b{};      ///< birth-to-consumption ratio
    double e{};      ///< predator per-capita mortality
    double m{};      ///< intraspecific competition coefficient
    double zeta1{};  ///< prey noise intensity
    double zeta2{};  ///< predator noise intensity
};

/// Dimensionless parameters of the slow-fast system. `h` is the bifurcation knob.
struct NondimParams {
    double beta{};
    double d{};
    double h{};
    double eps{};
    double sigma1{};
    double sigma2{};
};

struct State {
    double x{};  ///< prey density
    double y{};  ///< predator density
};

enum class DriftVariant {
    full,           ///< eps xdot = x (1 - x - y / (beta + x)), ydot = y (x / (beta + x) - d - h y)
    time_rescaled,  ///< the same field multiplied by (beta + x)
};

/// Upper sanity bound on eps; a slow-fast reading needs eps << 1.
inline constexpr double kEpsBound = 0.25;

enum class EpsPolicy { enforce, warn };

void validate(const DimensionalParams& dim);

/// Throws InvalidParameter when an invariant fails. With EpsPolicy::warn an eps above
/// kEpsBound is accepted and a warning is written to std::clog.
void validate(const NondimParams& p, EpsPolicy policy = EpsPolicy::enforce);

NondimParams nondimensionalize(const DimensionalParams& dim);

/// Inverse of nondimensionalize given the reference scales r, K and p, which the
/// dimensionless parameters do not determine.
DimensionalParams redimensionalize(const NondimParams& p, double r, double K, double p_max);

/// Dimensional set mapping exactly onto (beta, d, h, eps) = (0.25, 0.25, 0.91, 0.05).
DimensionalParams canonical_dimensional_preset();

/// beta = d = 0.25, h = 0.91, eps = 0.05, no noise.
NondimParams reference_params();

Vec2 drift(State s, const NondimParams& p, DriftVariant variant = DriftVariant::full);

/// Diagonal multiplicative noise coefficients (sigma1 x / sqrt(eps), sigma2 y).
Vec2 diffusion(State s, const NondimParams& p);

}  // namespace outbreak
