#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "outbreak/model.hpp"
#include "outbreak/normal_form.hpp"
#include "outbreak/rng.hpp"
#include "outbreak/types.hpp"

namespace outbreak {

/// Row-major 2x2 noise matrix: increment_i = sum_j g[i][j] dB_j.
using Mat2 = std::array<Vec2, 2>;

struct SimConfig {
    double dt{1e-3};
    double t_end{1.0};
    std::uint64_t seed{0};
    std::size_t record_stride{1};
    Vec2 initial{};
};

void validate(const SimConfig& cfg);

enum class Coordinates { xy, lz };
enum class PathStatus { ok, non_finite };
enum class Scheme { milstein, euler_maruyama };

std::string_view to_string(PathStatus s);

struct Trajectory {
    std::vector<double> times;
    std::vector<Vec2> states;
    NondimParams params{};
    std::uint64_t seed{};
    Coordinates coords{Coordinates::xy};
    PathStatus status{PathStatus::ok};
    std::size_t steps{};         ///< steps actually taken
    std::size_t clamp_events{};  ///< component-steps clamped at zero
};

/// Drift, noise matrix and the diagonal Milstein term m_i = g_ii d(g_ii)/d(s_i).
/// Components whose noise depends on other coordinates get m_i = 0 (Euler-Maruyama).
template <class F>
concept SdeField = requires(const F& f, const Vec2& s) {
    { f.drift(s) } -> std::convertible_to<Vec2>;
    { f.diffusion(s) } -> std::convertible_to<Mat2>;
    { f.milstein_term(s) } -> std::convertible_to<Vec2>;
};

/// The stochastic model: prey fast, predator slow, multiplicative noise. States stay nonnegative.
struct BazykinSde {
    NondimParams p;
    static constexpr bool nonnegative = true;

    Vec2 drift(const Vec2& s) const { return outbreak::drift({s[0], s[1]}, p); }
    Mat2 diffusion(const Vec2& s) const
    {
        const Vec2 g = outbreak::diffusion({s[0], s[1]}, p);
        return {Vec2{g[0], 0.0}, Vec2{0.0, g[1]}};
    }
    Vec2 milstein_term(const Vec2& s) const
    {
        return {p.sigma1 * p.sigma1 / p.eps * s[0], p.sigma2 * p.sigma2 * s[1]};
    }
};

/// Two decoupled geometric Brownian motions dX = a X dt + b X dB. Exact solution
/// X0 exp((a - b^2/2) t + b B_t); used to measure strong order.
struct GeometricSde {
    double a{};
    double b{};
    static constexpr bool nonnegative = false;

    Vec2 drift(const Vec2& s) const { return {a * s[0], a * s[1]}; }
    Mat2 diffusion(const Vec2& s) const { return {Vec2{b * s[0], 0.0}, Vec2{0.0, b * s[1]}}; }
    Vec2 milstein_term(const Vec2& s) const { return {b * b * s[0], b * b * s[1]}; }
};

/// Stochastic normal form (L, Z): Milstein on L, Euler-Maruyama on Z.
struct NormalFormSde {
    StochNFCoeffs coeffs;
    static constexpr bool nonnegative = false;

    Vec2 drift(const Vec2& s) const { return coeffs.drift(s[0], s[1]); }
    Mat2 diffusion(const Vec2& s) const
    {
        const auto g = coeffs.noise(s[0], s[1]);
        return {Vec2{g.l_dB1, 0.0}, Vec2{g.z_dB1, g.z_dB2}};
    }
    Vec2 milstein_term(const Vec2& s) const { return {coeffs.l_milstein_term(s[0]), 0.0}; }
};

template <class F>
constexpr bool clamps_at_zero()
{
    if constexpr (requires { F::nonnegative; }) {
        return F::nonnegative;
    } else {
        return false;
    }
}

/// One step of the Milstein (or Euler-Maruyama) scheme. Returns the number of
/// components clamped at zero.
template <SdeField F>
int sde_step(const F& field, Vec2& s, const Vec2& dB, double dt, Scheme scheme)
{
    const Vec2 f = field.drift(s);
    const Mat2 g = field.diffusion(s);
    Vec2 next{};
    for (int i = 0; i < 2; ++i) {
        next[i] = s[i] + f[i] * dt + g[i][0] * dB[0] + g[i][1] * dB[1];
    }
    if (scheme == Scheme::milstein) {
        const Vec2 m = field.milstein_term(s);
        for (int i = 0; i < 2; ++i) {
            next[i] += 0.5 * m[i] * (dB[i] * dB[i] - dt);
        }
    }
    int clamped = 0;
    if constexpr (clamps_at_zero<F>()) {
        for (double& v : next) {
            if (v < 0.0) {
                v = 0.0;
                ++clamped;
            }
        }
    }
    s = next;
    return clamped;
}

struct PathStats {
    std::size_t steps{};
    std::size_t clamp_events{};
    PathStatus status{PathStatus::ok};
};

inline std::size_t step_count(double dt, double t_end)
{
    return static_cast<std::size_t>(std::llround(t_end / dt));
}

/// Streams a path through `observe(t, state)` at every `stride`-th step (t = 0
/// included). `next_dB()` supplies the Brownian increment pairs.
template <SdeField F, class Noise, class Observer>
PathStats integrate_sde(const F& field, Vec2 state, double dt, std::size_t steps,
                        std::size_t stride, Scheme scheme, Noise&& next_dB, Observer&& observe)
{
    PathStats stats;
    observe(0.0, state);
    for (std::size_t k = 1; k <= steps; ++k) {
        const Vec2 dB = next_dB();
        stats.clamp_events += static_cast<std::size_t>(sde_step(field, state, dB, dt, scheme));
        stats.steps = k;
        if (!std::isfinite(state[0]) || !std::isfinite(state[1])) {
            stats.status = PathStatus::non_finite;
            return stats;
        }
        if (k % stride == 0) {
            observe(static_cast<double>(k) * dt, state);
        }
    }
    return stats;
}

/// Same as above with increments drawn from the seeded Gaussian stream; the
/// increment sequence equals brownian_increments(seed, steps, dt).
template <SdeField F, class Observer>
PathStats integrate_sde(const F& field, const SimConfig& cfg, Scheme scheme, Observer&& observe)
{
    GaussianStream rng(cfg.seed);
    const double sqdt = std::sqrt(cfg.dt);
    auto noise = [&rng, sqdt] {
        const Vec2 z = rng.normal_pair();
        return Vec2{sqdt * z[0], sqdt * z[1]};
    };
    return integrate_sde(field, cfg.initial, cfg.dt, step_count(cfg.dt, cfg.t_end),
                         cfg.record_stride, scheme, noise, observe);
}

/// Sample path of the stochastic model.
Trajectory milstein_path(const NondimParams& p, const SimConfig& cfg,
                         Scheme scheme = Scheme::milstein);

/// Sample path of the stochastic normal form in (L, Z).
Trajectory stochastic_nf_path(const StochNFCoeffs& coeffs, const SimConfig& cfg);

/// Classical fixed-step RK4 for any autonomous planar field `f(state) -> Vec2`.
template <class Field>
    requires std::invocable<const Field&, const Vec2&>
Trajectory rk4_path(const Field& f, const SimConfig& cfg, Coordinates coords = Coordinates::xy)
{
    validate(cfg);
    Trajectory traj;
    traj.seed = cfg.seed;
    traj.coords = coords;
    const std::size_t steps = step_count(cfg.dt, cfg.t_end);
    const double dt = cfg.dt;
    Vec2 s = cfg.initial;
    traj.times.push_back(0.0);
    traj.states.push_back(s);
    auto axpy = [](const Vec2& a, double c, const Vec2& b) {
        return Vec2{a[0] + c * b[0], a[1] + c * b[1]};
    };
    for (std::size_t k = 1; k <= steps; ++k) {
        const Vec2 k1 = f(s);
        const Vec2 k2 = f(axpy(s, 0.5 * dt, k1));
        const Vec2 k3 = f(axpy(s, 0.5 * dt, k2));
        const Vec2 k4 = f(axpy(s, dt, k3));
        for (int i = 0; i < 2; ++i) {
            s[i] += dt / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
        }
        traj.steps = k;
        if (!std::isfinite(s[0]) || !std::isfinite(s[1])) {
            traj.status = PathStatus::non_finite;
            break;
        }
        if (k % cfg.record_stride == 0) {
            traj.times.push_back(static_cast<double>(k) * dt);
            traj.states.push_back(s);
        }
    }
    return traj;
}

enum class DeterministicSystem {
    original,       ///< deterministic slow-fast system
    time_rescaled,  ///< same orbits, time scaled by (beta + x)
    normal_form,    ///< full normal form in (l, z)
    reduced,        ///< truncated normal form with the given mu
};

/// RK4 on one of the named deterministic systems.
Trajectory rk4_path(DeterministicSystem system, const NondimParams& p, const SimConfig& cfg);

}  // namespace outbreak
