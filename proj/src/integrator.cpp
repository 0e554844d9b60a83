#include "outbreak/integrator.hpp"

#include "outbreak/equilibrium.hpp"
#include "outbreak/error.hpp"

namespace outbreak {

std::string_view to_string(PathStatus s)
{
    return s == PathStatus::ok ? "ok" : "non_finite";
}

void validate(const SimConfig& cfg)
{
    if (!(cfg.dt > 0.0)) {
        throw InvalidParameter("dt must be positive");
    }
    if (!(cfg.t_end >= cfg.dt)) {
        throw InvalidParameter("t_end must be at least dt");
    }
    if (cfg.record_stride < 1) {
        throw InvalidParameter("record_stride must be at least 1");
    }
}

namespace {

template <SdeField F>
Trajectory record_path(const F& field, const SimConfig& cfg, Scheme scheme, Coordinates coords)
{
    validate(cfg);
    Trajectory traj;
    traj.seed = cfg.seed;
    traj.coords = coords;
    const std::size_t expected = step_count(cfg.dt, cfg.t_end) / cfg.record_stride + 1;
    traj.times.reserve(expected);
    traj.states.reserve(expected);
    const PathStats stats = integrate_sde(field, cfg, scheme, [&traj](double t, const Vec2& s) {
        traj.times.push_back(t);
        traj.states.push_back(s);
    });
    traj.steps = stats.steps;
    traj.clamp_events = stats.clamp_events;
    traj.status = stats.status;
    return traj;
}

}  // namespace

Trajectory milstein_path(const NondimParams& p, const SimConfig& cfg, Scheme scheme)
{
    validate(p, EpsPolicy::warn);
    if (cfg.initial[0] < 0.0 || cfg.initial[1] < 0.0) {
        throw InvalidParameter("initial densities must be nonnegative");
    }
    Trajectory traj = record_path(BazykinSde{p}, cfg, scheme, Coordinates::xy);
    traj.params = p;
    return traj;
}

Trajectory stochastic_nf_path(const StochNFCoeffs& coeffs, const SimConfig& cfg)
{
    Trajectory traj = record_path(NormalFormSde{coeffs}, cfg, Scheme::milstein, Coordinates::lz);
    traj.params = {coeffs.k.beta, coeffs.k.d, coeffs.k.h, coeffs.k.eps, coeffs.sigma1,
                   coeffs.sigma2};
    return traj;
}

Trajectory rk4_path(DeterministicSystem system, const NondimParams& p, const SimConfig& cfg)
{
    Trajectory traj;
    switch (system) {
    case DeterministicSystem::original:
        traj = rk4_path([&p](const Vec2& s) { return drift({s[0], s[1]}, p); }, cfg);
        break;
    case DeterministicSystem::time_rescaled:
        traj = rk4_path(
            [&p](const Vec2& s) { return drift({s[0], s[1]}, p, DriftVariant::time_rescaled); },
            cfg);
        break;
    case DeterministicSystem::normal_form: {
        const NFConstants k = nf_constants(p);
        traj = rk4_path([&k](const Vec2& s) { return nf_field(s[0], s[1], k); }, cfg,
                        Coordinates::lz);
        break;
    }
    case DeterministicSystem::reduced: {
        const NFConstants k = nf_constants(p);
        traj = rk4_path([&k](const Vec2& s) { return reduced_field(s[0], s[1], k.mu, k); }, cfg,
                        Coordinates::lz);
        break;
    }
    }
    traj.params = p;
    return traj;
}

}  // namespace outbreak
