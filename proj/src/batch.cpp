#include "outbreak/batch.hpp"

#include "outbreak/equilibrium.hpp"
#include "outbreak/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace outbreak {

NSamples BatchResult::pooled() const
{
    NSamples all;
    for (const auto& path : paths) {
        all.values.insert(all.values.end(), path.n_values.begin(), path.n_values.end());
    }
    for (const auto v : all.values) {
        all.zeros += v == 0 ? 1 : 0;
    }
    return all;
}

std::size_t BatchResult::total_clamps() const
{
    std::size_t n = 0;
    for (const auto& path : paths) {
        n += path.clamp_events;
    }
    return n;
}

std::size_t BatchResult::total_steps() const
{
    std::size_t n = 0;
    for (const auto& path : paths) {
        n += path.steps;
    }
    return n;
}

namespace {

void validate(const BatchConfig& cfg)
{
    if (cfg.paths < 1) {
        throw InvalidParameter("batch needs at least one path");
    }
    validate(SimConfig{cfg.dt, cfg.t_end, 0, cfg.record_stride, {}});
    validate(cfg.thresholds);
    if (!cfg.start_at_equilibrium && (cfg.initial[0] < 0.0 || cfg.initial[1] < 0.0)) {
        throw InvalidParameter("initial densities must be nonnegative");
    }
}

Vec2 start_state(const NondimParams& p, const BatchConfig& cfg)
{
    if (!cfg.start_at_equilibrium) {
        return cfg.initial;
    }
    const Equilibrium eq = solve_equilibrium(p);
    return {eq.x, eq.y};
}

PathSummary simulate_from(const NondimParams& p, const BatchConfig& cfg, const Vec2& start,
                          std::size_t index)
{
    SimConfig sim{cfg.dt, cfg.t_end, path_seed(cfg.seed_base, index), cfg.record_stride, start};
    EventDetector detector(cfg.thresholds);
    const PathStats stats = integrate_sde(BazykinSde{p}, sim, cfg.scheme,
                                          [&detector](double t, const Vec2& s) {
                                              detector.push(t, s[0]);
                                          });
    const EventSeq events = detector.finish();
    PathSummary out;
    out.seed = sim.seed;
    out.n_values = count_N(events).values;
    out.counts = tally(events);
    out.clamp_events = stats.clamp_events;
    out.steps = stats.steps;
    out.status = stats.status;
    return out;
}

}  // namespace

PathSummary simulate_path_summary(const NondimParams& p, const BatchConfig& cfg,
                                  std::size_t index)
{
    validate(p, EpsPolicy::warn);
    validate(cfg);
    return simulate_from(p, cfg, start_state(p, cfg), index);
}

BatchResult run_batch_serial(const NondimParams& p, const BatchConfig& cfg)
{
    validate(p, EpsPolicy::warn);
    validate(cfg);
    const Vec2 start = start_state(p, cfg);
    BatchResult res;
    res.paths.reserve(cfg.paths);
    for (std::size_t i = 0; i < cfg.paths; ++i) {
        res.paths.push_back(simulate_from(p, cfg, start, i));
    }
    return res;
}

BatchResult run_batch_parallel(const NondimParams& p, const BatchConfig& cfg)
{
    validate(p, EpsPolicy::warn);
    validate(cfg);
    const Vec2 start = start_state(p, cfg);
    BatchResult res;
    res.paths.resize(cfg.paths);
    const auto n = static_cast<std::int64_t>(cfg.paths);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) {
        res.paths[static_cast<std::size_t>(i)] =
            simulate_from(p, cfg, start, static_cast<std::size_t>(i));
    }
    return res;
}

int max_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace outbreak
