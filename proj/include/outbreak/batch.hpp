#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "outbreak/events.hpp"
#include "outbreak/integrator.hpp"
#include "outbreak/model.hpp"

namespace outbreak {

/// Monte Carlo batch of sample paths, each reduced on the fly to its event sequence.
struct BatchConfig {
    std::size_t paths{200};
    double dt{1e-3};
    double t_end{500.0};
    std::uint64_t seed_base{1};
    std::size_t record_stride{10};  ///< event detection samples every stride-th step
    Thresholds thresholds{kPreyThresholds};
    Scheme scheme{Scheme::milstein};
    bool start_at_equilibrium{true};
    Vec2 initial{};  ///< used when start_at_equilibrium is false
};

struct PathSummary {
    std::uint64_t seed{};
    std::vector<std::int64_t> n_values;
    EventCounts counts;
    std::size_t clamp_events{};
    std::size_t steps{};
    PathStatus status{PathStatus::ok};
};

struct BatchResult {
    std::vector<PathSummary> paths;  ///< ordered by seed

    /// All N samples, concatenated in seed order.
    NSamples pooled() const;
    std::size_t total_clamps() const;
    std::size_t total_steps() const;
};

/// Simulates one path and reduces it to events and N samples.
PathSummary simulate_path_summary(const NondimParams& p, const BatchConfig& cfg,
                                  std::size_t index);

/// Reference implementation: paths one after another.
BatchResult run_batch_serial(const NondimParams& p, const BatchConfig& cfg);

/// OpenMP over paths; bit-identical to run_batch_serial.
BatchResult run_batch_parallel(const NondimParams& p, const BatchConfig& cfg);

inline BatchResult run_batch(const NondimParams& p, const BatchConfig& cfg)
{
    return run_batch_parallel(p, cfg);
}

/// Number of OpenMP threads available (1 without OpenMP).
int max_threads();

}  // namespace outbreak
