#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "outbreak/integrator.hpp"

namespace outbreak {

/// Amplitude thresholds separating small from large oscillations.
struct Thresholds {
    double m_t{};        ///< maximum-value threshold
    double a_t{};        ///< SAO amplitude floor, also the segmentation hysteresis
    double a_t_prime{};  ///< LAO amplitude floor
};

void validate(const Thresholds& th);

/// Thresholds for the prey channel of the original system.
inline constexpr Thresholds kPreyThresholds{0.68, 0.06, 0.3};
/// Thresholds for the -Z channel of the stochastic normal form.
inline constexpr Thresholds kNormalFormThresholds{6.0, 0.1, 3.0};

enum class EventKind { SAO, LAO, Unresolved };

std::string_view to_string(EventKind k);

struct Event {
    EventKind kind{};
    double t_start{};
    double t_end{};
    double peak{};
    double amplitude{};
};

using EventSeq = std::vector<Event>;

enum class Channel {
    x,  ///< prey coordinate of (x, y)
    z,  ///< -Z of (L, Z); spikes of the normal form point downward
};

EventKind classify(double peak, double amplitude, const Thresholds& th);

/// Online segmentation into oscillations bounded by successive local minima. A new
/// oscillation opens once the signal has risen a_t above the running minimum, and its
/// peak is final once the signal has fallen a_t below it. Amplitude is the rise from the
/// opening trough to the peak.
class EventDetector {
public:
    explicit EventDetector(const Thresholds& th);

    void push(double t, double v);
    /// Closes an oscillation still in its falling phase and returns all events.
    EventSeq finish();

    const EventSeq& events() const { return events_; }

private:
    enum class Phase { falling, rising };

    void emit(double t_end);

    Thresholds th_;
    Phase phase_{Phase::falling};
    bool started_{false};
    bool open_{false};
    double min_v_{}, min_t_{};
    double start_v_{}, start_t_{}, peak_{};
    EventSeq events_;
};

EventSeq detect_events(const Trajectory& traj, const Thresholds& th, Channel channel);

/// Inter-spike counts N with bookkeeping of repeated outbreaks.
struct NSamples {
    std::vector<std::int64_t> values;
    std::size_t zeros{};  ///< the outbreak count Sigma = #{N = 0}
};

NSamples count_N(const EventSeq& ev);

std::size_t repeated_outbreak_count(const NSamples& ns);

struct EventCounts {
    std::size_t sao{};
    std::size_t lao{};
    std::size_t unresolved{};
};

EventCounts tally(const EventSeq& ev);

}  // namespace outbreak
