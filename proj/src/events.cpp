#include "outbreak/events.hpp"

#include <algorithm>

#include "outbreak/error.hpp"

namespace outbreak {

std::string_view to_string(EventKind k)
{
    switch (k) {
    case EventKind::SAO: return "SAO";
    case EventKind::LAO: return "LAO";
    case EventKind::Unresolved: return "Unresolved";
    }
    return "?";
}

void validate(const Thresholds& th)
{
    if (!(th.a_t > 0.0 && th.a_t < th.a_t_prime && th.m_t > 0.0)) {
        throw InvalidParameter("thresholds need 0 < a_t < a_t' and m_t > 0");
    }
}

EventKind classify(double peak, double amplitude, const Thresholds& th)
{
    if (amplitude > th.a_t_prime && peak > th.m_t) {
        return EventKind::LAO;
    }
    if (amplitude >= th.a_t && amplitude <= th.a_t_prime && peak < th.m_t) {
        return EventKind::SAO;
    }
    return EventKind::Unresolved;
}

EventDetector::EventDetector(const Thresholds& th) : th_(th)
{
    validate(th_);
}

void EventDetector::push(double t, double v)
{
    if (!started_) {
        started_ = true;
        min_v_ = v;
        min_t_ = t;
        return;
    }
    if (phase_ == Phase::falling) {
        if (v < min_v_) {
            min_v_ = v;
            min_t_ = t;
        } else if (v >= min_v_ + th_.a_t) {
            if (open_) {
                emit(min_t_);
            }
            open_ = true;
            start_v_ = min_v_;
            start_t_ = min_t_;
            peak_ = v;
            phase_ = Phase::rising;
        }
    } else {
        if (v > peak_) {
            peak_ = v;
        } else if (v <= peak_ - th_.a_t) {
            phase_ = Phase::falling;
            min_v_ = v;
            min_t_ = t;
        }
    }
}

void EventDetector::emit(double t_end)
{
    // Rise from the opening trough. The closing trough is excluded: before a spike the
    // prey dips deep, and counting that dip would inflate the preceding SAO.
    const double amplitude = peak_ - start_v_;
    if (amplitude < th_.a_t) {
        return;
    }
    events_.push_back({classify(peak_, amplitude, th_), start_t_, t_end, peak_, amplitude});
}

EventSeq EventDetector::finish()
{
    if (open_ && phase_ == Phase::falling) {
        emit(min_t_);
        open_ = false;
    }
    return events_;
}

EventSeq detect_events(const Trajectory& traj, const Thresholds& th, Channel channel)
{
    EventDetector det(th);
    // x is the first coordinate of (x, y); Z the second of (L, Z), read upside down.
    const std::size_t component = channel == Channel::x ? 0 : 1;
    const double sign = channel == Channel::z ? -1.0 : 1.0;
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        det.push(traj.times[i], sign * traj.states[i][component]);
    }
    return det.finish();
}

NSamples count_N(const EventSeq& ev)
{
    NSamples ns;
    bool seen_lao = false;
    std::int64_t between = 0;
    for (const Event& e : ev) {
        if (e.kind == EventKind::LAO) {
            if (seen_lao) {
                ns.values.push_back(between);
                if (between == 0) {
                    ++ns.zeros;
                }
            }
            seen_lao = true;
            between = 0;
        } else if (e.kind == EventKind::SAO && seen_lao) {
            ++between;
        }
    }
    return ns;
}

std::size_t repeated_outbreak_count(const NSamples& ns)
{
    return static_cast<std::size_t>(std::count(ns.values.begin(), ns.values.end(), 0));
}

EventCounts tally(const EventSeq& ev)
{
    EventCounts c;
    for (const Event& e : ev) {
        switch (e.kind) {
        case EventKind::SAO: ++c.sao; break;
        case EventKind::LAO: ++c.lao; break;
        case EventKind::Unresolved: ++c.unresolved; break;
        }
    }
    return c;
}

}  // namespace outbreak
