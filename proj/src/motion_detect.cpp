#include "vigil/motion_detect.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vigil/errors.hpp"

namespace vigil {

namespace {

constexpr double kEps = 1e-9;

double median_of(std::vector<double>& values) {
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + mid, values.end());
    double hi = values[mid];
    if (values.size() % 2 == 0) {
        double lo = *std::max_element(values.begin(), values.begin() + mid);
        return 0.5 * (lo + hi);
    }
    return hi;
}

}  // namespace

TimeSeries pitch_series(std::span<const AccelSample> trace) {
    if (trace.empty()) throw DomainError("pitch_series: empty trace");
    TimeSeries out;
    out.reserve(trace.size());
    for (const auto& s : trace) {
        const double mag = std::sqrt(s.ax * s.ax + s.ay * s.ay + s.az * s.az);
        if (mag <= 0.0)
            throw DomainError("pitch_series: zero-magnitude sample");
        out.push_back({s.timestamp, std::atan2(s.ax, s.az) * 180.0 / std::numbers::pi});
    }
    return out;
}

NodTracker::NodTracker(double min_amplitude_deg, double refractory_s, double baseline_window_s)
    : min_amplitude_(min_amplitude_deg),
      refractory_(refractory_s),
      baseline_window_(baseline_window_s),
      last_event_time_(0.0),
      has_event_(false) {}

std::optional<NodEvent> NodTracker::push(double timestamp, double pitch_deg) {
    window_.push_back({timestamp, pitch_deg});
    while (!window_.empty() && window_.front().timestamp < timestamp - baseline_window_ - kEps)
        window_.pop_front();

    std::vector<double> values;
    values.reserve(window_.size());
    for (const auto& s : window_) values.push_back(s.value);
    const double baseline = median_of(values);

    const double excursion = std::abs(pitch_deg - baseline);
    if (excursion < min_amplitude_) return std::nullopt;
    if (has_event_ && timestamp - last_event_time_ < refractory_ - kEps) return std::nullopt;
    last_event_time_ = timestamp;
    has_event_ = true;
    return NodEvent{timestamp, excursion};
}

std::vector<NodEvent> detect_nods(std::span<const TimedValue> pitch, double min_amplitude_deg,
                                  double refractory_s) {
    if (pitch.size() < 2 || pitch.back().timestamp - pitch.front().timestamp < 2.0 - kEps)
        throw InsufficientDataError("detect_nods: series shorter than 2 s");
    NodTracker tracker(min_amplitude_deg, refractory_s);
    std::vector<NodEvent> events;
    for (const auto& s : pitch)
        if (auto ev = tracker.push(s.timestamp, s.value)) events.push_back(*ev);
    return events;
}

bool pir_active(std::span<const PirEvent> events, double window_end, double window_s) {
    if (window_s <= 0.0) throw DomainError("pir_active: window must be positive");
    for (auto it = events.rbegin(); it != events.rend(); ++it) {
        if (it->timestamp > window_end + kEps) continue;
        return it->timestamp > window_end - window_s + kEps;
    }
    return false;
}

double movement_range(std::span<const TimedValue> pitch, double window_s) {
    if (pitch.empty() || window_s <= 0.0)
        throw InsufficientDataError("movement_range: empty window");
    const double start = pitch.back().timestamp - window_s;
    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (auto it = pitch.rbegin(); it != pitch.rend(); ++it) {
        if (it->timestamp <= start + kEps) break;
        if (!any) {
            lo = hi = it->value;
            any = true;
        } else {
            lo = std::min(lo, it->value);
            hi = std::max(hi, it->value);
        }
    }
    if (!any) throw InsufficientDataError("movement_range: empty window");
    return hi - lo;
}

}  // namespace vigil
