#pragma once

#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "vigil/sensor_types.hpp"
#include "vigil/vision_detect.hpp"

namespace vigil {

struct NodEvent {
    double timestamp = 0.0;
    double amplitude_deg = 0.0;  // pitch excursion from the running baseline
};

// Gravity-referenced head tilt: pitch = atan2(ax, az) in degrees, per sample.
// Scale-invariant in the accelerometer magnitude.
TimeSeries pitch_series(std::span<const AccelSample> trace);

// Causal streaming nod detector: an event fires when the pitch deviates from
// the running 5 s median baseline by at least min_amplitude, with successive
// events separated by at least the refractory period. detect_nods and the
// harness share this core, so batch and incremental results are identical.
class NodTracker {
public:
    explicit NodTracker(double min_amplitude_deg = 10.0, double refractory_s = 1.0,
                        double baseline_window_s = 5.0);

    std::optional<NodEvent> push(double timestamp, double pitch_deg);

private:
    double min_amplitude_;
    double refractory_;
    double baseline_window_;
    double last_event_time_;
    bool has_event_;
    std::deque<TimedValue> window_;
};

std::vector<NodEvent> detect_nods(std::span<const TimedValue> pitch,
                                  double min_amplitude_deg = 10.0, double refractory_s = 1.0);

// True iff at least one event timestamp lies in (window_end - window, window_end].
bool pir_active(std::span<const PirEvent> events, double window_end, double window_s = 10.0);

// Max minus min pitch over the trailing window.
double movement_range(std::span<const TimedValue> pitch, double window_s);

}  // namespace vigil
