#pragma once

#include <span>
#include <vector>

#include "vigil/fusion_fsm.hpp"
#include "vigil/sensor_types.hpp"

namespace vigil {

// A timestamped scalar sample. Used for aperture series, frame-difference
// scores and pitch series alike.
struct TimedValue {
    double timestamp = 0.0;
    double value = 0.0;
};

using TimeSeries = std::vector<TimedValue>;

// Normalized mean absolute pixel difference in [0,1]. Symmetric; identical
// frames score exactly 0.
double frame_diff_score(const Frame& prev, const Frame& next);

// Fraction of eye-box rows whose mean intensity exceeds 128, quantized to
// sixteenths. Inverts render_frame exactly at pitch 0 for any noise seed.
double estimate_aperture(const Frame& frame);

// Blinks per minute over the trailing `window_s` of the series (relative to
// the last sample). A blink is a falling crossing of the 0.5 aperture
// threshold; the aperture must re-exceed 0.5 before the next one counts.
// Requires window_s >= 10 and a fully populated window.
double blink_rate(std::span<const TimedValue> aperture, double window_s);

// PERCLOS-style measure: fraction of trailing-window samples with aperture
// below 0.25.
double closed_fraction(std::span<const TimedValue> aperture, double window_s);

// Mean diff score over the trailing window: < 0.002 Still, > 0.05 Erratic,
// otherwise Normal. Requires at least 5 scores in the window.
MotionLevel classify_motion(std::span<const TimedValue> diff_scores, double window_s);

}  // namespace vigil
