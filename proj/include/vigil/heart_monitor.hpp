#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vigil/sensor_types.hpp"

namespace vigil {

// Cardiac status for the escalation protocol's death-or-alive decision.
// NoPulse requires both zero detected peaks in the assessment window and
// signal variance below the flatline floor.
enum class Vitality { Normal, Bradycardia, Tachycardia, NoPulse, Unknown };

const char* to_string(Vitality v);

// Streaming PPG peak detector: local maxima at or above the amplitude
// threshold, successive peaks at least the refractory period apart. A peak is
// confirmed one sample after its apex.
class PeakTracker {
public:
    explicit PeakTracker(double threshold = 0.4, double refractory_s = 0.3);

    std::optional<double> push(double timestamp, double amplitude);

private:
    double threshold_;
    double refractory_;
    double prev_t_, prev_a_;
    double prev2_a_;
    int count_;
    double last_peak_;
    bool has_peak_;
};

// Batch wrapper over PeakTracker. Requires at least 1 s of samples.
std::vector<double> detect_peaks(std::span<const PpgSample> ppg, double threshold = 0.4,
                                 double refractory_s = 0.3);

// 60 / mean inter-peak interval over the trailing window, or empty (Unknown)
// with fewer than two peaks in it. The window is anchored at window_end when
// given, else at the last peak.
std::optional<double> bpm(std::span<const double> peaks, double window_s = 15.0,
                          std::optional<double> window_end = std::nullopt);

// Threshold table: flatline (no peaks, variance < 0.001) -> NoPulse; unknown
// bpm -> Unknown; < 50 -> Bradycardia; > 120 -> Tachycardia; else Normal.
Vitality vitality(std::optional<double> bpm_value, double ppg_window_variance, int peak_count);

}  // namespace vigil
