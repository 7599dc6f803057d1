#include "vigil/heart_monitor.hpp"

#include <cmath>

#include "vigil/errors.hpp"

namespace vigil {

namespace {
constexpr double kEps = 1e-9;
constexpr double kFlatlineVarianceFloor = 0.001;
constexpr double kBradycardiaBpm = 50.0;
constexpr double kTachycardiaBpm = 120.0;
}  // namespace

const char* to_string(Vitality v) {
    switch (v) {
        case Vitality::Normal: return "Normal";
        case Vitality::Bradycardia: return "Bradycardia";
        case Vitality::Tachycardia: return "Tachycardia";
        case Vitality::NoPulse: return "NoPulse";
        case Vitality::Unknown: return "Unknown";
    }
    return "?";
}

PeakTracker::PeakTracker(double threshold, double refractory_s)
    : threshold_(threshold),
      refractory_(refractory_s),
      prev_t_(0.0),
      prev_a_(0.0),
      prev2_a_(0.0),
      count_(0),
      last_peak_(0.0),
      has_peak_(false) {}

std::optional<double> PeakTracker::push(double timestamp, double amplitude) {
    std::optional<double> confirmed;
    // The previous sample is a peak when it is a local maximum over its two
    // neighbours and clears the threshold; plateaus collapse via refractory.
    if (count_ >= 2 && prev_a_ >= threshold_ && prev_a_ >= prev2_a_ && prev_a_ >= amplitude) {
        if (!has_peak_ || prev_t_ - last_peak_ >= refractory_ - kEps) {
            last_peak_ = prev_t_;
            has_peak_ = true;
            confirmed = prev_t_;
        }
    }
    prev2_a_ = prev_a_;
    prev_a_ = amplitude;
    prev_t_ = timestamp;
    ++count_;
    return confirmed;
}

std::vector<double> detect_peaks(std::span<const PpgSample> ppg, double threshold,
                                 double refractory_s) {
    if (ppg.size() < 2 || ppg.back().timestamp - ppg.front().timestamp < 1.0 - kEps)
        throw InsufficientDataError("detect_peaks: need at least 1 s of samples");
    PeakTracker tracker(threshold, refractory_s);
    std::vector<double> peaks;
    for (const auto& s : ppg)
        if (auto p = tracker.push(s.timestamp, s.amplitude)) peaks.push_back(*p);
    return peaks;
}

std::optional<double> bpm(std::span<const double> peaks, double window_s,
                          std::optional<double> window_end) {
    if (peaks.empty()) return std::nullopt;
    const double end = window_end.value_or(peaks.back());
    const double start = end - window_s;
    double first = 0.0, last = 0.0;
    int in_window = 0;
    for (double p : peaks) {
        if (p <= start + kEps || p > end + kEps) continue;
        if (in_window == 0) first = p;
        last = p;
        ++in_window;
    }
    if (in_window < 2) return std::nullopt;
    const double mean_interval = (last - first) / static_cast<double>(in_window - 1);
    return 60.0 / mean_interval;
}

Vitality vitality(std::optional<double> bpm_value, double ppg_window_variance, int peak_count) {
    if (ppg_window_variance < 0.0) throw DomainError("vitality: negative variance");
    if (peak_count == 0 && ppg_window_variance < kFlatlineVarianceFloor) return Vitality::NoPulse;
    if (!bpm_value) return Vitality::Unknown;
    if (*bpm_value < kBradycardiaBpm) return Vitality::Bradycardia;
    if (*bpm_value > kTachycardiaBpm) return Vitality::Tachycardia;
    return Vitality::Normal;
}

}  // namespace vigil
