#include "vigil/vision_detect.hpp"

#include <cstdlib>

#include "vigil/errors.hpp"

namespace vigil {

namespace {

constexpr double kEps = 1e-9;

// First index with timestamp inside (window_end - window_s, window_end].
std::size_t window_begin(std::span<const TimedValue> series, double window_s) {
    const double start = series.back().timestamp - window_s;
    std::size_t i = series.size();
    while (i > 0 && series[i - 1].timestamp > start + kEps) --i;
    return i;
}

}  // namespace

double frame_diff_score(const Frame& prev, const Frame& next) {
    if (prev.width != next.width || prev.height != next.height)
        throw DomainError("frame_diff_score: dimension mismatch");
    long long total = 0;
    const std::size_t n = prev.pixels.size();
    for (std::size_t i = 0; i < n; ++i)
        total += std::abs(static_cast<int>(prev.pixels[i]) - static_cast<int>(next.pixels[i]));
    return static_cast<double>(total) /
           (static_cast<double>(prev.width) * prev.height * 255.0);
}

double estimate_aperture(const Frame& frame) {
    int bright_rows = 0;
    for (int r = 0; r < Frame::kEyeRows; ++r) {
        int sum = 0;
        for (int c = 0; c < Frame::kEyeCols; ++c)
            sum += frame.at(Frame::kEyeRow0 + r, Frame::kEyeCol0 + c);
        if (sum > 128 * Frame::kEyeCols) ++bright_rows;
    }
    return static_cast<double>(bright_rows) / Frame::kEyeRows;
}

double blink_rate(std::span<const TimedValue> aperture, double window_s) {
    if (window_s < 10.0)
        throw InsufficientDataError("blink_rate: window must be at least 10 s");
    if (aperture.size() < 2)
        throw InsufficientDataError("blink_rate: empty series");
    // The series must cover the window: allow one inter-sample gap of slack.
    const double gap = aperture[1].timestamp - aperture[0].timestamp;
    if (aperture.back().timestamp - aperture.front().timestamp < window_s - gap - kEps)
        throw InsufficientDataError("blink_rate: series shorter than the window");

    const std::size_t begin = window_begin(aperture, window_s);
    int falling = 0;
    bool above = aperture[begin].value > 0.5;
    for (std::size_t i = begin + 1; i < aperture.size(); ++i) {
        const bool now_above = aperture[i].value > 0.5;
        if (above && !now_above) ++falling;
        above = now_above;
    }
    return falling * 60.0 / window_s;
}

double closed_fraction(std::span<const TimedValue> aperture, double window_s) {
    if (aperture.empty() || window_s <= 0.0)
        throw InsufficientDataError("closed_fraction: empty window");
    const std::size_t begin = window_begin(aperture, window_s);
    const std::size_t count = aperture.size() - begin;
    if (count == 0) throw InsufficientDataError("closed_fraction: empty window");
    std::size_t closed = 0;
    for (std::size_t i = begin; i < aperture.size(); ++i)
        if (aperture[i].value < 0.25) ++closed;
    return static_cast<double>(closed) / static_cast<double>(count);
}

MotionLevel classify_motion(std::span<const TimedValue> diff_scores, double window_s) {
    if (diff_scores.empty())
        throw InsufficientDataError("classify_motion: no scores");
    const std::size_t begin = window_begin(diff_scores, window_s);
    const std::size_t count = diff_scores.size() - begin;
    if (count < 5)
        throw InsufficientDataError("classify_motion: fewer than 5 scores in window");
    double sum = 0.0;
    for (std::size_t i = begin; i < diff_scores.size(); ++i) sum += diff_scores[i].value;
    const double mean = sum / static_cast<double>(count);
    if (mean < 0.002) return MotionLevel::Still;
    if (mean > 0.05) return MotionLevel::Erratic;
    return MotionLevel::Normal;
}

}  // namespace vigil
