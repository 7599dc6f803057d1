#pragma once

#include <cstdint>
#include <vector>

namespace vigil {

// Grayscale camera frame. The synthetic imaging model is fixed at 64x64 with
// the eye region occupying rows 16..31, cols 24..39 (before any pitch shift).
struct Frame {
    double timestamp = 0.0;  // seconds since scenario start
    int width = 64;
    int height = 64;
    std::vector<std::uint8_t> pixels;  // row-major, width*height entries

    static constexpr int kWidth = 64;
    static constexpr int kHeight = 64;
    static constexpr int kEyeRow0 = 16;  // inclusive
    static constexpr int kEyeRows = 16;
    static constexpr int kEyeCol0 = 24;  // inclusive
    static constexpr int kEyeCols = 16;

    std::uint8_t at(int row, int col) const { return pixels[static_cast<std::size_t>(row) * width + col]; }
};

struct AccelSample {
    double timestamp = 0.0;  // s
    double ax = 0.0, ay = 0.0, az = 0.0;  // g
};

struct PpgSample {
    double timestamp = 0.0;  // s
    double amplitude = 0.0;  // dimensionless, in [-1, 1]
};

// Instant at which the passive-infrared sensor registered cabin motion.
struct PirEvent {
    double timestamp = 0.0;  // s
};

// All synthetic sensor streams for one scenario run. Streams share the total
// scenario duration and are strictly increasing in timestamp.
struct SensorBundle {
    std::vector<Frame> frames;
    std::vector<AccelSample> accel;
    std::vector<PpgSample> ppg;
    std::vector<PirEvent> pir;
};

}  // namespace vigil
