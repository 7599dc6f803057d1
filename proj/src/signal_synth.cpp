#include "vigil/signal_synth.hpp"

#include <cmath>
#include <numbers>

#include "vigil/errors.hpp"
#include "vigil/rng.hpp"
#include "vigil/strconv.hpp"

namespace vigil {

namespace {

// Stream tags mixed into the run seed so each sensor draws from an
// independent deterministic sub-stream.
constexpr std::uint64_t kFrameTag = 0x46524d45;  // "FRME"
constexpr std::uint64_t kPpgTag = 0x50504721;    // "PPG!"

constexpr double kBrightBase = 230.0;
constexpr double kDarkBase = 40.0;
constexpr int kNoiseSpan = 5;       // pixel noise is uniform in [-5, +5]
constexpr double kWobblePeriod = 7.0;  // slow head sway, deliberately
                                       // incommensurate with blink cycles

double segment_phase(double t, double period) {
    const double phi = std::fmod(t, period);
    return phi < 0.0 ? phi + period : phi;
}

// Eyelid aperture over one waveform cycle. Two shapes share the parameter
// block: with ramp_s > 0 the lid droops gradually and dwells closed for
// closed_target of the cycle; otherwise it snaps shut for blink_close_s at the
// end of each cycle (an ordinary blink).
double aperture_at(double t, const SynthParams& p) {
    if (p.blink_rate_per_min <= 0.0) return p.open_aperture;
    const double period = 60.0 / p.blink_rate_per_min;
    const double phi = segment_phase(t, period);
    if (p.ramp_s > 0.0) {
        const double dwell = p.closed_target * period;
        const double open_t = period - dwell - 2.0 * p.ramp_s;
        if (phi < open_t) return p.open_aperture;
        if (phi < open_t + p.ramp_s) {
            const double u = (phi - open_t) / p.ramp_s;
            return p.open_aperture + (p.closed_aperture - p.open_aperture) * u;
        }
        if (phi < open_t + p.ramp_s + dwell) return p.closed_aperture;
        const double u = (phi - open_t - p.ramp_s - dwell) / p.ramp_s;
        return p.closed_aperture + (p.open_aperture - p.closed_aperture) * u;
    }
    return phi >= period - p.blink_close_s ? p.closed_aperture : p.open_aperture;
}

// Head pitch: base posture, slow sinusoidal sway, plus a raised-cosine nod
// bump once per nod period.
double pitch_at(double t, const SynthParams& p) {
    double pitch = p.base_pitch_deg;
    if (p.head_jitter_deg > 0.0)
        pitch += p.head_jitter_deg * std::sin(2.0 * std::numbers::pi * t / kWobblePeriod);
    if (p.nod_period_s > 0.0) {
        const double phi = segment_phase(t, p.nod_period_s);
        const double start = 0.5 * (p.nod_period_s - p.nod_width_s);
        if (phi >= start && phi < start + p.nod_width_s) {
            const double u = (phi - start) / p.nod_width_s;
            pitch += p.nod_amplitude_deg * 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * u));
        }
    }
    return pitch;
}

// PPG pulse train: half-sine beats of unit amplitude on a zero baseline.
// hr_bpm == 0 renders a flatline (noise only).
double ppg_at(double t, const SynthParams& p) {
    if (p.hr_bpm <= 0.0) return 0.0;
    const double period = 60.0 / p.hr_bpm;
    const double phi = segment_phase(t, period);
    if (phi >= p.pulse_width_s) return 0.0;
    return std::sin(std::numbers::pi * phi / p.pulse_width_s);
}

void apply_override(SynthParams& p, const std::string& key, const std::string& value) {
    double v;
    try {
        v = parse_double(value);
    } catch (const FormatError&) {
        throw ConfigError("scenario: override '" + key + "' is not numeric: '" + value + "'");
    }
    if (key == "blink_rate_per_min") p.blink_rate_per_min = v;
    else if (key == "blink_close_s") p.blink_close_s = v;
    else if (key == "open_aperture") p.open_aperture = v;
    else if (key == "closed_aperture") p.closed_aperture = v;
    else if (key == "closed_target") p.closed_target = v;
    else if (key == "ramp_s") p.ramp_s = v;
    else if (key == "nod_period_s") p.nod_period_s = v;
    else if (key == "nod_amplitude_deg") p.nod_amplitude_deg = v;
    else if (key == "nod_width_s") p.nod_width_s = v;
    else if (key == "base_pitch_deg") p.base_pitch_deg = v;
    else if (key == "head_jitter_deg") p.head_jitter_deg = v;
    else if (key == "pir_period_s") p.pir_period_s = v;
    else if (key == "hr_bpm") p.hr_bpm = v;
    else if (key == "pulse_width_s") p.pulse_width_s = v;
    else if (key == "ppg_noise") p.ppg_noise = v;
    else throw ConfigError("scenario: unknown synth override '" + key + "'");
}

struct ActiveSegment {
    double start_s = 0.0;
    double end_s = 0.0;
    SynthParams params;
    std::uint64_t noise_seed = 0;
};

std::vector<ActiveSegment> expand_segments(const ScenarioScript& script, std::uint64_t seed) {
    std::vector<ActiveSegment> out;
    double clock = 0.0;
    for (std::size_t i = 0; i < script.segments.size(); ++i) {
        const auto& seg = script.segments[i];
        ActiveSegment active;
        active.start_s = clock;
        clock += seg.duration_s;
        active.end_s = clock;
        active.params = synth_defaults(seg.condition);
        for (const auto& [key, value] : seg.overrides) apply_override(active.params, key, value);
        active.noise_seed = mix_seed(seed, kFrameTag, i);
        out.push_back(active);
    }
    return out;
}

}  // namespace

Frame render_frame(double aperture, double head_pitch_deg, std::uint64_t noise_seed) {
    if (aperture < 0.0 || aperture > 1.0)
        throw DomainError("render_frame: aperture outside [0,1]");

    Frame frame;
    frame.pixels.resize(static_cast<std::size_t>(Frame::kWidth) * Frame::kHeight);

    const int shift = static_cast<int>(std::lround(head_pitch_deg / 2.0));
    const int lit_rows = static_cast<int>(std::lround(aperture * Frame::kEyeRows));
    const int row0 = Frame::kEyeRow0 + shift;

    SplitMix64 rng(noise_seed);
    std::size_t idx = 0;
    for (int row = 0; row < Frame::kHeight; ++row) {
        for (int col = 0; col < Frame::kWidth; ++col, ++idx) {
            const bool lit = row >= row0 && row < row0 + lit_rows && col >= Frame::kEyeCol0 &&
                             col < Frame::kEyeCol0 + Frame::kEyeCols;
            const int value = (lit ? static_cast<int>(kBrightBase) : static_cast<int>(kDarkBase)) +
                              rng.next_jitter(kNoiseSpan);
            frame.pixels[idx] = static_cast<std::uint8_t>(value);
        }
    }
    return frame;
}

SynthParams synth_defaults(DriverCondition condition) {
    SynthParams p;  // the defaults describe an alert driver
    switch (condition) {
        case DriverCondition::Awake:
            p.head_jitter_deg = 3.0;
            p.pir_period_s = 4.0;
            break;
        case DriverCondition::Drowsy:
            // Slow droops: one 0.5-crossing per 10 s cycle (6/min), half the
            // cycle effectively closed.
            p.blink_rate_per_min = 6.0;
            p.ramp_s = 1.0;
            p.closed_target = 0.45;
            p.base_pitch_deg = 2.0;
            p.head_jitter_deg = 2.0;
            p.pir_period_s = 8.0;
            p.hr_bpm = 62.0;
            break;
        case DriverCondition::Sleepy:
            // Heavy droops (eyes shut ~72% of the time) plus a head nod every
            // 8 s; gross movement has ceased.
            p.blink_rate_per_min = 12.0;
            p.ramp_s = 0.6;
            p.closed_target = 0.66;
            p.nod_period_s = 8.0;
            p.nod_amplitude_deg = 20.0;
            p.nod_width_s = 1.2;
            p.base_pitch_deg = 4.0;
            p.head_jitter_deg = 1.5;
            p.pir_period_s = 0.0;
            p.hr_bpm = 58.0;
            break;
        case DriverCondition::Asleep:
            p.blink_rate_per_min = 0.0;
            p.open_aperture = 0.0;  // resting aperture: lids stay shut
            p.base_pitch_deg = 10.0;
            p.head_jitter_deg = 0.0;
            p.pir_period_s = 0.0;
            p.hr_bpm = 55.0;
            break;
        case DriverCondition::NoPulse:
            p.blink_rate_per_min = 0.0;
            p.open_aperture = 0.0;
            p.base_pitch_deg = 10.0;
            p.head_jitter_deg = 0.0;
            p.pir_period_s = 0.0;
            p.hr_bpm = 0.0;  // flat PPG channel
            break;
    }
    return p;
}

SensorBundle synthesize(const ScenarioScript& script, std::uint64_t seed) {
    script.validate();
    const auto segments = expand_segments(script, seed);
    const double total = script.total_duration();
    constexpr double kEdge = 1e-9;

    SensorBundle bundle;

    // Camera frames on the global grid; one static noise field per segment so
    // an unchanged scene repeats byte for byte.
    {
        std::size_t seg = 0;
        const double dt = 1.0 / script.frame_hz;
        for (long k = 0;; ++k) {
            const double t = static_cast<double>(k) * dt;
            if (t >= total - kEdge) break;
            while (t >= segments[seg].end_s - kEdge) ++seg;
            const auto& s = segments[seg];
            const double tau = t - s.start_s;
            Frame frame =
                render_frame(aperture_at(tau, s.params), pitch_at(tau, s.params), s.noise_seed);
            frame.timestamp = t;
            bundle.frames.push_back(std::move(frame));
        }
    }

    // Accelerometer: clean gravity decomposition of the scripted pitch. The
    // frame noise already exercises detector robustness; clean ax/az keep the
    // pitch channel an exact oracle for the nod detector.
    {
        std::size_t seg = 0;
        const double dt = 1.0 / script.accel_hz;
        for (long k = 0;; ++k) {
            const double t = static_cast<double>(k) * dt;
            if (t >= total - kEdge) break;
            while (t >= segments[seg].end_s - kEdge) ++seg;
            const auto& s = segments[seg];
            const double pitch_rad =
                pitch_at(t - s.start_s, s.params) * std::numbers::pi / 180.0;
            bundle.accel.push_back({t, std::sin(pitch_rad), 0.0, std::cos(pitch_rad)});
        }
    }

    // PPG: half-sine pulse train plus uniform noise, one noise stream per
    // segment.
    {
        std::size_t seg = 0;
        SplitMix64 noise(mix_seed(seed, kPpgTag, 0));
        const double dt = 1.0 / script.ppg_hz;
        for (long k = 0;; ++k) {
            const double t = static_cast<double>(k) * dt;
            if (t >= total - kEdge) break;
            while (t >= segments[seg].end_s - kEdge) {
                ++seg;
                noise = SplitMix64(mix_seed(seed, kPpgTag, seg));
            }
            const auto& s = segments[seg];
            double amp = ppg_at(t - s.start_s, s.params);
            if (s.params.ppg_noise > 0.0)
                amp += noise.next_in(-s.params.ppg_noise, s.params.ppg_noise);
            bundle.ppg.push_back({t, amp});
        }
    }

    // PIR events midway through each activity period.
    for (const auto& s : segments) {
        if (s.params.pir_period_s <= 0.0) continue;
        for (long k = 0;; ++k) {
            const double t =
                s.start_s + 0.5 * s.params.pir_period_s + static_cast<double>(k) * s.params.pir_period_s;
            if (t >= s.end_s - kEdge) break;
            bundle.pir.push_back({t});
        }
    }

    return bundle;
}

}  // namespace vigil
