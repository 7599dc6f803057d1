#pragma once

#include <cstdint>

#include "vigil/scenario.hpp"
#include "vigil/sensor_types.hpp"

namespace vigil {

// Renders one synthetic frame. Exactly round(aperture*16) topmost rows of the
// eye box read 230±5; every other pixel reads 40±5, with the noise field drawn
// deterministically from noise_seed. head_pitch shifts the eye box down by
// round(pitch/2) rows, clipped to the frame. Throws DomainError for aperture
// outside [0,1].
Frame render_frame(double aperture, double head_pitch_deg, std::uint64_t noise_seed);

// Deterministic sensor streams for a scripted scenario: a pure function of
// (script, seed), bit-identical on repeat runs. Frames keep one noise field
// per segment so an unchanged scene yields byte-identical consecutive frames
// (frame differencing reads a motionless driver as exactly still).
SensorBundle synthesize(const ScenarioScript& script, std::uint64_t seed);

// Per-condition synthesis defaults, overridable per segment via the scenario
// file. Keys match the field names below (e.g. "hr_bpm", "nod_period_s").
struct SynthParams {
    double blink_rate_per_min = 18.0;  // falling-edge rate of the aperture waveform
    double blink_close_s = 0.3;        // closure dwell for awake-style blinks
    double open_aperture = 1.0;
    double closed_aperture = 0.0;
    double closed_target = 0.0;        // droop waveforms: fraction of cycle spent closed
    double ramp_s = 0.0;               // droop edge duration
    double nod_period_s = 0.0;         // 0 = no nods
    double nod_amplitude_deg = 20.0;
    double nod_width_s = 1.2;
    double base_pitch_deg = 0.0;
    double head_jitter_deg = 0.0;      // slow wobble amplitude
    double pir_period_s = 0.0;         // 0 = no PIR events
    double hr_bpm = 70.0;              // 0 = flat PPG
    double pulse_width_s = 0.25;
    double ppg_noise = 0.005;
};

SynthParams synth_defaults(DriverCondition condition);

}  // namespace vigil
