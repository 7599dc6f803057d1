#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vigil/config_file.hpp"
#include "vigil/escalation.hpp"
#include "vigil/fusion_fsm.hpp"

namespace vigil {

// Scripted driver condition for one scenario segment. NoPulse renders like
// Asleep but with a flat PPG channel.
enum class DriverCondition { Awake, Drowsy, Sleepy, Asleep, NoPulse };

const char* to_string(DriverCondition c);
std::optional<DriverCondition> condition_from_string(const std::string& name);

// Ground-truth severity used for false-alarm accounting. NoPulse counts as
// Asleep-level: its visible presentation is identical.
int condition_severity(DriverCondition c);

struct ScenarioSegment {
    double duration_s = 0.0;
    DriverCondition condition = DriverCondition::Awake;
    std::map<std::string, std::string> overrides;  // per-segment synth parameter overrides
};

// Input to the sensor synthesizer.
struct ScenarioScript {
    std::vector<ScenarioSegment> segments;
    double frame_hz = 10.0;
    double accel_hz = 50.0;
    double ppg_hz = 100.0;

    double total_duration() const;
    void validate() const;  // throws ConfigError
};

// A parsed scenario file: the synth script plus everything the harness needs
// (scripted acknowledgments, module config overrides, train setup).
struct ScenarioSpec {
    ScenarioScript script;
    std::vector<double> respond_at;  // timestamps of scripted driver acknowledgments
    std::uint32_t epoch = 1700000000;  // Unix base for report timestamps
    double initial_speed_kmh = 100.0;
    double detector_window_s = 10.0;  // trailing window for blink/closure/nod/motion evidence
    FusionConfig fusion;
    ControlConfig control;
};

ScenarioSpec parse_scenario(const ConfigDoc& doc);
ScenarioSpec load_scenario(const std::string& path);

// Canonical config-format dump; re-parsing it yields an equivalent spec.
// Bundle metadata uses this for self-contained replay.
std::string dump_scenario(const ScenarioSpec& spec);

}  // namespace vigil
