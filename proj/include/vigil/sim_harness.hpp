#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vigil/alertness_model.hpp"
#include "vigil/escalation.hpp"
#include "vigil/fusion_fsm.hpp"
#include "vigil/scenario.hpp"

namespace vigil {

struct RunConfig {
    std::string scenario_path;
    std::uint64_t seed = 0;
    double tick_s = 0.1;  // must divide every sensor sample period
    std::string out_dir;
    std::string schedule_path;  // optional; empty = no alertness column
    bool record_bundle = false;
};

struct ReplayConfig {
    std::string bundle_dir;
    double tick_s = 0.1;
    std::string out_dir;
    std::string schedule_path;
};

struct SummaryMetrics {
    // Seconds from the first onset of a scripted condition at or above the
    // escalation trigger severity to the first fused state at or above it.
    std::optional<double> detection_latency_s;
    // SoundAlarm actions emitted while the scripted condition sat below the
    // trigger severity.
    long false_alarm_count = 0;
    std::optional<double> time_to_stop_s;  // first ApplyBrake to standstill
    long reports_sent = 0;
    double final_speed_kmh = 0.0;
};

struct TimelineRow {
    long tick = 0;
    double time_s = 0.0;
    DriverCondition condition = DriverCondition::Awake;
    std::optional<Evidence> evidence;          // populated on evidence ticks only
    std::optional<DriverState> candidate;
    DriverState state = DriverState::Awake;
    EscalationPhase phase = EscalationPhase::Monitoring;
    std::vector<ActionKind> actions;
    double speed_kmh = 0.0;
    std::optional<double> alertness;
};

struct TimelineReport {
    std::vector<TimelineRow> rows;
    SummaryMetrics metrics;
    std::string timeline_path;
    std::string summary_path;
    std::string telemetry_log_path;
    std::string telemetry_ack_path;
};

// Executes the scenario on the logical clock and writes timeline.csv,
// summary.txt, telemetry.log and telemetry.ack under out_dir (plus bundle/
// when recording). Deterministic: identical config yields identical bytes.
TimelineReport run(const RunConfig& config);

// Same pipeline over pre-recorded streams. Replaying a run's own recorded
// bundle reproduces that run's outputs byte for byte.
TimelineReport replay(const ReplayConfig& config);

// Re-derives the summary metrics from the timeline rows and compares them
// with the stored summary.txt next to the timeline. Returns 0 when they
// agree, 1 when they disagree; throws FormatError on unparsable input.
int report_check(const std::string& timeline_path, std::ostream& out);

// CSV alertness curve (t,S,C,W,value) over the schedule horizon.
std::string alertness_curve_csv(const ScheduleFile& file, double step_h);

// Full command-line surface (run/replay/report/alertness). Returns the
// process exit code: 0 ok, 2 config error, 3 format error, 4 protocol
// violation, 1 anything else.
int cli_main(const std::vector<std::string>& args);

}  // namespace vigil
