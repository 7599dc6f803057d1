#pragma once

#include <optional>
#include <string>
#include <vector>

namespace vigil {

enum class IntervalKind { Sleep, Wake };

struct ScheduleInterval {
    double start_h = 0.0;  // clock hours; may exceed 24 for multi-day horizons
    double end_h = 0.0;
    IntervalKind kind = IntervalKind::Wake;
};

// Contiguous, non-overlapping, alternating sleep/wake intervals covering the
// query horizon.
struct SleepWakeSchedule {
    std::vector<ScheduleInterval> intervals;

    double horizon_start() const { return intervals.front().start_h; }
    double horizon_end() const { return intervals.back().end_h; }
    void validate() const;  // throws ConfigError on gaps, overlaps or non-alternation
};

// Three-process model parameters. The published model supplies the shape of
// each process; these default constants are implementer-supplied and every
// test is expressed relative to whatever values are configured here.
struct AlertnessParams {
    double mesor = 0.0;            // circadian mesor M
    double amplitude = 2.5;        // circadian amplitude a
    double acrophase_h = 16.8;     // circadian peak clock hour p
    double wake_decay = 0.0353;    // homeostatic decay rate d, per hour
    double low_asymptote = 2.4;    // La
    double sleep_recovery = 0.381; // recovery rate g, per hour
    double high_asymptote = 14.3;  // Ha
    double inertia_w0 = -5.72;     // W0 <= 0, alertness depression right after waking
    double inertia_tau_h = 2.0;    // inertia time constant

    double default_s_initial() const { return 0.5 * (low_asymptote + high_asymptote); }
};

struct AlertnessScore {
    double value = 0.0;  // = s + c + w exactly
    double s = 0.0;
    double c = 0.0;
    double w = 0.0;
};

// C = M + a*cos(2*pi*(t - p)/24); exact 24 h period.
double circadian(double t_h, const AlertnessParams& params);

// Piecewise exponential sleep-pressure process, evaluated interval by interval
// from s_initial at the horizon start: decay toward La during wake, recovery
// toward Ha during sleep, continuous across boundaries by construction.
double homeostatic(const SleepWakeSchedule& schedule, double t_h, const AlertnessParams& params,
                   double s_initial);

// W = W0 * exp(-hours_since_waking / tau).
double sleep_inertia(double hours_since_waking, const AlertnessParams& params);

// Hours since the most recent sleep->wake transition at or before t_h, or
// empty when none has occurred yet in the horizon (W contributes 0).
std::optional<double> time_since_waking(const SleepWakeSchedule& schedule, double t_h);

AlertnessScore predicted_alertness(const SleepWakeSchedule& schedule, double t_h,
                                   const AlertnessParams& params,
                                   std::optional<double> s_initial = std::nullopt);

// Schedule files use the shared config format: repeated [interval] sections
// with start/end/kind, plus an optional [params] section overriding defaults.
struct ScheduleFile {
    SleepWakeSchedule schedule;
    AlertnessParams params;
};

ScheduleFile load_schedule(const std::string& path);
ScheduleFile parse_schedule(const std::string& text);

}  // namespace vigil
