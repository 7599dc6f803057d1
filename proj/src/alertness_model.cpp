#include "vigil/alertness_model.hpp"

#include <cmath>
#include <numbers>

#include "vigil/config_file.hpp"
#include "vigil/errors.hpp"

namespace vigil {

namespace {
constexpr double kEps = 1e-9;
}

void SleepWakeSchedule::validate() const {
    if (intervals.empty()) throw ConfigError("schedule: no intervals");
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        const auto& iv = intervals[i];
        if (iv.end_h <= iv.start_h + kEps)
            throw ConfigError("schedule: interval end must exceed start");
        if (i > 0) {
            if (std::abs(iv.start_h - intervals[i - 1].end_h) > kEps)
                throw ConfigError("schedule: intervals must be contiguous");
            if (iv.kind == intervals[i - 1].kind)
                throw ConfigError("schedule: interval kinds must alternate");
        }
    }
}

double circadian(double t_h, const AlertnessParams& params) {
    return params.mesor +
           params.amplitude * std::cos(2.0 * std::numbers::pi * (t_h - params.acrophase_h) / 24.0);
}

double homeostatic(const SleepWakeSchedule& schedule, double t_h, const AlertnessParams& params,
                   double s_initial) {
    if (t_h < schedule.horizon_start() - kEps || t_h > schedule.horizon_end() + kEps)
        throw DomainError("homeostatic: query time outside the schedule horizon");

    double s = s_initial;
    for (const auto& iv : schedule.intervals) {
        if (t_h <= iv.start_h + kEps && &iv != &schedule.intervals.front()) break;
        const double until = std::min(t_h, iv.end_h);
        const double tau = until - iv.start_h;
        if (tau < 0.0) break;
        if (iv.kind == IntervalKind::Wake)
            s = params.low_asymptote + (s - params.low_asymptote) * std::exp(-params.wake_decay * tau);
        else
            s = params.high_asymptote -
                (params.high_asymptote - s) * std::exp(-params.sleep_recovery * tau);
        if (t_h <= iv.end_h + kEps) break;
    }
    return s;
}

double sleep_inertia(double hours_since_waking, const AlertnessParams& params) {
    if (hours_since_waking < 0.0) throw DomainError("sleep_inertia: negative time since waking");
    return params.inertia_w0 * std::exp(-hours_since_waking / params.inertia_tau_h);
}

std::optional<double> time_since_waking(const SleepWakeSchedule& schedule, double t_h) {
    std::optional<double> last_waking;
    for (std::size_t i = 1; i < schedule.intervals.size(); ++i) {
        const auto& iv = schedule.intervals[i];
        if (iv.kind == IntervalKind::Wake && iv.start_h <= t_h + kEps)
            last_waking = iv.start_h;
    }
    if (!last_waking) return std::nullopt;
    return std::max(0.0, t_h - *last_waking);
}

AlertnessScore predicted_alertness(const SleepWakeSchedule& schedule, double t_h,
                                   const AlertnessParams& params,
                                   std::optional<double> s_initial) {
    AlertnessScore score;
    score.s = homeostatic(schedule, t_h, params, s_initial.value_or(params.default_s_initial()));
    score.c = circadian(t_h, params);
    const auto since_wake = time_since_waking(schedule, t_h);
    score.w = since_wake ? sleep_inertia(*since_wake, params) : 0.0;
    score.value = score.s + score.c + score.w;
    return score;
}

namespace {

ScheduleFile schedule_from_doc(const ConfigDoc& doc) {
    ScheduleFile out;
    for (const auto& section : doc.sections) {
        if (section.name == "interval") {
            ScheduleInterval iv;
            iv.start_h = entry_double(section.entries, "start", -1.0);
            iv.end_h = entry_double(section.entries, "end", -1.0);
            auto kind_it = section.entries.find("kind");
            if (kind_it == section.entries.end())
                throw ConfigError("schedule: [interval] missing kind");
            if (kind_it->second == "sleep") iv.kind = IntervalKind::Sleep;
            else if (kind_it->second == "wake") iv.kind = IntervalKind::Wake;
            else throw ConfigError("schedule: unknown interval kind '" + kind_it->second + "'");
            out.schedule.intervals.push_back(iv);
        } else if (section.name == "params") {
            auto& p = out.params;
            p.mesor = entry_double(section.entries, "mesor", p.mesor);
            p.amplitude = entry_double(section.entries, "amplitude", p.amplitude);
            p.acrophase_h = entry_double(section.entries, "acrophase_h", p.acrophase_h);
            p.wake_decay = entry_double(section.entries, "wake_decay", p.wake_decay);
            p.low_asymptote = entry_double(section.entries, "low_asymptote", p.low_asymptote);
            p.sleep_recovery = entry_double(section.entries, "sleep_recovery", p.sleep_recovery);
            p.high_asymptote = entry_double(section.entries, "high_asymptote", p.high_asymptote);
            p.inertia_w0 = entry_double(section.entries, "inertia_w0", p.inertia_w0);
            p.inertia_tau_h = entry_double(section.entries, "inertia_tau_h", p.inertia_tau_h);
        } else {
            throw ConfigError("schedule: unknown section [" + section.name + "]");
        }
    }
    out.schedule.validate();
    if (out.params.amplitude < 0.0 || out.params.wake_decay <= 0.0 ||
        out.params.sleep_recovery <= 0.0 || out.params.inertia_tau_h <= 0.0 ||
        out.params.inertia_w0 > 0.0 ||
        out.params.low_asymptote >= out.params.high_asymptote)
        throw ConfigError("schedule: parameters violate model invariants");
    return out;
}

}  // namespace

ScheduleFile load_schedule(const std::string& path) { return schedule_from_doc(load_config(path)); }

ScheduleFile parse_schedule(const std::string& text) {
    return schedule_from_doc(parse_config(text));
}

}  // namespace vigil
