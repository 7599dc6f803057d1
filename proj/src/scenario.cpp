#include "vigil/scenario.hpp"

#include <algorithm>
#include <initializer_list>
#include <sstream>
#include <string_view>

#include "vigil/errors.hpp"
#include "vigil/strconv.hpp"

namespace vigil {

namespace {

std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        try {
            out.push_back(parse_double(token));
        } catch (const FormatError&) {
            throw ConfigError(std::string("scenario: bad value in ") + what + ": '" + token + "'");
        }
    }
    return out;
}

void reject_unknown_keys(const std::map<std::string, std::string>& entries,
                         std::initializer_list<std::string_view> known, const char* where) {
    for (const auto& [key, value] : entries) {
        (void)value;
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError(std::string("scenario: unknown key '") + key + "' in " + where);
    }
}

}  // namespace

const char* to_string(DriverCondition c) {
    switch (c) {
        case DriverCondition::Awake: return "Awake";
        case DriverCondition::Drowsy: return "Drowsy";
        case DriverCondition::Sleepy: return "Sleepy";
        case DriverCondition::Asleep: return "Asleep";
        case DriverCondition::NoPulse: return "NoPulse";
    }
    return "?";
}

std::optional<DriverCondition> condition_from_string(const std::string& name) {
    if (name == "Awake") return DriverCondition::Awake;
    if (name == "Drowsy") return DriverCondition::Drowsy;
    if (name == "Sleepy") return DriverCondition::Sleepy;
    if (name == "Asleep") return DriverCondition::Asleep;
    if (name == "NoPulse") return DriverCondition::NoPulse;
    return std::nullopt;
}

int condition_severity(DriverCondition c) {
    switch (c) {
        case DriverCondition::Awake: return 0;
        case DriverCondition::Drowsy: return 1;
        case DriverCondition::Sleepy: return 2;
        case DriverCondition::Asleep: return 3;
        case DriverCondition::NoPulse: return 3;
    }
    return 0;
}

double ScenarioScript::total_duration() const {
    double total = 0.0;
    for (const auto& seg : segments) total += seg.duration_s;
    return total;
}

void ScenarioScript::validate() const {
    if (segments.empty()) throw ConfigError("scenario: no segments");
    for (const auto& seg : segments)
        if (seg.duration_s <= 0.0) throw ConfigError("scenario: segment duration must be positive");
    if (frame_hz <= 0.0 || accel_hz <= 0.0 || ppg_hz <= 0.0)
        throw ConfigError("scenario: sensor rates must be positive");
}

ScenarioSpec parse_scenario(const ConfigDoc& doc) {
    reject_unknown_keys(doc.top,
                        {"frame_hz", "accel_hz", "ppg_hz", "epoch", "initial_speed_kmh",
                         "detector_window_s", "respond_at"},
                        "scenario header");

    ScenarioSpec spec;
    spec.script.frame_hz = doc.get_double("frame_hz", spec.script.frame_hz);
    spec.script.accel_hz = doc.get_double("accel_hz", spec.script.accel_hz);
    spec.script.ppg_hz = doc.get_double("ppg_hz", spec.script.ppg_hz);
    spec.initial_speed_kmh = doc.get_double("initial_speed_kmh", spec.initial_speed_kmh);
    spec.detector_window_s = doc.get_double("detector_window_s", spec.detector_window_s);
    if (spec.initial_speed_kmh < 0.0)
        throw ConfigError("scenario: initial_speed_kmh must be non-negative");
    if (spec.detector_window_s <= 0.0)
        throw ConfigError("scenario: detector_window_s must be positive");

    if (doc.has("epoch")) {
        const double e = doc.get_double("epoch", 0.0);
        if (e < 0.0 || e > 4294967295.0 || e != static_cast<double>(static_cast<std::uint32_t>(e)))
            throw ConfigError("scenario: epoch must be an unsigned 32-bit integer");
        spec.epoch = static_cast<std::uint32_t>(e);
    }

    spec.respond_at = parse_double_list(doc.get("respond_at", ""), "respond_at");
    std::sort(spec.respond_at.begin(), spec.respond_at.end());
    for (double t : spec.respond_at)
        if (t < 0.0) throw ConfigError("scenario: respond_at times must be non-negative");

    for (const auto& section : doc.sections) {
        if (section.name == "segment") {
            ScenarioSegment seg;
            seg.duration_s = entry_double(section.entries, "duration", -1.0);
            auto cond_it = section.entries.find("condition");
            if (cond_it == section.entries.end())
                throw ConfigError("scenario: [segment] missing condition");
            auto cond = condition_from_string(cond_it->second);
            if (!cond)
                throw ConfigError("scenario: unknown condition '" + cond_it->second + "'");
            seg.condition = *cond;
            for (const auto& [key, value] : section.entries)
                if (key != "duration" && key != "condition") seg.overrides.emplace(key, value);
            spec.script.segments.push_back(std::move(seg));
        } else if (section.name == "fusion") {
            reject_unknown_keys(section.entries,
                                {"window_s", "dwell_up", "dwell_down", "closed_drowsy",
                                 "closed_sleepy", "closed_asleep", "blink_drowsy_max",
                                 "nod_sleepy_min"},
                                "[fusion]");
            auto& f = spec.fusion;
            f.window_s = entry_double(section.entries, "window_s", f.window_s);
            f.dwell_up = static_cast<int>(entry_double(section.entries, "dwell_up", f.dwell_up));
            f.dwell_down =
                static_cast<int>(entry_double(section.entries, "dwell_down", f.dwell_down));
            f.closed_drowsy = entry_double(section.entries, "closed_drowsy", f.closed_drowsy);
            f.closed_sleepy = entry_double(section.entries, "closed_sleepy", f.closed_sleepy);
            f.closed_asleep = entry_double(section.entries, "closed_asleep", f.closed_asleep);
            f.blink_drowsy_max =
                entry_double(section.entries, "blink_drowsy_max", f.blink_drowsy_max);
            f.nod_sleepy_min = entry_double(section.entries, "nod_sleepy_min", f.nod_sleepy_min);
            if (f.window_s <= 0.0 || f.dwell_up < 1 || f.dwell_down < 1)
                throw ConfigError("scenario: [fusion] dwell/window values out of range");
            if (!(f.closed_drowsy <= f.closed_sleepy && f.closed_sleepy <= f.closed_asleep))
                throw ConfigError("scenario: [fusion] closure thresholds must be ordered");
        } else if (section.name == "control") {
            reject_unknown_keys(section.entries,
                                {"alarm_response_timeout_s", "hr_check_duration_s",
                                 "service_deceleration_mps2", "trigger_severity"},
                                "[control]");
            auto& c = spec.control;
            c.alarm_response_timeout_s =
                entry_double(section.entries, "alarm_response_timeout_s", c.alarm_response_timeout_s);
            c.hr_check_duration_s =
                entry_double(section.entries, "hr_check_duration_s", c.hr_check_duration_s);
            c.service_deceleration_mps2 = entry_double(section.entries, "service_deceleration_mps2",
                                                       c.service_deceleration_mps2);
            if (auto it = section.entries.find("trigger_severity"); it != section.entries.end()) {
                auto state = driver_state_from_string(it->second);
                if (!state || severity(*state) < 1 || severity(*state) > 3)
                    throw ConfigError("scenario: trigger_severity must name Drowsy, Sleepy or Asleep");
                c.trigger_severity = *state;
            }
            if (c.alarm_response_timeout_s <= 0.0 || c.hr_check_duration_s <= 0.0 ||
                c.service_deceleration_mps2 <= 0.0)
                throw ConfigError("scenario: [control] durations and deceleration must be positive");
        } else {
            throw ConfigError("scenario: unknown section [" + section.name + "]");
        }
    }

    spec.script.validate();
    return spec;
}

ScenarioSpec load_scenario(const std::string& path) { return parse_scenario(load_config(path)); }

std::string dump_scenario(const ScenarioSpec& spec) {
    std::string out;
    out += "frame_hz = " + fmt_double(spec.script.frame_hz) + "\n";
    out += "accel_hz = " + fmt_double(spec.script.accel_hz) + "\n";
    out += "ppg_hz = " + fmt_double(spec.script.ppg_hz) + "\n";
    out += "epoch = " + fmt_uint(spec.epoch) + "\n";
    out += "initial_speed_kmh = " + fmt_double(spec.initial_speed_kmh) + "\n";
    out += "detector_window_s = " + fmt_double(spec.detector_window_s) + "\n";
    if (!spec.respond_at.empty()) {
        out += "respond_at =";
        for (double t : spec.respond_at) out += " " + fmt_double(t);
        out += "\n";
    }

    out += "\n[fusion]\n";
    out += "window_s = " + fmt_double(spec.fusion.window_s) + "\n";
    out += "dwell_up = " + fmt_int(spec.fusion.dwell_up) + "\n";
    out += "dwell_down = " + fmt_int(spec.fusion.dwell_down) + "\n";
    out += "closed_drowsy = " + fmt_double(spec.fusion.closed_drowsy) + "\n";
    out += "closed_sleepy = " + fmt_double(spec.fusion.closed_sleepy) + "\n";
    out += "closed_asleep = " + fmt_double(spec.fusion.closed_asleep) + "\n";
    out += "blink_drowsy_max = " + fmt_double(spec.fusion.blink_drowsy_max) + "\n";
    out += "nod_sleepy_min = " + fmt_double(spec.fusion.nod_sleepy_min) + "\n";

    out += "\n[control]\n";
    out += "alarm_response_timeout_s = " + fmt_double(spec.control.alarm_response_timeout_s) + "\n";
    out += "hr_check_duration_s = " + fmt_double(spec.control.hr_check_duration_s) + "\n";
    out += "service_deceleration_mps2 = " +
           fmt_double(spec.control.service_deceleration_mps2) + "\n";
    out += std::string("trigger_severity = ") + to_string(spec.control.trigger_severity) + "\n";

    for (const auto& seg : spec.script.segments) {
        out += "\n[segment]\n";
        out += "duration = " + fmt_double(seg.duration_s) + "\n";
        out += std::string("condition = ") + to_string(seg.condition) + "\n";
        for (const auto& [key, value] : seg.overrides) out += key + " = " + value + "\n";
    }
    return out;
}

}  // namespace vigil
