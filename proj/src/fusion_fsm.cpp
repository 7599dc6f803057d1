#include "vigil/fusion_fsm.hpp"

namespace vigil {

const char* to_string(DriverState s) {
    switch (s) {
        case DriverState::Awake: return "Awake";
        case DriverState::Drowsy: return "Drowsy";
        case DriverState::Sleepy: return "Sleepy";
        case DriverState::Asleep: return "Asleep";
        case DriverState::Incapacitated: return "Incapacitated";
    }
    return "?";
}

std::optional<DriverState> driver_state_from_string(const std::string& name) {
    if (name == "Awake") return DriverState::Awake;
    if (name == "Drowsy") return DriverState::Drowsy;
    if (name == "Sleepy") return DriverState::Sleepy;
    if (name == "Asleep") return DriverState::Asleep;
    if (name == "Incapacitated") return DriverState::Incapacitated;
    return std::nullopt;
}

const char* to_string(MotionLevel m) {
    switch (m) {
        case MotionLevel::Still: return "Still";
        case MotionLevel::Normal: return "Normal";
        case MotionLevel::Erratic: return "Erratic";
    }
    return "?";
}

DriverState candidate_state(const Evidence& e, const FusionConfig& cfg) {
    if (e.closed_fraction >= cfg.closed_asleep && e.motion == MotionLevel::Still && !e.pir_active)
        return DriverState::Asleep;
    if (e.closed_fraction >= cfg.closed_sleepy && e.nod_rate >= cfg.nod_sleepy_min)
        return DriverState::Sleepy;
    if (e.closed_fraction >= cfg.closed_drowsy &&
        (!e.blink_rate || *e.blink_rate <= cfg.blink_drowsy_max))
        return DriverState::Drowsy;
    return DriverState::Awake;
}

DriverState update(DriverState current, std::span<const DriverState> history,
                   const FusionConfig& cfg) {
    const int cur = severity(current);
    const auto n = static_cast<int>(history.size());

    if (n >= cfg.dwell_up && cur < severity(DriverState::Asleep)) {
        bool all_above = true;
        for (int i = n - cfg.dwell_up; i < n; ++i)
            if (severity(history[i]) <= cur) { all_above = false; break; }
        if (all_above) return static_cast<DriverState>(cur + 1);
    }
    if (n >= cfg.dwell_down && cur > severity(DriverState::Awake)) {
        bool all_below = true;
        for (int i = n - cfg.dwell_down; i < n; ++i)
            if (severity(history[i]) >= cur) { all_below = false; break; }
        if (all_below) return static_cast<DriverState>(cur - 1);
    }
    return current;
}

}  // namespace vigil
