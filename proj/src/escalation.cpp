#include "vigil/escalation.hpp"

#include <algorithm>

#include "vigil/errors.hpp"

namespace vigil {

const char* to_string(EscalationPhase p) {
    switch (p) {
        case EscalationPhase::Monitoring: return "Monitoring";
        case EscalationPhase::AlarmSounding: return "AlarmSounding";
        case EscalationPhase::Braking: return "Braking";
        case EscalationPhase::HrCheck: return "HrCheck";
        case EscalationPhase::Reported: return "Reported";
    }
    throw DomainError("escalation: unknown phase");
}

const char* to_string(ActionKind k) {
    switch (k) {
        case ActionKind::SoundAlarm: return "SoundAlarm";
        case ActionKind::StopAlarm: return "StopAlarm";
        case ActionKind::ApplyBrake: return "ApplyBrake";
        case ActionKind::ActivateHrSensor: return "ActivateHrSensor";
        case ActionKind::SendReport: return "SendReport";
    }
    throw DomainError("escalation: unknown action kind");
}

StepResult step(EscalationPhase phase, DriverState driver_state, bool response,
                Vitality vitality, double elapsed_in_phase_s, const ControlConfig& cfg) {
    if (elapsed_in_phase_s < 0.0)
        throw ProtocolViolation("escalation: negative elapsed time in phase");

    StepResult out;
    out.phase = phase;

    switch (phase) {
        case EscalationPhase::Monitoring:
            if (severity(driver_state) >= severity(cfg.trigger_severity)) {
                out.phase = EscalationPhase::AlarmSounding;
                out.actions.push_back({.kind = ActionKind::SoundAlarm});
            }
            break;

        case EscalationPhase::AlarmSounding:
            // A driver response always wins over a timeout landing on the
            // same tick: the alarm worked, so stand down.
            if (response) {
                out.phase = EscalationPhase::Monitoring;
                out.actions.push_back({.kind = ActionKind::StopAlarm});
            } else if (elapsed_in_phase_s >= cfg.alarm_response_timeout_s) {
                out.phase = EscalationPhase::Braking;
                out.actions.push_back({.kind = ActionKind::StopAlarm});
                out.actions.push_back({.kind = ActionKind::ApplyBrake,
                                       .deceleration_mps2 = cfg.service_deceleration_mps2});
                out.actions.push_back({.kind = ActionKind::SendReport,
                                       .vitality_report = false});
            }
            break;

        case EscalationPhase::Braking:
            // Transient: the heart-rate check starts on the same tick the
            // brake is commanded. Callers re-step immediately.
            out.phase = EscalationPhase::HrCheck;
            out.actions.push_back({.kind = ActionKind::ActivateHrSensor});
            break;

        case EscalationPhase::HrCheck:
            if (elapsed_in_phase_s >= cfg.hr_check_duration_s) {
                out.phase = EscalationPhase::Reported;
                out.actions.push_back({.kind = ActionKind::SendReport,
                                       .vitality_report = true,
                                       .vitality = vitality});
            }
            break;

        case EscalationPhase::Reported:
            break;  // terminal; braking holds until an external reset
    }
    return out;
}

TrainState advance_train(TrainState train, double dt_s, bool braking, double deceleration_mps2) {
    if (dt_s < 0.0) throw DomainError("advance_train: negative time step");
    if (deceleration_mps2 < 0.0) throw DomainError("advance_train: negative deceleration");
    TrainState next = train;
    next.braking = braking;
    if (braking) next.speed_kmh = std::max(0.0, train.speed_kmh - 3.6 * deceleration_mps2 * dt_s);
    return next;
}

}  // namespace vigil
