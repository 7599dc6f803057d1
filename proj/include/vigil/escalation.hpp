#pragma once

#include <vector>

#include "vigil/fusion_fsm.hpp"
#include "vigil/heart_monitor.hpp"

namespace vigil {

// Controller phases. Legal flow per incident:
//   Monitoring -> AlarmSounding -> Monitoring        (driver responded)
//   Monitoring -> AlarmSounding -> Braking -> HrCheck -> Reported
// Reported is terminal until an external reset; braking persists through
// HrCheck and Reported (no automatic speed resume).
enum class EscalationPhase { Monitoring, AlarmSounding, Braking, HrCheck, Reported };

const char* to_string(EscalationPhase p);

enum class ActionKind { SoundAlarm, StopAlarm, ApplyBrake, ActivateHrSensor, SendReport };

const char* to_string(ActionKind k);

struct Action {
    ActionKind kind = ActionKind::SoundAlarm;
    double deceleration_mps2 = 0.0;            // ApplyBrake payload
    bool vitality_report = false;              // SendReport: state report vs vitality report
    Vitality vitality = Vitality::Unknown;     // SendReport vitality payload
};

struct ControlConfig {
    double alarm_response_timeout_s = 10.0;
    double hr_check_duration_s = 5.0;
    double service_deceleration_mps2 = 0.5;
    DriverState trigger_severity = DriverState::Sleepy;
};

struct StepResult {
    EscalationPhase phase = EscalationPhase::Monitoring;
    std::vector<Action> actions;
};

// One controller transition. `response` means any driver activity this tick
// (PIR event or scripted acknowledgment). The Braking->HrCheck transition is
// immediate: callers re-step on the same tick when the result phase is
// Braking. Throws ProtocolViolation on negative elapsed time.
StepResult step(EscalationPhase phase, DriverState driver_state, bool response,
                Vitality vitality, double elapsed_in_phase_s, const ControlConfig& cfg);

struct TrainState {
    double speed_kmh = 100.0;
    bool braking = false;
};

// Service braking integrator: speed drops by 3.6 * deceleration * dt km/h per
// step while braking, floored at zero; coasting leaves speed unchanged.
TrainState advance_train(TrainState train, double dt_s, bool braking,
                         double deceleration_mps2 = 0.5);

}  // namespace vigil
