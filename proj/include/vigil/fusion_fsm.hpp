#pragma once

#include <optional>
#include <span>
#include <string>

namespace vigil {

// Driver condition taxonomy, ordered by severity. Incapacitated is assigned
// only by the escalation controller after a vitality result; evidence fusion
// alone never produces it.
enum class DriverState { Awake = 0, Drowsy = 1, Sleepy = 2, Asleep = 3, Incapacitated = 4 };

inline int severity(DriverState s) { return static_cast<int>(s); }
const char* to_string(DriverState s);
std::optional<DriverState> driver_state_from_string(const std::string& name);

enum class MotionLevel { Still, Normal, Erratic };
const char* to_string(MotionLevel m);

// Per-window detector outputs. blink_rate is empty (Unknown) until a full
// detector window of aperture samples exists.
struct Evidence {
    double window_end = 0.0;                 // s
    std::optional<double> blink_rate;        // blinks/min
    double closed_fraction = 0.0;            // [0,1]
    double nod_rate = 0.0;                   // nods/min
    MotionLevel motion = MotionLevel::Normal;
    bool pir_active = false;
};

struct FusionConfig {
    double window_s = 1.0;   // evidence cadence
    int dwell_up = 3;        // consecutive windows required to escalate
    int dwell_down = 2;      // consecutive windows required to de-escalate
    double closed_drowsy = 0.3;
    double closed_sleepy = 0.6;
    double closed_asleep = 0.9;
    double blink_drowsy_max = 8.0;  // blinks/min
    double nod_sleepy_min = 6.0;    // nods/min

    int history_len() const { return dwell_up > dwell_down ? dwell_up : dwell_down; }
};

// Most severe state whose full threshold conjunction holds, else Awake:
//   Asleep: closed >= closed_asleep AND motion Still AND no PIR activity
//   Sleepy: closed >= closed_sleepy AND nod_rate >= nod_sleepy_min
//   Drowsy: closed >= closed_drowsy AND blink_rate <= blink_drowsy_max
// An Unknown blink_rate satisfies the Drowsy blink clause (missing data must
// not suppress escalation). Never returns Incapacitated.
DriverState candidate_state(const Evidence& e, const FusionConfig& cfg);

// Dwell-time hysteresis. `history` holds the most recent candidates, oldest
// first, at least cfg.history_len() of them once available. Moves one severity
// level toward the candidates only when the trailing dwell_up (escalating) or
// dwell_down (de-escalating) candidates all sit on that side of `current`.
// Escalation is capped at Asleep.
DriverState update(DriverState current, std::span<const DriverState> history,
                   const FusionConfig& cfg);

}  // namespace vigil
