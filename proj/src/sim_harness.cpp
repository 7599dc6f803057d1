#include "vigil/sim_harness.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "vigil/bundle_io.hpp"
#include "vigil/heart_monitor.hpp"
#include "vigil/motion_detect.hpp"
#include "vigil/signal_synth.hpp"
#include "vigil/strconv.hpp"
#include "vigil/telemetry.hpp"
#include "vigil/vision_detect.hpp"

namespace vigil {

namespace {

constexpr double kEps = 1e-9;

const char* kTimelineHeader =
    "tick,time_s,condition,blink_rate,closed_fraction,nod_rate,motion,pir_active,"
    "candidate,state,phase,actions,speed_kmh,alertness";

std::optional<ActionKind> action_from_string(const std::string& name) {
    if (name == "SoundAlarm") return ActionKind::SoundAlarm;
    if (name == "StopAlarm") return ActionKind::StopAlarm;
    if (name == "ApplyBrake") return ActionKind::ApplyBrake;
    if (name == "ActivateHrSensor") return ActionKind::ActivateHrSensor;
    if (name == "SendReport") return ActionKind::SendReport;
    return std::nullopt;
}

bool has_action(const TimelineRow& row, ActionKind kind) {
    return std::find(row.actions.begin(), row.actions.end(), kind) != row.actions.end();
}

// Summary metrics are a pure function of the timeline rows plus the trigger
// severity; the run loop and report_check both go through here so the stored
// summary can always be re-derived from the stored timeline.
SummaryMetrics derive_metrics(std::span<const TimelineRow> rows, DriverState trigger) {
    SummaryMetrics m;
    const int trig = severity(trigger);

    std::optional<double> onset, detected, brake_at;
    for (const auto& row : rows) {
        if (!onset && condition_severity(row.condition) >= trig) onset = row.time_s;
        if (!detected && severity(row.state) >= trig) detected = row.time_s;
        if (has_action(row, ActionKind::SoundAlarm) && condition_severity(row.condition) < trig)
            ++m.false_alarm_count;
        if (!brake_at && has_action(row, ActionKind::ApplyBrake)) brake_at = row.time_s;
        if (brake_at && !m.time_to_stop_s && row.time_s >= *brake_at - kEps &&
            row.speed_kmh == 0.0)
            m.time_to_stop_s = row.time_s - *brake_at;
        for (auto a : row.actions)
            if (a == ActionKind::SendReport) ++m.reports_sent;
    }
    if (onset && detected) m.detection_latency_s = *detected - *onset;
    if (!rows.empty()) m.final_speed_kmh = rows.back().speed_kmh;
    return m;
}

std::string summary_text(const SummaryMetrics& m, DriverState trigger) {
    auto opt = [](const std::optional<double>& v) {
        return v ? fmt_double(*v) : std::string("n/a");
    };
    std::string out;
    out += std::string("trigger_severity: ") + to_string(trigger) + "\n";
    out += "detection_latency_s: " + opt(m.detection_latency_s) + "\n";
    out += "false_alarm_count: " + fmt_int(m.false_alarm_count) + "\n";
    out += "time_to_stop_s: " + opt(m.time_to_stop_s) + "\n";
    out += "reports_sent: " + fmt_int(m.reports_sent) + "\n";
    out += "final_speed_kmh: " + fmt_double(m.final_speed_kmh) + "\n";
    return out;
}

std::string timeline_csv(std::span<const TimelineRow> rows) {
    std::string out = kTimelineHeader;
    out += "\n";
    for (const auto& row : rows) {
        out += fmt_int(row.tick);
        out += ',';
        out += fmt_double(row.time_s);
        out += ',';
        out += to_string(row.condition);
        out += ',';
        if (row.evidence) {
            const auto& e = *row.evidence;
            if (e.blink_rate) out += fmt_double(*e.blink_rate);
            out += ',';
            out += fmt_double(e.closed_fraction);
            out += ',';
            out += fmt_double(e.nod_rate);
            out += ',';
            out += to_string(e.motion);
            out += ',';
            out += e.pir_active ? "1" : "0";
        } else {
            out += ",,,,";
        }
        out += ',';
        if (row.candidate) out += to_string(*row.candidate);
        out += ',';
        out += to_string(row.state);
        out += ',';
        out += to_string(row.phase);
        out += ',';
        for (std::size_t i = 0; i < row.actions.size(); ++i) {
            if (i) out += ';';
            out += to_string(row.actions[i]);
        }
        out += ',';
        out += fmt_double(row.speed_kmh);
        out += ',';
        if (row.alertness) out += fmt_double(*row.alertness);
        out += '\n';
    }
    return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

std::vector<TimelineRow> parse_timeline(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("timeline: cannot read " + path);
    std::string line;
    if (!std::getline(in, line) || line != kTimelineHeader)
        throw FormatError("timeline: missing or wrong header");
    std::vector<TimelineRow> rows;
    while (std::getline(in, line)) {
        const auto fields = split(line, ',');
        if (fields.size() != 14) throw FormatError("timeline: wrong column count");
        TimelineRow row;
        row.tick = parse_int(fields[0]);
        row.time_s = parse_double(fields[1]);
        const auto cond = condition_from_string(fields[2]);
        if (!cond) throw FormatError("timeline: unknown condition '" + fields[2] + "'");
        row.condition = *cond;
        const auto state = driver_state_from_string(fields[9]);
        if (!state) throw FormatError("timeline: unknown state '" + fields[9] + "'");
        row.state = *state;
        if (!fields[11].empty()) {
            for (const auto& name : split(fields[11], ';')) {
                const auto kind = action_from_string(name);
                if (!kind) throw FormatError("timeline: unknown action '" + name + "'");
                row.actions.push_back(*kind);
            }
        }
        row.speed_kmh = parse_double(fields[12]);
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
}

DriverCondition condition_at(const ScenarioScript& script, double t) {
    double start = 0.0;
    for (const auto& seg : script.segments) {
        if (t < start + seg.duration_s - kEps) return seg.condition;
        start += seg.duration_s;
    }
    return script.segments.back().condition;
}

// The tick-loop engine shared by run and replay: consumes the sensor streams
// on the logical clock, produces evidence windows, drives fusion and the
// escalation controller, integrates the train, and writes the four output
// files.
TimelineReport run_engine(const ScenarioSpec& spec, const SensorBundle& bundle, double tick_s,
                          const std::string& out_dir, const std::string& schedule_path) {
    if (tick_s <= 0.0) throw ConfigError("tick must be positive");
    const double total = spec.script.total_duration();
    const long n_ticks = static_cast<long>(std::floor(total / tick_s + kEps));
    if (n_ticks < 1) throw ConfigError("scenario shorter than one tick");

    const long ticks_per_window = std::lround(spec.fusion.window_s / tick_s);
    if (ticks_per_window < 1 ||
        std::abs(static_cast<double>(ticks_per_window) * tick_s - spec.fusion.window_s) > 1e-6)
        throw ConfigError("tick must divide the fusion window");

    std::optional<ScheduleFile> schedule;
    if (!schedule_path.empty()) {
        schedule = load_schedule(schedule_path);
    }

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path base(out_dir);

    TimelineReport report;
    report.timeline_path = (base / "timeline.csv").string();
    report.summary_path = (base / "summary.txt").string();
    report.telemetry_log_path = (base / "telemetry.log").string();
    report.telemetry_ack_path = (base / "telemetry.ack").string();

    std::filesystem::remove(report.telemetry_log_path);
    std::filesystem::remove(report.telemetry_ack_path);
    ControlRoomReceiver receiver(report.telemetry_log_path, report.telemetry_ack_path);

    // Detector inputs accumulated causally as samples are consumed.
    TimeSeries aperture, diffs, pitch;
    std::vector<double> nod_times, peak_times;
    const Frame* prev_frame = nullptr;
    NodTracker nod_tracker;
    PeakTracker peak_tracker;
    std::size_t frame_i = 0, accel_i = 0, ppg_i = 0, respond_i = 0, pir_resp_i = 0;

    // Fusion and control state.
    DriverState state = DriverState::Awake;
    std::deque<DriverState> history;
    EscalationPhase phase = EscalationPhase::Monitoring;
    long phase_entry_k = 0;  // tick of the last phase change; elapsed time is
                             // tick-counted so thresholds cannot slip to rounding
    TrainState train{spec.initial_speed_kmh, false};
    double brake_decel = spec.control.service_deceleration_mps2;
    std::uint32_t seq = 0;
    const double window = spec.detector_window_s;

    auto current_bpm = [&](double t) { return bpm(peak_times, 15.0, t); };

    auto assess_vitality = [&](double t) {
        const double w = spec.control.hr_check_duration_s;
        int peaks_in = 0;
        for (auto it = peak_times.rbegin(); it != peak_times.rend(); ++it) {
            if (*it > t + kEps) continue;
            if (*it <= t - w + kEps) break;
            ++peaks_in;
        }
        double sum = 0.0, sum_sq = 0.0;
        long count = 0;
        for (std::size_t i = ppg_i; i-- > 0;) {
            const auto& s = bundle.ppg[i];
            if (s.timestamp > t + kEps) continue;
            if (s.timestamp <= t - w + kEps) break;
            sum += s.amplitude;
            sum_sq += s.amplitude * s.amplitude;
            ++count;
        }
        const double variance =
            count > 0 ? std::max(0.0, sum_sq / count - (sum / count) * (sum / count)) : 0.0;
        return vitality(current_bpm(t), variance, peaks_in);
    };

    auto send_report = [&](double t, bool vitality_report, Vitality vit) {
        if (vitality_report && vit == Vitality::NoPulse) state = DriverState::Incapacitated;
        StatusMessage msg;
        msg.seq = ++seq;
        msg.timestamp = spec.epoch + static_cast<std::uint32_t>(std::floor(t + kEps));
        msg.state_code = state_code_for(state);
        msg.hr_code = vitality_report ? hr_code_for(vit) : "NA";
        const auto rate = current_bpm(t);
        msg.bpm = rate ? static_cast<int>(std::lround(*rate)) : -1;
        msg.speed_dkmh = static_cast<std::uint32_t>(std::lround(train.speed_kmh * 10.0));
        receiver.feed_line(encode(msg));
    };

    for (long k = 1; k <= n_ticks; ++k) {
        const double t = static_cast<double>(k) * tick_s;
        TimelineRow row;
        row.tick = k;
        row.time_s = t;
        row.condition = condition_at(spec.script, t);

        // Consume every sensor sample up to the tick boundary.
        for (; frame_i < bundle.frames.size() && bundle.frames[frame_i].timestamp <= t + kEps;
             ++frame_i) {
            const Frame& f = bundle.frames[frame_i];
            aperture.push_back({f.timestamp, estimate_aperture(f)});
            if (prev_frame) diffs.push_back({f.timestamp, frame_diff_score(*prev_frame, f)});
            prev_frame = &f;
        }
        for (; accel_i < bundle.accel.size() && bundle.accel[accel_i].timestamp <= t + kEps;
             ++accel_i) {
            const AccelSample& a = bundle.accel[accel_i];
            const double mag = std::sqrt(a.ax * a.ax + a.ay * a.ay + a.az * a.az);
            if (mag <= 0.0) throw DomainError("run: zero-magnitude accel sample");
            const double deg = std::atan2(a.ax, a.az) * 180.0 / std::numbers::pi;
            pitch.push_back({a.timestamp, deg});
            if (auto ev = nod_tracker.push(a.timestamp, deg)) nod_times.push_back(ev->timestamp);
        }
        for (; ppg_i < bundle.ppg.size() && bundle.ppg[ppg_i].timestamp <= t + kEps; ++ppg_i) {
            const PpgSample& s = bundle.ppg[ppg_i];
            if (auto p = peak_tracker.push(s.timestamp, s.amplitude)) peak_times.push_back(*p);
        }

        // Evidence window boundary: run the detectors and the fusion FSM.
        if (k % ticks_per_window == 0) {
            Evidence e;
            e.window_end = t;
            try {
                e.blink_rate = blink_rate(aperture, window);
            } catch (const InsufficientDataError&) {
                e.blink_rate = std::nullopt;
            }
            e.closed_fraction = aperture.empty() ? 0.0 : closed_fraction(aperture, window);
            if (!pitch.empty() && pitch.back().timestamp - pitch.front().timestamp >= 2.0 - kEps) {
                int nods_in = 0;
                for (auto it = nod_times.rbegin(); it != nod_times.rend(); ++it) {
                    if (*it > t + kEps) continue;
                    if (*it <= t - window + kEps) break;
                    ++nods_in;
                }
                e.nod_rate = nods_in * 60.0 / window;
            }
            try {
                e.motion = classify_motion(diffs, window);
            } catch (const InsufficientDataError&) {
                e.motion = MotionLevel::Normal;
            }
            e.pir_active = pir_active(bundle.pir, t, window);

            const DriverState candidate = candidate_state(e, spec.fusion);
            history.push_back(candidate);
            while (static_cast<int>(history.size()) > spec.fusion.history_len())
                history.pop_front();
            // Incapacitated is latched by the escalation outcome; evidence
            // fusion neither produces nor clears it.
            if (state != DriverState::Incapacitated) {
                const std::vector<DriverState> hist(history.begin(), history.end());
                state = update(state, hist, spec.fusion);
            }
            row.evidence = e;
            row.candidate = candidate;
        }

        // Train physics first: a brake commanded at this tick acts from the
        // next tick interval onward.
        train = advance_train(train, tick_s, train.braking, brake_decel);

        // Driver response: scripted acknowledgment or PIR activity this tick.
        bool response = false;
        for (; respond_i < spec.respond_at.size() && spec.respond_at[respond_i] <= t + kEps;
             ++respond_i)
            response = true;
        for (; pir_resp_i < bundle.pir.size() && bundle.pir[pir_resp_i].timestamp <= t + kEps;
             ++pir_resp_i)
            response = true;

        const Vitality vit =
            phase == EscalationPhase::HrCheck ? assess_vitality(t) : Vitality::Unknown;
        const double elapsed = static_cast<double>(k - phase_entry_k) * tick_s;
        StepResult result = step(phase, state, response, vit, elapsed, spec.control);
        if (result.phase == EscalationPhase::Braking) {
            // Transient phase: the heart-rate check begins on the same tick.
            StepResult chained = step(result.phase, state, response, vit, 0.0, spec.control);
            result.phase = chained.phase;
            result.actions.insert(result.actions.end(), chained.actions.begin(),
                                  chained.actions.end());
        }
        if (result.phase != phase) phase_entry_k = k;
        phase = result.phase;

        for (const auto& action : result.actions) {
            row.actions.push_back(action.kind);
            switch (action.kind) {
                case ActionKind::ApplyBrake:
                    train.braking = true;
                    brake_decel = action.deceleration_mps2;
                    break;
                case ActionKind::SendReport:
                    send_report(t, action.vitality_report, action.vitality);
                    break;
                case ActionKind::SoundAlarm:
                case ActionKind::StopAlarm:
                case ActionKind::ActivateHrSensor:
                    break;
            }
        }

        row.state = state;
        row.phase = phase;
        row.speed_kmh = train.speed_kmh;
        if (schedule) {
            const double t_h = schedule->schedule.horizon_start() + t / 3600.0;
            if (t_h <= schedule->schedule.horizon_end() + kEps)
                row.alertness =
                    predicted_alertness(schedule->schedule, t_h, schedule->params).value;
        }
        report.rows.push_back(std::move(row));
    }

    report.metrics = derive_metrics(report.rows, spec.control.trigger_severity);
    write_text_file(report.timeline_path, timeline_csv(report.rows));
    write_text_file(report.summary_path,
                    summary_text(report.metrics, spec.control.trigger_severity));
    return report;
}

}  // namespace

TimelineReport run(const RunConfig& config) {
    const ScenarioSpec spec = load_scenario(config.scenario_path);
    const SensorBundle bundle = synthesize(spec.script, config.seed);
    if (config.record_bundle)
        write_bundle(bundle, spec, (std::filesystem::path(config.out_dir) / "bundle").string());
    return run_engine(spec, bundle, config.tick_s, config.out_dir, config.schedule_path);
}

TimelineReport replay(const ReplayConfig& config) {
    LoadedBundle loaded = load_bundle(config.bundle_dir);
    return run_engine(loaded.spec, loaded.bundle, config.tick_s, config.out_dir,
                      config.schedule_path);
}

int report_check(const std::string& timeline_path, std::ostream& out) {
    const auto rows = parse_timeline(timeline_path);
    const auto summary_path =
        std::filesystem::path(timeline_path).parent_path() / "summary.txt";
    std::ifstream in(summary_path, std::ios::binary);
    if (!in) throw FormatError("report: cannot read " + summary_path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string stored = buf.str();

    // The trigger severity is an input, not a derived value; read it back
    // from the stored summary.
    const std::string trigger_key = "trigger_severity: ";
    if (stored.rfind(trigger_key, 0) != 0)
        throw FormatError("report: summary missing trigger_severity");
    const auto eol = stored.find('\n');
    if (eol == std::string::npos) throw FormatError("report: truncated summary");
    const auto trigger = driver_state_from_string(stored.substr(trigger_key.size(), eol - trigger_key.size()));
    if (!trigger) throw FormatError("report: bad trigger_severity value");

    const std::string expected = summary_text(derive_metrics(rows, *trigger), *trigger);
    if (expected == stored) {
        out << "summary consistent with timeline (" << rows.size() << " rows)\n";
        return 0;
    }
    out << "summary does not match the timeline\n--- derived ---\n"
        << expected << "--- stored ---\n"
        << stored;
    return 1;
}

std::string alertness_curve_csv(const ScheduleFile& file, double step_h) {
    if (step_h <= 0.0) throw DomainError("alertness curve: step must be positive");
    std::string out = "t_h,s,c,w,value\n";
    const double start = file.schedule.horizon_start();
    const double end = file.schedule.horizon_end();
    for (long k = 0;; ++k) {
        const double t = start + static_cast<double>(k) * step_h;
        if (t > end + kEps) break;
        const auto score = predicted_alertness(file.schedule, t, file.params);
        out += fmt_double(t) + "," + fmt_double(score.s) + "," + fmt_double(score.c) + "," +
               fmt_double(score.w) + "," + fmt_double(score.value) + "\n";
    }
    return out;
}

int cli_main(const std::vector<std::string>& args) {
    CLI::App app{"fatigue-watch simulation suite"};
    app.require_subcommand(1);

    RunConfig run_cfg;
    auto* run_cmd = app.add_subcommand("run", "synthesize sensors and simulate a scenario");
    run_cmd->add_option("--scenario", run_cfg.scenario_path, "scenario file")->required();
    run_cmd->add_option("--seed", run_cfg.seed, "noise seed");
    run_cmd->add_option("--out", run_cfg.out_dir, "output directory")->required();
    run_cmd->add_option("--schedule", run_cfg.schedule_path, "sleep/wake schedule file");
    run_cmd->add_option("--tick", run_cfg.tick_s, "logical clock step, seconds");
    run_cmd->add_flag("--record-bundle", run_cfg.record_bundle, "write the sensor bundle");

    ReplayConfig replay_cfg;
    auto* replay_cmd = app.add_subcommand("replay", "re-run a recorded sensor bundle");
    replay_cmd->add_option("--bundle", replay_cfg.bundle_dir, "bundle directory")->required();
    replay_cmd->add_option("--out", replay_cfg.out_dir, "output directory")->required();
    replay_cmd->add_option("--schedule", replay_cfg.schedule_path, "sleep/wake schedule file");
    replay_cmd->add_option("--tick", replay_cfg.tick_s, "logical clock step, seconds");

    std::string timeline_path;
    auto* report_cmd = app.add_subcommand("report", "check a summary against its timeline");
    report_cmd->add_option("--timeline", timeline_path, "timeline.csv path")->required();

    std::string schedule_path, curve_out;
    double step_h = 0.25;
    auto* alert_cmd = app.add_subcommand("alertness", "tabulate the predicted alertness curve");
    alert_cmd->add_option("--schedule", schedule_path, "sleep/wake schedule file")->required();
    alert_cmd->add_option("--step", step_h, "step in hours");
    alert_cmd->add_option("--out", curve_out, "output file (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (run_cmd->parsed()) {
            const auto report = run(run_cfg);
            std::ifstream summary(report.summary_path, std::ios::binary);
            std::cout << summary.rdbuf();
            return 0;
        }
        if (replay_cmd->parsed()) {
            replay(replay_cfg);
            return 0;
        }
        if (report_cmd->parsed()) return report_check(timeline_path, std::cout);
        if (alert_cmd->parsed()) {
            const auto curve = alertness_curve_csv(load_schedule(schedule_path), step_h);
            if (curve_out.empty())
                std::cout << curve;
            else
                write_text_file(curve_out, curve);
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ProtocolViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace vigil
