#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "vigil/alertness_model.hpp"
#include "vigil/bundle_io.hpp"
#include "vigil/errors.hpp"
#include "vigil/sim_harness.hpp"
#include "vigil/signal_synth.hpp"
#include "vigil/telemetry.hpp"

using namespace vigil;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    REQUIRE(out.good());
    out << text;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

fs::path fresh_dir(const std::string& name) {
    fs::remove_all(name);
    fs::create_directories(name);
    return name;
}

const std::string kSleepScenario =
    "initial_speed_kmh = 100\n"
    "\n"
    "[segment]\n"
    "duration = 30\n"
    "condition = Awake\n"
    "\n"
    "[segment]\n"
    "duration = 90\n"
    "condition = Asleep\n";

const std::string kNoPulseScenario =
    "initial_speed_kmh = 100\n"
    "\n"
    "[segment]\n"
    "duration = 30\n"
    "condition = Awake\n"
    "\n"
    "[segment]\n"
    "duration = 90\n"
    "condition = NoPulse\n";

// Acknowledgments every 10 s bracket every possible alarm window after onset.
const std::string kRespondScenario =
    "initial_speed_kmh = 100\n"
    "respond_at = 45 55 65 75 85 95 105 115\n"
    "\n"
    "[segment]\n"
    "duration = 30\n"
    "condition = Awake\n"
    "\n"
    "[segment]\n"
    "duration = 90\n"
    "condition = Asleep\n";

const std::string kDaySchedule =
    "[interval]\n"
    "start = 0\n"
    "end = 8\n"
    "kind = sleep\n"
    "\n"
    "[interval]\n"
    "start = 8\n"
    "end = 24\n"
    "kind = wake\n";

fs::path scenario_file(const std::string& name, const std::string& text) {
    const fs::path dir = fresh_dir("hx_cfg_" + name);
    const fs::path path = dir / "scenario.cfg";
    write_file(path, text);
    return path;
}

TimelineReport run_scenario(const std::string& name, const std::string& text,
                            bool record = false, const std::string& schedule = "") {
    RunConfig cfg;
    cfg.scenario_path = scenario_file(name, text).string();
    cfg.seed = 5;
    cfg.out_dir = fresh_dir("hx_out_" + name).string();
    cfg.record_bundle = record;
    cfg.schedule_path = schedule;
    return run(cfg);
}

bool bundles_equal(const SensorBundle& a, const SensorBundle& b) {
    if (a.frames.size() != b.frames.size() || a.accel.size() != b.accel.size() ||
        a.ppg.size() != b.ppg.size() || a.pir.size() != b.pir.size())
        return false;
    for (std::size_t i = 0; i < a.frames.size(); ++i)
        if (a.frames[i].timestamp != b.frames[i].timestamp ||
            a.frames[i].pixels != b.frames[i].pixels)
            return false;
    for (std::size_t i = 0; i < a.accel.size(); ++i)
        if (a.accel[i].timestamp != b.accel[i].timestamp || a.accel[i].ax != b.accel[i].ax ||
            a.accel[i].az != b.accel[i].az)
            return false;
    for (std::size_t i = 0; i < a.ppg.size(); ++i)
        if (a.ppg[i].timestamp != b.ppg[i].timestamp || a.ppg[i].amplitude != b.ppg[i].amplitude)
            return false;
    for (std::size_t i = 0; i < a.pir.size(); ++i)
        if (a.pir[i].timestamp != b.pir[i].timestamp) return false;
    return true;
}

}  // namespace

TEST_CASE("identical runs produce identical bytes") {
    const auto a = run_scenario("det_a", kSleepScenario);
    const auto b = run_scenario("det_b", kSleepScenario);
    CHECK(slurp(a.timeline_path) == slurp(b.timeline_path));
    CHECK(slurp(a.summary_path) == slurp(b.summary_path));
    CHECK(slurp(a.telemetry_log_path) == slurp(b.telemetry_log_path));
    CHECK(slurp(a.telemetry_ack_path) == slurp(b.telemetry_ack_path));
}

TEST_CASE("the baseline incident plays out: detect, alarm, brake, report, stop") {
    const auto report = run_scenario("base", kSleepScenario);
    const auto& m = report.metrics;

    REQUIRE(m.detection_latency_s.has_value());
    CHECK(*m.detection_latency_s >= 5.0);
    CHECK(*m.detection_latency_s <= 15.0);
    CHECK(m.false_alarm_count == 0);
    REQUIRE(m.time_to_stop_s.has_value());
    CHECK(*m.time_to_stop_s == doctest::Approx(100.0 / (3.6 * 0.5)).epsilon(0.01));
    CHECK(m.reports_sent == 2);
    CHECK(m.final_speed_kmh == 0.0);

    // Speed is monotone non-increasing throughout.
    for (std::size_t i = 1; i < report.rows.size(); ++i)
        CHECK(report.rows[i].speed_kmh <= report.rows[i - 1].speed_kmh);

    // The brake lands exactly one alarm timeout after the alarm starts.
    std::optional<double> alarm_at, brake_at;
    for (const auto& row : report.rows) {
        const bool sound = std::count(row.actions.begin(), row.actions.end(),
                                      ActionKind::SoundAlarm) > 0;
        const bool brake = std::count(row.actions.begin(), row.actions.end(),
                                      ActionKind::ApplyBrake) > 0;
        if (sound && !alarm_at) alarm_at = row.time_s;
        if (brake && !brake_at) brake_at = row.time_s;
    }
    REQUIRE(alarm_at.has_value());
    REQUIRE(brake_at.has_value());
    CHECK(*brake_at - *alarm_at == doctest::Approx(10.0).epsilon(1e-9));

    // Both telemetry reports were accepted; the vitality report reads OK at
    // the synthesized sleeping heart rate.
    const auto log_lines = lines_of(slurp(report.telemetry_log_path));
    REQUIRE(log_lines.size() == 2);
    const auto state_report = decode(log_lines[0]);
    CHECK(state_report.state_code == "AS");
    CHECK(state_report.hr_code == "NA");
    const auto vitality_report = decode(log_lines[1]);
    CHECK(vitality_report.state_code == "AS");
    CHECK(vitality_report.hr_code == "OK");
    CHECK(vitality_report.bpm == 55);
    CHECK(slurp(report.telemetry_ack_path) == "ACK,1\nACK,2\n");
}

TEST_CASE("a responding driver keeps the train rolling") {
    const auto report = run_scenario("respond", kRespondScenario);
    const auto& m = report.metrics;

    CHECK(m.reports_sent == 0);
    CHECK(m.time_to_stop_s == std::nullopt);
    CHECK(m.final_speed_kmh == 100.0);
    CHECK(m.false_alarm_count == 0);
    REQUIRE(m.detection_latency_s.has_value());
    CHECK(*m.detection_latency_s <= 15.0);

    bool saw_stop_alarm = false;
    for (const auto& row : report.rows) {
        CHECK(row.speed_kmh == 100.0);
        CHECK((row.phase == EscalationPhase::Monitoring ||
               row.phase == EscalationPhase::AlarmSounding));
        for (auto a : row.actions) CHECK(a != ActionKind::ApplyBrake);
        if (std::count(row.actions.begin(), row.actions.end(), ActionKind::StopAlarm))
            saw_stop_alarm = true;
    }
    CHECK(saw_stop_alarm);
    CHECK(slurp(report.telemetry_log_path).empty());
}

TEST_CASE("a flatlined driver is reported incapacitated") {
    const auto report = run_scenario("nopulse", kNoPulseScenario);
    CHECK(report.metrics.reports_sent == 2);
    CHECK(report.metrics.final_speed_kmh == 0.0);

    REQUIRE(!report.rows.empty());
    CHECK(report.rows.back().phase == EscalationPhase::Reported);
    CHECK(report.rows.back().state == DriverState::Incapacitated);

    // Incapacitation is latched: once set it never clears.
    bool seen = false;
    for (const auto& row : report.rows) {
        if (row.state == DriverState::Incapacitated) seen = true;
        if (seen) CHECK(row.state == DriverState::Incapacitated);
    }
    CHECK(seen);

    const auto log_lines = lines_of(slurp(report.telemetry_log_path));
    REQUIRE(log_lines.size() == 2);
    const auto vitality_report = decode(log_lines[1]);
    CHECK(vitality_report.state_code == "IN");
    CHECK(vitality_report.hr_code == "NP");
    CHECK(vitality_report.bpm == -1);
}

TEST_CASE("a recorded bundle replays to identical bytes") {
    const auto original = run_scenario("rec", kSleepScenario, true);
    const fs::path bundle_dir = fs::path(original.timeline_path).parent_path() / "bundle";

    ReplayConfig cfg;
    cfg.bundle_dir = bundle_dir.string();
    cfg.out_dir = fresh_dir("hx_out_replay").string();
    const auto replayed = replay(cfg);

    CHECK(slurp(original.timeline_path) == slurp(replayed.timeline_path));
    CHECK(slurp(original.summary_path) == slurp(replayed.summary_path));
    CHECK(slurp(original.telemetry_log_path) == slurp(replayed.telemetry_log_path));
    CHECK(slurp(original.telemetry_ack_path) == slurp(replayed.telemetry_ack_path));
}

TEST_CASE("bundles round-trip through their on-disk form") {
    const auto report = run_scenario("roundtrip", kSleepScenario, true);
    const fs::path bundle_dir = fs::path(report.timeline_path).parent_path() / "bundle";

    const auto loaded = load_bundle(bundle_dir.string());
    const auto spec = load_scenario(scenario_file("roundtrip_ref", kSleepScenario).string());
    CHECK(dump_scenario(loaded.spec) == dump_scenario(spec));
    CHECK(bundles_equal(loaded.bundle, synthesize(spec.script, 5)));
}

TEST_CASE("malformed bundles are rejected") {
    CHECK_THROWS_AS(load_bundle("no_such_bundle_dir"), FormatError);

    const auto report = run_scenario("corrupt", kSleepScenario, true);
    const fs::path bundle_dir = fs::path(report.timeline_path).parent_path() / "bundle";

    const std::string frames = slurp(bundle_dir / "frames.csv");

    write_file(bundle_dir / "frames.csv", "time,width,height,pixels\n");
    CHECK_THROWS_AS(load_bundle(bundle_dir.string()), FormatError);  // wrong header

    const auto second_line = frames.find('\n') + 1;
    std::string bad_hex = frames;
    bad_hex[frames.find(',', frames.find(',', frames.find(',', second_line) + 1) + 1) + 1] = 'g';
    write_file(bundle_dir / "frames.csv", bad_hex);
    CHECK_THROWS_AS(load_bundle(bundle_dir.string()), FormatError);  // lowercase hex digit

    // Keep the header and first 10 rows only: the stream no longer spans the
    // scripted duration.
    std::size_t pos = 0;
    for (int i = 0; i < 11 && pos != std::string::npos; ++i)
        pos = frames.find('\n', pos + 1);
    REQUIRE(pos != std::string::npos);
    write_file(bundle_dir / "frames.csv", frames.substr(0, pos + 1));
    CHECK_THROWS_AS(load_bundle(bundle_dir.string()), FormatError);
}

TEST_CASE("replay validates the logical clock against the fusion window") {
    const auto report = run_scenario("ticks", kSleepScenario, true);
    const fs::path bundle_dir = fs::path(report.timeline_path).parent_path() / "bundle";

    ReplayConfig cfg;
    cfg.bundle_dir = bundle_dir.string();
    cfg.out_dir = fresh_dir("hx_out_ticks_replay").string();
    cfg.tick_s = 0.3;  // does not divide the 1 s evidence window
    CHECK_THROWS_AS(replay(cfg), ConfigError);
    cfg.tick_s = -0.1;
    CHECK_THROWS_AS(replay(cfg), ConfigError);
}

TEST_CASE("report check accepts stored summaries and flags tampering") {
    const auto report = run_scenario("check", kSleepScenario);

    std::ostringstream out;
    CHECK(report_check(report.timeline_path, out) == 0);
    CHECK(out.str().find("consistent") != std::string::npos);

    std::string summary = slurp(report.summary_path);
    const auto pos = summary.find("reports_sent: 2");
    REQUIRE(pos != std::string::npos);
    summary.replace(pos, 15, "reports_sent: 3");
    write_file(report.summary_path, summary);
    std::ostringstream out2;
    CHECK(report_check(report.timeline_path, out2) == 1);

    CHECK_THROWS_AS(report_check("no_such_timeline.csv", out2), FormatError);

    const fs::path bad_dir = fresh_dir("hx_bad_timeline");
    write_file(bad_dir / "timeline.csv", "not,a,timeline\n");
    CHECK_THROWS_AS(report_check((bad_dir / "timeline.csv").string(), out2), FormatError);
}

TEST_CASE("a schedule adds the alertness column") {
    const fs::path sched_dir = fresh_dir("hx_sched");
    const fs::path sched = sched_dir / "day.cfg";
    write_file(sched, kDaySchedule);

    const auto report = run_scenario("alert", kSleepScenario, false, sched.string());
    REQUIRE(!report.rows.empty());
    for (const auto& row : report.rows) CHECK(row.alertness.has_value());

    const auto header = lines_of(slurp(report.timeline_path)).front();
    CHECK(header.find("alertness") != std::string::npos);
}

TEST_CASE("the alertness curve tabulates the schedule horizon") {
    const auto file = parse_schedule(kDaySchedule);
    const auto csv = alertness_curve_csv(file, 6.0);
    const auto lines = lines_of(csv);
    REQUIRE(lines.size() == 6);  // header plus t = 0, 6, 12, 18, 24
    CHECK(lines.front() == "t_h,s,c,w,value");
    CHECK(lines[1].rfind("0,", 0) == 0);
    CHECK_THROWS_AS(alertness_curve_csv(file, 0.0), DomainError);
}

TEST_CASE("the command line maps errors to distinct exit codes") {
    const fs::path out = fresh_dir("hx_cli");
    const auto scen = scenario_file("cli", kSleepScenario);

    CHECK(cli_main({"run", "--scenario", scen.string(), "--seed", "5", "--out",
                    (out / "run").string()}) == 0);
    CHECK(cli_main({"report", "--timeline", (out / "run" / "timeline.csv").string()}) == 0);

    CHECK(cli_main({"run", "--scenario", "missing.cfg", "--out", (out / "x").string()}) == 2);
    CHECK(cli_main({"replay", "--bundle", "no_such_bundle", "--out", (out / "y").string()}) == 3);
    CHECK(cli_main({}) != 0);                       // a subcommand is required
    CHECK(cli_main({"run", "--bogus"}) != 0);

    const fs::path sched = out / "day.cfg";
    write_file(sched, kDaySchedule);
    const fs::path curve = out / "curve.csv";
    CHECK(cli_main({"alertness", "--schedule", sched.string(), "--step", "6", "--out",
                    curve.string()}) == 0);
    CHECK(lines_of(slurp(curve)).size() == 6);
    CHECK(cli_main({"alertness", "--schedule", sched.string(), "--step", "-1"}) == 1);
}
