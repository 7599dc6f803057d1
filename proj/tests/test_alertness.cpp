#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <optional>

#include "vigil/alertness_model.hpp"
#include "vigil/errors.hpp"

using namespace vigil;

namespace {

SleepWakeSchedule day_schedule() {
    return {{{0.0, 8.0, IntervalKind::Sleep}, {8.0, 24.0, IntervalKind::Wake}}};
}

constexpr double kTight = 1e-9;

}  // namespace

TEST_CASE("circadian process peaks at the acrophase and dips twelve hours later") {
    const AlertnessParams p;
    CHECK(circadian(16.8, p) == doctest::Approx(p.mesor + p.amplitude).epsilon(kTight));
    CHECK(circadian(4.8, p) == doctest::Approx(p.mesor - p.amplitude).epsilon(kTight));
    AlertnessParams shifted = p;
    shifted.mesor = 1.5;
    CHECK(circadian(16.8, shifted) == doctest::Approx(1.5 + p.amplitude).epsilon(kTight));
}

TEST_CASE("circadian process has an exact 24 h period") {
    const AlertnessParams p;
    for (double t = 0.0; t < 24.0; t += 0.7)
        CHECK(circadian(t + 24.0, p) == doctest::Approx(circadian(t, p)).epsilon(kTight));
}

TEST_CASE("homeostatic process starts at s_initial") {
    const AlertnessParams p;
    CHECK(homeostatic(day_schedule(), 0.0, p, 8.35) == doctest::Approx(8.35).epsilon(1e-12));
    CHECK(p.default_s_initial() == doctest::Approx(8.35));
}

TEST_CASE("homeostatic spot values over the day schedule") {
    const AlertnessParams p;
    const auto sched = day_schedule();
    const double s0 = p.default_s_initial();
    CHECK(homeostatic(sched, 8.0, p, s0) == doctest::Approx(14.017650264725356).epsilon(kTight));
    CHECK(homeostatic(sched, 12.0, p, s0) == doctest::Approx(12.487787322721813).epsilon(kTight));
}

TEST_CASE("wake decay follows the closed form") {
    // With d = ln2 / 3, sleep pressure halves its gap to La every 3 h.
    AlertnessParams p;
    p.wake_decay = std::log(2.0) / 3.0;
    SleepWakeSchedule wake_only{{{0.0, 10.0, IntervalKind::Wake}}};
    CHECK(homeostatic(wake_only, 3.0, p, 4.4) == doctest::Approx(3.4).epsilon(1e-12));
    CHECK(homeostatic(wake_only, 6.0, p, 4.4) == doctest::Approx(2.9).epsilon(1e-12));
}

TEST_CASE("homeostatic process is continuous across interval boundaries") {
    const AlertnessParams p;
    const auto sched = day_schedule();
    const double s0 = p.default_s_initial();
    const double at = homeostatic(sched, 8.0, p, s0);
    CHECK(std::abs(homeostatic(sched, 8.0 - 1e-7, p, s0) - at) < 1e-5);
    CHECK(std::abs(homeostatic(sched, 8.0 + 1e-7, p, s0) - at) < 1e-5);
}

TEST_CASE("sleep pressure rises asleep and falls awake, bounded by the asymptotes") {
    const AlertnessParams p;
    const auto sched = day_schedule();
    const double s0 = p.default_s_initial();
    double prev = homeostatic(sched, 0.0, p, s0);
    for (double t = 0.5; t <= 8.0; t += 0.5) {
        const double s = homeostatic(sched, t, p, s0);
        CHECK(s > prev);
        CHECK(s < p.high_asymptote);
        prev = s;
    }
    for (double t = 8.5; t <= 24.0; t += 0.5) {
        const double s = homeostatic(sched, t, p, s0);
        CHECK(s < prev);
        CHECK(s > p.low_asymptote);
        prev = s;
    }
}

TEST_CASE("homeostatic queries outside the horizon are rejected") {
    const AlertnessParams p;
    CHECK_THROWS_AS(homeostatic(day_schedule(), -0.1, p, 8.35), DomainError);
    CHECK_THROWS_AS(homeostatic(day_schedule(), 24.1, p, 8.35), DomainError);
}

TEST_CASE("sleep inertia decays exponentially from W0") {
    const AlertnessParams p;
    CHECK(sleep_inertia(0.0, p) == p.inertia_w0);
    CHECK(sleep_inertia(2.0, p) == doctest::Approx(-2.1042704035006503).epsilon(kTight));
    CHECK(sleep_inertia(20.0, p) > -0.001);
    CHECK(sleep_inertia(1.0, p) < sleep_inertia(2.0, p));  // monotone recovery toward zero
    CHECK_THROWS_AS(sleep_inertia(-0.5, p), DomainError);
}

TEST_CASE("time since waking tracks the most recent sleep-to-wake transition") {
    const auto sched = day_schedule();
    CHECK(time_since_waking(sched, 4.0) == std::nullopt);  // still on the first sleep block
    CHECK(time_since_waking(sched, 8.0) == 0.0);
    CHECK(time_since_waking(sched, 12.0) == 4.0);

    const SleepWakeSchedule split{{{0.0, 8.0, IntervalKind::Wake},
                                   {8.0, 16.0, IntervalKind::Sleep},
                                   {16.0, 24.0, IntervalKind::Wake}}};
    CHECK(time_since_waking(split, 4.0) == std::nullopt);  // horizon opened awake
    CHECK(time_since_waking(split, 16.0) == 0.0);
    CHECK(time_since_waking(split, 20.0) == 4.0);
}

TEST_CASE("predicted alertness composes the three processes") {
    const AlertnessParams p;
    const auto sched = day_schedule();
    const auto noon = predicted_alertness(sched, 12.0, p);
    CHECK(noon.value == noon.s + noon.c + noon.w);
    CHECK(noon.value == doctest::Approx(12.486211988545756).epsilon(kTight));
    CHECK(noon.w == doctest::Approx(-0.7741178201134247).epsilon(kTight));

    const auto night = predicted_alertness(sched, 4.0, p);
    CHECK(night.w == 0.0);  // no waking event yet, inertia contributes nothing
    CHECK(night.value == night.s + night.c);
}

TEST_CASE("schedule validation rejects malformed interval lists") {
    CHECK_THROWS_AS(SleepWakeSchedule{}.validate(), ConfigError);
    SleepWakeSchedule gap{{{0.0, 8.0, IntervalKind::Sleep}, {9.0, 24.0, IntervalKind::Wake}}};
    CHECK_THROWS_AS(gap.validate(), ConfigError);
    SleepWakeSchedule dup{{{0.0, 8.0, IntervalKind::Sleep}, {8.0, 24.0, IntervalKind::Sleep}}};
    CHECK_THROWS_AS(dup.validate(), ConfigError);
    SleepWakeSchedule zero{{{8.0, 8.0, IntervalKind::Sleep}}};
    CHECK_THROWS_AS(zero.validate(), ConfigError);
    CHECK_NOTHROW(day_schedule().validate());
}

TEST_CASE("schedule files parse intervals and parameter overrides") {
    const auto file = parse_schedule(
        "[interval]\n"
        "start = 0\n"
        "end = 8\n"
        "kind = sleep\n"
        "\n"
        "[interval]\n"
        "start = 8\n"
        "end = 24\n"
        "kind = wake\n"
        "\n"
        "[params]\n"
        "amplitude = 3.0\n"
        "acrophase_h = 17\n");
    REQUIRE(file.schedule.intervals.size() == 2);
    CHECK(file.schedule.intervals[0].kind == IntervalKind::Sleep);
    CHECK(file.schedule.intervals[1].end_h == 24.0);
    CHECK(file.params.amplitude == 3.0);
    CHECK(file.params.acrophase_h == 17.0);
    CHECK(file.params.wake_decay == AlertnessParams{}.wake_decay);
}

TEST_CASE("schedule files reject invalid content") {
    CHECK_THROWS_AS(parse_schedule("[interval]\nstart = 0\nend = 8\n"), ConfigError);  // no kind
    CHECK_THROWS_AS(parse_schedule("[interval]\nstart = 0\nend = 8\nkind = nap\n"), ConfigError);
    CHECK_THROWS_AS(parse_schedule("[shift]\nstart = 0\n"), ConfigError);  // unknown section
    const std::string valid =
        "[interval]\nstart = 0\nend = 8\nkind = sleep\n"
        "[interval]\nstart = 8\nend = 24\nkind = wake\n";
    CHECK_THROWS_AS(parse_schedule(valid + "[params]\namplitude = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_schedule(valid + "[params]\nwake_decay = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_schedule(valid + "[params]\ninertia_w0 = 0.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_schedule(valid + "[params]\nlow_asymptote = 14.3\n"), ConfigError);
}
