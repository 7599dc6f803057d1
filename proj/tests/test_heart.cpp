#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <vector>

#include "vigil/errors.hpp"
#include "vigil/heart_monitor.hpp"

using namespace vigil;

namespace {

std::vector<PpgSample> flat(double duration_s, double hz = 10.0) {
    std::vector<PpgSample> out;
    for (long k = 0; static_cast<double>(k) / hz < duration_s - 1e-9; ++k)
        out.push_back({static_cast<double>(k) / hz, 0.0});
    return out;
}

// Triangular pulse, 0.3 s base, apex aligned to the sample grid.
void add_pulse(std::vector<PpgSample>& ppg, double apex_t, double apex_a = 1.0) {
    for (auto& s : ppg) {
        const double d = std::abs(s.timestamp - apex_t);
        if (d < 0.15) s.amplitude = std::max(s.amplitude, apex_a * (1.0 - d / 0.15));
    }
}

// Half-sine pulse train: one 0.25 s pulse at the start of every period.
std::vector<PpgSample> pulse_train(double duration_s, double period_s, double hz = 50.0) {
    std::vector<PpgSample> out;
    for (long k = 0; static_cast<double>(k) / hz < duration_s - 1e-9; ++k) {
        const double t = static_cast<double>(k) / hz;
        const double phase = std::fmod(t, period_s);
        const double a =
            phase < 0.25 ? std::sin(std::numbers::pi * phase / 0.25) : 0.0;
        out.push_back({t, a});
    }
    return out;
}

}  // namespace

TEST_CASE("isolated pulses are detected at their apex") {
    auto ppg = flat(10.0);
    add_pulse(ppg, 1.0);
    add_pulse(ppg, 3.0);
    add_pulse(ppg, 5.5);
    const auto peaks = detect_peaks(ppg);
    REQUIRE(peaks.size() == 3);
    CHECK(peaks[0] == 1.0);
    CHECK(peaks[1] == 3.0);
    CHECK(peaks[2] == 5.5);
}

TEST_CASE("the amplitude threshold is inclusive") {
    auto ppg = flat(4.0);
    add_pulse(ppg, 1.0, 0.39);
    add_pulse(ppg, 3.0, 0.4);
    const auto peaks = detect_peaks(ppg);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0] == 3.0);
}

TEST_CASE("the refractory period separates detections") {
    auto close_pair = flat(5.0);
    add_pulse(close_pair, 2.0);
    add_pulse(close_pair, 2.2);  // 0.2 s gap, inside the 0.3 s refractory
    CHECK(detect_peaks(close_pair) == std::vector<double>{2.0});

    auto spaced_pair = flat(5.0);
    add_pulse(spaced_pair, 2.0);
    add_pulse(spaced_pair, 2.3);  // exactly the refractory period apart
    CHECK(detect_peaks(spaced_pair) == std::vector<double>{2.0, 2.3});
}

TEST_CASE("a plateau apex confirms exactly once") {
    auto ppg = flat(5.0);
    for (auto& s : ppg)
        if (s.timestamp >= 2.0 - 1e-9 && s.timestamp <= 2.2 + 1e-9) s.amplitude = 1.0;
    const auto peaks = detect_peaks(ppg);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0] == 2.0);
}

TEST_CASE("detect_peaks needs at least one second of signal") {
    CHECK_THROWS_AS(detect_peaks(flat(0.9)), InsufficientDataError);
    std::vector<PpgSample> one = {{0.0, 0.0}};
    CHECK_THROWS_AS(detect_peaks(one), InsufficientDataError);
}

TEST_CASE("streaming tracker and batch detector agree on a pulse train") {
    const auto ppg = pulse_train(30.0, 0.8);
    const auto batch = detect_peaks(ppg);
    PeakTracker tracker;
    std::vector<double> streamed;
    for (const auto& s : ppg)
        if (auto p = tracker.push(s.timestamp, s.amplitude)) streamed.push_back(*p);
    CHECK(batch == streamed);
    CHECK(batch.size() == 38);  // pulses start at 0, 0.8, ..., 29.6
}

TEST_CASE("a clean 0.8 s train reads 75 bpm end to end") {
    const auto peaks = detect_peaks(pulse_train(30.0, 0.8));
    const auto rate = bpm(peaks);
    REQUIRE(rate.has_value());
    CHECK(*rate == doctest::Approx(75.0).epsilon(1e-9));
}

TEST_CASE("bpm is sixty over the mean inter-peak interval") {
    std::vector<double> even;
    for (int i = 0; i <= 10; ++i) even.push_back(static_cast<double>(i));
    CHECK(*bpm(even) == 60.0);

    // Irregular spacing: the mean interval is what counts.
    const std::vector<double> uneven = {0.0, 0.5, 2.0};
    CHECK(*bpm(uneven) == 60.0);
}

TEST_CASE("bpm spot value at 0.833333 s spacing") {
    std::vector<double> peaks;
    for (int k = 0; k < 18; ++k) peaks.push_back(k * 0.833333);
    CHECK(*bpm(peaks) == doctest::Approx(72.00002880001152).epsilon(1e-9));
}

TEST_CASE("bpm honours the window anchor") {
    std::vector<double> peaks;
    for (int i = 0; i <= 20; ++i) peaks.push_back(static_cast<double>(i));
    CHECK(*bpm(peaks, 15.0, 30.0) == 60.0);     // window (15, 30] still holds 5 peaks
    CHECK(bpm(peaks, 15.0, 50.0) == std::nullopt);  // window past the data
    // Window start is exclusive: (5, 10] sees one peak only.
    const std::vector<double> two = {5.0, 10.0};
    CHECK(bpm(two, 5.0, 10.0) == std::nullopt);
    CHECK(bpm(two, 5.5, 10.0) != std::nullopt);
}

TEST_CASE("bpm is empty without two peaks in the window") {
    CHECK(bpm({}) == std::nullopt);
    const std::vector<double> one = {4.0};
    CHECK(bpm(one) == std::nullopt);
}

TEST_CASE("vitality threshold table") {
    CHECK(vitality(std::nullopt, 0.0, 0) == Vitality::NoPulse);
    CHECK(vitality(std::nullopt, 0.0009, 0) == Vitality::NoPulse);
    CHECK(vitality(std::nullopt, 0.001, 0) == Vitality::Unknown);  // floor is exclusive
    CHECK(vitality(std::nullopt, 0.5, 0) == Vitality::Unknown);
    CHECK(vitality(std::nullopt, 0.0, 3) == Vitality::Unknown);  // peaks exist, rate unknown
    CHECK(vitality(45.0, 0.5, 10) == Vitality::Bradycardia);
    CHECK(vitality(49.999, 0.5, 10) == Vitality::Bradycardia);
    CHECK(vitality(50.0, 0.5, 10) == Vitality::Normal);
    CHECK(vitality(70.0, 0.0, 5) == Vitality::Normal);  // low variance alone is not a flatline
    CHECK(vitality(120.0, 0.5, 10) == Vitality::Normal);
    CHECK(vitality(120.001, 0.5, 10) == Vitality::Tachycardia);
    CHECK(vitality(150.0, 0.5, 10) == Vitality::Tachycardia);
    CHECK_THROWS_AS(vitality(70.0, -0.1, 5), DomainError);
}

TEST_CASE("vitality labels") {
    CHECK(std::strcmp(to_string(Vitality::NoPulse), "NoPulse") == 0);
    CHECK(std::strcmp(to_string(Vitality::Bradycardia), "Bradycardia") == 0);
    CHECK(std::strcmp(to_string(Vitality::Unknown), "Unknown") == 0);
}
