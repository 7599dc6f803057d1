#pragma once

#include <cstdint>

namespace vigil {

// splitmix64: tiny deterministic generator used for synthesis noise and
// per-segment jitter. Output sequence is fixed by the standard constants,
// so streams are bit-identical across platforms and compilers.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n)
    std::uint64_t next_below(std::uint64_t n) { return next() % n; }

    // uniform double in [0, 1)
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform double in [lo, hi)
    double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    // uniform integer in [-k, +k]
    int next_jitter(int k) { return static_cast<int>(next_below(2 * static_cast<std::uint64_t>(k) + 1)) - k; }

private:
    std::uint64_t state_;
};

// Mixes a run seed with stream/segment tags into an independent sub-seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
    SplitMix64 m(seed ^ (tag * 0x9e3779b97f4a7c15ULL) ^ (index + 0x2545f4914f6cdd1dULL));
    m.next();
    return m.next();
}

}  // namespace vigil
