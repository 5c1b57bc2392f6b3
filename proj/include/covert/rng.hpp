#pragma once

#include <cstdint>

namespace covert {

// splitmix64 step (Steele, Lea, Vigna); used as both a mixer and a generator.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t mix64(uint64_t a, uint64_t b) {
    uint64_t s = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    return splitmix64(s);
}

// Counter-based generator: the state is derived from (seed, stream, counter)
// alone, so draws for element i never depend on draws for element j. This is
// what makes stream generation, key generation, and per-trial seeding
// schedule-independent.
class CounterRng {
public:
    CounterRng(uint64_t seed, uint64_t stream, uint64_t counter)
        : state_(mix64(mix64(seed, stream), counter)) {}

    uint64_t next_u64() { return splitmix64(state_); }

    // Uniform double in [0, 1).
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool next_bernoulli(double p) { return next_unit() < p; }

    bool next_bit() { return (next_u64() >> 63) != 0; }

private:
    uint64_t state_;
};

// Stream tags keeping independent random draws on disjoint counter domains.
namespace rng_stream {
inline constexpr uint64_t kPacketSize = 0;
inline constexpr uint64_t kFlagBit = 1;
inline constexpr uint64_t kPayload = 2;
inline constexpr uint64_t kKeySelection = 3;
inline constexpr uint64_t kPadding = 4;
inline constexpr uint64_t kTrial = 5;
}  // namespace rng_stream

}  // namespace covert
