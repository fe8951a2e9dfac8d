#pragma once

#include <cstdint>

namespace rmlab {

// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

// Counter-based stream: output j of stream (seed, stream, lane) is
// mix64(key + j * golden) with a key derived by avalanche mixing.  Streams
// are splittable by construction: any (seed, stream, lane) triple can be
// opened independently on any worker with identical results.
class CounterStream {
public:
    static constexpr const char* kGeneratorId = "sm64ctr-v1";

    CounterStream(std::uint64_t master_seed, std::uint64_t stream, std::uint64_t lane = 0)
        : key_(mix64(mix64(mix64(master_seed) ^ (stream + kGolden)) ^ (lane + kGolden))) {}

    std::uint64_t next_u64() { return mix64(key_ + (++counter_) * kGolden); }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // One draw is consumed regardless of p, so streams stay aligned across
    // different channel parameters.
    bool bernoulli(double p) {
        const std::uint64_t u = next_u64();
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        const auto threshold = std::uint64_t((long double)p * 18446744073709551616.0L);
        return u < threshold;
    }

    std::uint64_t below(std::uint64_t bound) { return next_u64() % bound; }

private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace rmlab
