#pragma once

#include <cstdint>
#include <string_view>

namespace hnnwalk {

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Counter-based generator: the state is a plain counter advanced by the
// golden-ratio increment and each output is mix64(counter). Streams with
// different keys never share outputs in practice, which makes per-replica
// substreams reproducible independently of worker count or draw order.
class Rng {
public:
    explicit Rng(std::uint64_t key) : counter_(key) {}

    std::uint64_t next_u64() {
        counter_ += 0x9E3779B97F4A7C15ull;
        return mix64(counter_);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t counter_;
};

// Key for replica/trial substreams of a master seed.
inline std::uint64_t substream(std::uint64_t master, std::uint64_t index) {
    return mix64(master ^ mix64(index * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull));
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace hnnwalk
