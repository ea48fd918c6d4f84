#pragma once

#include <cstdint>
#include <string_view>

namespace themeforge {

// All randomness in the toolkit flows through this generator so that results
// are reproducible bit-for-bit from a single 64-bit seed, independent of
// platform or standard-library version (std::uniform_*_distribution is not
// specified and varies between implementations).
//
// Core generator: SplitMix64 (Steele, Lea & Flood 2014; public-domain
// reference by Sebastiano Vigna). State update and output:
//
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
//
// next_double() takes the top 53 bits: (next_u64() >> 11) * 2^-53, uniform
// in [0, 1). next_index(n) maps next_u64() to [0, n) with the 128-bit
// multiply-shift of Lemire (2019): (u128(x) * n) >> 64.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    int next_index(int n) {
        return static_cast<int>((static_cast<unsigned __int128>(next_u64()) *
                                 static_cast<unsigned __int128>(n)) >> 64);
    }

private:
    uint64_t state_;
};

// Derives an independent stream seed from a master seed and a stage tag.
// Defined as splitmix64_output(seed ^ fnv1a64(tag)); every pipeline stage
// gets its own stream from the one top-level seed.
uint64_t derive_stream(uint64_t seed, std::string_view tag);

} // namespace themeforge
