#include "themeforge/rng.hpp"

namespace themeforge {

namespace {

uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

uint64_t splitmix64_output(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

} // namespace

uint64_t derive_stream(uint64_t seed, std::string_view tag) {
    return splitmix64_output(seed ^ fnv1a64(tag));
}

} // namespace themeforge
