#pragma once

#include <cstdint>
#include <cmath>
#include <string_view>

namespace uncervals::rng {

// Counter-based generator built on the SplitMix64 finalizer: output k of the
// stream keyed by `key` is mix(key + (k+1)*golden). Draws are addressable by
// counter, so parallel evaluation reproduces the sequential stream exactly.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t at(std::uint64_t key, std::uint64_t counter) {
    return mix(key + (counter + 1) * kGolden);
}

// Derive a child stream key from a parent key and an index (replication id,
// subject id, ...).
inline constexpr std::uint64_t derive(std::uint64_t key, std::uint64_t index) {
    return mix(key ^ mix(index + 0x632BE59BD9B4E019ull));
}

// Named sub-streams ("sim", "split", "boot", "eval") hang off one master seed.
inline std::uint64_t derive(std::uint64_t key, std::string_view name) {
    std::uint64_t h = 0xCBF29CE484222325ull;  // FNV-1a
    for (unsigned char c : name) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return mix(key ^ h);
}

// Uniform on [0, 1).
inline double unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

// Uniform on (0, 1); keeps log/log-log transforms finite.
inline double unit_open(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Uniform index in {0, ..., n-1} via 128-bit multiply-shift.
inline std::uint64_t bounded(std::uint64_t bits, std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(bits) * static_cast<unsigned __int128>(n)) >> 64);
}

// Sequential view over a keyed stream.
class Stream {
  public:
    explicit Stream(std::uint64_t key) : key_(key) {}

    std::uint64_t next_u64() { return at(key_, counter_++); }
    double next_unit() { return unit(next_u64()); }
    double next_unit_open() { return unit_open(next_u64()); }
    double next_uniform(double a, double b) { return a + (b - a) * next_unit(); }
    std::uint64_t next_index(std::uint64_t n) { return bounded(next_u64(), n); }

    // Standard normal via Box-Muller; consumes two draws.
    double next_normal() {
        double u1 = next_unit_open();
        double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    // Standard minimum extreme value type I via inverse transform.
    double next_gumbel_min() { return std::log(-std::log(1.0 - next_unit_open())); }

    std::uint64_t key() const { return key_; }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace uncervals::rng
