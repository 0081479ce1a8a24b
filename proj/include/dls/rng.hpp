#pragma once

#include <cmath>
#include <cstdint>

namespace dls {

// Deterministic 64-bit generator: splitmix64 (Steele, Lea & Flood,
// "Fast splittable pseudorandom number generators", OOPSLA 2014; public
// domain reference code by Vigna). state advances by the golden-gamma
// constant and the output runs through a two-round mixer, so consecutive
// seeds (base_seed + trial) give decorrelated streams.
//
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
//
// Doubles are drawn as (next() >> 11) * 2^-53, uniform on [0, 1).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform on [0, 1)
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // uniform on {0, ..., n-1}; n > 0
    std::size_t next_index(std::size_t n) {
        const auto i = static_cast<std::size_t>(next_double() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

    // standard normal via Box-Muller; consumes two uniforms per pair
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace dls
