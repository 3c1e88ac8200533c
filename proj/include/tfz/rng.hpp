#pragma once

#include <cstdint>
#include <limits>
#include <random>

#include "tfz/oracle.hpp"

namespace tfz {

// Counter-based generator: output k is splitmix64(key + k*golden).  Splitting derives an
// independent key, so parallel trials can use rng.split(trial).
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0) : key_(mix(seed ^ 0x6a09e667f3bcc909ULL)) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return mix(key_ + (counter_++) * 0x9e3779b97f4a7c15ULL); }

    Rng split(std::uint64_t stream) const {
        Rng r;
        r.key_ = mix(key_ ^ mix(stream + 0xbb67ae8584caa73bULL));
        return r;
    }

    // Uniform in [lo, hi].
    Index uniform(Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(*this); }
    bool coin() { return ((*this)() >> 63) != 0; }
    double real() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    std::uint64_t counter() const { return counter_; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

}  // namespace tfz
