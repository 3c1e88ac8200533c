#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tfz/problems.hpp"
#include "tfz/reductions.hpp"

namespace tfz {

struct SoundnessReport {
    std::string rule;
    Index instances = 0;
    Index target_solutions = 0;
    Index failures = 0;
    std::uint64_t max_back_queries = 0;
    std::vector<std::string> notes;  // first few failures

    void absorb(const SoundnessReport& other);
};

// Back-maps every target solution found by brute force and verifies it on the source.
SoundnessReport check_soundness(const Reduction& r, Index cap = kDefaultBruteCap);

// The k-th source instance used for a rule in the soundness sweep, with the rule options.
struct SweepCase {
    GenSpec spec;
    RuleOptions options;
};
SweepCase sweep_case(const std::string& rule, std::uint64_t k, std::uint64_t seed);

// Target brute-force cap per rule (AMGM targets are larger than the default).
Index sweep_cap(const std::string& rule);

SoundnessReport soundness_sweep(const std::string& rule, Index count, std::uint64_t seed);

}  // namespace tfz
