#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tfz/nw.hpp"

namespace tfz {

struct SuiteResult {
    std::string module;
    std::string invariant;
    bool pass = false;
    std::string detail;
};

struct SelftestOptions {
    bool quick = false;
    std::uint64_t seed = 1;
    // Negates the verifier for one "problem.variant" inside the zero-error suite, which must then fail.
    std::string mutate;
};

const std::vector<std::string>& verifier_mutations();

std::vector<SuiteResult> run_selftest(const SelftestOptions& opt);

// Dichotomy suite over every f and `samples` random subsets S.
SuiteResult nw_dichotomy_suite(const NwParams& p, int samples, std::uint64_t seed);
std::vector<NwParams> default_nw_param_sets();

}  // namespace tfz
