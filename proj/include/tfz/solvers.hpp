#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "tfz/problems.hpp"
#include "tfz/resolution.hpp"
#include "tfz/rng.hpp"

namespace tfz {

// result is empty for bottom.
struct RandomizedOutcome {
    std::optional<Solution> result;
    std::uint64_t trials_used = 0;
    std::uint64_t queries_used = 0;
    std::uint64_t seed = 0;
    bool promise_violation = false;
    std::string diagnostics;
};

RandomizedOutcome solve_btreeleaf_random(const BTreeLeafInstance& I, Rng& rng);
RandomizedOutcome solve_nephew_random(const NephewInstance& I, Rng& rng);
RandomizedOutcome solve_lossy_random(const LossyInstance& I, Rng& rng);
// Solutions are 1-based clause indices tagged "search-cnf"/"s1".
RandomizedOutcome solve_searchF_random(const SearchCnf& S, Rng& rng);
RandomizedOutcome solve_ec_random(const EmptyChildInstance& I, Rng& rng);

// Per-trial success each solver guarantees on its promise class.
double declared_success(const Instance& inst);
constexpr double kBTreeLeafSuccess = 5.0 / 6.0;
constexpr double kNephewSuccess = 5.0 / 12.0;

using TrialFn = std::function<RandomizedOutcome(Rng&)>;
std::uint64_t boost_trials(double p, double target_failure);
// Trial k runs on rng.split(k); the first success by trial index wins.
RandomizedOutcome boost(const TrialFn& solver, double p, double target_failure, Rng& rng);

// Dispatches on the instance type (Lossy, Empty-Child, Nephew, BTreeLeaf).
RandomizedOutcome solve_random(const Instance& inst, Rng& rng);
bool has_random_solver(const Instance& inst);

}  // namespace tfz
