#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tfz/problems.hpp"
#include "tfz/reductions.hpp"

namespace tfz {

std::vector<FiniteFunction> oracles_of(const Instance& inst);
// Largest ledger total over single evaluations of every target oracle at every point.
std::uint64_t max_eval_queries(const Instance& target, Index point_cap = Index{1} << 16);

// Documented constants for the query-budget checks.
constexpr double kDloBudgetConstant = 2.0;      // evaluations <= c * ell, ell = 4 ceil(log N)
constexpr double kStretchBudgetConstant = 2.0;  // evaluations <= c * ceil(log(M/N) / eps)
std::uint64_t ec_prime_budget(Index V);         // 3 (ceil(log V) + 1)
double dlo_budget(Index N);
double stretch_budget(Index N, Index M0, Index target_M);

struct BenchRow {
    std::string suite, problem, method;
    Index size = 0;
    std::uint64_t instances = 0, trials = 0, successes = 0;
    double success_rate = 0, ci95_lo = 0, ci95_hi = 0;
    double mean_queries = 0;
    std::uint64_t max_queries = 0;
    double bound = 0;  // suite-specific bound, 0 if none
    bool within_bound = true;
};

struct BenchOptions {
    std::string suite;
    std::uint64_t trials = 1000;
    std::uint64_t instances = 10;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

const std::vector<std::string>& bench_suites();
std::vector<BenchRow> run_bench(const BenchOptions& opt);
std::string bench_csv(const std::vector<BenchRow>& rows);
std::string bench_json(const std::vector<BenchRow>& rows);

// Wilson 95% interval.
std::pair<double, double> wilson95(std::uint64_t successes, std::uint64_t trials);

}  // namespace tfz
