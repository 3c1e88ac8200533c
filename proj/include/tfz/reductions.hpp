#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tfz/oracle.hpp"
#include "tfz/problems.hpp"

namespace tfz {

// Raised when a back-map meets a target solution none of its candidates explains.
class BackMapError : public Error {
public:
    using Error::Error;
};

struct Reduction {
    using BackFn = std::function<Solution(const Solution&, QueryLedger&)>;

    std::string rule;
    Instance source;
    Instance target;
    BackFn back;
    std::uint64_t eval_budget = 0;  // source queries per target-oracle evaluation
    std::uint64_t back_budget = 0;  // source queries per back call
    std::uint64_t construction_queries = 0;

    Solution map_back(const Solution& target_solution, QueryLedger& L) const;
    Solution map_back(const Solution& target_solution) const;
};

// Returns the first candidate accepted by the source verifier, else throws BackMapError.
Solution first_valid(const Instance& source, const std::vector<Solution>& candidates, QueryLedger& L,
                     const std::string& rule);

Reduction identity_reduction(const Instance& inst);
// r2 must have been built on r1.target.
Reduction chain(const Reduction& r1, const Reduction& r2);
bool same_instance(const Instance& a, const Instance& b);

// Lossy stretch: blockwise self-composition until the big side reaches target_M, then truncation.
struct StretchPlan {
    Index N = 1, M0 = 2, target_M = 2;
    std::vector<Index> sizes;  // s_0 = N, s_1, ..., s_k
    int stages() const { return static_cast<int>(sizes.size()) - 1; }
};
StretchPlan plan_stretch(Index N, Index M0, Index target_M);
Reduction lossy_stretch(const LossyInstance& src, Index target_M);
// Lossy_{N->2N} to Lossy_{N2->2N2} with N2 the next power of two.
Reduction lossy_pad_pow2(const LossyInstance& src);

Reduction ec_prime_to_lossy(const EmptyChildInstance& src);
Reduction lossy_to_ec(const LossyInstance& src);
Reduction injlossy_to_bec(const LossyInstance& src);
Reduction ecwh_to_sinkofdag(const EmptyChildInstance& src);
Reduction lossy_and_sml_to_ecwh(const LossyLineInstance& src);
Reduction injlossy_and_eoml_to_becwh(const LossyLineInstance& src);

struct Children {
    Index a = 0, b = 0;
    bool leaf = false;  // both children bottom
};
Children find_children(const NephewInstance& src, Index v, QueryLedger& L);
// The vertices find_children inspects: v, g(v), f(g(v)), g(f(g(v))).
std::vector<Index> find_children_probes(const NephewInstance& src, Index v, QueryLedger& L);

Reduction nephew_to_btreeleaf(const NephewInstance& src, int coin, Index start = 1);
Reduction btreeleaf_to_weakpigeon(const BTreeLeafInstance& src);
Reduction nephew_to_weakpigeon(const NephewInstance& src, Index start = 1);
Reduction ec_to_nephew(const EmptyChildInstance& src);
Reduction ec_to_nephew_inv(const EmptyChildInstance& src);
Reduction nephew_inv_to_ec_prime(const NephewInstance& src);
Reduction dlo_to_lossy(const DloInstance& src);

// Word encoding used by dlo_to_lossy: a word of length k with bits b (L = 0, first letter most
// significant) has index 2^k + b.
Index dlo_word_count(Index N);
int dlo_depth(Index N);

struct RuleOptions {
    Index target_M = 0;
    int coin = 0;
    Index start = 1;
};

const std::vector<std::string>& rule_names();
Reduction apply_rule(const std::string& rule, const Instance& src, const RuleOptions& opt = {});

}  // namespace tfz
