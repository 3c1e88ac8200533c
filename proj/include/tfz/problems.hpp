#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tfz/oracle.hpp"
#include "tfz/rng.hpp"

namespace tfz {

// Lossy-Code_{N->M}: f:[N]->[M], g:[M]->[N].
struct LossyInstance {
    Index N = 1;
    Index M = 2;
    FiniteFunction f;
    FiniteFunction g;
    bool bijective = false;
};

enum class EcVariant { standard, prime, binary, with_height, binary_with_height, with_height_strict };

bool ec_has_heights(EcVariant v);
bool ec_is_binary(EcVariant v);
std::string to_string(EcVariant v);
EcVariant ec_variant_from_string(const std::string& s);

struct EmptyChildInstance {
    Index V = 1;
    FiniteFunction F, L, R;
    EcVariant variant = EcVariant::standard;
    std::optional<FiniteFunction> H;
};

// f_inv has codomain V+1; the value V+1 encodes bottom.
struct NephewInstance {
    Index V = 1;
    FiniteFunction f, g;
    std::optional<FiniteFunction> f_inv;
};

// order is indexed by unordered pairs {x<y}; value 1 means x precedes y, 2 means y precedes x.
// med is indexed the same way.
struct DloInstance {
    Index N = 2;
    FiniteFunction order;
    FiniteFunction med;
    bool literal_s2 = false;  // the "neither ... nor" reading, for comparison only
};

// c = c_num/c_den; P = [c N^2].  C has codomain 2 (colour + 1).  F maps into [2N]x[2N]
// row-major, G is its claimed inverse.
struct AmgmInstance {
    Index c_num = 2;
    Index c_den = 1;
    Index N = 1;
    FiniteFunction C, F, G;
    Index P() const { return c_num * N * N / c_den; }
};

enum class LineVariant { sink, end };

// V has codomain N+1 and stores meter+1.
struct MeteredLineInstance {
    Index N = 1;
    FiniteFunction S, P, V;
    LineVariant variant = LineVariant::sink;
};

struct SinkOfDagInstance {
    Index N = 1;
    FiniteFunction succ, pot;
};

struct WeakPigeonInstance {
    int n = 1;
    FiniteFunction h;
};

// Lp, Rp have codomain V+1; V+1 encodes bottom.
struct BTreeLeafInstance {
    Index V = 1;
    Index v_star = 1;
    FiniteFunction Lp, Rp;
    bool promise_checked = false;
};

// Source of the layered-tree reductions: solutions of either component count.
struct LossyLineInstance {
    LossyInstance lossy;
    MeteredLineInstance line;
};

using Instance = std::variant<LossyInstance, EmptyChildInstance, NephewInstance, DloInstance, AmgmInstance,
                              MeteredLineInstance, SinkOfDagInstance, WeakPigeonInstance, BTreeLeafInstance,
                              LossyLineInstance>;

std::string problem_name(const Instance& inst);

struct Solution {
    std::string problem;
    std::string variant;
    std::vector<Index> witness;

    auto operator<=>(const Solution&) const = default;
    bool operator==(const Solution&) const = default;
};

std::string to_string(const Solution& s);

// Oracle helpers that hide the encodings above.
Index unordered_pair_index(Index x, Index y, Index N);
bool precedes(const DloInstance& d, Index x, Index y, QueryLedger& L);
Index median(const DloInstance& d, Index x, Index y, QueryLedger& L);
Index meter(const MeteredLineInstance& m, Index x, QueryLedger& L);
Index colour(const AmgmInstance& a, Index x, QueryLedger& L);
inline Index bottom(Index V) { return V + 1; }

std::vector<std::string> legal_variants(const Instance& inst);

// Throws UsageError on a variant tag that is illegal for the instance.  Witnesses of the wrong
// arity or outside the index ranges are simply not solutions.
bool verify(const Instance& inst, const Solution& s, QueryLedger& L);
bool verify(const Instance& inst, const Solution& s);

// Nephew Checksol on a single vertex (any variant that holds).
bool nephew_checksol(const NephewInstance& inst, Index u, QueryLedger& L);
std::optional<Solution> nephew_solution_at(const NephewInstance& inst, Index u, QueryLedger& L);

constexpr Index kDefaultBruteCap = Index{1} << 14;

Index instance_size(const Instance& inst);
std::vector<Solution> brute_solve(const Instance& inst, Index cap = kDefaultBruteCap);

// Level of each vertex in the functional graph of f; entry 0 unused.
std::vector<Index> compute_levels(const FiniteFunction& f);

// Promise of BTreeLeaf: reachable set is a tree, each node has 0 or 2 distinct children.
bool btreeleaf_promise_holds(const BTreeLeafInstance& b);
int btreeleaf_word_length(Index V);
// Walk a 1-based word index (bits read most significant first).  Returns the vertex reached
// (the first leaf met, or the end of the walk) and whether it is a leaf.
struct WalkResult {
    Index vertex = 1;
    bool leaf = false;
    bool promise_violation = false;
    std::vector<Index> visited;
};
WalkResult btreeleaf_walk(const BTreeLeafInstance& b, Index word, QueryLedger& L);

struct GenSpec {
    std::string problem;
    Index size = 4;
    std::string mode = "uniform";  // uniform | planted | structured
    std::uint64_t seed = 0;
    std::string variant;           // problem specific (ec variant, line variant, "bijective", ...)
    Index M = 0;                   // Lossy stretch (0 means 2N)
    Index c_num = 2, c_den = 1;    // AMGM
    std::string med = "median";    // DLO structured: median | lower
};

struct Generated {
    Instance instance;
    std::optional<std::vector<Solution>> planted;
};

Generated gen_instance(const GenSpec& spec);

// Random full binary tree on 2k+1 of the V vertices rooted at root; unreachable vertices
// get arbitrary pointers.  Shared by generators and tests.
BTreeLeafInstance random_btreeleaf(Index V, Rng& rng, Index internal_nodes = -1);

}  // namespace tfz
