#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tfz {

// All public indices are 1-based.
using Index = std::int64_t;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised for malformed input (bad arguments, out-of-range tables, parse failures).
class UsageError : public Error {
public:
    using Error::Error;
};

// Oracle names are interned so ledgers can count with a flat vector.
int intern_oracle_name(const std::string& name);
const std::string& oracle_name(int id);

class QueryLedger {
public:
    void record(int id, std::uint64_t k = 1);
    std::uint64_t total() const { return total_; }
    std::uint64_t count(const std::string& name) const;
    std::vector<std::pair<std::string, std::uint64_t>> counts() const;
    void merge(const QueryLedger& other);
    void reset();

private:
    std::vector<std::uint64_t> per_id_;
    std::uint64_t total_ = 0;
};

class FiniteFunction {
public:
    using Rule = std::function<Index(Index, QueryLedger&)>;

    FiniteFunction();

    // Explicit table: every evaluation is one recorded query.
    static FiniteFunction table(std::string name, std::vector<Index> values, Index codomain);
    // Deferred rule: records nothing itself, only the oracles it reads.
    static FiniteFunction rule(std::string name, Index domain, Index codomain, Rule r);

    Index domain_size() const { return body_->domain; }
    Index codomain_size() const { return body_->codomain; }
    const std::string& name() const { return oracle_name(body_->name_id); }
    bool is_table() const { return !body_->rule; }
    const std::vector<Index>& table_values() const { return body_->values; }

    Index operator()(Index x, QueryLedger& ledger) const;

    // Evaluate everywhere; the result is an explicit table with the same name.
    FiniteFunction materialize(QueryLedger& ledger) const;
    FiniteFunction renamed(const std::string& name) const;
    const void* identity() const { return body_.get(); }

private:
    struct Body {
        int name_id = 0;
        Index domain = 0;
        Index codomain = 1;
        std::vector<Index> values;
        Rule rule;
    };
    explicit FiniteFunction(std::shared_ptr<const Body> b) : body_(std::move(b)) {}
    std::shared_ptr<const Body> body_;
};

FiniteFunction make_table_fn(const std::vector<Index>& table, Index domain_size, Index codomain_size,
                             const std::string& name = "table");
Index eval(const FiniteFunction& fn, Index x, QueryLedger& ledger);

// Row-major pair encoding (x, y) -> (x-1)*d + y.
inline Index pair_index(Index x, Index y, Index d) { return (x - 1) * d + y; }
inline std::pair<Index, Index> pair_unindex(Index flat, Index d) {
    return {(flat - 1) / d + 1, (flat - 1) % d + 1};
}

FiniteFunction lift_product(const FiniteFunction& fn, Index d);
FiniteFunction disjoint_union(const FiniteFunction& a, const FiniteFunction& b);

enum class LevelScheme { tree_band, tree_double_band };

// Node layout of the layered trees.  tree_band: n complete levels then M band levels of
// width N = 2^n.  tree_double_band: 2n complete levels then 2N band levels of width N.
struct LevelLayout {
    LevelScheme scheme = LevelScheme::tree_band;
    int n = 1;
    Index N = 2;
    Index M = 1;

    int levels() const;
    Index width(int i) const;
    Index total() const;
};

LevelLayout tree_band_layout(int n, Index M);
LevelLayout tree_double_band_layout(int n);

Index level_index(const LevelLayout& s, int i, Index j);
std::pair<int, Index> level_unindex(const LevelLayout& s, Index flat);

// Memoizing wrapper for solver use; owns its cache, so one per evaluation context.
class EvalCache {
public:
    Index operator()(const FiniteFunction& fn, Index x, QueryLedger& ledger);
    void clear() { map_.clear(); }

private:
    struct KeyHash {
        std::size_t operator()(const std::pair<const void*, Index>& k) const {
            return std::hash<const void*>()(k.first) * 31u ^ std::hash<Index>()(k.second);
        }
    };
    std::unordered_map<std::pair<const void*, Index>, Index, KeyHash> map_;
};

int ceil_log2(Index x);

}  // namespace tfz
