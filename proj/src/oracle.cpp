#include "tfz/oracle.hpp"

#include <deque>
#include <mutex>
#include <unordered_map>

namespace tfz {

namespace {

struct NameRegistry {
    std::mutex mu;
    std::deque<std::string> names;
    std::unordered_map<std::string, int> ids;
};

NameRegistry& registry() {
    static NameRegistry r;
    return r;
}

}  // namespace

int intern_oracle_name(const std::string& name) {
    auto& r = registry();
    std::lock_guard<std::mutex> lock(r.mu);
    auto it = r.ids.find(name);
    if (it != r.ids.end()) return it->second;
    int id = static_cast<int>(r.names.size());
    r.names.push_back(name);
    r.ids.emplace(name, id);
    return id;
}

const std::string& oracle_name(int id) {
    auto& r = registry();
    std::lock_guard<std::mutex> lock(r.mu);
    return r.names.at(static_cast<std::size_t>(id));
}

void QueryLedger::record(int id, std::uint64_t k) {
    auto i = static_cast<std::size_t>(id);
    if (per_id_.size() <= i) per_id_.resize(i + 1, 0);
    per_id_[i] += k;
    total_ += k;
}

std::uint64_t QueryLedger::count(const std::string& name) const {
    int id = intern_oracle_name(name);
    auto i = static_cast<std::size_t>(id);
    return i < per_id_.size() ? per_id_[i] : 0;
}

std::vector<std::pair<std::string, std::uint64_t>> QueryLedger::counts() const {
    std::vector<std::pair<std::string, std::uint64_t>> out;
    for (std::size_t i = 0; i < per_id_.size(); ++i)
        if (per_id_[i] > 0) out.emplace_back(oracle_name(static_cast<int>(i)), per_id_[i]);
    return out;
}

void QueryLedger::merge(const QueryLedger& other) {
    for (std::size_t i = 0; i < other.per_id_.size(); ++i)
        if (other.per_id_[i] > 0) record(static_cast<int>(i), other.per_id_[i]);
}

void QueryLedger::reset() {
    per_id_.clear();
    total_ = 0;
}

FiniteFunction::FiniteFunction() : body_(std::make_shared<Body>()) {}

FiniteFunction FiniteFunction::table(std::string name, std::vector<Index> values, Index codomain) {
    if (codomain < 0 || (codomain == 0 && !values.empty()))
        throw UsageError("codomain size must be positive for " + name);
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (values[k] < 1 || values[k] > codomain)
            throw UsageError("table entry " + std::to_string(k + 1) + " of " + name + " out of range");
    }
    auto b = std::make_shared<Body>();
    b->name_id = intern_oracle_name(name);
    b->domain = static_cast<Index>(values.size());
    b->codomain = codomain;
    b->values = std::move(values);
    return FiniteFunction(std::move(b));
}

FiniteFunction FiniteFunction::rule(std::string name, Index domain, Index codomain, Rule r) {
    if (domain < 0 || codomain < 1) throw UsageError("bad dimensions for " + name);
    auto b = std::make_shared<Body>();
    b->name_id = intern_oracle_name(name);
    b->domain = domain;
    b->codomain = codomain;
    b->rule = std::move(r);
    return FiniteFunction(std::move(b));
}

Index FiniteFunction::operator()(Index x, QueryLedger& ledger) const {
    const Body& b = *body_;
    if (x < 1 || x > b.domain)
        throw UsageError("query " + std::to_string(x) + " outside domain of " + name());
    if (!b.rule) {
        ledger.record(b.name_id);
        return b.values[static_cast<std::size_t>(x - 1)];
    }
    Index y = b.rule(x, ledger);
    if (y < 1 || y > b.codomain)
        throw Error("deferred rule " + name() + " returned " + std::to_string(y) + " outside its codomain");
    return y;
}

FiniteFunction FiniteFunction::materialize(QueryLedger& ledger) const {
    if (is_table()) return *this;
    std::vector<Index> values(static_cast<std::size_t>(domain_size()));
    for (Index x = 1; x <= domain_size(); ++x) values[static_cast<std::size_t>(x - 1)] = (*this)(x, ledger);
    return table(name(), std::move(values), codomain_size());
}

FiniteFunction FiniteFunction::renamed(const std::string& name) const {
    auto b = std::make_shared<Body>(*body_);
    b->name_id = intern_oracle_name(name);
    return FiniteFunction(std::move(b));
}

FiniteFunction make_table_fn(const std::vector<Index>& table, Index domain_size, Index codomain_size,
                             const std::string& name) {
    if (static_cast<Index>(table.size()) != domain_size)
        throw UsageError("table length " + std::to_string(table.size()) + " differs from domain size " +
                         std::to_string(domain_size));
    return FiniteFunction::table(name, table, codomain_size);
}

Index eval(const FiniteFunction& fn, Index x, QueryLedger& ledger) { return fn(x, ledger); }

FiniteFunction lift_product(const FiniteFunction& fn, Index d) {
    if (d < 1) throw UsageError("lift_product needs d >= 1");
    Index cod = fn.codomain_size();
    return FiniteFunction::rule(fn.name() + "x" + std::to_string(d), fn.domain_size() * d, cod * d,
                                [fn, d](Index flat, QueryLedger& L) {
                                    auto [x, y] = pair_unindex(flat, d);
                                    return pair_index(fn(x, L), y, d);
                                });
}

FiniteFunction disjoint_union(const FiniteFunction& a, const FiniteFunction& b) {
    Index da = a.domain_size(), ca = a.codomain_size();
    if (b.domain_size() == 0) return a;
    if (da == 0) {
        return FiniteFunction::rule(a.name() + "+" + b.name(), b.domain_size(), ca + b.codomain_size(),
                                    [b, ca](Index x, QueryLedger& L) { return b(x, L) + ca; });
    }
    return FiniteFunction::rule(a.name() + "+" + b.name(), da + b.domain_size(), ca + b.codomain_size(),
                                [a, b, da, ca](Index x, QueryLedger& L) {
                                    return x <= da ? a(x, L) : b(x - da, L) + ca;
                                });
}

int LevelLayout::levels() const {
    return scheme == LevelScheme::tree_band ? n + static_cast<int>(M) : 2 * n + static_cast<int>(2 * N);
}

Index LevelLayout::width(int i) const {
    int complete = scheme == LevelScheme::tree_band ? n : 2 * n;
    if (i <= complete) return Index{1} << (i - 1);
    return N;
}

Index LevelLayout::total() const {
    if (scheme == LevelScheme::tree_band) return N - 1 + M * N;
    return N * N - 1 + 2 * N * N;
}

LevelLayout tree_band_layout(int n, Index M) {
    if (n < 0 || n > 30 || M < 1) throw UsageError("bad tree_band layout parameters");
    return LevelLayout{LevelScheme::tree_band, n, Index{1} << n, M};
}

LevelLayout tree_double_band_layout(int n) {
    if (n < 1 || n > 15) throw UsageError("bad tree_double_band layout parameters");
    Index N = Index{1} << n;
    return LevelLayout{LevelScheme::tree_double_band, n, N, 2 * N};
}

Index level_index(const LevelLayout& s, int i, Index j) {
    if (i < 1 || i > s.levels() || j < 1 || j > s.width(i))
        throw UsageError("node (" + std::to_string(i) + "," + std::to_string(j) + ") outside the layout");
    if (s.scheme == LevelScheme::tree_band) {
        if (i <= s.n) return j + (Index{1} << (i - 1)) - 1;
        return j + s.N * (i - s.n) - 1;
    }
    if (i <= 2 * s.n) return j + (Index{1} << (i - 1)) - 1;
    return j + s.N * (i - 2 * s.n - 1) + s.N * s.N - 1;
}

std::pair<int, Index> level_unindex(const LevelLayout& s, Index flat) {
    if (flat < 1 || flat > s.total()) throw UsageError("flat index outside the layout");
    int complete = s.scheme == LevelScheme::tree_band ? s.n : 2 * s.n;
    Index tree_nodes = (Index{1} << complete) - 1;
    if (flat <= tree_nodes) {
        int i = 1;
        while ((Index{1} << i) - 1 < flat) ++i;
        return {i, flat - (Index{1} << (i - 1)) + 1};
    }
    Index off = flat - tree_nodes - 1;
    return {complete + 1 + static_cast<int>(off / s.N), off % s.N + 1};
}

Index EvalCache::operator()(const FiniteFunction& fn, Index x, QueryLedger& ledger) {
    auto key = std::make_pair(fn.identity(), x);
    auto it = map_.find(key);
    if (it != map_.end()) return it->second;
    Index y = fn(x, ledger);
    map_.emplace(key, y);
    return y;
}

int ceil_log2(Index x) {
    int k = 0;
    while ((Index{1} << k) < x) ++k;
    return k;
}

}  // namespace tfz
