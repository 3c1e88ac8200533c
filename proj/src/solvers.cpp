#include "tfz/solvers.hpp"

#include <cmath>

#include "tfz/reductions.hpp"

namespace tfz {

namespace {

struct Trial {
    RandomizedOutcome out;
    Rng rng;
    QueryLedger L;

    explicit Trial(Rng& parent) : rng(0) {
        out.seed = parent();
        rng = Rng(out.seed);
        out.trials_used = 1;
    }
    RandomizedOutcome finish() {
        out.queries_used = L.total();
        return out;
    }
};

}  // namespace

RandomizedOutcome solve_btreeleaf_random(const BTreeLeafInstance& I, Rng& parent) {
    Trial t(parent);
    Index words = Index{1} << btreeleaf_word_length(I.V);
    Index w = t.rng.uniform(1, words);
    WalkResult walk = btreeleaf_walk(I, w, t.L);
    if (walk.promise_violation) {
        t.out.promise_violation = true;
        t.out.diagnostics = "promise violated at vertex " + std::to_string(walk.vertex);
    }
    if (walk.leaf) t.out.result = Solution{"btree-leaf", "s1", {w}};
    return t.finish();
}

RandomizedOutcome solve_nephew_random(const NephewInstance& I, Rng& parent) {
    Trial t(parent);
    Index u = t.rng.uniform(1, I.V);
    int coin = t.rng.coin() ? 1 : 0;
    Reduction r = nephew_to_btreeleaf(I, coin, u);
    const auto& T = std::get<BTreeLeafInstance>(r.target);
    Index words = Index{1} << btreeleaf_word_length(T.V);
    Index w = t.rng.uniform(1, words);
    WalkResult walk = btreeleaf_walk(T, w, t.L);
    if (walk.leaf) {
        try {
            t.out.result = r.map_back(Solution{"btree-leaf", "s1", {w}}, t.L);
        } catch (const BackMapError& e) {
            t.out.diagnostics = e.what();
        }
    }
    t.out.queries_used = t.L.total() + r.construction_queries;
    return t.out;
}

RandomizedOutcome solve_lossy_random(const LossyInstance& I, Rng& parent) {
    Trial t(parent);
    Index x = t.rng.uniform(1, I.M);
    if (I.f(I.g(x, t.L), t.L) != x) t.out.result = Solution{"lossy", "s1", {x}};
    return t.finish();
}

RandomizedOutcome solve_searchF_random(const SearchCnf& S, Rng& parent) {
    Trial t(parent);
    if (S.F.clauses.empty()) {
        t.out.diagnostics = "CNF has no clauses";
        return t.finish();
    }
    int i = static_cast<int>(t.rng.uniform(0, static_cast<Index>(S.F.clauses.size()) - 1));
    if (search_cnf_verify(S, i, t.L)) t.out.result = Solution{"search-cnf", "s1", {i + 1}};
    return t.finish();
}

RandomizedOutcome solve_ec_random(const EmptyChildInstance& I, Rng& parent) {
    Trial t(parent);
    auto variants = legal_variants(I);
    int len = btreeleaf_word_length(I.V);
    Index u = 1;
    for (int step = 0; step <= len; ++step) {
        for (const auto& v : variants) {
            Solution s{"empty-child", v, {u}};
            if (verify(I, s, t.L)) {
                t.out.result = s;
                return t.finish();
            }
        }
        if (step < len) u = t.rng.coin() ? I.R(u, t.L) : I.L(u, t.L);
    }
    return t.finish();
}

double declared_success(const Instance& inst) {
    if (auto* l = std::get_if<LossyInstance>(&inst))
        return 1.0 - static_cast<double>(l->N) / static_cast<double>(l->M);
    if (std::holds_alternative<NephewInstance>(inst)) return kNephewSuccess;
    return kBTreeLeafSuccess;
}

std::uint64_t boost_trials(double p, double target_failure) {
    if (!(p > 0) || p > 1) throw UsageError("boost needs a per-trial success probability in (0, 1]");
    if (!(target_failure > 0) || target_failure >= 1) throw UsageError("boost needs a target failure in (0, 1)");
    if (p == 1) return 1;
    double k = std::ceil(std::log(1 / target_failure) / std::log(1 / (1 - p)) - 1e-9);
    return static_cast<std::uint64_t>(std::max(1.0, k));
}

RandomizedOutcome boost(const TrialFn& solver, double p, double target_failure, Rng& rng) {
    std::uint64_t cap = boost_trials(p, target_failure);
    RandomizedOutcome agg;
    for (std::uint64_t k = 0; k < cap; ++k) {
        Rng sub = rng.split(k);
        RandomizedOutcome o = solver(sub);
        if (k == 0) agg.seed = o.seed;
        agg.trials_used += o.trials_used;
        agg.queries_used += o.queries_used;
        agg.promise_violation |= o.promise_violation;
        if (o.result) {
            agg.result = o.result;
            return agg;
        }
    }
    agg.diagnostics = "trial cap " + std::to_string(cap) + " exhausted";
    return agg;
}

bool has_random_solver(const Instance& inst) {
    return std::holds_alternative<LossyInstance>(inst) || std::holds_alternative<EmptyChildInstance>(inst) ||
           std::holds_alternative<NephewInstance>(inst) || std::holds_alternative<BTreeLeafInstance>(inst);
}

RandomizedOutcome solve_random(const Instance& inst, Rng& rng) {
    if (auto* p = std::get_if<LossyInstance>(&inst)) return solve_lossy_random(*p, rng);
    if (auto* p = std::get_if<EmptyChildInstance>(&inst)) return solve_ec_random(*p, rng);
    if (auto* p = std::get_if<NephewInstance>(&inst)) return solve_nephew_random(*p, rng);
    if (auto* p = std::get_if<BTreeLeafInstance>(&inst)) return solve_btreeleaf_random(*p, rng);
    throw UsageError("no randomized solver for " + problem_name(inst));
}

}  // namespace tfz
