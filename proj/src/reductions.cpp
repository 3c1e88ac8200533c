#include "tfz/reductions.hpp"

#include <algorithm>

#include "tfz/amgm.hpp"

namespace tfz {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void push_ids(std::vector<const void*>& out, const FiniteFunction& f) { out.push_back(f.identity()); }

std::vector<const void*> oracle_ids(const Instance& inst) {
    std::vector<const void*> ids;
    std::visit(overloaded{
                   [&](const LossyInstance& I) {
                       push_ids(ids, I.f);
                       push_ids(ids, I.g);
                   },
                   [&](const EmptyChildInstance& I) {
                       push_ids(ids, I.F);
                       push_ids(ids, I.L);
                       push_ids(ids, I.R);
                       if (I.H) push_ids(ids, *I.H);
                   },
                   [&](const NephewInstance& I) {
                       push_ids(ids, I.f);
                       push_ids(ids, I.g);
                       if (I.f_inv) push_ids(ids, *I.f_inv);
                   },
                   [&](const DloInstance& I) {
                       push_ids(ids, I.order);
                       push_ids(ids, I.med);
                   },
                   [&](const AmgmInstance& I) {
                       push_ids(ids, I.C);
                       push_ids(ids, I.F);
                       push_ids(ids, I.G);
                   },
                   [&](const MeteredLineInstance& I) {
                       push_ids(ids, I.S);
                       push_ids(ids, I.P);
                       push_ids(ids, I.V);
                   },
                   [&](const SinkOfDagInstance& I) {
                       push_ids(ids, I.succ);
                       push_ids(ids, I.pot);
                   },
                   [&](const WeakPigeonInstance& I) { push_ids(ids, I.h); },
                   [&](const BTreeLeafInstance& I) {
                       push_ids(ids, I.Lp);
                       push_ids(ids, I.Rp);
                   },
                   [&](const LossyLineInstance& I) {
                       push_ids(ids, I.lossy.f);
                       push_ids(ids, I.lossy.g);
                       push_ids(ids, I.line.S);
                       push_ids(ids, I.line.P);
                       push_ids(ids, I.line.V);
                   },
               },
               inst);
    return ids;
}

}  // namespace

Solution Reduction::map_back(const Solution& target_solution, QueryLedger& L) const {
    if (!back) throw Error("reduction " + rule + " has no back-map");
    return back(target_solution, L);
}

Solution Reduction::map_back(const Solution& target_solution) const {
    QueryLedger L;
    return map_back(target_solution, L);
}

Solution first_valid(const Instance& source, const std::vector<Solution>& candidates, QueryLedger& L,
                     const std::string& rule) {
    auto legal = legal_variants(source);
    for (const auto& c : candidates) {
        if (std::find(legal.begin(), legal.end(), c.variant) == legal.end()) continue;
        if (verify(source, c, L)) return c;
    }
    throw BackMapError(rule + ": no candidate source solution verifies (uncovered case)");
}

bool same_instance(const Instance& a, const Instance& b) {
    return a.index() == b.index() && instance_size(a) == instance_size(b) && oracle_ids(a) == oracle_ids(b);
}

Reduction identity_reduction(const Instance& inst) {
    Reduction r;
    r.rule = "identity";
    r.source = inst;
    r.target = inst;
    r.back = [](const Solution& s, QueryLedger&) { return s; };
    r.eval_budget = 1;
    r.back_budget = 0;
    return r;
}

Reduction chain(const Reduction& r1, const Reduction& r2) {
    if (!same_instance(r1.target, r2.source))
        throw UsageError("chain: the second reduction is not built on the first one's target");
    Reduction r;
    r.rule = r1.rule + "|" + r2.rule;
    r.source = r1.source;
    r.target = r2.target;
    auto b1 = r1.back, b2 = r2.back;
    r.back = [b1, b2](const Solution& s, QueryLedger& L) { return b1(b2(s, L), L); };
    r.eval_budget = std::max<std::uint64_t>(1, r1.eval_budget) * std::max<std::uint64_t>(1, r2.eval_budget);
    r.back_budget = r2.back_budget * std::max<std::uint64_t>(1, r1.eval_budget) + r1.back_budget;
    r.construction_queries = r1.construction_queries + r2.construction_queries;
    return r;
}

const std::vector<std::string>& rule_names() {
    static const std::vector<std::string> names{
        "identity",
        "lossy_stretch",
        "lossy_pad_pow2",
        "ec_prime_to_lossy",
        "lossy_to_ec",
        "injlossy_to_bec",
        "ecwh_to_sinkofdag",
        "lossy_and_sml_to_ecwh",
        "injlossy_and_eoml_to_becwh",
        "nephew_to_btreeleaf",
        "btreeleaf_to_weakpigeon",
        "nephew_to_weakpigeon",
        "ec_to_nephew",
        "ec_to_nephew_inv",
        "nephew_inv_to_ec_prime",
        "dlo_to_lossy",
        "amgm_to_lossy",
    };
    return names;
}

namespace {

template <class T>
const T& expect(const Instance& src, const std::string& rule) {
    if (auto* p = std::get_if<T>(&src)) return *p;
    throw UsageError("rule " + rule + " does not apply to a " + problem_name(src) + " instance");
}

}  // namespace

Reduction apply_rule(const std::string& rule, const Instance& src, const RuleOptions& opt) {
    if (rule == "identity") return identity_reduction(src);
    if (rule == "lossy_stretch") {
        const auto& I = expect<LossyInstance>(src, rule);
        return lossy_stretch(I, opt.target_M ? opt.target_M : 2 * I.M);
    }
    if (rule == "lossy_pad_pow2") return lossy_pad_pow2(expect<LossyInstance>(src, rule));
    if (rule == "ec_prime_to_lossy") return ec_prime_to_lossy(expect<EmptyChildInstance>(src, rule));
    if (rule == "lossy_to_ec") return lossy_to_ec(expect<LossyInstance>(src, rule));
    if (rule == "injlossy_to_bec") return injlossy_to_bec(expect<LossyInstance>(src, rule));
    if (rule == "ecwh_to_sinkofdag") return ecwh_to_sinkofdag(expect<EmptyChildInstance>(src, rule));
    if (rule == "lossy_and_sml_to_ecwh") return lossy_and_sml_to_ecwh(expect<LossyLineInstance>(src, rule));
    if (rule == "injlossy_and_eoml_to_becwh")
        return injlossy_and_eoml_to_becwh(expect<LossyLineInstance>(src, rule));
    if (rule == "nephew_to_btreeleaf")
        return nephew_to_btreeleaf(expect<NephewInstance>(src, rule), opt.coin, opt.start);
    if (rule == "btreeleaf_to_weakpigeon") return btreeleaf_to_weakpigeon(expect<BTreeLeafInstance>(src, rule));
    if (rule == "nephew_to_weakpigeon") return nephew_to_weakpigeon(expect<NephewInstance>(src, rule), opt.start);
    if (rule == "ec_to_nephew") return ec_to_nephew(expect<EmptyChildInstance>(src, rule));
    if (rule == "ec_to_nephew_inv") return ec_to_nephew_inv(expect<EmptyChildInstance>(src, rule));
    if (rule == "nephew_inv_to_ec_prime") return nephew_inv_to_ec_prime(expect<NephewInstance>(src, rule));
    if (rule == "dlo_to_lossy") return dlo_to_lossy(expect<DloInstance>(src, rule));
    if (rule == "amgm_to_lossy") return amgm_to_lossy(expect<AmgmInstance>(src, rule), toy_amgm_params());
    throw UsageError("unknown reduction rule '" + rule + "'");
}

}  // namespace tfz
