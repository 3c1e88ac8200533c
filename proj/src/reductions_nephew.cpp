#include <array>
#include <optional>

#include "tfz/reductions.hpp"

namespace tfz {

namespace {

std::uint64_t checksol_cost(const NephewInstance& src) { return src.f_inv ? 11 : 6; }

std::optional<Solution> first_solution(const NephewInstance& src, const std::vector<Index>& probes, QueryLedger& L) {
    for (Index u : probes)
        if (auto s = nephew_solution_at(src, u, L)) return s;
    return std::nullopt;
}

// Root is a leaf: every word is a solution.
BTreeLeafInstance trivial_btreeleaf() {
    BTreeLeafInstance T;
    T.V = 1;
    T.v_star = 1;
    T.Lp = FiniteFunction::table("Lp", {2}, 2);
    T.Rp = FiniteFunction::table("Rp", {2}, 2);
    return T;
}

Reduction short_circuit(const std::string& rule, const Instance& source, const Instance& target, Solution found) {
    Reduction r;
    r.rule = rule;
    r.source = source;
    r.target = target;
    r.eval_budget = 0;
    r.back_budget = 0;
    r.back = [found](const Solution&, QueryLedger&) { return found; };
    return r;
}

}  // namespace

Children find_children(const NephewInstance& src, Index v, QueryLedger& L) {
    Index a = src.g(v, L);
    Index p = src.f(a, L);
    Index h = src.g(p, L);
    for (Index u : {v, a, p, h})
        if (nephew_checksol(src, u, L)) return {0, 0, true};
    return {a, h, false};
}

std::vector<Index> find_children_probes(const NephewInstance& src, Index v, QueryLedger& L) {
    Index a = src.g(v, L);
    Index p = src.f(a, L);
    return {v, a, p, src.g(p, L)};
}

Reduction nephew_to_btreeleaf(const NephewInstance& src, int coin, Index start) {
    const std::string rule = "nephew_to_btreeleaf";
    if (start < 1 || start > src.V) throw UsageError(rule + ": start vertex out of range");
    QueryLedger build;
    Index v = src.g(start, build), v2 = src.g(src.f(start, build), build);
    if (auto s = first_solution(src, {start, v, v2}, build)) {
        Reduction r = short_circuit(rule, src, trivial_btreeleaf(), *s);
        r.construction_queries = build.total();
        return r;
    }
    Index V = src.V, bot = bottom(V);
    BTreeLeafInstance T;
    T.V = V;
    T.v_star = coin ? v2 : v;
    T.Lp = FiniteFunction::rule("Lp", V, V + 1, [src, bot](Index x, QueryLedger& L) {
        Children c = find_children(src, x, L);
        return c.leaf ? bot : c.a;
    });
    T.Rp = FiniteFunction::rule("Rp", V, V + 1, [src, bot](Index x, QueryLedger& L) {
        Children c = find_children(src, x, L);
        return c.leaf ? bot : c.b;
    });

    Reduction r;
    r.rule = rule;
    r.source = src;
    r.target = T;
    r.eval_budget = 3 + 4 * checksol_cost(src);
    r.construction_queries = build.total();
    int len = btreeleaf_word_length(V);
    r.back_budget = static_cast<std::uint64_t>(2 * (len + 1)) * r.eval_budget + 3 + 4 * checksol_cost(src);
    r.back = [src, T, rule](const Solution& s, QueryLedger& L) -> Solution {
        if (s.witness.size() != 1) throw BackMapError(rule + ": unexpected target solution");
        WalkResult w = btreeleaf_walk(T, s.witness[0], L);
        if (!w.leaf) throw BackMapError(rule + ": word does not reach a leaf");
        if (auto found = first_solution(src, find_children_probes(src, w.vertex, L), L)) return *found;
        throw BackMapError(rule + ": no Nephew solution near the leaf (uncovered case)");
    };
    return r;
}

Reduction btreeleaf_to_weakpigeon(const BTreeLeafInstance& src) {
    const std::string rule = "btreeleaf_to_weakpigeon";
    int n = btreeleaf_word_length(src.V);
    Index words = Index{1} << n;
    WeakPigeonInstance T;
    T.n = n;
    T.h = FiniteFunction::rule("h", words, words / 2, [src](Index p, QueryLedger& L) {
        WalkResult w = btreeleaf_walk(src, p, L);
        return w.leaf ? src.v_star : w.vertex;
    });
    Reduction r;
    r.rule = rule;
    r.source = src;
    r.target = T;
    r.eval_budget = static_cast<std::uint64_t>(2 * (n + 1));
    r.back_budget = 2 * r.eval_budget;
    r.back = [src, rule](const Solution& s, QueryLedger& L) -> Solution {
        if (s.witness.size() != 2) throw BackMapError(rule + ": unexpected target solution");
        for (Index p : s.witness) {
            Solution c{"btree-leaf", "s1", {p}};
            if (verify(src, c, L)) return c;
        }
        throw BackMapError(rule + ": two non-leaf words collide (promise violation)");
    };
    return r;
}

Reduction nephew_to_weakpigeon(const NephewInstance& src, Index start) {
    const std::string rule = "nephew_to_weakpigeon";
    if (start < 1 || start > src.V) throw UsageError(rule + ": start vertex out of range");
    QueryLedger build;
    Index v = src.g(start, build), v2 = src.g(src.f(start, build), build);
    Reduction first;
    if (auto s = first_solution(src, {start, v, v2}, build)) {
        first = short_circuit(rule, src, trivial_btreeleaf(), *s);
    } else {
        Index V = src.V, VV = V * V, bot = VV + 1;
        // Both coordinates step together; bottom on either side makes the pair a leaf.
        auto step = [src, V, bot](Index x, int side, QueryLedger& L) -> Index {
            auto [u, u2] = pair_unindex(x, V);
            Children c = find_children(src, u, L);
            if (c.leaf) return bot;
            Children c2 = find_children(src, u2, L);
            if (c2.leaf) return bot;
            return side == 0 ? pair_index(c.a, c2.a, V) : pair_index(c.b, c2.b, V);
        };
        BTreeLeafInstance T;
        T.V = VV;
        T.v_star = pair_index(v, v2, V);
        T.Lp = FiniteFunction::rule("Lp", VV, VV + 1, [step](Index x, QueryLedger& L) { return step(x, 0, L); });
        T.Rp = FiniteFunction::rule("Rp", VV, VV + 1, [step](Index x, QueryLedger& L) { return step(x, 1, L); });
        first.rule = "nephew_to_paired_btreeleaf";
        first.source = src;
        first.target = T;
        first.eval_budget = 2 * (3 + 4 * checksol_cost(src));
        int len = btreeleaf_word_length(VV);
        first.back_budget = static_cast<std::uint64_t>(2 * (len + 1)) * first.eval_budget + first.eval_budget;
        first.back = [src, T, V, rule](const Solution& s, QueryLedger& L) -> Solution {
            if (s.witness.size() != 1) throw BackMapError(rule + ": unexpected target solution");
            WalkResult w = btreeleaf_walk(T, s.witness[0], L);
            if (!w.leaf) throw BackMapError(rule + ": word does not reach a leaf");
            auto [u, u2] = pair_unindex(w.vertex, V);
            auto probes = find_children_probes(src, u, L);
            auto more = find_children_probes(src, u2, L);
            probes.insert(probes.end(), more.begin(), more.end());
            if (auto found = first_solution(src, probes, L)) return *found;
            throw BackMapError(rule + ": no Nephew solution near the leaf (uncovered case)");
        };
    }
    first.construction_queries = build.total();
    Reduction r = chain(first, btreeleaf_to_weakpigeon(std::get<BTreeLeafInstance>(first.target)));
    r.rule = rule;
    return r;
}

namespace {

struct NephewTriple {
    Index f, g, finv;  // finv = 0 encodes bottom
};

// One vertex (v, i) of the doubled graph; i is 0 or 1.
NephewTriple ec_nephew_rule(const EmptyChildInstance& E, Index v, int i, QueryLedger& Lg) {
    auto at = [](Index w, int k) { return pair_index(w, k + 1, 2); };
    Index self = at(v, i);
    Index l = E.L(v, Lg), r = E.R(v, Lg);
    if (E.F(l, Lg) != v || E.F(r, Lg) != v || (l == r && l != v)) return {self, self, self};
    if (v == 1 && (E.L(1, Lg) == 1 || E.R(1, Lg) == 1 || E.F(1, Lg) != 1)) return {self, self, self};
    Index p = E.F(v, Lg);
    if (p == v && l == v && r == v) return {at(1, 0), at(v, 1 - i), 0};
    NephewTriple t{};
    if (v == 1)
        t.f = at(1, 0);
    else if (v == E.R(p, Lg))
        t.f = at(p, 1);
    else
        t.f = at(p, 0);
    if (v == 1 && i == 0) {
        t.g = at(E.L(l, Lg), 0);
        t.finv = at(l, 0);
    } else if (v == 1) {
        t.g = at(1, 1);
        t.finv = 0;
    } else if (i == 0) {
        t.g = at(r, 0);
        t.finv = at(l, 0);
    } else {
        t.g = at(l, 0);
        t.finv = at(r, 0);
    }
    return t;
}

Reduction ec_nephew(const EmptyChildInstance& src, bool with_inverse) {
    const std::string rule = with_inverse ? "ec_to_nephew_inv" : "ec_to_nephew";
    if (src.variant != EcVariant::standard) throw UsageError(rule + " needs a standard Empty-Child instance");
    Index V2 = 2 * src.V;
    auto part = [src](Index x, QueryLedger& L) {
        auto [v, k] = pair_unindex(x, 2);
        return ec_nephew_rule(src, v, static_cast<int>(k - 1), L);
    };
    NephewInstance T;
    T.V = V2;
    T.f = FiniteFunction::rule("f", V2, V2, [part](Index x, QueryLedger& L) { return part(x, L).f; });
    T.g = FiniteFunction::rule("g", V2, V2, [part](Index x, QueryLedger& L) { return part(x, L).g; });
    if (with_inverse)
        T.f_inv = FiniteFunction::rule("f_inv", V2, V2 + 1, [part, V2](Index x, QueryLedger& L) {
            Index w = part(x, L).finv;
            return w == 0 ? V2 + 1 : w;
        });

    Reduction r;
    r.rule = rule;
    r.source = src;
    r.target = T;
    r.eval_budget = 12;
    r.back_budget = 40;
    Instance source = src;
    r.back = [source, src, rule](const Solution& s, QueryLedger& L) -> Solution {
        if (s.witness.size() != 1) throw BackMapError(rule + ": unexpected target solution");
        Index v = pair_unindex(s.witness[0], 2).first;
        Index l = src.L(v, L), rr = src.R(v, L), l1 = src.L(1, L);
        Index ll1 = src.L(l1, L);
        return first_valid(source,
                           {{"empty-child", "s1", {v}},
                            {"empty-child", "s2", {1}},
                            {"empty-child", "s1", {l}},
                            {"empty-child", "s1", {rr}},
                            {"empty-child", "s1", {ll1}},
                            {"empty-child", "s1", {l1}}},
                           L, rule);
    };
    return r;
}

}  // namespace

Reduction ec_to_nephew(const EmptyChildInstance& src) { return ec_nephew(src, false); }

Reduction ec_to_nephew_inv(const EmptyChildInstance& src) { return ec_nephew(src, true); }

Reduction nephew_inv_to_ec_prime(const NephewInstance& src) {
    const std::string rule = "nephew_inv_to_ec_prime";
    if (!src.f_inv) throw UsageError(rule + " needs a Nephew instance with an inverse");
    const FiniteFunction& f = src.f;
    const FiniteFunction& g = src.g;
    const FiniteFunction& finv = *src.f_inv;
    Index V = src.V, bot = bottom(V);

    QueryLedger build;
    Index star = 1;
    Index fs = f(star, build);
    Index gfs = g(fs, build);
    std::vector<Index> root_probes{star, fs, gfs};
    if (auto s = first_solution(src, root_probes, build)) {
        EmptyChildInstance T;
        T.V = 1;
        T.variant = EcVariant::prime;
        T.F = FiniteFunction::table("F", {1}, 1);
        T.L = FiniteFunction::table("L", {1}, 1);
        T.R = FiniteFunction::table("R", {1}, 1);
        Reduction r = short_circuit(rule, src, T, *s);
        r.construction_queries = build.total();
        return r;
    }
    Index root = f(fs, build) != fs ? star : gfs;
    // Transposition swapping the chosen root with vertex 1.
    auto relabel = [root](Index x) { return x == 1 ? root : (x == root ? 1 : x); };

    struct Fcp {
        Index a, b, c;
        bool broken;
    };
    auto fcp = [=](Index v, QueryLedger& L) -> Fcp {
        Index w = finv(v, L);
        if (w == bot) return {v, v, v, false};
        Index a = f(g(w, L), L);
        Index b = f(g(a, L), L);
        Index c = f(v, L);
        for (Index u : {v, w, a})
            if (nephew_checksol(src, u, L)) return {0, 0, c, true};
        return {a, b, c, false};
    };
    auto other = [V](Index v) { return v == 1 ? (V > 1 ? 2 : 1) : 1; };

    EmptyChildInstance T;
    T.V = V;
    T.variant = EcVariant::prime;
    T.F = FiniteFunction::rule("F", V, V, [=](Index x, QueryLedger& L) {
        return relabel(fcp(relabel(x), L).c);
    });
    T.L = FiniteFunction::rule("L", V, V, [=](Index x, QueryLedger& L) {
        Index v = relabel(x);
        Fcp r = fcp(v, L);
        return relabel(r.broken ? other(v) : r.a);
    });
    T.R = FiniteFunction::rule("R", V, V, [=](Index x, QueryLedger& L) {
        Index v = relabel(x);
        Fcp r = fcp(v, L);
        return relabel(r.broken ? other(v) : r.b);
    });

    Reduction r;
    r.rule = rule;
    r.source = src;
    r.target = T;
    r.construction_queries = build.total();
    r.eval_budget = 6 + 3 * checksol_cost(src);
    r.back_budget = 6 + 7 * checksol_cost(src);
    r.back = [=](const Solution& s, QueryLedger& L) -> Solution {
        if (s.witness.size() != 1) throw BackMapError(rule + ": unexpected target solution");
        Index v = relabel(s.witness[0]);
        std::vector<Index> probes{v};
        Index w = finv(v, L);
        if (w != bot) {
            Index a = f(g(w, L), L);
            probes.push_back(w);
            probes.push_back(a);
            probes.push_back(f(g(a, L), L));
        }
        probes.insert(probes.end(), root_probes.begin(), root_probes.end());
        if (auto found = first_solution(src, probes, L)) return *found;
        throw BackMapError(rule + ": no Nephew solution among the probes (uncovered case)");
    };
    return r;
}

}  // namespace tfz
