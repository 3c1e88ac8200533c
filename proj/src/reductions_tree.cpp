#include "tfz/reductions.hpp"

namespace tfz {

namespace {

Index ceil_half(Index x) { return (x + 1) / 2; }

int exact_log2(Index N, const std::string& rule) {
    int n = ceil_log2(N);
    if (N < 2 || (Index{1} << n) != N)
        throw UsageError(rule + " needs N a power of two with N >= 2 (apply lossy_pad_pow2 first)");
    return n;
}

struct Node {
    int i;
    Index j;
};

// Lossy_{N->2N} to Empty-Child on the double-band tree; binary adds the Wrong-Father clause.
Reduction lossy_tree(const LossyInstance& src, bool binary) {
    const std::string rule = binary ? "injlossy_to_bec" : "lossy_to_ec";
    if (src.M != 2 * src.N) throw UsageError(rule + " needs M = 2N");
    if (binary && !src.bijective) throw UsageError(rule + " needs a bijective Lossy-Code instance");
    int n = exact_log2(src.N, rule);
    LevelLayout lay = tree_double_band_layout(n);
    Index N = src.N, V = lay.total();
    FiniteFunction f = src.f, g = src.g;
    int top = 2 * n;

    auto idx = [lay](int i, Index j) { return level_index(lay, i, j); };
    auto node = [lay](Index x) {
        auto [i, j] = level_unindex(lay, x);
        return Node{i, j};
    };

    auto father = [=](Index x, QueryLedger& L) -> Index {
        Node u = node(x);
        if (u.i == 1) return x;
        if (u.i <= top) return idx(u.i - 1, ceil_half(u.j));
        Index i = u.i - top;
        if (i <= N) return idx(static_cast<int>(f(i, L)) + top, ceil_half(f(u.j, L)));
        i -= N;
        return idx(top, ceil_half((i - 1) * N + u.j));
    };
    auto child = [=](Index x, int side, QueryLedger& L) -> Index {
        Node u = node(x);
        if (u.i < top) return idx(u.i + 1, 2 * u.j - 1 + side);
        if (u.i == top) {
            Index half = N / 2;
            Index i = (u.j - 1) / half + 1, jj = (u.j - 1) % half + 1;
            return idx(static_cast<int>(i + N) + top, 2 * jj - 1 + side);
        }
        Index i = u.i - top;
        return idx(static_cast<int>(g(i, L)) + top, g(2 * u.j - 1 + side, L));
    };

    EmptyChildInstance T;
    T.V = V;
    T.variant = binary ? EcVariant::binary : EcVariant::standard;
    T.F = FiniteFunction::rule("F", V, V, father);
    T.L = FiniteFunction::rule("L", V, V, [child](Index x, QueryLedger& L) { return child(x, 0, L); });
    T.R = FiniteFunction::rule("R", V, V, [child](Index x, QueryLedger& L) { return child(x, 1, L); });

    Reduction r;
    r.rule = rule;
    r.source = src;
    r.target = T;
    r.eval_budget = 2;
    r.back_budget = 12;
    Instance source = src;
    r.back = [=](const Solution& s, QueryLedger& L) -> Solution {
        if (s.witness.size() != 1) throw BackMapError(rule + ": unexpected target solution");
        Node u = node(s.witness[0]);
        if (u.i <= top) throw BackMapError(rule + ": solution inside the complete tree (uncovered case)");
        Index i = u.i - top;
        std::vector<Solution> c;
        if (s.variant == "s3") {
            if (i <= N) c.push_back({"lossy", "s2", {i}});
            c.push_back({"lossy", "s2", {u.j}});
        }
        c.push_back({"lossy", "s1", {i}});
        c.push_back({"lossy", "s1", {2 * u.j - 1}});
        c.push_back({"lossy", "s1", {2 * u.j}});
        if (binary && s.variant != "s3") {
            if (i <= N) c.push_back({"lossy", "s2", {i}});
            c.push_back({"lossy", "s2", {u.j}});
        }
        return first_valid(source, c, L, rule);
    };
    return r;
}

// Lossy + metered line to Empty-Child with heights on the single-band tree.
Reduction layered_tree(const LossyLineInstance& src, bool binary) {
    const std::string rule = binary ? "injlossy_and_eoml_to_becwh" : "lossy_and_sml_to_ecwh";
    const LossyInstance& A = src.lossy;
    const MeteredLineInstance& B = src.line;
    if (A.M != 2 * A.N) throw UsageError(rule + " needs M = 2N for the Lossy-Code part");
    if (binary && (!A.bijective || B.variant != LineVariant::end))
        throw UsageError(rule + " needs a bijective Lossy-Code part and an end-of-line part");
    int n = exact_log2(A.N, rule);
    Index M = B.N;
    LevelLayout lay = tree_band_layout(n, M);
    Index V = lay.total();
    FiniteFunction f = A.f, g = A.g, S = B.S, P = B.P, Vm = B.V;

    auto idx = [lay](int i, Index j) { return level_index(lay, i, j); };
    auto node = [lay](Index x) {
        auto [i, j] = level_unindex(lay, x);
        return Node{i, j};
    };
    auto meter_of = [Vm](Index i, QueryLedger& L) { return Vm(i, L) - 1; };

    auto father = [=](Index x, QueryLedger& L) -> Index {
        Node u = node(x);
        if (u.i == 1) return x;
        if (u.i <= n + 1) return idx(u.i - 1, ceil_half(u.j));
        Index i = u.i - n;
        if (meter_of(i, L) == 0) return x;
        return idx(static_cast<int>(P(i, L)) + n, ceil_half(f(u.j, L)));
    };
    auto child = [=](Index x, int side, QueryLedger& L) -> Index {
        Node u = node(x);
        if (u.i <= n) return idx(u.i + 1, 2 * u.j - 1 + side);
        Index i = u.i - n;
        if (meter_of(i, L) == 0) return x;
        return idx(static_cast<int>(S(i, L)) + n, g(2 * u.j - 1 + side, L));
    };
    auto height = [=](Index x, QueryLedger& L) -> Index {
        Node u = node(x);
        if (u.i <= n) return u.i;
        return meter_of(u.i - n, L) + n;
    };

    EmptyChildInstance T;
    T.V = V;
    T.variant = binary ? EcVariant::binary_with_height : EcVariant::with_height;
    T.F = FiniteFunction::rule("F", V, V, father);
    T.L = FiniteFunction::rule("L", V, V, [child](Index x, QueryLedger& L) { return child(x, 0, L); });
    T.R = FiniteFunction::rule("R", V, V, [child](Index x, QueryLedger& L) { return child(x, 1, L); });
    T.H = FiniteFunction::rule("H", V, V, height);

    Reduction r;
    r.rule = rule;
    r.source = src;
    r.target = T;
    r.eval_budget = 3;
    r.back_budget = 40;
    Instance source = src;
    r.back = [=](const Solution& s, QueryLedger& L) -> Solution {
        if (s.witness.size() != 1) throw BackMapError(rule + ": unexpected target solution");
        Node u = node(s.witness[0]);
        if (u.i <= n) throw BackMapError(rule + ": solution inside the complete tree (uncovered case)");
        Index i = u.i - n, j = u.j;
        std::vector<Solution> c{
            {"lossy+line", "line.s1", {1}},       {"lossy+line", "line.s2", {i}},
            {"lossy+line", "lossy.s1", {2 * j - 1}}, {"lossy+line", "lossy.s1", {2 * j}},
            {"lossy+line", "line.s3", {i}},       {"lossy+line", "line.s4", {i}},
        };
        if (binary) {
            c.push_back({"lossy+line", "line.s5", {i}});
            c.push_back({"lossy+line", "lossy.s2", {j}});
            c.push_back({"lossy+line", "line.s6", {i}});
        }
        return first_valid(source, c, L, rule);
    };
    return r;
}

}  // namespace

Reduction lossy_to_ec(const LossyInstance& src) { return lossy_tree(src, false); }

Reduction injlossy_to_bec(const LossyInstance& src) { return lossy_tree(src, true); }

Reduction lossy_and_sml_to_ecwh(const LossyLineInstance& src) { return layered_tree(src, false); }

Reduction injlossy_and_eoml_to_becwh(const LossyLineInstance& src) { return layered_tree(src, true); }

Reduction ecwh_to_sinkofdag(const EmptyChildInstance& src) {
    const std::string rule = "ecwh_to_sinkofdag";
    if (!src.H) throw UsageError(rule + " needs an Empty-Child instance with heights");
    SinkOfDagInstance T;
    T.N = src.V;
    T.succ = FiniteFunction::rule("succ", src.V, src.V, [Lc = src.L](Index v, QueryLedger& L) { return Lc(v, L); });
    T.pot = FiniteFunction::rule("pot", src.V, src.V, [H = *src.H](Index v, QueryLedger& L) { return H(v, L); });
    Reduction r;
    r.rule = rule;
    r.source = src;
    r.target = T;
    r.eval_budget = 1;
    r.back_budget = 16;
    Instance source = src;
    FiniteFunction Lc = src.L;
    r.back = [source, Lc, rule](const Solution& s, QueryLedger& L) -> Solution {
        if (s.witness.size() != 1) throw BackMapError(rule + ": unexpected target solution");
        Index v = s.witness[0];
        if (s.variant == "s1") return first_valid(source, {{"empty-child", "s2", {1}}}, L, rule);
        Index u = Lc(v, L);
        if (s.variant == "s2")
            return first_valid(source, {{"empty-child", "s1", {v}}, {"empty-child", "s1", {u}}}, L, rule);
        return first_valid(source,
                           {{"empty-child", "s1", {v}}, {"empty-child", "s4", {u}}, {"empty-child", "s2", {1}}}, L,
                           rule);
    };
    return r;
}

}  // namespace tfz
