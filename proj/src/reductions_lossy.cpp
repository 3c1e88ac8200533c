#include <algorithm>

#include "tfz/reductions.hpp"

namespace tfz {

namespace {

struct Stage {
    Index small = 1, big = 2;  // [small] -> [big] on the expanding side
    Index blocks = 1;          // full blocks of size N (resp. M0)
};

std::vector<Stage> stages_of(const StretchPlan& p) {
    std::vector<Stage> st;
    for (int j = 1; j <= p.stages(); ++j) {
        Stage s;
        s.small = p.sizes[j - 1];
        s.big = p.sizes[j];
        s.blocks = s.small / p.N;
        st.push_back(s);
    }
    return st;
}

}  // namespace

StretchPlan plan_stretch(Index N, Index M0, Index target_M) {
    if (N < 1 || M0 <= N) throw UsageError("lossy_stretch needs a source with N < M");
    if (target_M <= N) throw UsageError("lossy_stretch needs target_M > N");
    StretchPlan p;
    p.N = N;
    p.M0 = M0;
    p.target_M = target_M;
    p.sizes.push_back(N);
    while (p.sizes.back() < target_M) {
        Index s = p.sizes.back();
        Index B = s / N, e = s - B * N;
        if (B > (Index{1} << 40) / M0) throw UsageError("lossy_stretch dimensions overflow");
        p.sizes.push_back(B * M0 + e);
    }
    return p;
}

Reduction lossy_stretch(const LossyInstance& src, Index target_M) {
    StretchPlan plan = plan_stretch(src.N, src.M, target_M);
    if (target_M == src.M) {
        Reduction r = identity_reduction(src);
        r.rule = "lossy_stretch";
        return r;
    }
    auto st = stages_of(plan);
    Index N = src.N, M0 = src.M;
    FiniteFunction f = src.f, g = src.g;

    // C_j: [big] -> [small]
    auto compress = [N, M0, g](const Stage& s, Index y, QueryLedger& L) -> Index {
        if (y <= s.blocks * M0) {
            Index q = (y - 1) / M0, r = (y - 1) % M0;
            return q * N + g(r + 1, L);
        }
        return y - s.blocks * M0 + s.blocks * N;
    };
    // D_j: [small] -> [big]
    auto expand = [N, M0, f](const Stage& s, Index x, QueryLedger& L) -> Index {
        if (x <= s.blocks * N) {
            Index q = (x - 1) / N, r = (x - 1) % N;
            return q * M0 + f(r + 1, L);
        }
        return x - s.blocks * N + s.blocks * M0;
    };

    LossyInstance T;
    T.N = N;
    T.M = target_M;
    T.g = FiniteFunction::rule("g", target_M, N, [st, compress](Index y, QueryLedger& L) {
        for (auto it = st.rbegin(); it != st.rend(); ++it) y = compress(*it, y, L);
        return y;
    });
    T.f = FiniteFunction::rule("f", N, target_M, [st, expand, target_M](Index w, QueryLedger& L) {
        for (const auto& s : st) w = expand(s, w, L);
        return w <= target_M ? w : Index{1};
    });

    Reduction r;
    r.rule = "lossy_stretch";
    r.source = src;
    r.target = T;
    int k = plan.stages();
    r.eval_budget = static_cast<std::uint64_t>(k);
    r.back_budget = static_cast<std::uint64_t>(2 * k + 2);
    Instance source = src;
    r.back = [st, source, N, M0, f, g](const Solution& s, QueryLedger& L) -> Solution {
        if (s.variant != "s1" || s.witness.size() != 1) throw BackMapError("lossy_stretch: unexpected target solution");
        // x[j] lives in [sizes_j]; walk down through the compressions
        int k = static_cast<int>(st.size());
        std::vector<Index> x(static_cast<std::size_t>(k + 1));
        std::vector<Index> gval(static_cast<std::size_t>(k + 1), 0);
        x[k] = s.witness[0];
        for (int j = k; j >= 1; --j) {
            const Stage& S = st[j - 1];
            Index y = x[j];
            if (y <= S.blocks * M0) {
                Index q = (y - 1) / M0, r = (y - 1) % M0;
                gval[j] = g(r + 1, L);
                x[j - 1] = q * N + gval[j];
            } else {
                x[j - 1] = y - S.blocks * M0 + S.blocks * N;
            }
        }
        for (int j = 1; j <= k; ++j) {
            const Stage& S = st[j - 1];
            if (x[j] > S.blocks * M0) continue;  // extras round-trip exactly
            Index r = (x[j] - 1) % M0;
            if (f(gval[j], L) != r + 1) return first_valid(source, {{"lossy", "s1", {r + 1}}}, L, "lossy_stretch");
        }
        throw BackMapError("lossy_stretch: every stage round-trips, so the witness is not a target solution");
    };
    return r;
}

Reduction lossy_pad_pow2(const LossyInstance& src) {
    Index N2 = Index{1} << ceil_log2(src.N);
    if (N2 == src.N && src.M == 2 * src.N) {
        Reduction r = identity_reduction(src);
        r.rule = "lossy_pad_pow2";
        return r;
    }
    Reduction st = lossy_stretch(src, 2 * N2);
    const auto& S = std::get<LossyInstance>(st.target);
    Index N = src.N;
    FiniteFunction sf = S.f;
    LossyInstance T;
    T.N = N2;
    T.M = 2 * N2;
    T.g = FiniteFunction::rule("g", 2 * N2, N2, [sg = S.g](Index y, QueryLedger& L) { return sg(y, L); });
    T.f = FiniteFunction::rule("f", N2, 2 * N2,
                               [sf, N](Index w, QueryLedger& L) { return w <= N ? sf(w, L) : Index{1}; });
    Reduction r;
    r.rule = "lossy_pad_pow2";
    r.source = src;
    r.target = T;
    r.eval_budget = st.eval_budget;
    r.back_budget = st.back_budget;
    r.back = st.back;
    return r;
}

Reduction ec_prime_to_lossy(const EmptyChildInstance& src) {
    int ell = ceil_log2(src.V);
    Index N = Index{1} << ell;
    Index V = src.V;
    int len = ell + 1;
    FiniteFunction F = src.F, Lc = src.L, Rc = src.R;
    bool prime = src.variant == EcVariant::prime;

    // letter t (1-based) of word x; 0 means L
    auto letter = [len](Index x, int t) -> int { return static_cast<int>(((x - 1) >> (len - t)) & 1); };

    LossyInstance T;
    T.N = N;
    T.M = 2 * N;
    // walk down from the root
    T.g = FiniteFunction::rule("g", 2 * N, N, [=](Index x, QueryLedger& L) {
        Index v = 1;
        for (int t = 1; t <= len; ++t) v = letter(x, t) == 0 ? Lc(v, L) : Rc(v, L);
        return v;
    });
    // walk up, reading off the word
    T.f = FiniteFunction::rule("f", N, 2 * N, [=](Index u, QueryLedger& L) {
        if (u > V) return Index{1};
        Index bits = 0;
        for (int step = 1; step <= len; ++step) {
            Index p = F(u, L);
            int bit = Lc(p, L) == u ? 0 : 1;
            bits |= static_cast<Index>(bit) << (step - 1);
            u = p;
        }
        return bits + 1;
    });

    Reduction r;
    r.rule = "ec_prime_to_lossy";
    r.source = src;
    r.target = T;
    r.eval_budget = static_cast<std::uint64_t>(2 * len);
    r.back_budget = static_cast<std::uint64_t>(4 * len + 8);
    Instance source = src;
    r.back = [=](const Solution& s, QueryLedger& L) -> Solution {
        const std::string rule = "ec_prime_to_lossy";
        if (s.variant != "s1" || s.witness.size() != 1) throw BackMapError(rule + ": unexpected target solution");
        Index x = s.witness[0];
        std::vector<Index> v(static_cast<std::size_t>(len + 1));
        v[0] = 1;
        for (int t = 1; t <= len; ++t) v[t] = letter(x, t) == 0 ? Lc(v[t - 1], L) : Rc(v[t - 1], L);
        std::string root_tag = prime ? "s2a" : "s2";
        for (int i = 0; i < len; ++i) {
            if (v[i] != v[i + 1]) continue;
            if (i == 0) return first_valid(source, {{"empty-child", root_tag, {1}}}, L, rule);
            if (F(v[i], L) != v[i - 1]) return first_valid(source, {{"empty-child", "s1", {v[i - 1]}}}, L, rule);
            return first_valid(source, {{"empty-child", "s1", {v[i]}}}, L, rule);
        }
        // u[i] and x'[i] from the upward walk of f(g(x))
        std::vector<Index> u(static_cast<std::size_t>(len + 1));
        std::vector<int> xp(static_cast<std::size_t>(len + 1), 0);
        u[len] = v[len];
        for (int i = len; i >= 1; --i) {
            Index p = F(u[i], L);
            xp[i] = Lc(p, L) == u[i] ? 0 : 1;
            u[i - 1] = p;
        }
        for (int i = len; i >= 1; --i) {
            if (xp[i] != letter(x, i) || v[i - 1] != u[i - 1])
                return first_valid(source, {{"empty-child", "s1", {v[i - 1]}}}, L, rule);
        }
        throw BackMapError(rule + ": the word round-trips, so it is not a target solution");
    };
    return r;
}

int dlo_depth(Index N) { return 4 * ceil_log2(N); }

Index dlo_word_count(Index N) { return (Index{2} << dlo_depth(N)) - 1; }

namespace {

struct DloRun {
    std::vector<Index> l, r;  // intervals (l_i, r_i), i = 0..|sigma|
    Index v = 0;
};

Index normalize_word_length(Index w) {
    int k = 0;
    while ((Index{2} << k) <= w) ++k;
    return k;
}

}  // namespace

Reduction dlo_to_lossy(const DloInstance& src) {
    if (src.N < 2) throw UsageError("dlo_to_lossy needs N >= 2");
    QueryLedger build;
    Index l0 = 1, r0 = 2;
    if (!precedes(src, 1, 2, build)) std::swap(l0, r0);
    int ell = dlo_depth(src.N);
    Index words = dlo_word_count(src.N);
    DloInstance D = src;

    auto word_letter = [](Index w, Index k, Index t) -> int { return static_cast<int>(((w - (Index{1} << k)) >> (k - t)) & 1); };

    auto fmap = [=](Index m, QueryLedger& L) -> Index {
        Index l = l0, r = r0, bits = 0, k = 0;
        for (int i = 1; i <= ell; ++i) {
            Index mm = median(D, l, r, L);
            if (mm == m) break;
            bits <<= 1;
            if (precedes(D, m, mm, L)) {
                r = mm;
            } else {
                l = mm;
                bits |= 1;
            }
            ++k;
        }
        return (Index{1} << k) + bits;
    };
    auto grun = [=](Index w, QueryLedger& L) -> DloRun {
        Index k = normalize_word_length(w);
        DloRun run;
        run.l.push_back(l0);
        run.r.push_back(r0);
        for (Index t = 1; t <= k; ++t) {
            Index l = run.l.back(), r = run.r.back();
            Index mm = median(D, l, r, L);
            if (word_letter(w, k, t) == 0) {
                run.l.push_back(l);
                run.r.push_back(mm);
            } else {
                run.l.push_back(mm);
                run.r.push_back(r);
            }
        }
        run.v = median(D, run.l.back(), run.r.back(), L);
        return run;
    };

    LossyInstance T;
    T.N = src.N;
    T.M = words;
    T.f = FiniteFunction::rule("f", src.N, words, fmap);
    T.g = FiniteFunction::rule("g", words, src.N, [grun](Index w, QueryLedger& L) { return grun(w, L).v; });

    Reduction red;
    red.rule = "dlo_to_lossy";
    red.source = src;
    red.target = T;
    red.eval_budget = static_cast<std::uint64_t>(2 * ell + 1);
    red.back_budget = static_cast<std::uint64_t>(6 * ell + 8);
    red.construction_queries = build.total();
    Instance source = src;
    red.back = [=](const Solution& s, QueryLedger& L) -> Solution {
        const std::string rule = "dlo_to_lossy";
        if (s.variant != "s1" || s.witness.size() != 1) throw BackMapError(rule + ": unexpected target solution");
        Index w = s.witness[0];
        Index k = normalize_word_length(w);
        DloRun run = grun(w, L);
        auto s2 = [&](std::size_t i) {
            return first_valid(source, {{"dlo", "s2", {run.l[i], run.r[i]}}}, L, rule);
        };
        for (std::size_t i = 1; i < run.l.size(); ++i)
            if (!precedes(D, run.l[i], run.r[i], L)) return s2(i - 1);
        Index v = run.v;
        Index w2 = fmap(v, L);
        Index k2 = normalize_word_length(w2);
        Index i = 1;
        while (i <= k && i <= k2 && word_letter(w, k, i) == word_letter(w2, k2, i)) ++i;
        if (i > k) throw BackMapError(rule + ": the word is a prefix of its round trip (uncovered case)");
        auto cycle = [&](Index a, Index b, Index c) {
            std::vector<Index> t{a, b, c};
            std::rotate(t.begin(), std::min_element(t.begin(), t.end()), t.end());
            return first_valid(source, {{"dlo", "s1", t}}, L, rule);
        };
        std::size_t last = static_cast<std::size_t>(k);
        if (word_letter(w, k, i) == 0) {
            // v is not below r_i
            if (!precedes(D, v, run.r[last], L)) return s2(last);
            std::size_t j = static_cast<std::size_t>(i);
            while (j < last && !precedes(D, v, run.r[j + 1], L)) ++j;
            if (j == last) throw BackMapError(rule + ": no escape index on the right (uncovered case)");
            if (!precedes(D, run.r[j + 1], run.r[j], L)) return s2(j);
            return cycle(v, run.r[j + 1], run.r[j]);
        }
        // l_i is not below v
        if (!precedes(D, run.l[last], v, L)) return s2(last);
        std::size_t j = static_cast<std::size_t>(i);
        while (j < last && !precedes(D, run.l[j + 1], v, L)) ++j;
        if (j == last) throw BackMapError(rule + ": no escape index on the left (uncovered case)");
        if (!precedes(D, run.l[j], run.l[j + 1], L)) return s2(j);
        return cycle(run.l[j], run.l[j + 1], v);
    };
    return red;
}

}  // namespace tfz
