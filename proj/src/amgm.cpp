#include "tfz/amgm.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <string>

namespace tfz {

AmgmParams toy_amgm_params() { return AmgmParams{}; }

AmgmLayout amgm_layout(const NwEngine& E, Index P) {
    AmgmLayout lay;
    lay.messages = static_cast<Index>(E.messages());
    lay.P = P;
    lay.D = static_cast<Index>(E.seeds());
    lay.M = static_cast<Index>(E.outputs());
    Index total = lay.M * lay.D + 2 * static_cast<Index>(E.m() * E.diff());
    lay.Qmax = (total / 2) * ((total + 1) / 2);
    for (Word mask = 0; mask < (Word{1} << lay.M); ++mask) {
        std::vector<bool> S(static_cast<std::size_t>(lay.M));
        for (Index r = 0; r < lay.M; ++r) S[static_cast<std::size_t>(r)] = (mask >> r) & 1;
        lay.Kc = std::max<Index>(lay.Kc, static_cast<Index>(decomp_range(E, S).size()));
    }
    lay.Kc = std::max<Index>(lay.Kc, 1);
    Index D2 = lay.D * lay.D;
    lay.X = lay.messages * P * D2;
    lay.Y1 = lay.messages * lay.Qmax;
    lay.Y2 = 2 * lay.Kc * P * D2;
    lay.Y = lay.Y1 + lay.Y2;
    if (lay.Y >= lay.X)
        throw UsageError("amgm_to_lossy: |Y|/|X| = " + std::to_string(lay.ratio()) + " is not below 1");
    return lay;
}

namespace {

struct Side {
    std::shared_ptr<const HybridPairs> H;
    Index A = 0;  // |V_m| + m diff
};

}  // namespace

Reduction amgm_to_lossy(const AmgmInstance& src, const AmgmParams& params) {
    const std::string rule = "amgm_to_lossy";
    if (src.N != params.N) throw UsageError(rule + ": instance N differs from the parameter set");
    auto E = std::make_shared<const NwEngine>(params.nw);
    Index N2 = 2 * src.N;
    if (static_cast<Index>(E->outputs()) != N2) throw UsageError(rule + ": NW output length must be log2(2N)");
    AmgmLayout lay = amgm_layout(*E, src.P());

    QueryLedger build;
    std::vector<int> col(static_cast<std::size_t>(N2 + 1));
    std::array<std::vector<bool>, 2> S{std::vector<bool>(static_cast<std::size_t>(N2)),
                                       std::vector<bool>(static_cast<std::size_t>(N2))};
    for (Index a = 1; a <= N2; ++a) {
        int c = colour(src, a, build) == 0 ? 0 : 1;
        col[static_cast<std::size_t>(a)] = c;
        S[static_cast<std::size_t>(c)][static_cast<std::size_t>(a - 1)] = true;
    }
    auto sides = std::make_shared<std::vector<std::array<Side, 2>>>();
    Index diffs = static_cast<Index>(E->m() * E->diff());
    for (Word f = 0; f < E->messages(); ++f) {
        std::array<Side, 2> s;
        for (int b = 0; b <= 1; ++b) {
            s[b].H = std::make_shared<const HybridPairs>(*E, f, S[b]);
            s[b].A = static_cast<Index>(s[b].H->level(E->m()).size()) + diffs;
        }
        sides->push_back(s);
    }
    auto ranges = std::make_shared<std::array<std::vector<Word>, 2>>();
    for (int b = 0; b <= 1; ++b) (*ranges)[b] = decomp_range(*E, S[b]);

    Index D = lay.D, P = lay.P, D2 = D * D, M = lay.M;
    FiniteFunction F = src.F, G = src.G;

    auto Fstar = [=](Index x, QueryLedger& L) -> Index {
        Index k = x - 1;
        Index u2 = k % D, u1 = (k / D) % D, p = (k / D2) % P + 1;
        Word f = static_cast<Word>(k / (D2 * P));
        auto [a, b] = pair_unindex(F(p, L), N2);
        if (col[static_cast<std::size_t>(a)] != 0 || col[static_cast<std::size_t>(b)] != 1)
            return static_cast<Index>(f) * lay.Qmax + 1;
        Index t[2];
        Index vert[2] = {a, b}, seed[2] = {u1, u2};
        for (int side = 0; side <= 1; ++side) {
            const HybridPairs& H = *(*sides)[f][side].H;
            Word w = static_cast<Word>(seed[side] * M + vert[side] - 1);
            if (H.locate_failure(false, w)) {
                Advice adv = comp(H, false, w);
                auto back = decomp(*E, adv, S[side]);
                if (!back || *back != f) throw Error(rule + ": Decomp(Comp(f)) != f; this is a bug");
                const auto& range = (*ranges)[side];
                Index rank = std::lower_bound(range.begin(), range.end(), f) - range.begin();
                return lay.Y1 + (((side * lay.Kc + rank) * P + (p - 1)) * D + u1) * D + u2 + 1;
            }
            HybElem out = H.h_greater(HybElem::of_pair(w));
            const auto& top = H.level(E->m());
            if (out.kind == HybElem::pair)
                t[side] = std::lower_bound(top.begin(), top.end(), out.v) - top.begin();
            else
                t[side] = static_cast<Index>(top.size() + out.v);
            if (out.kind == HybElem::junk || t[side] >= (*sides)[f][side].A)
                throw Error(rule + ": locally sound trace left its range; this is a bug");
        }
        return static_cast<Index>(f) * lay.Qmax + t[0] * (*sides)[f][1].A + t[1] + 1;
    };

    auto Gstar = [=](Index y, QueryLedger& L) -> Index {
        Index k = y - 1;
        if (k < lay.Y1) {
            Word f = static_cast<Word>(k / lay.Qmax);
            Index q = k % lay.Qmax;
            const auto& s = (*sides)[f];
            Index t[2] = {q / s[1].A, q % s[1].A};
            if (t[0] >= s[0].A) return 1;
            Index vert[2], seed[2];
            for (int side = 0; side <= 1; ++side) {
                const HybridPairs& H = *s[side].H;
                const auto& top = H.level(E->m());
                Index ts = t[side], n = static_cast<Index>(top.size());
                HybElem e = ts < n ? HybElem::of_pair(top[static_cast<std::size_t>(ts)])
                                   : HybElem::of_number(static_cast<Word>(ts - n));
                HybElem back = H.g_greater(e);
                if (back.kind != HybElem::pair) return 1;
                vert[side] = static_cast<Index>(back.v % static_cast<Word>(M)) + 1;
                seed[side] = static_cast<Index>(back.v / static_cast<Word>(M));
            }
            Index p = G(pair_index(vert[0], vert[1], N2), L);
            return ((static_cast<Index>(f) * P + (p - 1)) * D + seed[0]) * D + seed[1] + 1;
        }
        k -= lay.Y1;
        Index u2 = k % D, u1 = (k / D) % D, p = (k / D2) % P + 1;
        k /= D2 * P;
        Index rank = k % lay.Kc, b = k / lay.Kc;
        const auto& range = (*ranges)[static_cast<std::size_t>(b)];
        if (rank >= static_cast<Index>(range.size())) return 1;
        Index f = static_cast<Index>(range[static_cast<std::size_t>(rank)]);
        return ((f * P + (p - 1)) * D + u1) * D + u2 + 1;
    };

    LossyInstance T;
    T.N = lay.Y;
    T.M = lay.X;
    T.f = FiniteFunction::rule("G*", lay.Y, lay.X, Gstar);
    T.g = FiniteFunction::rule("F*", lay.X, lay.Y, Fstar);

    Reduction r;
    r.rule = rule;
    r.source = src;
    r.target = T;
    r.eval_budget = 1;
    r.back_budget = 8;
    r.construction_queries = build.total();
    Instance source = src;
    r.back = [=](const Solution& s, QueryLedger& L) -> Solution {
        if (s.witness.size() != 1) throw BackMapError(rule + ": unexpected target solution");
        Index p = ((s.witness[0] - 1) / D2) % P + 1;
        return first_valid(source, {{"amgm", "s1", {p}}, {"amgm", "s2", {p}}}, L, rule);
    };
    return r;
}

}  // namespace tfz
