#pragma once

// Brute-force reference oracles, written from the problem definitions and kept apart from the
// library's verifiers and enumerators so the two can be compared.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tfz/problems.hpp"
#include "tfz/resolution.hpp"

namespace ref {

using tfz::Index;
using tfz::Solution;

inline Index at(const tfz::FiniteFunction& f, Index x) {
    tfz::QueryLedger L;
    return f(x, L);
}

inline bool in(Index x, Index hi) { return x >= 1 && x <= hi; }

inline bool lossy_ok(const tfz::LossyInstance& I, const std::string& t, const std::vector<Index>& w) {
    if (w.size() != 1) return false;
    if (t == "s1") return in(w[0], I.M) && at(I.f, at(I.g, w[0])) != w[0];
    if (t == "s2") return I.bijective && in(w[0], I.N) && at(I.g, at(I.f, w[0])) != w[0];
    return false;
}

inline bool line_ok(const tfz::MeteredLineInstance& I, const std::string& t, const std::vector<Index>& w) {
    if (w.size() != 1 || !in(w[0], I.N)) return false;
    bool end = I.variant == tfz::LineVariant::end;
    Index x = w[0];
    auto S = [&](Index y) { return at(I.S, y); };
    auto P = [&](Index y) { return at(I.P, y); };
    auto mtr = [&](Index y) { return at(I.V, y) - 1; };
    if (t == "s1") return x == 1 && (P(1) != 1 || S(1) == 1 || mtr(1) != 1);
    if (t == "s2") return P(S(x)) != x;
    if (t == "s3") return x != 1 && mtr(x) == 1;
    bool up = mtr(x) > 0 && mtr(S(x)) != mtr(x) + 1;
    bool down = mtr(x) > 1 && mtr(P(x)) != mtr(x) - 1;
    if (t == "s4") return up || down;
    if (t == "s5") return end && x != 1 && S(P(x)) != x;
    if (t == "s6") return end && up;
    return false;
}

inline bool ec_ok(const tfz::EmptyChildInstance& I, const std::string& t, const std::vector<Index>& w) {
    using tfz::EcVariant;
    if (w.size() != 1 || !in(w[0], I.V)) return false;
    Index u = w[0];
    auto F = [&](Index y) { return at(I.F, y); };
    auto Lc = [&](Index y) { return at(I.L, y); };
    auto Rc = [&](Index y) { return at(I.R, y); };
    bool prime = I.variant == EcVariant::prime;
    bool binary = I.variant == EcVariant::binary || I.variant == EcVariant::binary_with_height;
    bool heights = I.variant == EcVariant::with_height || I.variant == EcVariant::binary_with_height ||
                   I.variant == EcVariant::with_height_strict;
    if (t == "s1") return F(Lc(u)) != u || F(Rc(u)) != u || (Lc(u) == Rc(u) && Lc(u) != u);
    if (t == "s2") return !prime && u == 1 && (Lc(1) == 1 || Rc(1) == 1 || F(1) != 1);
    if (t == "s2a") return prime && u == 1 && (Lc(1) == 1 || Rc(1) == 1);
    if (t == "s3") return binary && u != 1 && Lc(F(u)) != u && Rc(F(u)) != u;
    if (t == "s4" && heights && I.H) {
        auto H = [&](Index y) { return at(*I.H, y); };
        if (I.variant == EcVariant::with_height_strict) return u != 1 && H(u) <= H(F(u));
        if (u == 1) return H(1) != 1;
        return F(u) != u && H(u) != H(F(u)) + 1;
    }
    return false;
}

inline bool nephew_ok(const tfz::NephewInstance& I, const std::string& t, const std::vector<Index>& w) {
    if (w.size() != 1 || !in(w[0], I.V)) return false;
    Index u = w[0];
    auto f = [&](Index y) { return at(I.f, y); };
    auto g = [&](Index y) { return at(I.g, y); };
    if (t == "s1") return f(f(g(u))) != f(u);
    if (t == "s2") return f(g(u)) == u;
    if (!I.f_inv) return false;
    Index inv = at(*I.f_inv, u);
    if (t == "s3") return inv != I.V + 1 && f(inv) != u;
    if (t == "s4") return inv == I.V + 1 && f(f(u)) != f(u);
    return false;
}

inline bool dlo_before(const tfz::DloInstance& I, Index x, Index y) {
    tfz::QueryLedger L;
    return tfz::precedes(I, x, y, L);
}

inline bool dlo_ok(const tfz::DloInstance& I, const std::string& t, const std::vector<Index>& w) {
    for (Index x : w)
        if (!in(x, I.N)) return false;
    if (t == "s1")
        return w.size() == 3 && dlo_before(I, w[0], w[1]) && dlo_before(I, w[1], w[2]) && dlo_before(I, w[2], w[0]);
    if (t == "s2" && w.size() == 2 && w[0] != w[1]) {
        if (!dlo_before(I, w[0], w[1])) return false;
        tfz::QueryLedger L;
        Index m = tfz::median(I, w[0], w[1], L);
        bool left = dlo_before(I, w[0], m), right = dlo_before(I, m, w[1]);
        return I.literal_s2 ? (!left && !right) : !(left && right);
    }
    return false;
}

inline bool amgm_ok(const tfz::AmgmInstance& I, const std::string& t, const std::vector<Index>& w) {
    if (w.size() != 1 || !in(w[0], I.P())) return false;
    Index y = at(I.F, w[0]);
    if (t == "s1") return at(I.G, y) != w[0];
    if (t == "s2") {
        Index a = (y - 1) / (2 * I.N) + 1, b = (y - 1) % (2 * I.N) + 1;
        return !(at(I.C, a) == 1 && at(I.C, b) == 2);
    }
    return false;
}

inline bool dag_ok(const tfz::SinkOfDagInstance& I, const std::string& t, const std::vector<Index>& w) {
    if (w.size() != 1 || !in(w[0], I.N)) return false;
    Index v = w[0], s = at(I.succ, v);
    if (t == "s1") return v == 1 && s == 1;
    if (s == v) return false;
    if (t == "s2") return at(I.succ, s) == s;
    if (t == "s3") return at(I.pot, s) <= at(I.pot, v);
    return false;
}

inline bool pigeon_ok(const tfz::WeakPigeonInstance& I, const std::string& t, const std::vector<Index>& w) {
    Index dom = Index{1} << I.n;
    return t == "s1" && w.size() == 2 && in(w[0], dom) && in(w[1], dom) && w[0] != w[1] &&
           at(I.h, w[0]) == at(I.h, w[1]);
}

inline int word_length(Index V) {
    int k = 0;
    while ((Index{1} << k) < V) ++k;
    return k + 1;
}

// Follows the word from v*; a vertex with two bottom pointers is a leaf.
inline bool btree_ok(const tfz::BTreeLeafInstance& I, const std::string& t, const std::vector<Index>& w) {
    int len = word_length(I.V);
    if (t != "s1" || w.size() != 1 || !in(w[0], Index{1} << len)) return false;
    Index bot = I.V + 1, cur = I.v_star;
    for (int step = 0;; ++step) {
        Index l = at(I.Lp, cur), r = at(I.Rp, cur);
        if (l == bot && r == bot) return true;
        if (step == len) return false;
        Index nxt = ((w[0] - 1) >> (len - 1 - step)) & 1 ? r : l;
        if (nxt == bot) return false;
        cur = nxt;
    }
}

inline bool accepts(const tfz::Instance& inst, const Solution& s) {
    if (auto* p = std::get_if<tfz::LossyInstance>(&inst)) return s.problem == "lossy" && lossy_ok(*p, s.variant, s.witness);
    if (auto* p = std::get_if<tfz::EmptyChildInstance>(&inst))
        return s.problem == "empty-child" && ec_ok(*p, s.variant, s.witness);
    if (auto* p = std::get_if<tfz::NephewInstance>(&inst))
        return s.problem == "nephew" && nephew_ok(*p, s.variant, s.witness);
    if (auto* p = std::get_if<tfz::DloInstance>(&inst)) return s.problem == "dlo" && dlo_ok(*p, s.variant, s.witness);
    if (auto* p = std::get_if<tfz::AmgmInstance>(&inst)) return s.problem == "amgm" && amgm_ok(*p, s.variant, s.witness);
    if (auto* p = std::get_if<tfz::MeteredLineInstance>(&inst))
        return s.problem == "metered-line" && line_ok(*p, s.variant, s.witness);
    if (auto* p = std::get_if<tfz::SinkOfDagInstance>(&inst))
        return s.problem == "sink-of-dag" && dag_ok(*p, s.variant, s.witness);
    if (auto* p = std::get_if<tfz::WeakPigeonInstance>(&inst))
        return s.problem == "weak-pigeon" && pigeon_ok(*p, s.variant, s.witness);
    if (auto* p = std::get_if<tfz::BTreeLeafInstance>(&inst))
        return s.problem == "btree-leaf" && btree_ok(*p, s.variant, s.witness);
    if (auto* p = std::get_if<tfz::LossyLineInstance>(&inst)) {
        if (s.problem != "lossy+line") return false;
        auto dot = s.variant.find('.');
        if (dot == std::string::npos) return false;
        std::string part = s.variant.substr(0, dot), tag = s.variant.substr(dot + 1);
        if (part == "lossy") return lossy_ok(p->lossy, tag, s.witness);
        if (part == "line") return line_ok(p->line, tag, s.witness);
    }
    return false;
}

// Witnesses that name the same object in different orders are folded together.
inline Solution canonical(Solution s) {
    if (s.problem == "weak-pigeon" && s.witness.size() == 2) std::sort(s.witness.begin(), s.witness.end());
    if (s.problem == "dlo" && s.variant == "s1" && s.witness.size() == 3)
        std::rotate(s.witness.begin(), std::min_element(s.witness.begin(), s.witness.end()), s.witness.end());
    return s;
}

inline std::set<Solution> brute(const tfz::Instance& inst) {
    std::set<Solution> out;
    auto single = [&](const std::string& problem, const std::vector<std::string>& tags, Index hi) {
        for (const auto& t : tags)
            for (Index x = 1; x <= hi; ++x) {
                Solution s{problem, t, {x}};
                if (accepts(inst, s)) out.insert(s);
            }
    };
    if (auto* p = std::get_if<tfz::LossyInstance>(&inst)) single("lossy", {"s1", "s2"}, p->M);
    if (auto* p = std::get_if<tfz::EmptyChildInstance>(&inst)) single("empty-child", {"s1", "s2", "s2a", "s3", "s4"}, p->V);
    if (auto* p = std::get_if<tfz::NephewInstance>(&inst)) single("nephew", {"s1", "s2", "s3", "s4"}, p->V);
    if (auto* p = std::get_if<tfz::AmgmInstance>(&inst)) single("amgm", {"s1", "s2"}, p->P());
    if (auto* p = std::get_if<tfz::MeteredLineInstance>(&inst))
        single("metered-line", {"s1", "s2", "s3", "s4", "s5", "s6"}, p->N);
    if (auto* p = std::get_if<tfz::SinkOfDagInstance>(&inst)) single("sink-of-dag", {"s1", "s2", "s3"}, p->N);
    if (auto* p = std::get_if<tfz::BTreeLeafInstance>(&inst)) single("btree-leaf", {"s1"}, Index{1} << word_length(p->V));
    if (auto* p = std::get_if<tfz::DloInstance>(&inst)) {
        for (Index x = 1; x <= p->N; ++x)
            for (Index y = 1; y <= p->N; ++y) {
                if (x == y) continue;
                Solution s2{"dlo", "s2", {x, y}};
                if (accepts(inst, s2)) out.insert(s2);
                for (Index z = x + 1; z <= p->N; ++z) {
                    if (z == y || y < x) continue;
                    Solution s1{"dlo", "s1", {x, y, z}};
                    if (accepts(inst, s1)) out.insert(s1);
                }
            }
    }
    if (auto* p = std::get_if<tfz::WeakPigeonInstance>(&inst)) {
        std::map<Index, std::vector<Index>> holes;
        for (Index x = 1; x <= (Index{1} << p->n); ++x) holes[at(p->h, x)].push_back(x);
        for (const auto& [h, xs] : holes)
            for (std::size_t a = 0; a < xs.size(); ++a)
                for (std::size_t b = a + 1; b < xs.size(); ++b) out.insert(Solution{"weak-pigeon", "s1", {xs[a], xs[b]}});
    }
    if (auto* p = std::get_if<tfz::LossyLineInstance>(&inst)) {
        for (const auto& s : brute(tfz::Instance{p->lossy})) out.insert(Solution{"lossy+line", "lossy." + s.variant, s.witness});
        for (const auto& s : brute(tfz::Instance{p->line})) out.insert(Solution{"lossy+line", "line." + s.variant, s.witness});
    }
    return out;
}

inline std::set<Solution> canonical_set(const std::vector<Solution>& v) {
    std::set<Solution> out;
    for (const auto& s : v) out.insert(canonical(s));
    return out;
}

// Distance to the cycle of the functional graph, by iterating from each vertex.
inline std::vector<Index> levels(const tfz::FiniteFunction& f) {
    Index V = f.domain_size();
    std::vector<Index> next(static_cast<std::size_t>(V + 1)), lvl(static_cast<std::size_t>(V + 1));
    for (Index v = 1; v <= V; ++v) next[v] = at(f, v);
    std::vector<bool> cyc(static_cast<std::size_t>(V + 1));
    for (Index v = 1; v <= V; ++v) {
        Index u = v;
        for (Index k = 0; k < V; ++k) u = next[u];  // V steps always land on a cycle
        Index c = u;
        do {
            cyc[c] = true;
            c = next[c];
        } while (c != u);
    }
    for (Index v = 1; v <= V; ++v) {
        Index d = 0, u = v;
        while (!cyc[u]) {
            u = next[u];
            ++d;
        }
        lvl[v] = d;
    }
    return lvl;
}

// Tree evaluation by direct pointer chasing; -1 for bottom.
inline int tree_label(const tfz::DecisionTree& T, tfz::Assignment x) {
    int u = T.root;
    while (T.nodes[static_cast<std::size_t>(u)].var != 0) {
        const auto& nd = T.nodes[static_cast<std::size_t>(u)];
        u = (x >> (nd.var - 1)) & 1 ? nd.hi : nd.lo;
    }
    return T.nodes[static_cast<std::size_t>(u)].label;
}

inline bool clause_false(const tfz::Clause& c, tfz::Assignment x) {
    for (int lit : c) {
        bool v = (x >> (std::abs(lit) - 1)) & 1;
        if (lit > 0 ? v : !v) return false;
    }
    return true;
}

inline bool cnf_true(const tfz::Cnf& F, tfz::Assignment x) {
    for (const auto& c : F.clauses)
        if (clause_false(c, x)) return false;
    return true;
}

inline bool unsat(const tfz::Cnf& F) {
    for (tfz::Assignment x = 0; x < (tfz::Assignment{1} << F.n); ++x)
        if (cnf_true(F, x)) return false;
    return true;
}

}  // namespace ref
