#include <algorithm>
#include <numeric>

#include "tfz/problems.hpp"

namespace tfz {

namespace {

std::vector<Index> random_table(Index dom, Index cod, Rng& rng) {
    std::vector<Index> t(static_cast<std::size_t>(dom));
    for (auto& v : t) v = rng.uniform(1, cod);
    return t;
}

std::vector<Index> permutation(Index n, Rng& rng) {
    std::vector<Index> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 1);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

FiniteFunction tab(const std::string& name, std::vector<Index> t, Index cod) {
    return FiniteFunction::table(name, std::move(t), cod);
}

LossyInstance gen_lossy(const GenSpec& s, Rng& rng, std::vector<Solution>* planted) {
    Index N = s.size, M = s.M ? s.M : 2 * s.size;
    if (N < 1 || M <= N) throw UsageError("lossy needs 1 <= N < M");
    LossyInstance I;
    I.N = N;
    I.M = M;
    I.bijective = s.variant == "bijective";
    if (s.mode == "uniform") {
        I.f = tab("f", random_table(N, M, rng), M);
        I.g = tab("g", random_table(M, N, rng), N);
        return I;
    }
    auto perm = permutation(M, rng);
    std::vector<Index> f(static_cast<std::size_t>(N)), g(static_cast<std::size_t>(M), 0);
    for (Index y = 1; y <= N; ++y) {
        f[y - 1] = perm[y - 1];
        g[perm[y - 1] - 1] = y;
    }
    for (Index x = 1; x <= M; ++x)
        if (g[x - 1] == 0) {
            g[x - 1] = rng.uniform(1, N);
            if (planted) planted->push_back({"lossy", "s1", {x}});
        }
    I.f = tab("f", f, M);
    I.g = tab("g", g, N);
    return I;
}

// Children of heap-ordered vertex v exist when 2v+1 <= V; a lone left child is isolated.
EmptyChildInstance heap_tree(Index V, EcVariant variant) {
    std::vector<Index> F(V), L(V), R(V), H(V);
    for (Index v = 1; v <= V; ++v) {
        bool internal = 2 * v + 1 <= V;
        bool orphan = v > 1 && v % 2 == 0 && v + 1 > V;
        F[v - 1] = v == 1 || orphan ? v : v / 2;
        L[v - 1] = internal ? 2 * v : v;
        R[v - 1] = internal ? 2 * v + 1 : v;
        H[v - 1] = std::min<Index>(V, ceil_log2(v + 1));
    }
    EmptyChildInstance I;
    I.V = V;
    I.variant = variant;
    I.F = tab("F", F, V);
    I.L = tab("L", L, V);
    I.R = tab("R", R, V);
    if (ec_has_heights(variant)) I.H = tab("H", H, V);
    return I;
}

EmptyChildInstance random_tree_ec(Index V, EcVariant variant, Rng& rng) {
    // grow a full binary tree by splitting random leaves, then relabel keeping the root at 1
    Index k = (V - 1) / 2;
    k = rng.uniform(0, k);
    std::vector<Index> parent{0}, left{0}, right{0}, depth{1};
    std::vector<Index> leaves{0};
    for (Index step = 0; step < k; ++step) {
        std::size_t pick = static_cast<std::size_t>(rng.uniform(0, static_cast<Index>(leaves.size()) - 1));
        Index v = leaves[pick];
        leaves.erase(leaves.begin() + static_cast<std::ptrdiff_t>(pick));
        for (int c = 0; c < 2; ++c) {
            Index id = static_cast<Index>(parent.size());
            parent.push_back(v);
            left.push_back(id);
            right.push_back(id);
            depth.push_back(depth[v] + 1);
            (c == 0 ? left[v] : right[v]) = id;
            leaves.push_back(id);
        }
    }
    auto perm = permutation(V, rng);
    auto pos1 = std::find(perm.begin(), perm.end(), 1);
    std::iter_swap(perm.begin(), pos1);
    std::vector<Index> F(V), L(V), R(V), H(V);
    for (Index v = 1; v <= V; ++v) {
        F[v - 1] = L[v - 1] = R[v - 1] = v;
        H[v - 1] = rng.uniform(1, V);
    }
    for (std::size_t t = 0; t < parent.size(); ++t) {
        Index v = perm[t];
        F[v - 1] = perm[static_cast<std::size_t>(parent[t])];
        L[v - 1] = perm[static_cast<std::size_t>(left[t])];
        R[v - 1] = perm[static_cast<std::size_t>(right[t])];
        H[v - 1] = std::min<Index>(V, depth[t]);
    }
    EmptyChildInstance I;
    I.V = V;
    I.variant = variant;
    I.F = tab("F", F, V);
    I.L = tab("L", L, V);
    I.R = tab("R", R, V);
    if (ec_has_heights(variant)) I.H = tab("H", H, V);
    return I;
}

EmptyChildInstance gen_ec(const GenSpec& s, Rng& rng) {
    Index V = s.size;
    if (V < 1) throw UsageError("empty-child needs V >= 1");
    EcVariant var = s.variant.empty() ? EcVariant::standard : ec_variant_from_string(s.variant);
    if (s.mode == "structured") return heap_tree(V, var);
    if (s.mode == "planted") return random_tree_ec(V, var, rng);
    EmptyChildInstance I;
    I.V = V;
    I.variant = var;
    I.F = tab("F", random_table(V, V, rng), V);
    I.L = tab("L", random_table(V, V, rng), V);
    I.R = tab("R", random_table(V, V, rng), V);
    if (ec_has_heights(var)) I.H = tab("H", random_table(V, V, rng), V);
    return I;
}

NephewInstance gen_nephew(const GenSpec& s, Rng& rng) {
    if (s.mode == "structured") throw UsageError("nephew instances support uniform and planted modes");
    Index V = s.size;
    if (V < 1) throw UsageError("nephew needs V >= 1");
    NephewInstance I;
    I.V = V;
    if (s.mode == "planted") {
        // f is a random recursive tree rooted at 1 (self-loop); g(u) is a child of a sibling of u when one exists
        auto perm = permutation(V, rng);
        std::iter_swap(perm.begin(), std::find(perm.begin(), perm.end(), 1));
        std::vector<Index> f(static_cast<std::size_t>(V)), g(static_cast<std::size_t>(V));
        std::vector<std::vector<Index>> kids(static_cast<std::size_t>(V + 1));
        f[0] = 1;
        for (Index t = 1; t < V; ++t) {
            Index v = perm[static_cast<std::size_t>(t)], p = perm[static_cast<std::size_t>(rng.uniform(0, t - 1))];
            f[v - 1] = p;
            kids[static_cast<std::size_t>(p)].push_back(v);
        }
        for (Index u = 1; u <= V; ++u) {
            std::vector<Index> nephews;
            if (u == 1) {
                for (Index c : kids[1])
                    for (Index w : kids[static_cast<std::size_t>(c)]) nephews.push_back(w);
            } else {
                for (Index sib : kids[static_cast<std::size_t>(f[u - 1])])
                    if (sib != u)
                        for (Index w : kids[static_cast<std::size_t>(sib)]) nephews.push_back(w);
                if (f[u - 1] == 1) nephews.insert(nephews.end(), kids[1].begin(), kids[1].end());
                std::erase(nephews, u);
            }
            g[u - 1] = nephews.empty() ? rng.uniform(1, V)
                                       : nephews[static_cast<std::size_t>(rng.uniform(0, static_cast<Index>(nephews.size()) - 1))];
        }
        I.f = tab("f", f, V);
        I.g = tab("g", g, V);
        if (s.variant == "inverse") {
            std::vector<Index> inv(static_cast<std::size_t>(V), V + 1);
            for (Index v = 1; v <= V; ++v)
                if (!kids[static_cast<std::size_t>(v)].empty()) inv[v - 1] = kids[static_cast<std::size_t>(v)].front();
            I.f_inv = tab("finv", inv, V + 1);
        }
        return I;
    }
    I.f = tab("f", random_table(V, V, rng), V);
    I.g = tab("g", random_table(V, V, rng), V);
    if (s.variant == "inverse") I.f_inv = tab("finv", random_table(V, V + 1, rng), V + 1);
    return I;
}

DloInstance gen_dlo(const GenSpec& s, Rng& rng) {
    Index N = s.size;
    if (N < 2) throw UsageError("dlo needs N >= 2");
    Index pairs = N * (N - 1) / 2;
    DloInstance I;
    I.N = N;
    if (s.mode == "uniform") {
        I.order = tab("order", random_table(pairs, 2, rng), 2);
        I.med = tab("med", random_table(pairs, N, rng), N);
        return I;
    }
    auto by_rank = permutation(N, rng);  // by_rank[r] = element of rank r (0-based rank)
    std::vector<Index> rank(static_cast<std::size_t>(N + 1));
    for (Index r = 0; r < N; ++r) rank[by_rank[r]] = r;
    std::vector<Index> order(static_cast<std::size_t>(pairs)), med(static_cast<std::size_t>(pairs));
    for (Index x = 1; x <= N; ++x)
        for (Index y = x + 1; y <= N; ++y) {
            Index p = unordered_pair_index(x, y, N) - 1;
            order[p] = rank[x] < rank[y] ? 1 : 2;
            Index lo = std::min(rank[x], rank[y]), hi = std::max(rank[x], rank[y]);
            med[p] = s.med == "lower" ? by_rank[lo] : by_rank[(lo + hi) / 2];
        }
    I.order = tab("order", order, 2);
    I.med = tab("med", med, N);
    return I;
}

AmgmInstance gen_amgm(const GenSpec& s, Rng& rng) {
    Index N = s.size;
    if (N < 1 || s.c_den < 1 || s.c_num <= s.c_den) throw UsageError("amgm needs N >= 1 and c > 1");
    if ((s.c_num * N * N) % s.c_den != 0) throw UsageError("c*N^2 must be an integer");
    AmgmInstance I;
    I.N = N;
    I.c_num = s.c_num;
    I.c_den = s.c_den;
    Index P = I.P(), sq = 4 * N * N;
    if (s.mode == "uniform") {
        I.C = tab("C", random_table(2 * N, 2, rng), 2);
        I.F = tab("F", random_table(P, sq, rng), sq);
        I.G = tab("G", random_table(sq, P, rng), P);
        return I;
    }
    std::vector<Index> C(static_cast<std::size_t>(2 * N), 1);
    auto perm = permutation(2 * N, rng);
    for (Index k = 0; k < N; ++k) C[perm[k] - 1] = 2;
    std::vector<Index> F(static_cast<std::size_t>(P)), G(static_cast<std::size_t>(sq), 0);
    auto cells = permutation(sq, rng);
    for (Index x = 1; x <= P; ++x) {
        F[x - 1] = x <= sq ? cells[x - 1] : rng.uniform(1, sq);
        if (x <= sq) G[F[x - 1] - 1] = x;
    }
    for (auto& gv : G)
        if (gv == 0) gv = rng.uniform(1, P);
    I.C = tab("C", C, 2);
    I.F = tab("F", F, sq);
    I.G = tab("G", G, P);
    return I;
}

MeteredLineInstance gen_line(const GenSpec& s, Rng& rng) {
    Index N = s.size;
    if (N < 1) throw UsageError("metered-line needs N >= 1");
    MeteredLineInstance I;
    I.N = N;
    I.variant = s.variant == "end" ? LineVariant::end : LineVariant::sink;
    if (s.mode == "uniform") {
        I.S = tab("S", random_table(N, N, rng), N);
        I.P = tab("P", random_table(N, N, rng), N);
        I.V = tab("V", random_table(N, N + 1, rng), N + 1);
        return I;
    }
    std::vector<Index> S(N), P(N), V(N, 1);
    for (Index x = 1; x <= N; ++x) S[x - 1] = P[x - 1] = x;
    auto perm = permutation(N, rng);
    std::iter_swap(perm.begin(), std::find(perm.begin(), perm.end(), 1));
    Index k = rng.uniform(1, N);
    for (Index t = 0; t < k; ++t) {
        Index v = perm[t];
        V[v - 1] = t + 2;
        if (t + 1 < k) {
            S[v - 1] = perm[t + 1];
            P[perm[t + 1] - 1] = v;
        }
    }
    I.S = tab("S", S, N);
    I.P = tab("P", P, N);
    I.V = tab("V", V, N + 1);
    return I;
}

SinkOfDagInstance gen_dag(const GenSpec& s, Rng& rng) {
    Index N = s.size;
    if (N < 1) throw UsageError("sink-of-dag needs N >= 1");
    SinkOfDagInstance I;
    I.N = N;
    if (s.mode == "uniform") {
        I.succ = tab("succ", random_table(N, N, rng), N);
        I.pot = tab("pot", random_table(N, N, rng), N);
        return I;
    }
    std::vector<Index> succ(N), pot(N, 1);
    for (Index x = 1; x <= N; ++x) succ[x - 1] = x;
    auto perm = permutation(N, rng);
    std::iter_swap(perm.begin(), std::find(perm.begin(), perm.end(), 1));
    Index k = rng.uniform(1, N);
    for (Index t = 0; t < k; ++t) {
        pot[perm[t] - 1] = t + 1;
        if (t + 1 < k) succ[perm[t] - 1] = perm[t + 1];
    }
    I.succ = tab("succ", succ, N);
    I.pot = tab("pot", pot, N);
    return I;
}

WeakPigeonInstance gen_pigeon(const GenSpec& s, Rng& rng) {
    if (s.size < 1 || s.size > 24) throw UsageError("weak-pigeon needs 1 <= n <= 24");
    WeakPigeonInstance I;
    I.n = static_cast<int>(s.size);
    Index dom = Index{1} << I.n, cod = dom / 2;
    if (s.mode == "uniform") {
        I.h = tab("h", random_table(dom, cod, rng), cod);
        return I;
    }
    std::vector<Index> h(static_cast<std::size_t>(dom));
    for (Index x = 1; x <= dom; ++x) h[x - 1] = (x + 1) / 2;
    I.h = tab("h", h, cod);
    return I;
}

LossyLineInstance gen_lossy_line(const GenSpec& s, Rng& rng) {
    GenSpec a = s;
    a.M = 0;
    GenSpec b = s;
    b.size = s.M ? s.M : 3;
    b.variant = s.variant == "bijective" || s.variant == "end" ? "end" : "sink";
    a.variant = b.variant == "end" ? "bijective" : "";
    LossyLineInstance I;
    I.lossy = gen_lossy(a, rng, nullptr);
    I.line = gen_line(b, rng);
    return I;
}

}  // namespace

BTreeLeafInstance random_btreeleaf(Index V, Rng& rng, Index internal_nodes) {
    if (V < 1) throw UsageError("btree-leaf needs V >= 1");
    Index kmax = (V - 1) / 2;
    Index k = internal_nodes < 0 ? rng.uniform(0, kmax) : std::min(internal_nodes, kmax);
    std::vector<Index> left{0}, right{0};
    std::vector<Index> leaves{0};
    for (Index step = 0; step < k; ++step) {
        std::size_t pick = static_cast<std::size_t>(rng.uniform(0, static_cast<Index>(leaves.size()) - 1));
        Index v = leaves[pick];
        leaves[pick] = leaves.back();
        leaves.pop_back();
        for (int c = 0; c < 2; ++c) {
            Index id = static_cast<Index>(left.size());
            left.push_back(-1);
            right.push_back(-1);
            (c == 0 ? left[v] : right[v]) = id;
            leaves.push_back(id);
        }
    }
    auto perm = permutation(V, rng);
    Index bot = bottom(V);
    std::vector<Index> Lp = random_table(V, V + 1, rng), Rp = random_table(V, V + 1, rng);
    for (std::size_t t = 0; t < left.size(); ++t) {
        Index v = perm[t];
        if (left[t] <= 0) {
            Lp[v - 1] = Rp[v - 1] = bot;
        } else {
            Lp[v - 1] = perm[static_cast<std::size_t>(left[t])];
            Rp[v - 1] = perm[static_cast<std::size_t>(right[t])];
        }
    }
    BTreeLeafInstance I;
    I.V = V;
    I.v_star = perm[0];
    I.Lp = tab("Lp", Lp, V + 1);
    I.Rp = tab("Rp", Rp, V + 1);
    I.promise_checked = btreeleaf_promise_holds(I);
    if (!I.promise_checked) throw Error("random_btreeleaf produced an instance violating the promise");
    return I;
}

Generated gen_instance(const GenSpec& s) {
    if (s.mode != "uniform" && s.mode != "planted" && s.mode != "structured")
        throw UsageError("unknown generation mode '" + s.mode + "'");
    Rng rng(s.seed);
    Generated out;
    const std::string& p = s.problem;
    if (p == "lossy") {
        std::vector<Solution> planted;
        out.instance = gen_lossy(s, rng, &planted);
        if (s.mode != "uniform") out.planted = planted;
    } else if (p == "empty-child") {
        out.instance = gen_ec(s, rng);
    } else if (p == "nephew") {
        out.instance = gen_nephew(s, rng);
    } else if (p == "dlo") {
        out.instance = gen_dlo(s, rng);
    } else if (p == "amgm") {
        out.instance = gen_amgm(s, rng);
    } else if (p == "metered-line") {
        out.instance = gen_line(s, rng);
    } else if (p == "sink-of-dag") {
        out.instance = gen_dag(s, rng);
    } else if (p == "weak-pigeon") {
        out.instance = gen_pigeon(s, rng);
    } else if (p == "btree-leaf") {
        out.instance = random_btreeleaf(s.size, rng);
    } else if (p == "lossy+line") {
        out.instance = gen_lossy_line(s, rng);
    } else {
        throw UsageError("unknown problem '" + p + "'");
    }
    if (s.mode != "uniform" && instance_size(out.instance) <= kDefaultBruteCap) {
        auto found = brute_solve(out.instance);
        if (found.empty()) throw Error("generated instance has no solution; totality violated");
        if (out.planted && *out.planted != found)
            throw Error("planted solution set differs from the brute-force set");
        out.planted = found;
    }
    return out;
}

}  // namespace tfz
