#include <doctest.h>

#include <algorithm>
#include <map>

#include "tfz/problems.hpp"

using namespace tfz;

namespace {

FiniteFunction tab(const char* name, std::vector<Index> v, Index cod) {
    Index n = static_cast<Index>(v.size());
    return make_table_fn(v, n, cod, name);
}

LossyInstance tiny_lossy() {
    LossyInstance I;
    I.N = 1;
    I.M = 2;
    I.f = tab("f", {1}, 2);
    I.g = tab("g", {1, 1}, 1);
    return I;
}

}  // namespace

TEST_SUITE("problems") {

TEST_CASE("verify degenerate instances") {
    CHECK(verify(tiny_lossy(), {"lossy", "s1", {2}}));
    CHECK_FALSE(verify(tiny_lossy(), {"lossy", "s1", {1}}));
    CHECK_FALSE(verify(tiny_lossy(), {"lossy", "s1", {3}}));
    CHECK_THROWS_AS(verify(tiny_lossy(), {"lossy", "s2", {1}}), UsageError);
    CHECK_THROWS_AS(verify(tiny_lossy(), {"nephew", "s1", {1}}), UsageError);

    EmptyChildInstance E;
    E.V = 1;
    E.F = tab("F", {1}, 1);
    E.L = tab("L", {1}, 1);
    E.R = tab("R", {1}, 1);
    CHECK(verify(E, {"empty-child", "s2", {1}}));

    NephewInstance Nw;
    Nw.V = 1;
    Nw.f = tab("f", {1}, 1);
    Nw.g = tab("g", {1}, 1);
    CHECK(verify(Nw, {"nephew", "s2", {1}}));
    CHECK_FALSE(verify(Nw, {"nephew", "s1", {1}}));
}

TEST_CASE("isolated empty-child vertex is not a solution") {
    EmptyChildInstance E;
    E.V = 3;
    E.F = tab("F", {1, 1, 3}, 3);
    E.L = tab("L", {2, 2, 3}, 3);
    E.R = tab("R", {2, 2, 3}, 3);
    CHECK_FALSE(verify(E, {"empty-child", "s1", {3}}));
    // 1 has the same child twice
    CHECK(verify(E, {"empty-child", "s1", {1}}));
}

TEST_CASE("brute_solve small cases") {
    auto s = brute_solve(tiny_lossy());
    REQUIRE(s.size() == 1);
    CHECK(s[0] == Solution{"lossy", "s1", {2}});

    DloInstance D;
    D.N = 2;
    D.order = tab("order", {1}, 2);
    D.med = tab("med", {1}, 2);
    auto d = brute_solve(D);
    REQUIRE(d.size() == 1);
    CHECK(d[0] == Solution{"dlo", "s2", {1, 2}});

    WeakPigeonInstance W;
    W.n = 1;
    W.h = tab("h", {1, 1}, 1);
    auto w = brute_solve(W);
    REQUIRE(!w.empty());
    for (const auto& sol : w) {
        CHECK(sol.witness.size() == 2);
        CHECK(verify(W, sol));
    }
    CHECK(std::find(w.begin(), w.end(), Solution{"weak-pigeon", "s1", {1, 2}}) != w.end());
}

TEST_CASE("levels") {
    auto id = tab("f", {1, 2, 3}, 3);
    auto l0 = compute_levels(id);
    CHECK(std::vector<Index>(l0.begin() + 1, l0.end()) == std::vector<Index>{0, 0, 0});
    auto lv = compute_levels(tab("f", {2, 2}, 2));
    CHECK(lv[2] == 0);
    CHECK(lv[1] == 1);
}

TEST_CASE("levels of the 4x7 grid example") {
    // Node (r, c) is vertex 7r + c + 1.
    auto v = [](int r, int c) { return Index{7 * r + c + 1}; };
    std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> edges = {
        {{0, 0}, {1, 1}}, {{0, 1}, {0, 2}}, {{0, 2}, {1, 2}}, {{0, 3}, {1, 3}}, {{0, 4}, {1, 5}},
        {{0, 5}, {1, 5}}, {{0, 6}, {1, 6}}, {{1, 0}, {1, 1}}, {{1, 1}, {1, 2}}, {{1, 2}, {1, 3}},
        {{1, 3}, {2, 4}}, {{1, 4}, {1, 3}}, {{1, 5}, {1, 4}}, {{1, 6}, {1, 5}}, {{2, 0}, {1, 1}},
        {{2, 1}, {1, 1}}, {{2, 2}, {2, 3}}, {{2, 3}, {2, 4}}, {{2, 4}, {2, 5}}, {{2, 5}, {1, 6}},
        {{2, 6}, {3, 6}}, {{3, 0}, {3, 1}}, {{3, 1}, {3, 0}}, {{3, 2}, {3, 1}}, {{3, 3}, {3, 3}},
        {{3, 4}, {3, 4}}, {{3, 5}, {3, 4}}, {{3, 6}, {3, 5}},
    };
    std::vector<Index> f(28);
    for (auto [a, b] : edges) f[v(a.first, a.second) - 1] = v(b.first, b.second);
    const int expected[4][7] = {
        {3, 3, 2, 1, 1, 1, 1},
        {3, 2, 1, 0, 0, 0, 0},
        {3, 3, 2, 1, 0, 0, 3},
        {0, 0, 1, 0, 0, 1, 2},
    };
    auto lv = compute_levels(tab("f", f, 28));
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 7; ++c) CHECK(lv[v(r, c)] == expected[r][c]);
}

TEST_CASE("generation is deterministic") {
    GenSpec s{"lossy", 8, "uniform", 7};
    auto a = gen_instance(s);
    auto b = gen_instance(s);
    QueryLedger L;
    const auto& la = std::get<LossyInstance>(a.instance);
    const auto& lb = std::get<LossyInstance>(b.instance);
    CHECK(la.f.materialize(L).table_values() == lb.f.materialize(L).table_values());
    CHECK(la.g.materialize(L).table_values() == lb.g.materialize(L).table_values());
    CHECK(brute_solve(a.instance) == brute_solve(b.instance));
}

TEST_CASE("structured empty-child has the leaves as solutions") {
    auto g = gen_instance({"empty-child", 15, "structured", 1});
    auto s = brute_solve(g.instance);
    std::vector<Solution> leaves;
    for (Index u = 8; u <= 15; ++u) leaves.push_back({"empty-child", "s1", {u}});
    CHECK(s == leaves);
}

TEST_CASE("structured dlo with lower medians") {
    GenSpec spec{"dlo", 8, "structured", 3};
    spec.med = "lower";
    auto g = gen_instance(spec);
    const auto& D = std::get<DloInstance>(g.instance);
    QueryLedger L;
    // recover the order by counting predecessors
    std::vector<Index> rank(9);
    for (Index x = 1; x <= 8; ++x)
        for (Index y = 1; y <= 8; ++y)
            if (x != y && precedes(D, y, x, L)) ++rank[x];
    std::vector<Index> by_rank(8);
    for (Index x = 1; x <= 8; ++x) by_rank[rank[x]] = x;
    for (int k = 0; k + 1 < 8; ++k) CHECK(verify(D, {"dlo", "s2", {by_rank[k], by_rank[k + 1]}}));
    CHECK(brute_solve(D).size() >= 7);
}

TEST_CASE("planted generators report the brute-force set") {
    for (const char* p : {"lossy", "empty-child", "nephew", "metered-line", "sink-of-dag"}) {
        auto g = gen_instance({p, 8, "planted", 5});
        REQUIRE(g.planted);
        CHECK(*g.planted == brute_solve(g.instance));
    }
}

TEST_CASE("btree-leaf walk") {
    Rng rng(4);
    auto I = random_btreeleaf(31, rng);
    CHECK(btreeleaf_promise_holds(I));
    Index words = Index{1} << btreeleaf_word_length(31);
    Index good = 0;
    QueryLedger L;
    for (Index w = 1; w <= words; ++w) good += btreeleaf_walk(I, w, L).leaf;
    CHECK(6 * good >= 5 * words);
    CHECK(static_cast<Index>(brute_solve(I).size()) == good);
}

}
