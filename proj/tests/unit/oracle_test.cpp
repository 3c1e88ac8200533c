#include <doctest.h>

#include "tfz/oracle.hpp"

using namespace tfz;

namespace {

std::vector<Index> values(const FiniteFunction& fn) {
    QueryLedger L;
    std::vector<Index> out;
    for (Index x = 1; x <= fn.domain_size(); ++x) out.push_back(fn(x, L));
    return out;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("tables") {
    QueryLedger L;
    auto c = make_table_fn({1, 1}, 2, 1);
    CHECK(values(c) == std::vector<Index>{1, 1});
    auto swap = make_table_fn({2, 1}, 2, 2);
    CHECK(eval(swap, 1, L) == 2);
    auto id = make_table_fn({1, 2, 3}, 3, 3);
    CHECK(values(id) == std::vector<Index>{1, 2, 3});

    CHECK_THROWS_AS(make_table_fn({1, 2}, 3, 3), UsageError);
    CHECK_THROWS_AS(make_table_fn({1, 4, 2}, 3, 3), UsageError);
    CHECK_THROWS_AS(make_table_fn({0, 1}, 2, 2), UsageError);
}

TEST_CASE("eval counts every read") {
    auto id = make_table_fn({1, 2, 3, 4}, 4, 4, "id");
    QueryLedger L;
    CHECK(eval(id, 3, L) == 3);
    CHECK(L.total() == 1);
    eval(id, 3, L);
    eval(id, 3, L);
    CHECK(L.total() == 3);
    CHECK(L.count("id") == 3);
    CHECK_THROWS_AS(eval(id, 0, L), UsageError);
    CHECK_THROWS_AS(eval(id, 5, L), UsageError);
}

TEST_CASE("rules count only nested reads") {
    auto f = make_table_fn({2, 3, 1}, 3, 3, "f");
    auto g = make_table_fn({3, 3, 2}, 3, 3, "g");
    auto gf = FiniteFunction::rule("gf", 3, 3, [f, g](Index x, QueryLedger& L) { return g(f(x, L), L); });
    QueryLedger L;
    CHECK(gf(1, L) == 3);
    CHECK(L.total() == 2);
    CHECK(L.count("f") == 1);
    CHECK(L.count("g") == 1);
    CHECK(L.count("gf") == 0);

    auto m = gf.materialize(L);
    CHECK(m.is_table());
    CHECK(values(m) == std::vector<Index>{3, 2, 3});
}

TEST_CASE("eval cache") {
    auto f = make_table_fn({2, 1}, 2, 2);
    EvalCache cache;
    QueryLedger L;
    cache(f, 1, L);
    cache(f, 1, L);
    cache(f, 2, L);
    CHECK(L.total() == 2);
}

TEST_CASE("level layout") {
    auto s = tree_band_layout(2, 3);
    CHECK(s.N == 4);
    CHECK(level_index(s, 1, 1) == 1);
    CHECK(level_index(s, 3, 2) == 5);
    CHECK_THROWS(level_index(s, 1, 2));

    for (int n = 1; n <= 6; ++n) {
        for (Index M : {Index{1}, Index{3}, Index{4}}) {
            auto t = tree_band_layout(n, M);
            for (Index k = 1; k <= t.total(); ++k) {
                auto [i, j] = level_unindex(t, k);
                REQUIRE(level_index(t, i, j) == k);
            }
        }
        auto d = tree_double_band_layout(n);
        Index count = 0;
        for (int i = 1; i <= d.levels(); ++i)
            for (Index j = 1; j <= d.width(i); ++j) {
                Index k = level_index(d, i, j);
                REQUIRE(k == ++count);
                REQUIRE(level_unindex(d, k) == std::pair<int, Index>{i, j});
            }
        CHECK(count == d.total());
    }
}

TEST_CASE("lift_product") {
    auto swap = make_table_fn({2, 1}, 2, 2);
    CHECK(values(lift_product(swap, 1)) == values(swap));
    auto id3 = make_table_fn({1, 2, 3}, 3, 3);
    CHECK(values(lift_product(id3, 2)) == std::vector<Index>{1, 2, 3, 4, 5, 6});
    auto f = make_table_fn({2, 2}, 2, 2);
    auto lf = lift_product(f, 2);
    QueryLedger L;
    CHECK(lf(pair_index(1, 2, 2), L) == 4);
    CHECK(values(lf) == std::vector<Index>{3, 4, 3, 4});
}

TEST_CASE("disjoint_union") {
    auto id2 = make_table_fn({1, 2}, 2, 2);
    auto id3 = make_table_fn({1, 2, 3}, 3, 3);
    CHECK(values(disjoint_union(id2, id3)) == std::vector<Index>{1, 2, 3, 4, 5});
    auto swap = make_table_fn({2, 1}, 2, 2);
    auto id1 = make_table_fn({1}, 1, 1);
    CHECK(values(disjoint_union(swap, id1)) == std::vector<Index>{2, 1, 3});
    auto empty = make_table_fn({}, 0, 0);
    auto u = disjoint_union(swap, empty);
    CHECK(u.domain_size() == 2);
    CHECK(values(u) == values(swap));
}

TEST_CASE("ceil_log2") {
    CHECK(ceil_log2(1) == 0);
    CHECK(ceil_log2(2) == 1);
    CHECK(ceil_log2(3) == 2);
    CHECK(ceil_log2(4096) == 12);
}

}
