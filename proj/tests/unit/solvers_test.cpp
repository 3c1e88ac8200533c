#include <doctest.h>

#include <cmath>

#include "tfz/solvers.hpp"

using namespace tfz;

namespace {

FiniteFunction tab(const char* name, std::vector<Index> v, Index cod) {
    Index n = static_cast<Index>(v.size());
    return make_table_fn(v, n, cod, name);
}

template <class Solve>
int successes(Solve solve, int runs, std::uint64_t seed) {
    Rng rng(seed);
    int hits = 0;
    for (int k = 0; k < runs; ++k) {
        Rng sub = rng.split(static_cast<std::uint64_t>(k));
        hits += solve(sub).result.has_value();
    }
    return hits;
}

// |hits - p runs| within 4 standard deviations
bool near(int hits, int runs, double p) {
    double sd = std::sqrt(runs * p * (1 - p));
    return std::abs(hits - runs * p) <= 4 * sd + 1e-9;
}

}  // namespace

TEST_SUITE("solvers") {

TEST_CASE("boost_trials") {
    CHECK(boost_trials(0.5, 0.125) <= 3);
    CHECK(boost_trials(5.0 / 6.0, 1e-6) <= 8);
    CHECK(boost_trials(1.0, 0.5) == 1);
    CHECK_THROWS_AS(boost_trials(0.0, 0.5), UsageError);
    CHECK_THROWS_AS(boost_trials(0.5, 1.0), UsageError);
}

TEST_CASE("btree-leaf on a single vertex") {
    BTreeLeafInstance B;
    B.V = 1;
    B.Lp = tab("Lp", {2}, 2);
    B.Rp = tab("Rp", {2}, 2);
    CHECK(successes([&](Rng& r) { return solve_btreeleaf_random(B, r); }, 200, 1) == 200);
}

TEST_CASE("btree-leaf on a complete tree") {
    BTreeLeafInstance B;
    B.V = 7;
    B.Lp = tab("Lp", {2, 4, 6, 8, 8, 8, 8}, 8);
    B.Rp = tab("Rp", {3, 5, 7, 8, 8, 8, 8}, 8);
    // every word of length 4 passes through a leaf at depth 2
    CHECK(successes([&](Rng& r) { return solve_btreeleaf_random(B, r); }, 500, 2) == 500);

    Rng g(3);
    auto R = random_btreeleaf(200, g);
    Index words = Index{1} << btreeleaf_word_length(R.V);
    QueryLedger L;
    Index good = 0;
    for (Index w = 1; w <= words; ++w) good += btreeleaf_walk(R, w, L).leaf;
    double p = static_cast<double>(good) / static_cast<double>(words);
    CHECK(p >= 5.0 / 6.0);
    CHECK(near(successes([&](Rng& r) { return solve_btreeleaf_random(R, r); }, 10000, 4), 10000, p));
}

TEST_CASE("lossy success rates") {
    LossyInstance I;
    I.f = tab("f", {1}, 2);
    I.g = tab("g", {1, 1}, 1);
    CHECK(near(successes([&](Rng& r) { return solve_lossy_random(I, r); }, 4000, 5), 4000, 0.5));

    GenSpec s{"lossy", 4, "planted", 6};
    s.M = 6;
    auto P = std::get<LossyInstance>(gen_instance(s).instance);
    CHECK(near(successes([&](Rng& r) { return solve_lossy_random(P, r); }, 6000, 7), 6000, 2.0 / 6.0));
    Rng rng(8);
    for (int k = 0; k < 500; ++k) {
        auto o = solve_lossy_random(P, rng);
        if (o.result) CHECK(verify(P, *o.result));
    }
}

TEST_CASE("search-cnf") {
    Cnf all{3, {{1}, {2}, {3}}};
    auto S = search_of_cnf(all, 0);
    CHECK(successes([&](Rng& r) { return solve_searchF_random(S, r); }, 300, 9) == 300);

    Cnf half{1, {{1}, {-1}, {1}, {-1}}};
    auto H = search_of_cnf(half, 0);
    CHECK(near(successes([&](Rng& r) { return solve_searchF_random(H, r); }, 4000, 10), 4000, 0.5));
    Rng rng(11);
    for (int k = 0; k < 200; ++k) {
        auto o = solve_searchF_random(H, rng);
        if (o.result) CHECK(half.clauses[o.result->witness[0] - 1] == Clause{1});
    }
}

TEST_CASE("empty-child") {
    EmptyChildInstance E;
    E.V = 3;
    E.F = tab("F", {1, 1, 1}, 3);
    E.L = tab("L", {1, 2, 3}, 3);
    E.R = tab("R", {2, 2, 3}, 3);
    Rng rng(12);
    auto o = solve_ec_random(E, rng);
    REQUIRE(o.result);
    CHECK(*o.result == Solution{"empty-child", "s2", {1}});

    GenSpec s{"empty-child", 63, "structured", 0};
    auto T = std::get<EmptyChildInstance>(gen_instance(s).instance);
    int hits = successes([&](Rng& r) { return solve_ec_random(T, r); }, 1000, 13);
    CHECK(hits >= 833);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto U = std::get<EmptyChildInstance>(gen_instance({"empty-child", 16, "uniform", seed}).instance);
        for (int k = 0; k < 50; ++k) {
            auto out = solve_ec_random(U, rng);
            if (out.result) CHECK(verify(U, *out.result));
        }
    }
}

TEST_CASE("nephew") {
    Rng rng(14);
    int failures = 0;
    const int runs = 2000;
    for (int k = 0; k < runs; ++k) {
        auto I = std::get<NephewInstance>(gen_instance({"nephew", 8 + k % 57, "uniform", 100 + static_cast<std::uint64_t>(k)}).instance);
        bool ok = false;
        for (int t = 0; t < 20 && !ok; ++t) {
            Rng sub = rng.split(static_cast<std::uint64_t>(k * 20 + t));
            auto o = solve_nephew_random(I, sub);
            if (o.result) {
                CHECK(verify(I, *o.result));
                ok = true;
            }
        }
        failures += !ok;
    }
    CHECK(failures < runs / 100);
}

TEST_CASE("boost is deterministic and stops at the first success") {
    LossyInstance I;
    I.f = tab("f", {1}, 2);
    I.g = tab("g", {1, 1}, 1);
    TrialFn solver = [&](Rng& r) { return solve_lossy_random(I, r); };
    Rng a(15), b(15);
    auto x = tfz::boost(solver, 0.5, 1e-6, a);
    auto y = tfz::boost(solver, 0.5, 1e-6, b);
    REQUIRE(x.result);
    CHECK(x.result == y.result);
    CHECK(x.trials_used == y.trials_used);
    CHECK(x.trials_used <= boost_trials(0.5, 1e-6));
}

}
