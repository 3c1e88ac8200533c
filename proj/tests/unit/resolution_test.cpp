#include <doctest.h>

#include <sstream>

#include "tfz/resolution.hpp"
#include "tfz/rng.hpp"

using namespace tfz;

namespace {

// (x1) and (not x1) refuted by one resolution step.
TreeResolutionProof one_step() {
    TreeResolutionProof P;
    P.nodes.resize(3);
    P.nodes[0].clause = {1};
    P.nodes[0].source = 0;
    P.nodes[1].clause = {-1};
    P.nodes[1].source = 1;
    P.nodes[2].pivot = 1;
    P.nodes[2].pos = 0;
    P.nodes[2].neg = 1;
    P.root = 2;
    return P;
}

const Cnf kContradiction{1, {{1}, {-1}}};

// Queries x_1..x_n in order and labels each full assignment with its first false clause.
DecisionTree full_tree(const Cnf& F) {
    DecisionTree T;
    std::function<int(int, Assignment)> build = [&](int v, Assignment x) -> int {
        if (v > F.n) return T.leaf(F.falsified(x).front());
        int lo = build(v + 1, x);
        int hi = build(v + 1, x | (Assignment{1} << (v - 1)));
        return T.query(v, lo, hi);
    };
    T.root = build(1, 0);
    return T;
}

Cnf random_unsat(int n, Rng& rng) {
    for (;;) {
        Cnf F;
        F.n = n;
        int m = 4 * n + 4;
        for (int k = 0; k < m; ++k) {
            std::vector<Literal> lits;
            int w = static_cast<int>(rng.uniform(1, 3));
            for (int t = 0; t < w; ++t) {
                int v = static_cast<int>(rng.uniform(1, n));
                Literal l = rng.coin() ? v : -v;
                bool clash = false;
                for (Literal o : lits) clash |= o == -l;
                if (!clash) lits.push_back(l);
            }
            F.clauses.push_back(make_clause(lits));
        }
        if (brute_unsat(F)) return F;
    }
}

}  // namespace

TEST_SUITE("resolution") {

TEST_CASE("clauses") {
    CHECK(make_clause({3, -1, 3}) == Clause{-1, 3});
    CHECK_THROWS_AS(make_clause({2, -2}), UsageError);
    CHECK(falsifies(0, {1, 2}));
    CHECK_FALSE(falsifies(1, {1, 2}));
}

TEST_CASE("false-clause search") {
    auto S = search_of_cnf(kContradiction, 0);
    CHECK(search_cnf_solutions(S) == std::vector<int>{0});
    Cnf sat{2, {{1, 2}, {-1}}};
    CHECK(search_cnf_solutions(search_of_cnf(sat, 2)).empty());

    Cnf wide{3, {{1, 2, 3}}};
    auto W = search_of_cnf(wide, 0);
    QueryLedger L;
    CHECK(search_cnf_verify(W, 0, L));
    CHECK(L.total() <= 3);
}

TEST_CASE("dimacs") {
    std::istringstream in("c comment\np cnf 2 2\n1 -2 0\n2 0\n");
    Cnf F = parse_dimacs(in);
    CHECK(F.n == 2);
    REQUIRE(F.clauses.size() == 2);
    CHECK(F.clauses[0] == Clause{1, -2});
    std::ostringstream out;
    write_dimacs(out, F);
    std::istringstream back(out.str());
    CHECK(parse_dimacs(back).clauses == F.clauses);
    std::istringstream bad("p cnf 1 1\n3 0\n");
    CHECK_THROWS_AS(parse_dimacs(bad), UsageError);
}

TEST_CASE("verifier CNFs") {
    auto R1 = weak_pigeon_verifiers(1);
    Cnf F1 = cnf_of_search(R1, 0);
    REQUIRE(F1.clauses.size() == 1);
    CHECK(F1.clauses[0].empty());
    for (int n = 2; n <= 3; ++n) {
        auto R = weak_pigeon_verifiers(n);
        int depth = 0;
        for (const auto& T : R.trees) depth = std::max(depth, T.depth());
        Cnf F = cnf_of_search(R, depth);
        CHECK(static_cast<int>(F.width()) <= depth);
        if (F.n <= 20) CHECK(brute_unsat(F));
        CHECK_THROWS_AS(cnf_of_search(R, depth - 1), UsageError);
    }
}

TEST_CASE("proof checking") {
    auto ok = verify_tree_resolution(one_step(), kContradiction);
    CHECK(ok.ok);
    CHECK(ok.size == 3);
    CHECK(ok.width == 1);

    auto P = one_step();
    P.nodes[2].pivot = 2;
    auto bad = verify_tree_resolution(P, kContradiction);
    CHECK_FALSE(bad.ok);
    CHECK(bad.bad_node == 2);

    // weakening: the children resolve to the empty clause, not to (x2)
    Cnf F2{2, {{1}, {-1}}};
    P = one_step();
    P.nodes[2].clause = {2};
    CHECK_FALSE(verify_tree_resolution(P, F2).ok);

    P = one_step();
    P.nodes[1].source = 0;
    CHECK_FALSE(verify_tree_resolution(P, kContradiction).ok);

    P = one_step();
    P.nodes[2].neg = 0;
    CHECK_FALSE(verify_tree_resolution(P, kContradiction).ok);
}

TEST_CASE("trees and proofs") {
    DecisionTree T;
    int a = T.leaf(0), b = T.leaf(1);
    T.root = T.query(1, a, b);
    CHECK(solves_search(T, kContradiction));
    auto P = dt_to_proof(T, kContradiction);
    auto chk = verify_tree_resolution(P, kContradiction);
    CHECK(chk.ok);
    CHECK(chk.size == 3);
    CHECK(P.depth() == T.depth());
    auto T2 = proof_to_dt(P, kContradiction);
    for (Assignment x = 0; x < 2; ++x) CHECK(T2.eval(x) == T.eval(x));

    auto R = weak_pigeon_verifiers(2);
    Cnf F = cnf_of_search(R, 2);
    auto full = full_tree(F);
    auto PF = dt_to_proof(full, F);
    CHECK(verify_tree_resolution(PF, F).ok);
    CHECK(PF.depth() <= full.depth());

    DecisionTree wrong;
    int c = wrong.leaf(1), d = wrong.leaf(1);
    wrong.root = wrong.query(1, c, d);
    CHECK_FALSE(solves_search(wrong, kContradiction));
    CHECK_THROWS_AS(dt_to_proof(wrong, kContradiction), UsageError);
}

TEST_CASE("random round trips") {
    Rng rng(21);
    for (int k = 0; k < 40; ++k) {
        Cnf F = random_unsat(2 + k % 7, rng);
        auto T = full_tree(F);
        auto P = dt_to_proof(T, F);
        auto chk = verify_tree_resolution(P, F);
        REQUIRE(chk.ok);
        auto T2 = proof_to_dt(P, F);
        CHECK(solves_search(T2, F));
        CHECK(T2.depth() <= P.depth());
        CHECK_FALSE(T2.repeats_variable());
    }
}

TEST_CASE("randomized trees and proofs") {
    // two trees, each bottom on one half of x1
    DecisionTree A;
    {
        int lo = A.leaf(0), hi = A.leaf(DecisionTree::kBottom);
        A.root = A.query(1, lo, hi);
    }
    DecisionTree B;
    {
        int lo = B.leaf(DecisionTree::kBottom), hi = B.leaf(1);
        B.root = B.query(1, lo, hi);
    }
    DecisionTree C;
    {
        int lo = C.leaf(0), hi = C.leaf(1);
        C.root = C.query(1, lo, hi);
    }
    TreeDistribution D;
    D.members = {{Rational(1, 3), A}, {Rational(1, 3), B}, {Rational(1, 3), C}};
    CHECK_FALSE(bottom_violation(D, 1));
    auto P = zppdt_to_randres(D, kContradiction);
    REQUIRE(P.members.size() == 3);
    CHECK(P.members[2].B.clauses.empty());
    for (const auto& m : P.members) CHECK(m.B.width() <= 1);
    auto D2 = randres_to_zppdt(P, kContradiction);
    for (Assignment x = 0; x < 2; ++x) {
        CHECK(bottom_probability(D2, x) == bottom_probability(D, x));
        CHECK(b_satisfaction(P, x) == Rational(1) - bottom_probability(D, x));
    }

    TreeDistribution heavy;
    heavy.members = {{Rational(1, 2), A}, {Rational(1, 2), C}};
    CHECK(bottom_violation(heavy, 1));
    CHECK_THROWS_AS(zppdt_to_randres(heavy, kContradiction), UsageError);

    TreeDistribution plain;
    plain.members = {{Rational(1), C}};
    auto PP = zppdt_to_randres(plain, kContradiction);
    CHECK(PP.members[0].B.clauses.empty());
    auto back = randres_to_zppdt(PP, kContradiction);
    for (Assignment x = 0; x < 2; ++x) CHECK(back.members[0].second.eval(x) != DecisionTree::kBottom);
}

}
