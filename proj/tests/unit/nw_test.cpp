#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>

#include "tfz/nw.hpp"
#include "tfz/rng.hpp"
#include "tfz/selftest.hpp"

using namespace tfz;

namespace {

std::vector<bool> random_set(Word size, Rng& rng) {
    std::vector<bool> S(static_cast<std::size_t>(size));
    for (std::size_t k = 0; k < S.size(); ++k) S[k] = rng.coin();
    return S;
}

// Output of the generator computed straight from the design sets.
Word direct_prg(const NwEngine& E, Word f, Word z) {
    Word y = 0;
    for (const auto& set : E.design().sets) {
        Word a = 0;
        for (int c : set) a = (a << 1) | ((z >> (E.d() - c)) & 1);
        y = (y << 1) | static_cast<Word>(std::popcount(f & a) & 1);
    }
    return y;
}

}  // namespace

TEST_SUITE("nw") {

TEST_CASE("weak designs") {
    auto one = build_weak_design(3, 2, 1);
    CHECK(one.m() == 1);
    CHECK(one.overlap_mass(1) == 0);
    CHECK(one.valid());

    auto w = build_weak_design(3, 2, 4);
    CHECK(w.d == 15);
    CHECK(w.valid());
    for (int i = 1; i <= 4; ++i) CHECK(w.overlap_mass(i) <= 6);

    // d = 24 >= ell * m: disjoint blocks
    auto disjoint = build_weak_design(3, 1.5, 4);
    REQUIRE(disjoint.d >= 12);
    for (int i = 1; i <= 4; ++i) CHECK(disjoint.overlap_mass(i) == static_cast<std::uint64_t>(i - 1));
    CHECK_THROWS_AS(build_weak_design(3, 1, 2), UsageError);
}

TEST_CASE("hadamard code") {
    HadamardCode h{4};
    auto zero = h.encode(0);
    CHECK(std::all_of(zero.begin(), zero.end(), [](auto b) { return b == 0; }));
    for (Word f = 0; f < 16; ++f) {
        auto list = h.list_decode(h.encode(f), 2);
        CHECK(std::find(list.begin(), list.end(), f) != list.end());
        CHECK(list.size() <= h.list_bound(2));
    }

    HadamardCode h3{3};
    for (Word f = 0; f < 8; ++f) {
        auto y = h3.encode(f);
        for (unsigned mask = 0; mask < 256; ++mask) {
            auto flipped = y;
            for (int k = 0; k < 8; ++k) flipped[k] ^= (mask >> k) & 1;
            // fewer than (1/2 - 1/4) 8 = 2 flips
            if (std::popcount(mask) >= 2) continue;
            auto list = h3.list_decode(flipped, 2);
            CHECK(std::find(list.begin(), list.end(), f) != list.end());
        }
    }
}

TEST_CASE("generator output") {
    for (const auto& p : default_nw_param_sets()) {
        NwEngine E(p);
        for (Word z = 0; z < E.seeds(); ++z) CHECK(E.eval(0, z) == 0);
        for (Word f = 0; f < E.messages(); ++f)
            for (Word z = 0; z < E.seeds(); ++z) REQUIRE(E.eval(f, z) == direct_prg(E, f, z));
    }
    NwEngine one({2, 1, 3, 0.25});
    for (Word f = 0; f < 4; ++f)
        for (Word z = 0; z < one.seeds(); ++z) CHECK(one.eval(f, z) == static_cast<Word>(one.code().bit(f, one.restrict(z, 1))));
}

TEST_CASE("lexicographic pairing") {
    LexPair id{{1, 4, 6}, {1, 4, 6}, 0};
    CHECK(id.valid());
    for (Word a : id.A) {
        auto [slack, b] = id.forward(a);
        CHECK_FALSE(slack);
        CHECK(b == a);
        CHECK(id.backward(false, b) == a);
    }
    CHECK(id.failures().empty());

    LexPair fits{{1, 2, 3}, {7, 9}, 2};
    CHECK(fits.valid());
    CHECK(fits.failures().empty());

    LexPair over{{1, 2, 3, 4}, {7, 9}, 1};
    CHECK_FALSE(over.valid());
    CHECK_FALSE(over.failures().empty());
}

TEST_CASE("approximate counting") {
    for (const auto& p : default_nw_param_sets()) {
        NwEngine E(p);
        double M = static_cast<double>(E.outputs());
        std::vector<bool> none(static_cast<std::size_t>(E.outputs()), false), all(none.size(), true);
        for (Word f = 0; f < E.messages(); ++f) {
            auto a = certify_approx(E, f, none);
            CHECK(a.certified);
            CHECK(a.val == 0);
            auto b = certify_approx(E, f, all);
            CHECK(b.certified);
            CHECK(b.val == M);
        }
        Rng rng(31);
        for (int t = 0; t < 10; ++t) {
            auto S = random_set(E.outputs(), rng);
            double size = static_cast<double>(std::count(S.begin(), S.end(), true));
            for (Word f = 0; f < E.messages(); ++f) {
                Word hits = 0;
                for (Word z = 0; z < E.seeds(); ++z) hits += S[direct_prg(E, f, z)];
                auto r = certify_approx(E, f, S);
                CHECK(r.hits == hits);
                if (r.certified) CHECK(std::abs(r.val - size) / M <= p.eps + 1e-12);
            }
        }
    }
}

TEST_CASE("advice length") {
    for (const auto& p : default_nw_param_sets()) {
        NwEngine E(p);
        CHECK(E.advice_bits() <= E.advice_bits_bound(kAdviceBoundConstant));
        // every advice index unpacks to something that packs back to it
        for (std::uint64_t k = 0; k < std::min<std::uint64_t>(E.advice_count(), 5000); ++k)
            REQUIRE(pack_advice(E, unpack_advice(E, k)) == k);
    }
}

TEST_CASE("compression round trip") {
    NwEngine E({3, 2, 3, 0.25});
    Rng rng(32);
    int compressed = 0;
    for (int t = 0; t < 200; ++t) {
        auto S = random_set(E.outputs(), rng);
        for (Word f = 0; f < E.messages(); ++f) {
            auto r = certify_approx(E, f, S);
            if (r.certified) continue;
            REQUIRE(r.advice);
            CHECK(unpack_advice(E, pack_advice(E, *r.advice)) == *r.advice);
            CHECK(decomp(E, *r.advice, S) == f);
            ++compressed;
        }
    }
    MESSAGE("compressed " << compressed);

    // the smallest parameter set leaves some f outside every range
    NwEngine T({2, 2, 3, 0.25});
    Rng r2(33);
    for (int t = 0; t < 50; ++t) CHECK(decomp_range(T, random_set(T.outputs(), r2)).size() < T.messages());
}

}
