#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "primsync/automata.hpp"
#include "primsync/generators.hpp"

using namespace primsync;

namespace {

PartialAutomaton cerny_plus_identity(int n) {
    auto letters = cerny(n).letters();
    std::vector<int> id(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) id[static_cast<std::size_t>(q)] = q;
    letters.push_back(std::move(id));
    return PartialAutomaton(n, std::move(letters));
}

}  // namespace

TEST_CASE("apply_word", "[automata]") {
    const auto c4 = cerny(4);
    SECTION("empty word leaves the set unchanged") {
        CHECK(apply_word(c4, 0b1010, {}) == 0b1010);
    }
    SECTION("a known reset word of the 4-state slow automaton") {
        const Word word{1, 0, 0, 0, 1, 0, 0, 0, 1};
        CHECK(popcount(apply_word(c4, c4.all_states(), word)) == 1);
        // and it matches the BFS threshold
        CHECK(static_cast<int>(word.size()) == reset_threshold(c4)->threshold);
    }
    SECTION("undefined transition reports state and position") {
        const PartialAutomaton partial(2, {{1, kUndefined}});
        try {
            apply_word(partial, partial.all_states(), {0, 0});
            FAIL("expected UndefinedTransitionError");
        } catch (const UndefinedTransitionError& e) {
            CHECK(e.state == 1);
            CHECK(e.position == 0);
        }
        CHECK(try_apply_word(partial, partial.all_states(), {0}) == std::nullopt);
        CHECK(try_apply_word(partial, 0b01, {0, 0}) == std::nullopt);
        CHECK(try_apply_word(partial, 0b01, {0}) == Mask{0b10});
    }
}

TEST_CASE("reset_threshold", "[automata]") {
    SECTION("one state resets with the empty word") {
        const PartialAutomaton one(1, {{0}});
        const auto result = reset_threshold(one);
        REQUIRE(result.has_value());
        CHECK(result->threshold == 0);
        CHECK(result->witness.empty());
    }
    SECTION("slow automata hit the quadratic thresholds") {
        for (int n = 3; n <= 7; ++n) {
            const auto result = reset_threshold(cerny(n));
            REQUIRE(result.has_value());
            CHECK(result->threshold == (n - 1) * (n - 1));
            CHECK(popcount(apply_word(cerny(n), full_mask(n), result->witness)) == 1);
        }
    }
    SECTION("permutation letters never synchronize") {
        // two letters, both permutations of 3 states
        const PartialAutomaton perms(3, {{1, 2, 0}, {1, 0, 2}});
        CHECK_FALSE(reset_threshold(perms).has_value());
    }
    SECTION("requires a complete automaton") {
        const PartialAutomaton partial(2, {{0, kUndefined}});
        CHECK_THROWS_AS(reset_threshold(partial), NotCompleteError);
    }
    SECTION("BFS minimality double-checked by word enumeration") {
        const auto c3 = cerny(3);
        const int rt = reset_threshold(c3)->threshold;
        CHECK(rt == 4);
        CHECK_FALSE(oracles::some_word_of_length_synchronizes(c3, rt - 1));
        CHECK(oracles::some_word_of_length_synchronizes(c3, rt));
    }
}

TEST_CASE("careful_threshold", "[automata]") {
    SECTION("coincides with the reset threshold on complete automata") {
        SplitMix64 rng(21);
        for (int trial = 0; trial < 60; ++trial) {
            const int n = rng.range(2, 6);
            const auto a = random_complete_automaton(rng, n, rng.range(2, 3));
            const auto rt = reset_threshold(a);
            const auto car = careful_threshold(a);
            REQUIRE(rt.has_value() == car.has_value());
            if (rt) CHECK(rt->threshold == car->threshold);
        }
    }
    SECTION("no admissible first letter means no careful word") {
        // both letters undefined somewhere
        const PartialAutomaton a(2, {{kUndefined, 0}, {1, kUndefined}});
        CHECK_FALSE(careful_threshold(a).has_value());
    }
    SECTION("careful witnesses replay without hitting undefined transitions") {
        SplitMix64 rng(22);
        int found = 0;
        for (int trial = 0; trial < 200 && found < 30; ++trial) {
            const auto a = random_partial_automaton(rng, 5, rng.range(2, 3), 0.85);
            const auto car = careful_threshold(a);
            if (!car) continue;
            ++found;
            const auto image = try_apply_word(a, a.all_states(), car->witness);
            REQUIRE(image.has_value());
            CHECK(popcount(*image) == 1);
        }
        CHECK(found >= 10);
    }
}

TEST_CASE("greedy_careful_word", "[automata]") {
    SECTION("one state needs no letters") {
        const PartialAutomaton one(1, {{0}});
        CHECK(greedy_careful_word(one).word.empty());
    }
    SECTION("the 4-state slow automaton") {
        const auto c4 = cerny(4);
        const auto result = greedy_careful_word(c4);
        CHECK(popcount(apply_word(c4, c4.all_states(), result.word)) == 1);
        CHECK(static_cast<int>(result.word.size()) >= reset_threshold(c4)->threshold);
    }
    SECTION("per-step bound on complete automata with unit schedule") {
        SplitMix64 rng(31);
        for (int trial = 0; trial < 25; ++trial) {
            const int n = rng.range(4, 9);
            const auto a = random_synchronizing_automaton(rng, n, rng.range(2, 3));
            const auto result = greedy_careful_word(a);
            for (const auto& entry : result.trace) {
                const int k = entry.target_size;
                const long long bound =
                    static_cast<long long>(n - k) * (1LL << std::max(0, n - k - 1));
                INFO("n=" << n << " k=" << k);
                CHECK(entry.word_length <= bound);
            }
        }
    }
    SECTION("output length dominates the exact careful threshold") {
        SplitMix64 rng(32);
        for (int trial = 0; trial < 20; ++trial) {
            const int n = rng.range(3, 6);
            const auto a = random_carefully_synchronizing_automaton(rng, n, 2, 0.85);
            const auto result = greedy_careful_word(a);
            const auto image = try_apply_word(a, a.all_states(), result.word);
            REQUIRE(image.has_value());
            CHECK(popcount(*image) == 1);
            CHECK(static_cast<int>(result.word.size()) >= careful_threshold(a)->threshold);
        }
    }
    SECTION("multi-step schedules still produce careful words") {
        const auto c5 = cerny(5);
        for (const std::vector<int>& schedule :
             {std::vector<int>{2}, std::vector<int>{3, 1}, std::vector<int>{1, 2}}) {
            const auto result = greedy_careful_word(c5, schedule);
            CHECK(popcount(apply_word(c5, c5.all_states(), result.word)) == 1);
        }
    }
    SECTION("stuck when no totally defined letter shrinks the set") {
        const PartialAutomaton perms(3, {{1, 2, 0}});
        CHECK_THROWS_AS(greedy_careful_word(perms), ProcedureStuckError);
    }
}

TEST_CASE("cerny family", "[automata]") {
    for (int n = 2; n <= 7; ++n) {
        const auto a = cerny(n);
        CHECK(a.num_letters() == 2);
        CHECK(a.complete());
    }
    CHECK(reset_threshold(cerny(2))->threshold == 1);
    CHECK(reset_threshold(cerny(3))->threshold == 4);
    CHECK_THROWS_AS(cerny(1), InputError);
}

TEST_CASE("is_eulerian", "[automata]") {
    SECTION("permutation letters balance in- and out-degrees") {
        const PartialAutomaton perms(4, {{1, 2, 3, 0}, {0, 1, 2, 3}});
        CHECK(is_eulerian(perms));
    }
    SECTION("the 3-state slow automaton is not Eulerian") {
        // state 0 receives a from 2, b from 2 and b from 0: in-degree 3
        CHECK_FALSE(is_eulerian(cerny(3)));
    }
    SECTION("weights must be positive and match the alphabet") {
        const PartialAutomaton perms(2, {{1, 0}});
        CHECK_THROWS_AS(is_eulerian(perms, {1, 2}), InputError);
        CHECK_THROWS_AS(is_eulerian(perms, {0}), InputError);
        CHECK(is_eulerian(perms, {7}));
    }
}

TEST_CASE("find_sink", "[automata]") {
    SECTION("a state fixed by all letters") {
        // letter 0 collapses everything to 0, letter 1 fixes 0
        const PartialAutomaton a(3, {{0, 0, 0}, {0, 2, 1}});
        CHECK(find_sink(a) == 0);
    }
    SECTION("the slow automaton has none") {
        CHECK_FALSE(find_sink(cerny(4)).has_value());
    }
    SECTION("identity-only automaton returns the least fixed state") {
        const PartialAutomaton a(3, {{0, 1, 2}});
        CHECK(find_sink(a) == 0);
    }
}

TEST_CASE("alphabet partition search", "[automata]") {
    SECTION("slow automaton plus identity: merge letter groups with the identity") {
        const auto a = cerny_plus_identity(4);
        const auto partition = class_c_partition(a);
        REQUIRE(partition.has_value());
        CHECK(*partition == Partition({{0}, {1, 2}}));
        CHECK(check_alphabet_partition(a, *partition));
        CHECK(oracles::literal_alphabet_partition_check(a, *partition));
    }
    SECTION("slow automaton alone has no qualifying partition") {
        for (int n = 3; n <= 4; ++n) {
            CHECK_FALSE(class_c_partition(cerny(n)).has_value());
        }
    }
    SECTION("a single permutation letter qualifies as one block") {
        const PartialAutomaton a(4, {{1, 2, 3, 0}});
        const auto partition = class_c_partition(a);
        REQUIRE(partition.has_value());
        CHECK(partition->num_parts() == 1);
    }
    SECTION("counting check agrees with the literal definition") {
        SplitMix64 rng(41);
        for (int trial = 0; trial < 100; ++trial) {
            const int n = rng.range(2, 4);
            const auto a = random_complete_automaton(rng, n, rng.range(2, 3));
            enumerate_set_partitions(a.num_letters(), [&](const std::vector<int>& rgs) {
                const Partition p = partition_from_rgs(rgs);
                REQUIRE(check_alphabet_partition(a, p)
                        == oracles::literal_alphabet_partition_check(a, p));
                return true;
            });
        }
    }
    SECTION("alphabets beyond the enumeration cap are rejected") {
        std::vector<std::vector<int>> letters(13, std::vector<int>{0});
        const PartialAutomaton wide(1, letters);
        CHECK_THROWS_AS(class_c_partition(wide), CapExceededError);
    }
}
