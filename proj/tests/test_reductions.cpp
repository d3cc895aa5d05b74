#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "primsync/generators.hpp"
#include "primsync/reductions.hpp"

using namespace primsync;

namespace {

MatrixSet fig1() {
    return MatrixSet({BoolMatrix::from_entries({{0, 1, 0}, {0, 1, 1}, {0, 0, 1}}),
                      BoolMatrix::from_entries({{0, 0, 0}, {0, 1, 1}, {1, 1, 0}})});
}

PartialAutomaton cerny_plus_identity(int n) {
    auto letters = cerny(n).letters();
    std::vector<int> id(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) id[static_cast<std::size_t>(q)] = q;
    letters.push_back(std::move(id));
    return PartialAutomaton(n, std::move(letters));
}

}  // namespace

TEST_CASE("selection_functions", "[reductions]") {
    SECTION("a permutation matrix yields its single total function") {
        BoolMatrix p(3);
        p.set(0, 2, true);
        p.set(1, 0, true);
        p.set(2, 1, true);
        const auto fns = selection_functions(p);
        REQUIRE(fns.size() == 1);
        CHECK(fns[0] == std::vector<int>{2, 0, 1});
    }
    SECTION("row degrees 1,2,1 give two functions") {
        CHECK(selection_functions(fig1().matrices[0]).size() == 2);
    }
    SECTION("a zero row leaves the function undefined there") {
        const auto fns = selection_functions(fig1().matrices[1]);
        REQUIRE(fns.size() == 4);
        for (const auto& fn : fns) CHECK(fn[0] == kUndefined);
    }
    SECTION("the letter cap is enforced with the required count") {
        try {
            selection_functions(BoolMatrix::ones(4), 100);
            FAIL("expected LetterCapExceededError");
        } catch (const LetterCapExceededError& e) {
            CHECK(e.required == 256);
        }
    }
}

TEST_CASE("matrixset_to_partial", "[reductions]") {
    SECTION("the example pair yields 2 + 4 distinct letters") {
        const auto derived = matrixset_to_partial(fig1());
        CHECK(derived.automaton.num_letters() == 6);
        CHECK_FALSE(derived.automaton.complete());
        CHECK(derived.letter_source == std::vector<int>{0, 0, 1, 1, 1, 1});
    }
    SECTION("letters derived from each matrix reconstruct it") {
        SplitMix64 rng(81);
        for (int trial = 0; trial < 40; ++trial) {
            const int n = rng.range(2, 4);
            const MatrixSet set = random_nz_set(rng, n, rng.range(1, 3), 0.45);
            const auto cert = certify_matrixset_to_partial(set);
            CHECK(cert.all_pass());
        }
    }
    SECTION("duplicate functions across matrices are kept once") {
        const MatrixSet twice({BoolMatrix::identity(2), BoolMatrix::identity(2)});
        CHECK(matrixset_to_partial(twice).automaton.num_letters() == 1);
    }
}

TEST_CASE("partial_to_matrixset", "[reductions]") {
    SECTION("letters first, then one all-ones-row matrix per state") {
        const auto c3 = cerny(3);
        const auto set = partial_to_matrixset(c3);
        REQUIRE(set.size() == 2 + 3);
        for (int k = 0; k < 3; ++k) {
            const auto& e = set.matrices[static_cast<std::size_t>(2 + k)];
            for (int i = 0; i < 3; ++i) {
                CHECK(e.row(i) == (i == k ? full_mask(3) : Mask{0}));
            }
        }
    }
    SECTION("one-state, one-letter automaton gives exponent 1") {
        const PartialAutomaton one(1, {{0}});
        const auto outcome = exponent(partial_to_matrixset(one));
        REQUIRE(outcome.status == ExponentStatus::kFound);
        CHECK(outcome.result->exponent == 1);
    }
    SECTION("exponent equals the careful threshold plus one") {
        const auto cert = certify_partial_to_matrixset(cerny(4));
        CHECK(cert.all_pass());
        CHECK(cert.source_stats.at("car") == 9);
        CHECK(cert.target_stats.at("exponent") == 10);
    }
    SECTION("equality holds on random carefully synchronizing instances") {
        SplitMix64 rng(82);
        for (int trial = 0; trial < 15; ++trial) {
            const int n = rng.range(2, 5);
            const auto a = random_carefully_synchronizing_automaton(rng, n, rng.range(2, 3), 0.8);
            const auto cert = certify_partial_to_matrixset(a);
            INFO("n=" << n);
            CHECK(cert.all_pass());
            CHECK(cert.target_stats.at("exponent") == cert.source_stats.at("car") + 1);
        }
    }
}

TEST_CASE("sink_to_nz", "[reductions]") {
    SECTION("the one-state case is the fixed 2x2 set") {
        const PartialAutomaton one(1, {{0}});
        const auto set = sink_to_nz(one);
        REQUIRE(set.size() == 1);
        CHECK(set.matrices[0] == BoolMatrix::from_entries({{1, 1}, {1, 0}}));
        const auto cert = certify_sink_to_nz(one);
        CHECK(cert.all_pass());
        CHECK(cert.target_stats.at("exponent") == 2);
    }
    SECTION("every output matrix is NZ and the exponent is rt + 1") {
        SplitMix64 rng(83);
        for (int trial = 0; trial < 20; ++trial) {
            const int n = rng.range(2, 6);
            const auto a = random_sink_automaton(rng, n, rng.range(2, 3));
            const auto set = sink_to_nz(a);
            CHECK(all_nz(set));
            const auto cert = certify_sink_to_nz(a);
            CHECK(cert.all_pass());
            CHECK(cert.target_stats.at("exponent") == cert.source_stats.at("rt") + 1);
        }
    }
    SECTION("error paths") {
        CHECK_THROWS_AS(sink_to_nz(cerny(4)), NoSinkError);
        // two fixed states: a sink exists but nothing synchronizes
        const PartialAutomaton frozen(2, {{0, 1}});
        CHECK_THROWS_AS(sink_to_nz(frozen), NotSynchronizingError);
        const PartialAutomaton partial(2, {{0, kUndefined}});
        CHECK_THROWS_AS(sink_to_nz(partial), NotCompleteError);
    }
}

TEST_CASE("classc_to_nz", "[reductions]") {
    SECTION("the slow automaton with an identity letter") {
        const auto a = cerny_plus_identity(4);
        const Partition partition({{0}, {1, 2}});
        const auto set = classc_to_nz(a, partition);
        REQUIRE(set.size() == 2);
        CHECK(all_nz(set));
        const auto cert = certify_classc_to_nz(a, partition);
        CHECK(cert.all_pass());
        CHECK(cert.source_stats.at("rt") == 9);
        CHECK(cert.target_stats.at("exponent") >= 9);
    }
    SECTION("a one-block partition of a permutation automaton is vacuous") {
        const PartialAutomaton perm(3, {{1, 2, 0}});
        const Partition one_block(std::vector<std::vector<int>>{{0}});
        const auto cert = certify_classc_to_nz(perm, one_block);
        CHECK(cert.all_pass());
        CHECK(cert.source_stats.at("synchronizing") == 0);
    }
    SECTION("partitions failing the conditions are rejected") {
        const auto a = cerny_plus_identity(4);
        CHECK_THROWS_AS(classc_to_nz(a, Partition({{0, 2}, {1}})), NotClassCError);
    }
    SECTION("the bound holds on random qualifying automata") {
        SplitMix64 rng(84);
        int tested = 0;
        for (int trial = 0; trial < 400 && tested < 10; ++trial) {
            const int n = rng.range(2, 4);
            const auto a = random_complete_automaton(rng, n, rng.range(2, 3));
            const auto partition = class_c_partition(a);
            if (!partition) continue;
            ++tested;
            CHECK(certify_classc_to_nz(a, *partition).all_pass());
        }
        CHECK(tested > 0);
    }
}

TEST_CASE("nz_to_classc_automata", "[reductions]") {
    SECTION("rejects sets with zero rows or columns") {
        CHECK_THROWS_AS(nz_to_classc_automata(fig1()), NotNzError);
    }
    SECTION("the all-ones 2x2 matrix produces all four functions") {
        const MatrixSet ones({BoolMatrix::ones(2)});
        const auto derived = nz_to_classc_automata(ones);
        CHECK(derived.automaton_a.num_letters() == 4);
        CHECK(derived.automaton_b.num_letters() == 4);
        CHECK(reset_threshold(derived.automaton_a)->threshold == 1);
        const auto cert = certify_nz_to_classc(ones);
        CHECK(cert.all_pass());
        // exponent 1 <= rt_a + rt_b + n - 1 = 3
        CHECK(cert.source_stats.at("exponent") == 1);
    }
    SECTION("certificates pass on random primitive NZ sets") {
        SplitMix64 rng(85);
        int tested = 0;
        while (tested < 12) {
            const int n = rng.range(2, 4);
            const MatrixSet set = random_nz_set(rng, n, 2, 0.4);
            if (!is_primitive(set).value_or(false)) continue;
            ++tested;
            const auto cert = certify_nz_to_classc(set);
            INFO("n=" << n);
            CHECK(cert.all_pass());
            CHECK(cert.source_stats.at("exponent")
                  <= cert.target_stats.at("rt_a") + cert.target_stats.at("rt_b") + n - 1);
        }
    }
}

TEST_CASE("totalsupport_to_eulerian", "[reductions]") {
    SECTION("the all-ones 2x2 matrix") {
        const MatrixSet ones({BoolMatrix::ones(2)});
        const auto derived = totalsupport_to_eulerian(ones);
        CHECK(derived.cover_count_a == std::vector<int>{2});
        CHECK(derived.automaton_a.num_letters() == 4);
        CHECK(derived.multiplicities_a == std::vector<long long>{1, 1, 1, 1});
        CHECK(is_eulerian(derived.automaton_a, derived.multiplicities_a));
        // rt = 1 meets the quadratic bound n^2 - 3n + 3 = 1 with equality
        CHECK(reset_threshold(derived.automaton_a)->threshold == 1);
        CHECK(certify_totalsupport_to_eulerian(ones).all_pass());
    }
    SECTION("a permutation matrix is Eulerian but imprimitive") {
        BoolMatrix p(3);
        for (int i = 0; i < 3; ++i) p.set(i, (i + 1) % 3, true);
        const auto cert = certify_totalsupport_to_eulerian(MatrixSet({p}));
        CHECK(cert.all_pass());
        CHECK(cert.source_stats.at("primitive") == 0);
        CHECK(cert.target_stats.at("a_synchronizing") == 0);
    }
    SECTION("rejects matrices without total support") {
        const MatrixSet bad({BoolMatrix::from_entries({{1, 1}, {0, 1}})});
        CHECK_THROWS_AS(totalsupport_to_eulerian(bad), NoTotalSupportError);
    }
    SECTION("all inequalities hold on random primitive total-support sets") {
        SplitMix64 rng(86);
        int tested = 0;
        while (tested < 12) {
            const int n = rng.range(2, 4);
            const MatrixSet set = random_total_support_set(rng, n, rng.range(2, 3), 2);
            if (!is_primitive(set).value_or(false)) continue;
            ++tested;
            const auto cert = certify_totalsupport_to_eulerian(set);
            INFO("n=" << n);
            CHECK(cert.all_pass());
        }
    }
}

TEST_CASE("certificates re-verify from their stored witnesses", "[reductions]") {
    SplitMix64 rng(88);
    const auto a = random_sink_automaton(rng, 5, 2);
    const auto cert = certify_sink_to_nz(a);
    REQUIRE(cert.all_pass());

    SECTION("witness words replay against source and target independently") {
        const MatrixSet target = sink_to_nz(a);
        const Word& reset_word = cert.witnesses.words.at("reset_word");
        CHECK(static_cast<long long>(reset_word.size()) == cert.source_stats.at("rt"));
        CHECK(popcount(apply_word(a, a.all_states(), reset_word)) == 1);
        const Word& exp_witness = cert.witnesses.words.at("exponent_witness");
        CHECK(static_cast<long long>(exp_witness.size()) == cert.target_stats.at("exponent"));
        CHECK(verify_witness(target, exp_witness));
        CHECK(replay_product(target, exp_witness).is_positive());
    }
    SECTION("inequality entries recompute from their stored sides") {
        for (const auto& ineq : cert.inequalities_checked) {
            CHECK(ineq.pass == evaluate_relation(ineq.lhs, ineq.relation, ineq.rhs));
        }
    }
    SECTION("rebuilding from the same source reproduces the certificate") {
        const auto again = certify_sink_to_nz(a);
        REQUIRE(again.inequalities_checked.size() == cert.inequalities_checked.size());
        for (std::size_t i = 0; i < cert.inequalities_checked.size(); ++i) {
            CHECK(again.inequalities_checked[i].name == cert.inequalities_checked[i].name);
            CHECK(again.inequalities_checked[i].lhs == cert.inequalities_checked[i].lhs);
            CHECK(again.inequalities_checked[i].rhs == cert.inequalities_checked[i].rhs);
        }
        CHECK(again.witnesses.words == cert.witnesses.words);
    }
}

TEST_CASE("sandwich_decomposition", "[reductions]") {
    SECTION("the example pair decomposes within the bound") {
        const auto result = sandwich_decomposition(fig1());
        CHECK(result.certificate.all_pass());
        Word full = result.p;
        full.insert(full.end(), result.q.begin(), result.q.end());
        full.insert(full.end(), result.r.begin(), result.r.end());
        CHECK(verify_witness(fig1(), full));
    }
    SECTION("the all-ones matrix needs no connector") {
        const MatrixSet ones({BoolMatrix::ones(2)});
        const auto result = sandwich_decomposition(ones);
        CHECK(result.p == Word{0});
        CHECK(result.q.empty());
        CHECK(result.r == Word{0});
        CHECK(result.certificate.all_pass());
    }
    SECTION("imprimitive input is refused") {
        CHECK_THROWS_AS(sandwich_decomposition(MatrixSet({BoolMatrix::identity(2)})),
                        NotPrimitiveError);
    }
    SECTION("random primitive sets satisfy every certified inequality") {
        SplitMix64 rng(87);
        int tested = 0;
        while (tested < 15) {
            const int n = rng.range(2, 4);
            const MatrixSet set = random_nz_set(rng, n, rng.range(2, 3), 0.4);
            if (!is_primitive(set).value_or(false)) continue;
            ++tested;
            const auto result = sandwich_decomposition(set);
            INFO("n=" << n);
            CHECK(result.certificate.all_pass());
        }
    }
}
