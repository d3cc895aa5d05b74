#include <catch2/catch_amalgamated.hpp>

#include "primsync/generators.hpp"
#include "primsync/io.hpp"
#include "primsync/verify.hpp"

using namespace primsync;

TEST_CASE("generator streams are deterministic", "[toolkit]") {
    SECTION("same seed, same stream") {
        SplitMix64 a(123456), b(123456);
        for (int i = 0; i < 100; ++i) REQUIRE(a.next() == b.next());
        SplitMix64 c(123457);
        CHECK(a.next() != c.next());
    }
    SECTION("same corpus spec serializes byte-identically") {
        CorpusSpec spec;
        spec.family = CorpusFamily::kRandomNzSet;
        spec.n = 4;
        spec.count = 5;
        spec.seed = 99;
        auto first = generate_corpus(spec);
        auto second = generate_corpus(spec);
        REQUIRE(first.size() == second.size());
        for (std::size_t i = 0; i < first.size(); ++i) {
            const auto& lhs = std::get<MatrixSet>(first[i]);
            const auto& rhs = std::get<MatrixSet>(second[i]);
            CHECK(matrixset_to_json(lhs).dump() == matrixset_to_json(rhs).dump());
        }
    }
}

TEST_CASE("corpus families satisfy their by-construction guarantees", "[toolkit]") {
    SECTION("total-support sets") {
        CorpusSpec spec;
        spec.family = CorpusFamily::kRandomTotalSupportSet;
        spec.n = 4;
        spec.count = 10;
        spec.seed = 7;
        spec.alphabet_size = 2;
        spec.num_permutations = 2;
        for (const auto& instance : generate_corpus(spec)) {
            for (const auto& m : std::get<MatrixSet>(instance).matrices) {
                CHECK(has_total_support(m));
            }
        }
    }
    SECTION("sink automata synchronize and have a sink") {
        CorpusSpec spec;
        spec.family = CorpusFamily::kRandomSinkAutomaton;
        spec.n = 5;
        spec.count = 10;
        spec.seed = 11;
        for (const auto& instance : generate_corpus(spec)) {
            const auto& a = std::get<PartialAutomaton>(instance);
            CHECK(find_sink(a).has_value());
            CHECK(reset_threshold(a).has_value());
        }
    }
    SECTION("NZ sets have no zero rows or columns") {
        CorpusSpec spec;
        spec.family = CorpusFamily::kRandomNzSet;
        spec.n = 5;
        spec.count = 10;
        spec.seed = 13;
        spec.alphabet_size = 3;
        for (const auto& instance : generate_corpus(spec)) {
            CHECK(all_nz(std::get<MatrixSet>(instance)));
        }
    }
    SECTION("the named slow automaton family") {
        CorpusSpec spec;
        spec.family = CorpusFamily::kCerny;
        spec.n = 4;
        spec.count = 1;
        const auto instances = generate_corpus(spec);
        const auto& a = std::get<PartialAutomaton>(instances[0]);
        CHECK(automaton_to_paut(a) == automaton_to_paut(cerny(4)));
    }
}

TEST_CASE("matrix set JSON parsing", "[toolkit][io]") {
    SECTION("round trip") {
        SplitMix64 rng(17);
        for (int trial = 0; trial < 20; ++trial) {
            const MatrixSet set = random_nz_set(rng, rng.range(1, 6), rng.range(1, 3), 0.4);
            const auto text = matrixset_to_json(set).dump(2);
            const MatrixSet parsed = matrixset_from_json(json::parse(text));
            CHECK(matrixset_to_json(parsed).dump(2) == text);
        }
    }
    SECTION("rejections") {
        CHECK_THROWS_AS(matrixset_from_json(json::parse(R"({"n": 2})")), InputError);
        CHECK_THROWS_AS(matrixset_from_json(json::parse(R"({"n": 2, "matrices": []})")),
                        InputError);
        CHECK_THROWS_AS(
            matrixset_from_json(json::parse(R"({"n": 2, "matrices": [[[1,0],[0]]]})")),
            InputError);
        CHECK_THROWS_AS(
            matrixset_from_json(json::parse(R"({"n": 2, "matrices": [[[2,0],[0,1]]]})")),
            InputError);
        CHECK_THROWS_AS(
            matrixset_from_json(json::parse(R"({"n": 3, "matrices": [[[1,0],[0,1]]]})")),
            InputError);
    }
}

TEST_CASE("automaton text format", "[toolkit][io]") {
    SECTION("round trip including undefined transitions") {
        SplitMix64 rng(19);
        for (int trial = 0; trial < 20; ++trial) {
            const auto a = random_partial_automaton(rng, rng.range(1, 6), rng.range(1, 3), 0.7);
            const auto text = automaton_to_paut(a);
            CHECK(automaton_to_paut(automaton_from_paut(text)) == text);
        }
    }
    SECTION("rejections") {
        CHECK_THROWS_AS(automaton_from_paut(""), InputError);
        CHECK_THROWS_AS(automaton_from_paut("2 1\n0"), InputError);
        CHECK_THROWS_AS(automaton_from_paut("2 1\n0 1 0"), InputError);
        CHECK_THROWS_AS(automaton_from_paut("2 1\n0 x"), InputError);
        CHECK_THROWS_AS(automaton_from_paut("2 1\n0 7"), InputError);
        CHECK_THROWS_AS(automaton_from_paut("0 1\n"), InputError);
    }
}

TEST_CASE("verification reports", "[toolkit]") {
    SECTION("reruns with the same seed are byte-identical without timing") {
        VerifyOptions opt;
        opt.samples = 5;
        opt.seed = 2024;
        for (const auto id : {TheoremId::kSinkEquality, TheoremId::kFig1Exponent,
                              TheoremId::kCernyThresholds, TheoremId::kGreedyStepBound}) {
            const auto first = run_verification(id, opt);
            const auto second = run_verification(id, opt);
            CHECK(verification_report_to_json(first, false).dump(2)
                  == verification_report_to_json(second, false).dump(2));
            CHECK(verification_report_to_csv(first) == verification_report_to_csv(second));
        }
    }
    SECTION("counts stay consistent") {
        VerifyOptions opt;
        opt.samples = 8;
        for (const auto& [id, name] : theorem_names()) {
            if (id == TheoremId::kPartitionTestEquivalence) continue;  // slow path covered elsewhere
            const auto report = run_verification(id, opt);
            INFO(name);
            CHECK(report.consistent());
        }
    }
    SECTION("CSV has the documented header") {
        VerifyOptions opt;
        opt.samples = 1;
        const auto report = run_verification(TheoremId::kFig1Exponent, opt);
        const auto csv = verification_report_to_csv(report);
        CHECK(csv.rfind("theorem,index,n,status,detail\n", 0) == 0);
    }
    SECTION("theorem names round-trip") {
        for (const auto& [id, name] : theorem_names()) {
            REQUIRE(theorem_from_name(name) == id);
        }
        CHECK_FALSE(theorem_from_name("nope").has_value());
    }
}

TEST_CASE("certificate JSON carries all fields", "[toolkit][io]") {
    const MatrixSet ones({BoolMatrix::ones(2)});
    const auto cert = certify_nz_to_classc(ones);
    const auto j = certificate_to_json(cert);
    CHECK(j.at("kind") == "NZ2CLASSC");
    CHECK(j.at("all_pass") == true);
    CHECK(j.contains("source_stats"));
    CHECK(j.contains("target_stats"));
    CHECK(j.at("witnesses").contains("words"));
    CHECK(j.at("witnesses").contains("partitions"));
    CHECK(j.at("inequalities_checked").is_array());
    for (const auto& ineq : j.at("inequalities_checked")) {
        CHECK(ineq.contains("name"));
        CHECK(ineq.contains("lhs"));
        CHECK(ineq.contains("relation"));
        CHECK(ineq.contains("rhs"));
        CHECK(ineq.contains("pass"));
    }
}

TEST_CASE("exponent outcome JSON", "[toolkit][io]") {
    const MatrixSet fig1({BoolMatrix::from_entries({{0, 1, 0}, {0, 1, 1}, {0, 0, 1}}),
                          BoolMatrix::from_entries({{0, 0, 0}, {0, 1, 1}, {1, 1, 0}})});
    const auto j = exponent_outcome_to_json(exponent(fig1));
    CHECK(j.at("exponent") == 4);
    CHECK(j.at("witness") == json::array({0, 1, 0, 1}));
    CHECK(j.at("status") == "found");
    const auto imprimitive = exponent_outcome_to_json(exponent(MatrixSet({BoolMatrix::identity(2)})));
    CHECK(imprimitive.at("status") == "not_primitive");
}
