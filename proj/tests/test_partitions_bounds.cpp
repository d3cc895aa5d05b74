#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "primsync/bounds.hpp"
#include "primsync/generators.hpp"
#include "primsync/partition.hpp"

using namespace primsync;

TEST_CASE("partition validation and canonical form", "[partition]") {
    const Partition p({{4, 2}, {0, 1}, {3}});
    CHECK(p.parts == std::vector<std::vector<int>>{{0, 1}, {2, 4}, {3}});
    CHECK_NOTHROW(p.validate());
    CHECK_THROWS_AS(Partition({{0, 1}, {1, 2}}).validate(), InputError);
    CHECK_THROWS_AS(Partition({{0}, {2}}).validate(), InputError);
    CHECK_THROWS_AS(Partition({{0}, {}}).validate(), InputError);
}

TEST_CASE("set partition enumeration counts Bell and Stirling numbers", "[partition]") {
    const long long bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147};
    for (int n = 1; n <= 9; ++n) {
        long long count = 0;
        enumerate_set_partitions(n, [&](const std::vector<int>&) {
            ++count;
            return true;
        });
        CHECK(count == bell[n]);
    }
    auto stirling = [](int n, int k) {
        long long count = 0;
        enumerate_set_partitions_with_parts(n, k, [&](const std::vector<int>&) {
            ++count;
            return true;
        });
        return count;
    };
    CHECK(stirling(5, 2) == 15);
    CHECK(stirling(6, 3) == 90);
    CHECK(stirling(7, 7) == 1);
    CHECK(stirling(7, 1) == 1);
}

TEST_CASE("transversal_count", "[bounds]") {
    // {{0,1},{2,3},{4}} has 2*2*1 = 4 transversals, e.g. {0,2,4} and {0,3,4}.
    const Partition example({{0, 1}, {2, 3}, {4}});
    CHECK(transversal_count(example) == 4);
    CHECK(oracles::count_transversals_brute(example) == 4);
    CHECK(transversal_count(Partition({{0}, {1}, {2}})) == 1);
    CHECK(transversal_count(Partition({{0, 1, 2, 3, 4}})) == 5);

    SECTION("agrees with subset enumeration over every partition of n <= 9") {
        for (int n = 1; n <= 9; ++n) {
            enumerate_set_partitions(n, [&](const std::vector<int>& rgs) {
                const Partition p = partition_from_rgs(rgs);
                REQUIRE(transversal_count(p) == oracles::count_transversals_brute(p));
                return true;
            });
        }
    }
}

TEST_CASE("partial_transversal_count", "[bounds]") {
    const Partition example({{0, 1}, {2, 3}, {4}});
    CHECK(partial_transversal_count(example, 2) == 8);
    CHECK(oracles::count_partial_transversals_brute(example, 2) == 8);
    CHECK(partial_transversal_count(example, 0) == 1);
    CHECK(partial_transversal_count(example, 3) == transversal_count(example));
    CHECK_THROWS_AS(partial_transversal_count(example, 4), InputError);

    SECTION("agrees with brute force over all partitions of n <= 7") {
        for (int n = 1; n <= 7; ++n) {
            enumerate_set_partitions(n, [&](const std::vector<int>& rgs) {
                const Partition p = partition_from_rgs(rgs);
                for (int size = 0; size <= p.num_parts(); ++size) {
                    REQUIRE(partial_transversal_count(p, size)
                            == oracles::count_partial_transversals_brute(p, size));
                }
                return true;
            });
        }
    }
    SECTION("Newton recurrence") {
        SplitMix64 rng(3);
        for (int trial = 0; trial < 50; ++trial) {
            const int k = rng.range(2, 5);
            std::vector<std::vector<int>> parts;
            int next = 0;
            for (int i = 0; i < k; ++i) {
                std::vector<int> part;
                const int size = rng.range(1, 3);
                for (int s = 0; s < size; ++s) part.push_back(next++);
                parts.push_back(std::move(part));
            }
            const Partition whole(parts);
            const Partition head(std::vector<std::vector<int>>(parts.begin(), parts.end() - 1));
            const unsigned long last = static_cast<unsigned long>(parts.back().size());
            for (int ell = 1; ell < k; ++ell) {
                CHECK(partial_transversal_count(whole, ell)
                      == partial_transversal_count(head, ell)
                             + last * partial_transversal_count(head, ell - 1));
            }
        }
    }
}

TEST_CASE("max_transversals", "[bounds]") {
    CHECK(max_transversals(5, 2) == 6);
    CHECK(oracles::max_transversals_brute(5, 2) == 6);
    CHECK(max_transversals(6, 6) == 1);
    // 9 = 3*3 meets the 2^(3k-n) 3^(n-2k) bound with equality at n=6, k=2.
    CHECK(max_transversals(6, 2) == 9);
    CHECK_THROWS_AS(max_transversals(3, 4), InputError);

    SECTION("balanced sizes attain the exhaustive maximum for n <= 8") {
        for (int n = 1; n <= 8; ++n) {
            for (int k = 1; k <= n; ++k) {
                REQUIRE(max_transversals(n, k) == oracles::max_transversals_brute(n, k));
            }
        }
    }
    SECTION("moving an element between parts with a size gap >= 2 increases the product") {
        SplitMix64 rng(8);
        for (int trial = 0; trial < 100; ++trial) {
            const long long di = rng.range(1, 5);
            const long long dj = di + rng.range(2, 5);
            CHECK((di + 1) * (dj - 1) > di * dj);
        }
    }
}

TEST_CASE("bound_catalog evaluates the closed forms", "[bounds]") {
    auto value = [](int n, const std::string& name) {
        for (const auto& entry : bound_catalog(n)) {
            if (entry.name == name) return entry.value;
        }
        throw std::runtime_error("no catalog entry " + name);
    };
    CHECK(value(4, "cerny") == 9);
    CHECK(value(4, "kari") == 7);
    CHECK(value(4, "total_support") == 17);
    CHECK(value(4, "wielandt") == 10);
    CHECK(value(4, "pin") == 10);
    CHECK(value(1, "cerny") == 0);
    CHECK(value(1, "wielandt") == 1);
    CHECK(value(3, "nz_cubic") == 10);
    CHECK(value(3, "total_support") == 8);
    CHECK(value(3, "theorem1_upper") == 512);
    CHECK(value(6, "gazdag_order") == 36 * 16);
    CHECK(value(6, "martyugin_order") == 9);
    CHECK(value(9, "limit_rate") == 27);
    // snapshot of a large value as a decimal string
    CHECK(value(10, "theorem1_upper").get_str()
          == "1267650600228229401496703205376");
}

TEST_CASE("lemma3_check", "[bounds]") {
    SECTION("n = 1 is vacuous") {
        const auto report = lemma3_check(1);
        CHECK(report.passed());
    }
    SECTION("exhaustive check passes for n <= 9") {
        for (int n = 2; n <= 9; ++n) {
            const auto report = lemma3_check(n);
            INFO("n = " << n);
            CHECK(report.passed());
            CHECK(report.partial_family_exhaustive);
        }
    }
    SECTION("the 2^(3k-n) 3^(n-2k) family is tight at n=6, k=2") {
        CHECK(max_transversals(6, 2) == bigint_pow(2, 0) * bigint_pow(3, 2));
        CHECK(lemma3_check(6).passed());
    }
    SECTION("closed-form families up to the limit") {
        const auto report = lemma3_check(30);
        CHECK(report.passed());
        CHECK_FALSE(report.partial_family_exhaustive);
        CHECK_THROWS_AS(lemma3_check(31), InputError);
    }
}
