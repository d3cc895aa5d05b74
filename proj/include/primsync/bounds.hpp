// Exact transversal counting, maximal transversal numbers and the catalog of
// closed-form threshold/exponent bounds. All counts are arbitrary-precision
// since 2^(n^2) and 3^(n/3) overflow machine words quickly.
#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "primsync/errors.hpp"
#include "primsync/partition.hpp"

namespace primsync {

using BigInt = mpz_class;

inline BigInt bigint_pow(unsigned long base, unsigned long exp) {
    BigInt out;
    mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
    return out;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

/// Number of transversals (one element per part) = product of part sizes.
inline BigInt transversal_count(const Partition& p) {
    p.validate();
    BigInt out = 1;
    for (const auto& part : p.parts) out *= static_cast<unsigned long>(part.size());
    return out;
}

/// Number of partial transversals of the given size (at most one element per
/// part) = elementary symmetric polynomial of that degree in the part sizes.
inline BigInt partial_transversal_count(const Partition& p, int size) {
    p.validate();
    const int k = p.num_parts();
    if (size < 0 || size > k) throw InputError("partial transversal size out of range");
    // e[j] after processing i parts = e_j(d_1..d_i); Newton-style recurrence.
    std::vector<BigInt> e(static_cast<std::size_t>(size) + 1, 0);
    e[0] = 1;
    for (const auto& part : p.parts) {
        const unsigned long d = static_cast<unsigned long>(part.size());
        for (int j = std::min<int>(size, k); j >= 1; --j) {
            e[static_cast<std::size_t>(j)] += e[static_cast<std::size_t>(j) - 1] * d;
        }
    }
    return e[static_cast<std::size_t>(size)];
}

/// Largest transversal count over all partitions of an n-set into k parts;
/// attained by the balanced partition (part sizes floor(n/k) and
/// ceil(n/k)).
inline BigInt max_transversals(int n, int k) {
    if (n < 1 || k < 1 || k > n) throw InputError("need 1 <= k <= n");
    const unsigned long q = static_cast<unsigned long>(n / k);
    const unsigned long r = static_cast<unsigned long>(n % k);
    return bigint_pow(q + 1, r) * bigint_pow(q, static_cast<unsigned long>(k) - r);
}

struct BoundEntry {
    std::string name;
    std::string formula;
    BigInt value;
};

/// Closed-form bound values at dimension / state count n. Fractional
/// exponents (the x^(n/3) growth orders) are reported as integer floors of
/// the exact real value.
inline std::vector<BoundEntry> bound_catalog(int n) {
    if (n < 1) throw InputError("catalog needs n >= 1");
    const unsigned long un = static_cast<unsigned long>(n);
    auto floor_cbrt = [](const BigInt& v) {
        BigInt out;
        mpz_root(out.get_mpz_t(), v.get_mpz_t(), 3);
        return out;
    };
    const BigInt nn = BigInt(n);
    std::vector<BoundEntry> out;
    out.push_back({"wielandt", "(n-1)^2 + 1", (nn - 1) * (nn - 1) + 1});
    out.push_back({"cerny", "(n-1)^2", (nn - 1) * (nn - 1)});
    out.push_back({"pin", "(n^3 - n)/6", (nn * nn * nn - nn) / 6});
    out.push_back({"kari", "n^2 - 3n + 3", nn * nn - 3 * nn + 3});
    out.push_back({"total_support", "2n^2 - 5n + 5", 2 * nn * nn - 5 * nn + 5});
    out.push_back({"nz_cubic", "(n^3 + 2n - 3)/3", (nn * nn * nn + 2 * nn - 3) / 3});
    out.push_back({"theorem1_upper", "2^(n^2)", bigint_pow(2, un * un)});
    out.push_back({"gazdag_order", "n^2 * 4^(n/3)", nn * nn * floor_cbrt(bigint_pow(4, un))});
    out.push_back({"martyugin_order", "3^(n/3)", floor_cbrt(bigint_pow(3, un))});
    out.push_back({"limit_rate", "3^(n/3)", floor_cbrt(bigint_pow(3, un))});
    return out;
}

struct Lemma3Violation {
    std::string family;
    int k = 0;
    int j = 0;  // only meaningful for the partial-transversal family
    std::vector<int> part_sizes;
    std::string detail;
};

struct Lemma3Report {
    int n = 0;
    bool partial_family_exhaustive = false;
    long long checks = 0;
    std::vector<Lemma3Violation> violations;

    bool passed() const { return violations.empty(); }
};

inline constexpr int kLemma3ClosedFormLimit = 30;
inline constexpr int kLemma3ExhaustiveLimit = 9;

/// Checks the four transversal-count bound families:
///   1. T_k(n) <= 2^(n-k)                     for k in [1, n]
///   2. T_k(n) <= 2^(3k-n) * 3^(n-2k)         for n/3 <= k <= n/2
///   3. T_k(n) <= 3^(n/3)                     for k <= n/3 (compared as
///      T_k(n)^3 <= 3^n to stay in integers)
///   4. e_(k-j)(d) <= C(n,j) * T_k(n)         for j in [0, k-1]
/// Families 1-3 use the balanced maximizer; family 4 quantifies over all
/// partitions and is checked exhaustively, which is why it only runs for
/// n <= 9.
inline Lemma3Report lemma3_check(int n) {
    if (n < 1 || n > kLemma3ClosedFormLimit) {
        throw InputError("lemma3_check supports 1 <= n <= 30");
    }
    Lemma3Report report;
    report.n = n;
    const unsigned long un = static_cast<unsigned long>(n);

    auto balanced_sizes = [&](int k) {
        std::vector<int> sizes(static_cast<std::size_t>(k), n / k);
        for (int i = 0; i < n % k; ++i) sizes[static_cast<std::size_t>(i)] += 1;
        return sizes;
    };

    for (int k = 1; k <= n; ++k) {
        const BigInt tk = max_transversals(n, k);
        ++report.checks;
        if (tk > bigint_pow(2, un - static_cast<unsigned long>(k))) {
            report.violations.push_back(
                {"max_vs_2^(n-k)", k, 0, balanced_sizes(k), tk.get_str()});
        }
        if (3 * k >= n && 2 * k <= n) {
            ++report.checks;
            const BigInt rhs = bigint_pow(2, static_cast<unsigned long>(3 * k - n))
                               * bigint_pow(3, static_cast<unsigned long>(n - 2 * k));
            if (tk > rhs) {
                report.violations.push_back(
                    {"max_vs_2^(3k-n)3^(n-2k)", k, 0, balanced_sizes(k), tk.get_str()});
            }
        }
        if (3 * k <= n) {
            ++report.checks;
            if (tk * tk * tk > bigint_pow(3, un)) {
                report.violations.push_back(
                    {"max_vs_3^(n/3)", k, 0, balanced_sizes(k), tk.get_str()});
            }
        }
    }

    if (n <= kLemma3ExhaustiveLimit) {
        report.partial_family_exhaustive = true;
        std::vector<BigInt> tk_cache(static_cast<std::size_t>(n) + 1);
        for (int k = 1; k <= n; ++k) {
            tk_cache[static_cast<std::size_t>(k)] = max_transversals(n, k);
        }
        enumerate_set_partitions(n, [&](const std::vector<int>& rgs) {
            const Partition p = partition_from_rgs(rgs);
            const int k = p.num_parts();
            for (int j = 0; j <= k - 1; ++j) {
                ++report.checks;
                const BigInt lhs = partial_transversal_count(p, k - j);
                const BigInt rhs =
                    binomial(un, static_cast<unsigned long>(j)) * tk_cache[static_cast<std::size_t>(k)];
                if (lhs > rhs) {
                    report.violations.push_back(
                        {"partial_vs_binom*max", k, j, p.part_sizes(), lhs.get_str()});
                }
            }
            return true;
        });
    }
    return report;
}

}  // namespace primsync
