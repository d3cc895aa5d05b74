// Theorem verification harness: runs a reduction or bound family over a
// seeded corpus, re-checks every certificate, and aggregates a report. Each
// checker corresponds to one verifiable statement; the acceptance suite and
// the `verify` CLI subcommand are thin wrappers around run_verification.
#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "primsync/automata.hpp"
#include "primsync/boolmat.hpp"
#include "primsync/bounds.hpp"
#include "primsync/errors.hpp"
#include "primsync/generators.hpp"
#include "primsync/primitivity.hpp"
#include "primsync/reductions.hpp"

namespace primsync {

enum class TheoremId {
    kFig1Exponent,
    kCernyThresholds,
    kSinkEquality,
    kCarefulConstruction,
    kSandwich,
    kTotalSupportBound,
    kTransversalBounds,
    kWielandtAttainment,
    kPartitionTestEquivalence,
    kGreedyStepBound,
    kClassCExample,
};

inline const std::vector<std::pair<TheoremId, const char*>>& theorem_names() {
    static const std::vector<std::pair<TheoremId, const char*>> names = {
        {TheoremId::kFig1Exponent, "fig1"},
        {TheoremId::kCernyThresholds, "cerny"},
        {TheoremId::kSinkEquality, "sink-equality"},
        {TheoremId::kCarefulConstruction, "careful-construction"},
        {TheoremId::kSandwich, "sandwich"},
        {TheoremId::kTotalSupportBound, "total-support"},
        {TheoremId::kTransversalBounds, "transversal-bounds"},
        {TheoremId::kWielandtAttainment, "wielandt"},
        {TheoremId::kPartitionTestEquivalence, "pv-equivalence"},
        {TheoremId::kGreedyStepBound, "greedy-l1"},
        {TheoremId::kClassCExample, "classc-example"},
    };
    return names;
}

inline std::optional<TheoremId> theorem_from_name(const std::string& name) {
    for (const auto& [id, id_name] : theorem_names()) {
        if (name == id_name) return id;
    }
    return std::nullopt;
}

inline const char* theorem_name(TheoremId id) {
    for (const auto& [candidate, name] : theorem_names()) {
        if (candidate == id) return name;
    }
    return "?";
}

struct VerifyOptions {
    int samples = -1;  // -1 = per-theorem default
    int max_n = -1;    // -1 = per-theorem default
    std::uint64_t seed = 1;
    std::int64_t letter_cap = kDefaultLetterCap;
    std::uint64_t product_cap = kDefaultProductCap;
    bool record_passes = true;  // per-instance rows for passing instances
};

struct InstanceRecord {
    int index = 0;
    int n = 0;
    std::string status;  // "pass", "fail" or "rejected"
    std::string detail;
};

struct VerificationReport {
    std::string theorem;
    int attempted = 0;
    int passed = 0;
    int failed = 0;
    int rejected = 0;  // instances refused by an enumeration cap
    std::vector<InstanceRecord> instances;
    double wall_seconds = 0.0;

    bool consistent() const { return attempted == passed + failed + rejected; }
    bool ok() const { return failed == 0 && rejected == 0 && consistent(); }
};

namespace detail {

class ReportBuilder {
public:
    ReportBuilder(const char* theorem, bool record_passes)
        : record_passes_(record_passes), start_(std::chrono::steady_clock::now()) {
        report_.theorem = theorem;
    }

    void pass(int n, const std::string& info) {
        ++report_.attempted;
        ++report_.passed;
        if (record_passes_) {
            report_.instances.push_back({report_.attempted - 1, n, "pass", info});
        }
    }

    void fail(int n, const std::string& info) {
        ++report_.attempted;
        ++report_.failed;
        report_.instances.push_back({report_.attempted - 1, n, "fail", info});
    }

    void reject(int n, const std::string& info) {
        ++report_.attempted;
        ++report_.rejected;
        report_.instances.push_back({report_.attempted - 1, n, "rejected", info});
    }

    VerificationReport finish() {
        report_.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return std::move(report_);
    }

private:
    VerificationReport report_;
    bool record_passes_;
    std::chrono::steady_clock::time_point start_;
};

inline std::string summarize_certificate(const ReductionCertificate& cert) {
    std::ostringstream out;
    bool first = true;
    for (const auto& ineq : cert.inequalities_checked) {
        if (ineq.pass) continue;
        if (!first) out << "; ";
        out << ineq.name << ": " << ineq.lhs << " " << ineq.relation << " " << ineq.rhs
            << " is false";
        first = false;
    }
    if (first) out << "all checks pass";
    return out.str();
}

inline MatrixSet fig1_matrix_set() {
    return MatrixSet({BoolMatrix::from_entries({{0, 1, 0}, {0, 1, 1}, {0, 0, 1}}),
                      BoolMatrix::from_entries({{0, 0, 0}, {0, 1, 1}, {1, 1, 0}})});
}

/// The n-cycle with the extra edge (n-1) -> 1; the extremal pattern for the
/// single-matrix exponent.
inline BoolMatrix wielandt_matrix(int n) {
    BoolMatrix m(n);
    for (int i = 0; i < n; ++i) m.set(i, (i + 1) % n, true);
    m.set(n - 1, 1, true);
    return m;
}

inline PartialAutomaton cerny_plus_identity(int n) {
    auto letters = cerny(n).letters();
    std::vector<int> id(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) id[static_cast<std::size_t>(q)] = q;
    letters.push_back(std::move(id));
    return PartialAutomaton(n, std::move(letters));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Individual checkers.

inline VerificationReport verify_fig1(const VerifyOptions& opt) {
    detail::ReportBuilder builder("fig1", opt.record_passes);
    const auto start = std::chrono::steady_clock::now();
    const auto outcome = exponent(detail::fig1_matrix_set(), opt.product_cap);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool value_ok = outcome.status == ExponentStatus::kFound
                          && outcome.result->exponent == 4
                          && outcome.result->witness == Word{0, 1, 0, 1}
                          && verify_witness(detail::fig1_matrix_set(), outcome.result->witness);
    std::ostringstream info;
    info << "exponent="
         << (outcome.status == ExponentStatus::kFound ? outcome.result->exponent : -1);
    if (seconds >= 1.0) info << " over time limit: " << seconds << "s";
    if (value_ok && seconds < 1.0) {
        builder.pass(3, info.str());
    } else {
        builder.fail(3, info.str());
    }
    return builder.finish();
}

inline VerificationReport verify_cerny_thresholds(const VerifyOptions& opt) {
    detail::ReportBuilder builder("cerny", opt.record_passes);
    const int max_n = opt.max_n > 0 ? opt.max_n : 7;
    for (int n = 3; n <= max_n; ++n) {
        const auto start = std::chrono::steady_clock::now();
        const auto result = reset_threshold(cerny(n));
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const int expected = (n - 1) * (n - 1);
        const bool replay_ok =
            result && popcount(apply_word(cerny(n), full_mask(n), result->witness)) == 1;
        std::ostringstream info;
        info << "rt=" << (result ? result->threshold : -1) << " expected=" << expected;
        if (seconds >= 5.0) info << " over time limit: " << seconds << "s";
        if (result && result->threshold == expected && replay_ok && seconds < 5.0) {
            builder.pass(n, info.str());
        } else {
            builder.fail(n, info.str());
        }
    }
    return builder.finish();
}

inline VerificationReport verify_sink_equality(const VerifyOptions& opt) {
    detail::ReportBuilder builder("sink-equality", opt.record_passes);
    const int samples = opt.samples > 0 ? opt.samples : 100;
    const int max_n = opt.max_n > 0 ? opt.max_n : 6;
    SplitMix64 rng(opt.seed);
    for (int i = 0; i < samples; ++i) {
        const int n = rng.range(2, max_n);
        const int letters = rng.range(2, 3);
        const PartialAutomaton a = random_sink_automaton(rng, n, letters);
        try {
            const auto cert = certify_sink_to_nz(a, opt.product_cap);
            if (cert.all_pass()) {
                std::ostringstream info;
                info << "rt=" << cert.source_stats.at("rt")
                     << " exponent=" << cert.target_stats.at("exponent");
                builder.pass(n, info.str());
            } else {
                builder.fail(n, detail::summarize_certificate(cert));
            }
        } catch (const CapExceededError& e) {
            builder.reject(n, e.what());
        }
    }
    return builder.finish();
}

inline VerificationReport verify_careful_construction(const VerifyOptions& opt) {
    detail::ReportBuilder builder("careful-construction", opt.record_passes);
    const int samples = opt.samples > 0 ? opt.samples : 50;
    const int max_n = opt.max_n > 0 ? opt.max_n : 5;
    SplitMix64 rng(opt.seed);
    for (int i = 0; i < samples; ++i) {
        const int n = rng.range(2, max_n);
        const int letters = rng.range(2, 3);
        const PartialAutomaton a = random_carefully_synchronizing_automaton(rng, n, letters, 0.8);
        try {
            const auto cert = certify_partial_to_matrixset(a, opt.product_cap);
            if (cert.all_pass() && cert.source_stats.at("carefully_synchronizing") == 1) {
                std::ostringstream info;
                info << "car=" << cert.source_stats.at("car")
                     << " exponent=" << cert.target_stats.at("exponent");
                builder.pass(n, info.str());
            } else {
                builder.fail(n, detail::summarize_certificate(cert));
            }
        } catch (const CapExceededError& e) {
            builder.reject(n, e.what());
        }
    }
    return builder.finish();
}

inline VerificationReport verify_sandwich(const VerifyOptions& opt) {
    detail::ReportBuilder builder("sandwich", opt.record_passes);
    const int samples = opt.samples > 0 ? opt.samples : 50;
    const int max_n = opt.max_n > 0 ? opt.max_n : 4;
    SplitMix64 rng(opt.seed);
    int generated = 0;
    const int generation_limit = samples * 1000;
    for (int i = 0; i < samples; ++i) {
        // Primitive-filtered corpus: draw until the instance is primitive.
        std::optional<MatrixSet> instance;
        int n = 0;
        while (!instance && generated < generation_limit) {
            ++generated;
            n = rng.range(2, max_n);
            MatrixSet candidate = random_nz_set(rng, n, rng.range(2, 3), 0.4);
            if (is_primitive(candidate, opt.product_cap).value_or(false)) {
                instance = std::move(candidate);
            }
        }
        if (!instance) {
            builder.reject(n, "generator failed to draw a primitive instance");
            continue;
        }
        try {
            const auto result = sandwich_decomposition(*instance, opt.letter_cap, opt.product_cap);
            if (result.certificate.all_pass()) {
                std::ostringstream info;
                info << "|P|=" << result.p.size() << " |Q|=" << result.q.size()
                     << " |R|=" << result.r.size()
                     << " car_a=" << result.certificate.target_stats.at("car_a")
                     << " car_b=" << result.certificate.target_stats.at("car_b");
                builder.pass(n, info.str());
            } else {
                builder.fail(n, detail::summarize_certificate(result.certificate));
            }
        } catch (const CapExceededError& e) {
            builder.reject(n, e.what());
        }
    }
    return builder.finish();
}

inline VerificationReport verify_total_support(const VerifyOptions& opt) {
    detail::ReportBuilder builder("total-support", opt.record_passes);
    const int samples = opt.samples > 0 ? opt.samples : 100;
    const int max_n = opt.max_n > 0 ? opt.max_n : 5;
    SplitMix64 rng(opt.seed);
    int generated = 0;
    const int generation_limit = samples * 1000;
    for (int i = 0; i < samples; ++i) {
        std::optional<MatrixSet> instance;
        int n = 0;
        while (!instance && generated < generation_limit) {
            ++generated;
            n = rng.range(2, max_n);
            MatrixSet candidate =
                random_total_support_set(rng, n, rng.range(2, 3), rng.range(2, 3));
            if (is_primitive(candidate, opt.product_cap).value_or(false)) {
                instance = std::move(candidate);
            }
        }
        if (!instance) {
            builder.reject(n, "generator failed to draw a primitive instance");
            continue;
        }
        try {
            const auto cert =
                certify_totalsupport_to_eulerian(*instance, opt.letter_cap, opt.product_cap);
            const bool bounds_present = cert.target_stats.count("rt_a") == 1
                                        && cert.target_stats.count("rt_b") == 1
                                        && cert.source_stats.at("primitive") == 1;
            if (cert.all_pass() && bounds_present) {
                std::ostringstream info;
                info << "exponent=" << cert.source_stats.at("exponent")
                     << " rt_a=" << cert.target_stats.at("rt_a")
                     << " rt_b=" << cert.target_stats.at("rt_b");
                builder.pass(n, info.str());
            } else {
                builder.fail(n, detail::summarize_certificate(cert));
            }
        } catch (const CapExceededError& e) {
            builder.reject(n, e.what());
        }
    }
    return builder.finish();
}

inline VerificationReport verify_transversal_bounds(const VerifyOptions& opt) {
    detail::ReportBuilder builder("transversal-bounds", opt.record_passes);
    const int closed_form_max =
        opt.max_n > 0 ? std::min(opt.max_n, kLemma3ClosedFormLimit) : kLemma3ClosedFormLimit;
    for (int n = 1; n <= closed_form_max; ++n) {
        const auto report = lemma3_check(n);
        std::ostringstream info;
        info << "checks=" << report.checks
             << (report.partial_family_exhaustive ? " (exhaustive)" : " (closed-form families)");
        if (report.passed()) {
            builder.pass(n, info.str());
        } else {
            info << " violations=" << report.violations.size();
            builder.fail(n, info.str());
        }
    }
    return builder.finish();
}

inline VerificationReport verify_wielandt(const VerifyOptions& opt) {
    detail::ReportBuilder builder("wielandt", opt.record_passes);
    const int max_n = opt.max_n > 0 ? opt.max_n : 6;
    for (int n = 3; n <= max_n; ++n) {
        const MatrixSet single({detail::wielandt_matrix(n)});
        const auto outcome = exponent(single, opt.product_cap);
        const int expected = n * n - 2 * n + 2;
        const int cap = (n - 1) * (n - 1) + 1;
        std::ostringstream info;
        info << "exponent="
             << (outcome.status == ExponentStatus::kFound ? outcome.result->exponent : -1)
             << " expected=" << expected;
        if (outcome.status == ExponentStatus::kFound && outcome.result->exponent == expected
            && outcome.result->exponent <= cap) {
            builder.pass(n, info.str());
        } else {
            builder.fail(n, info.str());
        }
    }
    return builder.finish();
}

/// Exhaustive sweep over pairs of NZ 3x3 matrices (i <= j), restricted to
/// irreducible sets: the partition test finds a stabilized partition iff the
/// exponent search reports imprimitivity. Passing pairs are only counted,
/// not recorded, because the corpus has tens of thousands of instances.
inline VerificationReport verify_partition_test_equivalence(const VerifyOptions& opt) {
    detail::ReportBuilder builder("pv-equivalence", /*record_passes=*/false);
    const int n = 3;
    std::vector<BoolMatrix> nz_matrices;
    for (Mask r0 = 1; r0 < 8; ++r0) {
        for (Mask r1 = 1; r1 < 8; ++r1) {
            for (Mask r2 = 1; r2 < 8; ++r2) {
                if ((r0 | r1 | r2) != 7) continue;  // zero column
                nz_matrices.push_back(BoolMatrix(n, {r0, r1, r2}));
            }
        }
    }
    for (std::size_t i = 0; i < nz_matrices.size(); ++i) {
        for (std::size_t j = i; j < nz_matrices.size(); ++j) {
            MatrixSet pair(i == j ? std::vector<BoolMatrix>{nz_matrices[i]}
                                  : std::vector<BoolMatrix>{nz_matrices[i], nz_matrices[j]});
            if (!is_irreducible_set(pair)) continue;
            const auto partition = pv_partition_test(pair);
            const auto primitive = is_primitive(pair, opt.product_cap);
            if (primitive.has_value() && *primitive == !partition.has_value()) {
                builder.pass(n, "");
            } else {
                std::ostringstream info;
                info << "pair (" << i << "," << j << ") partition="
                     << (partition ? "found" : "none") << " primitive="
                     << (primitive ? (*primitive ? "true" : "false") : "cap");
                builder.fail(n, info.str());
            }
        }
    }
    return builder.finish();
}

inline VerificationReport verify_greedy_step_bound(const VerifyOptions& opt) {
    detail::ReportBuilder builder("greedy-l1", opt.record_passes);
    const int samples = opt.samples > 0 ? opt.samples : 25;
    const int max_n = opt.max_n > 0 ? opt.max_n : 10;
    SplitMix64 rng(opt.seed);
    for (int i = 0; i < samples; ++i) {
        const int n = rng.range(4, max_n);
        const int letters = rng.range(2, 3);
        const PartialAutomaton a = random_synchronizing_automaton(rng, n, letters);
        try {
            const auto result = greedy_careful_word(a, {});
            const auto image = try_apply_word(a, a.all_states(), result.word);
            bool ok = image.has_value() && popcount(*image) == 1;
            std::string violation;
            for (const auto& entry : result.trace) {
                const int k = entry.target_size;
                const long long bound =
                    static_cast<long long>(n - k) * (1LL << std::max(0, n - k - 1));
                if (entry.word_length > bound) {
                    ok = false;
                    std::ostringstream v;
                    v << "|u_" << k << "|=" << entry.word_length << " exceeds " << bound;
                    violation = v.str();
                    break;
                }
            }
            std::ostringstream info;
            info << "word_length=" << result.word.size() << " steps=" << result.trace.size();
            if (!violation.empty()) info << " " << violation;
            if (ok) {
                builder.pass(n, info.str());
            } else {
                builder.fail(n, info.str());
            }
        } catch (const ProcedureStuckError& e) {
            builder.fail(n, e.what());
        }
    }
    return builder.finish();
}

inline VerificationReport verify_classc_example(const VerifyOptions& opt) {
    detail::ReportBuilder builder("classc-example", opt.record_passes);
    const PartialAutomaton automaton = detail::cerny_plus_identity(4);
    const auto partition = class_c_partition(automaton);
    if (!partition) {
        builder.fail(4, "no qualifying alphabet partition found");
        return builder.finish();
    }
    // Letters are 0 = cycle, 1 = merge, 2 = identity; the qualifying
    // partition groups the merge letter with the identity and leaves the
    // cycle alone.
    const Partition expected({{0}, {1, 2}});
    const bool partition_ok = *partition == expected;
    const auto cert = certify_classc_to_nz(automaton, *partition, opt.product_cap);
    const bool exponent_ok = cert.all_pass() && cert.target_stats.count("exponent") == 1
                             && cert.target_stats.at("exponent") >= 9;
    std::ostringstream info;
    info << "partition={cycle}/{merge,identity}: " << (partition_ok ? "yes" : "no");
    if (cert.target_stats.count("exponent") == 1) {
        info << " exponent=" << cert.target_stats.at("exponent");
    }
    if (partition_ok && exponent_ok) {
        builder.pass(4, info.str());
    } else {
        builder.fail(4, info.str());
    }
    return builder.finish();
}

inline VerificationReport run_verification(TheoremId id, const VerifyOptions& opt = {}) {
    switch (id) {
        case TheoremId::kFig1Exponent: return verify_fig1(opt);
        case TheoremId::kCernyThresholds: return verify_cerny_thresholds(opt);
        case TheoremId::kSinkEquality: return verify_sink_equality(opt);
        case TheoremId::kCarefulConstruction: return verify_careful_construction(opt);
        case TheoremId::kSandwich: return verify_sandwich(opt);
        case TheoremId::kTotalSupportBound: return verify_total_support(opt);
        case TheoremId::kTransversalBounds: return verify_transversal_bounds(opt);
        case TheoremId::kWielandtAttainment: return verify_wielandt(opt);
        case TheoremId::kPartitionTestEquivalence: return verify_partition_test_equivalence(opt);
        case TheoremId::kGreedyStepBound: return verify_greedy_step_bound(opt);
        case TheoremId::kClassCExample: return verify_classc_example(opt);
    }
    throw InputError("unknown theorem id");
}

}  // namespace primsync
