// Seeded, reproducible corpus generation. All randomness comes from
// SplitMix64 (Steele-Lea-Flood constants) with modulo range reduction, so a
// (family, parameters, seed) triple pins the exact instance stream on every
// platform.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "primsync/automata.hpp"
#include "primsync/boolmat.hpp"
#include "primsync/errors.hpp"
#include "primsync/primitivity.hpp"

namespace primsync {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform-ish value in [0, bound); plain modulo, bias is irrelevant here.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    int range(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool chance(double p) {
        return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
    }

private:
    std::uint64_t state_;
};

inline std::vector<int> random_permutation(SplitMix64& rng, int n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i + 1)));
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    return perm;
}

/// Entries drawn independently, then a random 1 added to every zero row and
/// zero column.
inline BoolMatrix random_nz_matrix(SplitMix64& rng, int n, double density) {
    BoolMatrix m(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (rng.chance(density)) m.set(i, j, true);
        }
    }
    for (int i = 0; i < n; ++i) {
        if (m.row(i) == 0) m.set(i, rng.range(0, n - 1), true);
    }
    const NzStatus st = nz_status(m);
    for (int j : st.zero_cols) m.set(rng.range(0, n - 1), j, true);
    return m;
}

inline MatrixSet random_nz_set(SplitMix64& rng, int n, int matrices, double density) {
    std::vector<BoolMatrix> out;
    out.reserve(static_cast<std::size_t>(matrices));
    for (int i = 0; i < matrices; ++i) out.push_back(random_nz_matrix(rng, n, density));
    return MatrixSet(std::move(out));
}

/// Entrywise OR of `summands` random permutation matrices; every entry then
/// lies on one of the summed diagonals, so total support holds by
/// construction.
inline BoolMatrix random_total_support_matrix(SplitMix64& rng, int n, int summands) {
    BoolMatrix m(n);
    for (int s = 0; s < summands; ++s) {
        const auto perm = random_permutation(rng, n);
        for (int i = 0; i < n; ++i) m.set(i, perm[static_cast<std::size_t>(i)], true);
    }
    return m;
}

inline MatrixSet random_total_support_set(SplitMix64& rng, int n, int matrices, int summands) {
    std::vector<BoolMatrix> out;
    out.reserve(static_cast<std::size_t>(matrices));
    for (int i = 0; i < matrices; ++i) {
        out.push_back(random_total_support_matrix(rng, n, summands));
    }
    return MatrixSet(std::move(out));
}

inline PartialAutomaton random_complete_automaton(SplitMix64& rng, int n, int letters) {
    std::vector<std::vector<int>> fns(static_cast<std::size_t>(letters),
                                      std::vector<int>(static_cast<std::size_t>(n)));
    for (auto& fn : fns) {
        for (int q = 0; q < n; ++q) fn[static_cast<std::size_t>(q)] = rng.range(0, n - 1);
    }
    return PartialAutomaton(n, std::move(fns));
}

/// Each transition defined with probability `defined_density`.
inline PartialAutomaton random_partial_automaton(SplitMix64& rng, int n, int letters,
                                                 double defined_density) {
    std::vector<std::vector<int>> fns(static_cast<std::size_t>(letters),
                                      std::vector<int>(static_cast<std::size_t>(n), kUndefined));
    for (auto& fn : fns) {
        for (int q = 0; q < n; ++q) {
            if (rng.chance(defined_density)) fn[static_cast<std::size_t>(q)] = rng.range(0, n - 1);
        }
    }
    return PartialAutomaton(n, std::move(fns));
}

inline constexpr int kMaxGeneratorAttempts = 100000;

/// Rejection-samples complete automata until one synchronizes.
inline PartialAutomaton random_synchronizing_automaton(SplitMix64& rng, int n, int letters) {
    for (int attempt = 0; attempt < kMaxGeneratorAttempts; ++attempt) {
        PartialAutomaton a = random_complete_automaton(rng, n, letters);
        if (reset_threshold(a)) return a;
    }
    throw Error("failed to sample a synchronizing automaton");
}

/// Complete automaton with a sink state every letter fixes; rejection until
/// synchronizing (equivalently, until every state can reach the sink).
inline PartialAutomaton random_sink_automaton(SplitMix64& rng, int n, int letters) {
    for (int attempt = 0; attempt < kMaxGeneratorAttempts; ++attempt) {
        const int sink = rng.range(0, n - 1);
        std::vector<std::vector<int>> fns(static_cast<std::size_t>(letters),
                                          std::vector<int>(static_cast<std::size_t>(n)));
        for (auto& fn : fns) {
            for (int q = 0; q < n; ++q) {
                fn[static_cast<std::size_t>(q)] = q == sink ? sink : rng.range(0, n - 1);
            }
        }
        PartialAutomaton a(n, std::move(fns));
        if (reset_threshold(a)) return a;
    }
    throw Error("failed to sample a synchronizing sink automaton");
}

/// Rejection-samples partial automata until one is carefully synchronizing.
inline PartialAutomaton random_carefully_synchronizing_automaton(SplitMix64& rng, int n,
                                                                 int letters,
                                                                 double defined_density) {
    for (int attempt = 0; attempt < kMaxGeneratorAttempts; ++attempt) {
        PartialAutomaton a = random_partial_automaton(rng, n, letters, defined_density);
        if (careful_threshold(a)) return a;
    }
    throw Error("failed to sample a carefully synchronizing automaton");
}

// ---------------------------------------------------------------------------
// Named corpus families for the CLI.

enum class CorpusFamily {
    kRandomNzSet,
    kRandomPartialAutomaton,
    kRandomSinkAutomaton,
    kRandomTotalSupportSet,
    kCerny,
    kCernyPlusIdentity,
};

inline std::optional<CorpusFamily> corpus_family_from_name(const std::string& name) {
    if (name == "random-nz-set") return CorpusFamily::kRandomNzSet;
    if (name == "random-partial-aut") return CorpusFamily::kRandomPartialAutomaton;
    if (name == "random-sink-aut") return CorpusFamily::kRandomSinkAutomaton;
    if (name == "random-total-support-set") return CorpusFamily::kRandomTotalSupportSet;
    if (name == "cerny") return CorpusFamily::kCerny;
    if (name == "cerny-plus-identity") return CorpusFamily::kCernyPlusIdentity;
    return std::nullopt;
}

inline const char* corpus_family_name(CorpusFamily family) {
    switch (family) {
        case CorpusFamily::kRandomNzSet: return "random-nz-set";
        case CorpusFamily::kRandomPartialAutomaton: return "random-partial-aut";
        case CorpusFamily::kRandomSinkAutomaton: return "random-sink-aut";
        case CorpusFamily::kRandomTotalSupportSet: return "random-total-support-set";
        case CorpusFamily::kCerny: return "cerny";
        case CorpusFamily::kCernyPlusIdentity: return "cerny-plus-identity";
    }
    return "?";
}

struct CorpusSpec {
    CorpusFamily family = CorpusFamily::kRandomNzSet;
    int n = 4;
    int count = 10;
    std::uint64_t seed = 1;
    double density = 0.5;          // entry density / defined-transition density
    int alphabet_size = 2;         // matrices per set / letters per automaton
    int num_permutations = 2;      // summands for total-support matrices
};

using CorpusInstance = std::variant<MatrixSet, PartialAutomaton>;

/// Deterministic instance stream: same spec (including seed) yields the same
/// sequence, element by element.
inline std::vector<CorpusInstance> generate_corpus(const CorpusSpec& spec) {
    if (spec.n < 1 || spec.count < 0 || spec.alphabet_size < 1) {
        throw InputError("invalid corpus parameters");
    }
    SplitMix64 rng(spec.seed);
    std::vector<CorpusInstance> out;
    out.reserve(static_cast<std::size_t>(spec.count));
    for (int i = 0; i < spec.count; ++i) {
        switch (spec.family) {
            case CorpusFamily::kRandomNzSet:
                out.emplace_back(random_nz_set(rng, spec.n, spec.alphabet_size, spec.density));
                break;
            case CorpusFamily::kRandomPartialAutomaton:
                out.emplace_back(
                    random_partial_automaton(rng, spec.n, spec.alphabet_size, spec.density));
                break;
            case CorpusFamily::kRandomSinkAutomaton:
                out.emplace_back(random_sink_automaton(rng, spec.n, spec.alphabet_size));
                break;
            case CorpusFamily::kRandomTotalSupportSet:
                out.emplace_back(random_total_support_set(rng, spec.n, spec.alphabet_size,
                                                          spec.num_permutations));
                break;
            case CorpusFamily::kCerny:
                out.emplace_back(cerny(spec.n));
                break;
            case CorpusFamily::kCernyPlusIdentity: {
                auto letters = cerny(spec.n).letters();
                std::vector<int> id(static_cast<std::size_t>(spec.n));
                for (int q = 0; q < spec.n; ++q) id[static_cast<std::size_t>(q)] = q;
                letters.push_back(std::move(id));
                out.emplace_back(PartialAutomaton(spec.n, std::move(letters)));
                break;
            }
        }
    }
    return out;
}

}  // namespace primsync
