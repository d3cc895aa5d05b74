// Constructive reductions between boolean matrix sets and (partial)
// automata. Every reduction can emit a certificate that stores the witnesses
// (words, product index sequences, partitions) and the inequalities they
// support, so the relation between source and target quantities can be
// re-verified independently.
#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "primsync/automata.hpp"
#include "primsync/boolmat.hpp"
#include "primsync/errors.hpp"
#include "primsync/partition.hpp"
#include "primsync/primitivity.hpp"

namespace primsync {

inline constexpr std::int64_t kDefaultLetterCap = 20000;

enum class ReductionKind {
    kMatrixSetToPartial,
    kPartialToMatrixSet,
    kSandwich,
    kSinkToNz,
    kClassCToNz,
    kNzToClassC,
    kTotalSupportToEulerian,
};

inline const char* reduction_kind_name(ReductionKind kind) {
    switch (kind) {
        case ReductionKind::kMatrixSetToPartial: return "M2PA";
        case ReductionKind::kPartialToMatrixSet: return "PA2M";
        case ReductionKind::kSandwich: return "SANDWICH";
        case ReductionKind::kSinkToNz: return "SINK2NZ";
        case ReductionKind::kClassCToNz: return "CLASSC2NZ";
        case ReductionKind::kNzToClassC: return "NZ2CLASSC";
        case ReductionKind::kTotalSupportToEulerian: return "TS2EULER";
    }
    return "?";
}

struct CheckedInequality {
    std::string name;
    long long lhs = 0;
    std::string relation;  // "==", "<=", ">=", "<", ">"
    long long rhs = 0;
    bool pass = false;
};

inline bool evaluate_relation(long long lhs, const std::string& relation, long long rhs) {
    if (relation == "==") return lhs == rhs;
    if (relation == "<=") return lhs <= rhs;
    if (relation == ">=") return lhs >= rhs;
    if (relation == "<") return lhs < rhs;
    if (relation == ">") return lhs > rhs;
    throw InputError("unknown relation: " + relation);
}

struct WitnessBag {
    std::map<std::string, Word> words;  // letter or matrix index sequences
    std::map<std::string, Partition> partitions;
    std::map<std::string, std::vector<long long>> sequences;  // other integer data
};

struct ReductionCertificate {
    ReductionKind kind = ReductionKind::kMatrixSetToPartial;
    std::map<std::string, long long> source_stats;
    std::map<std::string, long long> target_stats;
    WitnessBag witnesses;
    std::vector<CheckedInequality> inequalities_checked;

    void check(std::string name, long long lhs, std::string relation, long long rhs) {
        const bool pass = evaluate_relation(lhs, relation, rhs);
        inequalities_checked.push_back(
            {std::move(name), lhs, std::move(relation), rhs, pass});
    }

    bool all_pass() const {
        for (const auto& ineq : inequalities_checked) {
            if (!ineq.pass) return false;
        }
        return true;
    }
};

// ---------------------------------------------------------------------------
// Selection functions of a matrix.

/// All partial functions picking one positive entry per row (undefined
/// exactly on zero rows), in odometer order with row 0 varying slowest and
/// the column choices of each row ascending. Their count is the product of
/// the positive row degrees; above letter_cap the enumeration is refused.
inline std::vector<std::vector<int>> selection_functions(const BoolMatrix& m,
                                                         std::int64_t letter_cap = kDefaultLetterCap) {
    const int n = m.dim();
    unsigned __int128 count = 1;
    for (int i = 0; i < n; ++i) {
        const int degree = popcount(m.row(i));
        if (degree > 0) count *= static_cast<unsigned>(degree);
        if (count > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max())) {
            throw LetterCapExceededError(std::numeric_limits<std::int64_t>::max());
        }
    }
    if (static_cast<std::int64_t>(count) > letter_cap) {
        throw LetterCapExceededError(static_cast<std::int64_t>(count));
    }
    std::vector<std::vector<int>> choices(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (m.row(i) == 0) {
            choices[static_cast<std::size_t>(i)] = {kUndefined};
        } else {
            for_each_bit(m.row(i),
                         [&](int j) { choices[static_cast<std::size_t>(i)].push_back(j); });
        }
    }
    std::vector<std::vector<int>> out;
    out.reserve(static_cast<std::size_t>(count));
    std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
    while (true) {
        std::vector<int> fn(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            fn[static_cast<std::size_t>(i)] =
                choices[static_cast<std::size_t>(i)][pick[static_cast<std::size_t>(i)]];
        }
        out.push_back(std::move(fn));
        int i = n - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] + 1
                             == choices[static_cast<std::size_t>(i)].size()) {
            pick[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        pick[static_cast<std::size_t>(i)] += 1;
    }
    return out;
}

/// Left-to-right product of the indexed matrices; empty = identity.
inline BoolMatrix replay_product(const MatrixSet& s, const Word& indices) {
    BoolMatrix acc = BoolMatrix::identity(s.n);
    for (int idx : indices) {
        if (idx < 0 || idx >= s.size()) throw InputError("product index out of range");
        acc = acc * s.matrices[static_cast<std::size_t>(idx)];
    }
    return acc;
}

inline bool column_positive(const BoolMatrix& m, int col) {
    for (int i = 0; i < m.dim(); ++i) {
        if (!m.get(i, col)) return false;
    }
    return true;
}

/// Adjacency matrix of a partial transformation: entry (q, f(q)) = 1 where
/// defined, zero row where undefined.
inline BoolMatrix adjacency_matrix(const std::vector<int>& fn) {
    const int n = static_cast<int>(fn.size());
    BoolMatrix m(n);
    for (int q = 0; q < n; ++q) {
        if (fn[static_cast<std::size_t>(q)] != kUndefined) {
            m.set(q, fn[static_cast<std::size_t>(q)], true);
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Matrix set -> partial automaton.

struct DerivedAutomaton {
    PartialAutomaton automaton;
    std::vector<int> letter_source;  // index of the first matrix realizing the letter
};

/// Letters are the selection functions of the member matrices, matrices in
/// order, duplicates across matrices kept once (tagged with the first
/// source).
inline DerivedAutomaton matrixset_to_partial(const MatrixSet& s,
                                             std::int64_t letter_cap = kDefaultLetterCap) {
    std::vector<std::vector<int>> letters;
    std::vector<int> sources;
    std::map<std::vector<int>, int> seen;
    for (int m = 0; m < s.size(); ++m) {
        for (auto& fn : selection_functions(s.matrices[static_cast<std::size_t>(m)], letter_cap)) {
            if (seen.emplace(fn, static_cast<int>(letters.size())).second) {
                letters.push_back(std::move(fn));
                sources.push_back(m);
            }
        }
    }
    return DerivedAutomaton{PartialAutomaton(s.n, std::move(letters)), std::move(sources)};
}

// ---------------------------------------------------------------------------
// Partial automaton -> matrix set.

/// The adjacency matrices of the letters followed by the n rank-one matrices
/// with all-ones row k, k ascending.
inline MatrixSet partial_to_matrixset(const PartialAutomaton& a) {
    std::vector<BoolMatrix> matrices;
    matrices.reserve(static_cast<std::size_t>(a.num_letters() + a.num_states()));
    for (int l = 0; l < a.num_letters(); ++l) matrices.push_back(adjacency_matrix(a.letter(l)));
    for (int k = 0; k < a.num_states(); ++k) {
        BoolMatrix e(a.num_states());
        e.set_row(k, full_mask(a.num_states()));
        matrices.push_back(e);
    }
    return MatrixSet(std::move(matrices));
}

// ---------------------------------------------------------------------------
// Sink automaton -> NZ matrix set.

/// Adjacency matrices of the letters with the sink row made positive. The
/// one-state case returns the fixed 2x2 set {[[1,1],[1,0]]} (exponent 2).
inline MatrixSet sink_to_nz(const PartialAutomaton& a) {
    if (a.num_states() == 1) {
        return MatrixSet({BoolMatrix::from_entries({{1, 1}, {1, 0}})});
    }
    if (!a.complete()) throw NotCompleteError();
    const auto sink = find_sink(a);
    if (!sink) throw NoSinkError();
    if (!reset_threshold(a)) throw NotSynchronizingError();
    std::vector<BoolMatrix> matrices;
    matrices.reserve(static_cast<std::size_t>(a.num_letters()));
    for (int l = 0; l < a.num_letters(); ++l) {
        BoolMatrix m = adjacency_matrix(a.letter(l));
        m.set_row(*sink, full_mask(a.num_states()));
        matrices.push_back(std::move(m));
    }
    return MatrixSet(std::move(matrices));
}

// ---------------------------------------------------------------------------
// Class-C automaton -> NZ matrix set and back.

/// One matrix per block of the alphabet partition: the OR of the block's
/// letter adjacency matrices.
inline MatrixSet classc_to_nz(const PartialAutomaton& a, const Partition& alphabet_partition) {
    if (!check_alphabet_partition(a, alphabet_partition)) throw NotClassCError();
    std::vector<BoolMatrix> matrices;
    for (const auto& block : alphabet_partition.parts) {
        BoolMatrix m(a.num_states());
        for (int l : block) m = m | adjacency_matrix(a.letter(l));
        matrices.push_back(std::move(m));
    }
    return MatrixSet(std::move(matrices));
}

struct ClassCDerivation {
    PartialAutomaton automaton_a;  // from the set itself; complete
    Partition partition_a;         // letters grouped by source matrix
    PartialAutomaton automaton_b;  // from the transposed set
    Partition partition_b;
};

/// For an NZ set all selection functions are total, so both derived automata
/// are complete; grouping the letters by source matrix satisfies both
/// alphabet-partition conditions by construction. Duplicate functions across
/// matrices stay distinct letters here so the grouping remains a partition.
inline ClassCDerivation nz_to_classc_automata(const MatrixSet& s,
                                              std::int64_t letter_cap = kDefaultLetterCap) {
    if (!all_nz(s)) throw NotNzError();
    auto build = [&](const MatrixSet& set) {
        std::vector<std::vector<int>> letters;
        std::vector<std::vector<int>> blocks;
        for (int m = 0; m < set.size(); ++m) {
            std::vector<int> block;
            for (auto& fn :
                 selection_functions(set.matrices[static_cast<std::size_t>(m)], letter_cap)) {
                block.push_back(static_cast<int>(letters.size()));
                letters.push_back(std::move(fn));
            }
            blocks.push_back(std::move(block));
        }
        return std::make_pair(PartialAutomaton(set.n, std::move(letters)),
                              Partition(std::move(blocks)));
    };
    auto [aut_a, part_a] = build(s);
    auto [aut_b, part_b] = build(s.transposed());
    return ClassCDerivation{std::move(aut_a), std::move(part_a), std::move(aut_b),
                            std::move(part_b)};
}

// ---------------------------------------------------------------------------
// Total-support set -> Eulerian automata.

struct EulerianDerivation {
    PartialAutomaton automaton_a;
    PartialAutomaton automaton_b;
    std::vector<long long> multiplicities_a;  // per letter
    std::vector<long long> multiplicities_b;
    std::vector<int> letter_source_a;  // source matrix per letter
    std::vector<int> letter_source_b;
    std::vector<int> cover_count_a;  // h of the diagonal cover, per matrix
    std::vector<int> cover_count_b;
};

/// Each matrix contributes its selection functions weighted by the product
/// of the diagonal-cover counts along the chosen entries; with these
/// multiplicities both automata are Eulerian.
inline EulerianDerivation totalsupport_to_eulerian(const MatrixSet& s,
                                                   std::int64_t letter_cap = kDefaultLetterCap) {
    auto build = [&](const MatrixSet& set, PartialAutomaton* aut, std::vector<long long>* mult,
                     std::vector<int>* source, std::vector<int>* cover) {
        std::vector<std::vector<int>> letters;
        for (int m = 0; m < set.size(); ++m) {
            const BoolMatrix& mat = set.matrices[static_cast<std::size_t>(m)];
            const DsPattern pattern = doubly_stochastic_pattern(mat);
            cover->push_back(pattern.h);
            for (auto& fn : selection_functions(mat, letter_cap)) {
                long long weight = 1;
                for (int q = 0; q < set.n; ++q) {
                    const long long entry =
                        pattern.d[static_cast<std::size_t>(q)]
                                 [static_cast<std::size_t>(fn[static_cast<std::size_t>(q)])];
                    if (weight > std::numeric_limits<long long>::max() / entry) {
                        throw CapExceededError("letter multiplicity overflows");
                    }
                    weight *= entry;
                }
                mult->push_back(weight);
                source->push_back(m);
                letters.push_back(std::move(fn));
            }
        }
        *aut = PartialAutomaton(set.n, std::move(letters));
    };
    std::vector<long long> mult_a, mult_b;
    std::vector<int> source_a, source_b, cover_a, cover_b;
    PartialAutomaton aut_a(1, {{0}});
    PartialAutomaton aut_b(1, {{0}});
    build(s, &aut_a, &mult_a, &source_a, &cover_a);
    build(s.transposed(), &aut_b, &mult_b, &source_b, &cover_b);
    return EulerianDerivation{std::move(aut_a),    std::move(aut_b),  std::move(mult_a),
                              std::move(mult_b),   std::move(source_a), std::move(source_b),
                              std::move(cover_a),  std::move(cover_b)};
}

// ---------------------------------------------------------------------------
// Sandwich decomposition of a primitive set.

struct SandwichResult {
    Word p;  // matrix indices; the product has a positive column
    Word q;  // connects the positive column to the positive row
    Word r;  // the product has a positive row
    int column_index = 0;
    int row_index = 0;
    ReductionCertificate certificate;
};

namespace detail {

/// Matrix-index product whose replay has a positive column, obtained from a
/// shortest careful word of the derived partial automaton. Returns the
/// indices and the column.
inline std::pair<Word, int> positive_column_product(const MatrixSet& s, std::int64_t letter_cap,
                                                    int* careful_len) {
    const DerivedAutomaton derived = matrixset_to_partial(s, letter_cap);
    const auto sync = careful_threshold(derived.automaton);
    // A primitive source set always yields a carefully synchronizing
    // automaton.
    if (!sync) throw NotPrimitiveError();
    *careful_len = sync->threshold;
    Word product;
    product.reserve(sync->witness.size());
    for (int letter : sync->witness) {
        product.push_back(derived.letter_source[static_cast<std::size_t>(letter)]);
    }
    const Mask target = apply_word(derived.automaton, derived.automaton.all_states(), sync->witness);
    return {std::move(product), lowest_bit(target)};
}

}  // namespace detail

/// Splits a positive product into P (positive column i), Q (one step chain
/// with Q[i,j] > 0, at most n-1 factors) and R (positive row j), with P and
/// R bounded by the careful thresholds of the automata derived from the set
/// and its transpose.
inline SandwichResult sandwich_decomposition(const MatrixSet& s,
                                             std::int64_t letter_cap = kDefaultLetterCap,
                                             std::uint64_t product_cap = kDefaultProductCap) {
    const auto exp_outcome = exponent(s, product_cap);
    if (exp_outcome.status == ExponentStatus::kNotPrimitive) throw NotPrimitiveError();
    if (exp_outcome.status == ExponentStatus::kCapExceeded) {
        throw CapExceededError("exponent search hit the product cap");
    }

    SandwichResult out;
    int car_a = 0;
    int car_b = 0;
    auto [p_word, column] = detail::positive_column_product(s, letter_cap, &car_a);
    auto [r_transposed, row] = detail::positive_column_product(s.transposed(), letter_cap, &car_b);
    out.p = std::move(p_word);
    out.column_index = column;
    out.row_index = row;
    // A positive column of a product of transposed matrices transposes to a
    // positive row of the reversed product of the originals.
    out.r.assign(r_transposed.rbegin(), r_transposed.rend());

    // Shortest path column -> row in the union digraph; each edge is
    // realized by the least matrix having that entry.
    if (column != row) {
        const BoolMatrix u = s.union_matrix();
        std::vector<int> prev(static_cast<std::size_t>(s.n), -1);
        std::vector<int> dist(static_cast<std::size_t>(s.n), -1);
        std::vector<int> order{column};
        dist[static_cast<std::size_t>(column)] = 0;
        for (std::size_t head = 0; head < order.size(); ++head) {
            const int v = order[head];
            if (v == row) break;
            for_each_bit(u.row(v), [&](int w) {
                if (dist[static_cast<std::size_t>(w)] < 0) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                    prev[static_cast<std::size_t>(w)] = v;
                    order.push_back(w);
                }
            });
        }
        // Primitivity implies strong connectivity of the union digraph.
        if (dist[static_cast<std::size_t>(row)] < 0) throw NotPrimitiveError();
        std::vector<int> path{row};
        while (path.back() != column) path.push_back(prev[static_cast<std::size_t>(path.back())]);
        std::reverse(path.begin(), path.end());
        for (std::size_t step = 0; step + 1 < path.size(); ++step) {
            int chosen = -1;
            for (int m = 0; m < s.size() && chosen < 0; ++m) {
                if (s.matrices[static_cast<std::size_t>(m)].get(path[step], path[step + 1])) {
                    chosen = m;
                }
            }
            out.q.push_back(chosen);
        }
    }

    Word full = out.p;
    full.insert(full.end(), out.q.begin(), out.q.end());
    full.insert(full.end(), out.r.begin(), out.r.end());
    const long long total = static_cast<long long>(full.size());

    auto& cert = out.certificate;
    cert.kind = ReductionKind::kSandwich;
    cert.source_stats["n"] = s.n;
    cert.source_stats["matrices"] = s.size();
    cert.source_stats["exponent"] = exp_outcome.result->exponent;
    cert.target_stats["car_a"] = car_a;
    cert.target_stats["car_b"] = car_b;
    cert.target_stats["column"] = out.column_index;
    cert.target_stats["row"] = out.row_index;
    cert.witnesses.words["p"] = out.p;
    cert.witnesses.words["q"] = out.q;
    cert.witnesses.words["r"] = out.r;
    cert.witnesses.words["exponent_witness"] = exp_outcome.result->witness;
    cert.check("pqr_positive", verify_witness(s, full) ? 1 : 0, "==", 1);
    cert.check("p_has_positive_column",
               column_positive(replay_product(s, out.p), out.column_index) ? 1 : 0, "==", 1);
    cert.check("q_connects_column_to_row",
               replay_product(s, out.q).get(out.column_index, out.row_index) ? 1 : 0, "==", 1);
    cert.check("r_has_positive_row",
               replay_product(s, out.r).row(out.row_index) == full_mask(s.n) ? 1 : 0, "==", 1);
    cert.check("exponent_witness_positive",
               verify_witness(s, exp_outcome.result->witness) ? 1 : 0, "==", 1);
    cert.check("p_le_car_a", static_cast<long long>(out.p.size()), "<=", car_a);
    cert.check("q_le_n_minus_1", static_cast<long long>(out.q.size()), "<=", s.n - 1);
    cert.check("r_le_car_b", static_cast<long long>(out.r.size()), "<=", car_b);
    cert.check("total_le_cars_plus_n_minus_1", total, "<=",
               static_cast<long long>(car_a) + car_b + s.n - 1);
    cert.check("total_le_2max_car_plus_n_minus_1", total, "<=",
               2LL * std::max(car_a, car_b) + s.n - 1);
    cert.check("exponent_le_total", exp_outcome.result->exponent, "<=", total);
    return out;
}

// ---------------------------------------------------------------------------
// Certificate builders for the remaining reductions.

/// Structural certificate: the letters derived from each matrix reconstruct
/// it exactly (their adjacency OR equals the matrix).
inline ReductionCertificate certify_matrixset_to_partial(const MatrixSet& s,
                                                         std::int64_t letter_cap = kDefaultLetterCap) {
    const DerivedAutomaton derived = matrixset_to_partial(s, letter_cap);
    ReductionCertificate cert;
    cert.kind = ReductionKind::kMatrixSetToPartial;
    cert.source_stats["n"] = s.n;
    cert.source_stats["matrices"] = s.size();
    cert.target_stats["letters"] = derived.automaton.num_letters();
    cert.target_stats["complete"] = derived.automaton.complete() ? 1 : 0;
    for (int m = 0; m < s.size(); ++m) {
        BoolMatrix reconstructed(s.n);
        for (auto& fn :
             selection_functions(s.matrices[static_cast<std::size_t>(m)], letter_cap)) {
            reconstructed = reconstructed | adjacency_matrix(fn);
        }
        cert.check("letters_reconstruct_matrix_" + std::to_string(m),
                   reconstructed == s.matrices[static_cast<std::size_t>(m)] ? 1 : 0, "==", 1);
    }
    return cert;
}

/// Exponent of the derived set equals the careful threshold plus one.
inline ReductionCertificate certify_partial_to_matrixset(const PartialAutomaton& a,
                                                         std::uint64_t product_cap = kDefaultProductCap) {
    const MatrixSet target = partial_to_matrixset(a);
    ReductionCertificate cert;
    cert.kind = ReductionKind::kPartialToMatrixSet;
    cert.source_stats["n"] = a.num_states();
    cert.source_stats["letters"] = a.num_letters();
    cert.target_stats["matrices"] = target.size();
    const auto sync = careful_threshold(a);
    cert.source_stats["carefully_synchronizing"] = sync ? 1 : 0;
    if (!sync) return cert;  // nothing to relate
    const auto exp_outcome = exponent(target, product_cap);
    if (exp_outcome.status == ExponentStatus::kCapExceeded) {
        throw CapExceededError("exponent search hit the product cap");
    }
    cert.source_stats["car"] = sync->threshold;
    cert.witnesses.words["careful_word"] = sync->witness;
    const auto careful_image = try_apply_word(a, a.all_states(), sync->witness);
    cert.check("careful_word_replays",
               careful_image && popcount(*careful_image) == 1 ? 1 : 0, "==", 1);
    cert.check("target_primitive", exp_outcome.status == ExponentStatus::kFound ? 1 : 0, "==", 1);
    if (exp_outcome.status == ExponentStatus::kFound) {
        cert.target_stats["exponent"] = exp_outcome.result->exponent;
        cert.witnesses.words["exponent_witness"] = exp_outcome.result->witness;
        cert.check("exponent_witness_positive",
                   verify_witness(target, exp_outcome.result->witness) ? 1 : 0, "==", 1);
        cert.check("exponent_eq_car_plus_1", exp_outcome.result->exponent, "==",
                   static_cast<long long>(sync->threshold) + 1);
    }
    return cert;
}

/// Exponent of the derived NZ set equals the reset threshold plus one (the
/// one-state case is pinned to exponent 2).
inline ReductionCertificate certify_sink_to_nz(const PartialAutomaton& a,
                                               std::uint64_t product_cap = kDefaultProductCap) {
    const MatrixSet target = sink_to_nz(a);
    ReductionCertificate cert;
    cert.kind = ReductionKind::kSinkToNz;
    cert.source_stats["n"] = a.num_states();
    cert.source_stats["letters"] = a.num_letters();
    cert.target_stats["matrices"] = target.size();
    for (int m = 0; m < target.size(); ++m) {
        cert.check("target_matrix_nz_" + std::to_string(m),
                   is_nz(target.matrices[static_cast<std::size_t>(m)]) ? 1 : 0, "==", 1);
    }
    const auto exp_outcome = exponent(target, product_cap);
    if (exp_outcome.status == ExponentStatus::kCapExceeded) {
        throw CapExceededError("exponent search hit the product cap");
    }
    cert.check("target_primitive", exp_outcome.status == ExponentStatus::kFound ? 1 : 0, "==", 1);
    if (exp_outcome.status != ExponentStatus::kFound) return cert;
    cert.target_stats["exponent"] = exp_outcome.result->exponent;
    cert.witnesses.words["exponent_witness"] = exp_outcome.result->witness;
    cert.check("exponent_witness_positive",
               verify_witness(target, exp_outcome.result->witness) ? 1 : 0, "==", 1);
    if (a.num_states() == 1) {
        cert.check("exponent_eq_2_one_state", exp_outcome.result->exponent, "==", 2);
        return cert;
    }
    const auto sync = reset_threshold(a);
    cert.source_stats["rt"] = sync->threshold;
    cert.source_stats["sink"] = *find_sink(a);
    cert.witnesses.words["reset_word"] = sync->witness;
    cert.check("reset_word_replays",
               popcount(apply_word(a, a.all_states(), sync->witness)) == 1 ? 1 : 0, "==", 1);
    cert.check("exponent_eq_rt_plus_1", exp_outcome.result->exponent, "==",
               static_cast<long long>(sync->threshold) + 1);
    return cert;
}

/// Reset threshold of the source automaton bounds the exponent of the
/// block-OR matrix set from below (vacuous when the target is imprimitive,
/// since no positive product exists at all).
inline ReductionCertificate certify_classc_to_nz(const PartialAutomaton& a,
                                                 const Partition& alphabet_partition,
                                                 std::uint64_t product_cap = kDefaultProductCap) {
    const MatrixSet target = classc_to_nz(a, alphabet_partition);
    ReductionCertificate cert;
    cert.kind = ReductionKind::kClassCToNz;
    cert.source_stats["n"] = a.num_states();
    cert.source_stats["letters"] = a.num_letters();
    cert.target_stats["matrices"] = target.size();
    cert.witnesses.partitions["alphabet_partition"] = alphabet_partition;
    for (int m = 0; m < target.size(); ++m) {
        cert.check("target_matrix_nz_" + std::to_string(m),
                   is_nz(target.matrices[static_cast<std::size_t>(m)]) ? 1 : 0, "==", 1);
    }
    const auto sync = reset_threshold(a);
    cert.source_stats["synchronizing"] = sync ? 1 : 0;
    if (!sync) return cert;
    cert.source_stats["rt"] = sync->threshold;
    cert.witnesses.words["reset_word"] = sync->witness;
    cert.check("reset_word_replays",
               popcount(apply_word(a, a.all_states(), sync->witness)) == 1 ? 1 : 0, "==", 1);
    const auto exp_outcome = exponent(target, product_cap);
    if (exp_outcome.status == ExponentStatus::kCapExceeded) {
        throw CapExceededError("exponent search hit the product cap");
    }
    cert.target_stats["primitive"] = exp_outcome.status == ExponentStatus::kFound ? 1 : 0;
    if (exp_outcome.status == ExponentStatus::kFound) {
        cert.target_stats["exponent"] = exp_outcome.result->exponent;
        cert.witnesses.words["exponent_witness"] = exp_outcome.result->witness;
        cert.check("exponent_witness_positive",
                   verify_witness(target, exp_outcome.result->witness) ? 1 : 0, "==", 1);
        cert.check("rt_le_exponent", sync->threshold, "<=", exp_outcome.result->exponent);
    }
    return cert;
}

/// Both derived automata are complete, their by-source-matrix partitions
/// satisfy the alphabet-partition conditions, and for a primitive source the
/// exponent is at most rt(A) + rt(B) + n - 1.
inline ReductionCertificate certify_nz_to_classc(const MatrixSet& s,
                                                 std::int64_t letter_cap = kDefaultLetterCap,
                                                 std::uint64_t product_cap = kDefaultProductCap) {
    const ClassCDerivation derived = nz_to_classc_automata(s, letter_cap);
    ReductionCertificate cert;
    cert.kind = ReductionKind::kNzToClassC;
    cert.source_stats["n"] = s.n;
    cert.source_stats["matrices"] = s.size();
    cert.target_stats["letters_a"] = derived.automaton_a.num_letters();
    cert.target_stats["letters_b"] = derived.automaton_b.num_letters();
    cert.witnesses.partitions["partition_a"] = derived.partition_a;
    cert.witnesses.partitions["partition_b"] = derived.partition_b;
    cert.check("automaton_a_complete", derived.automaton_a.complete() ? 1 : 0, "==", 1);
    cert.check("automaton_b_complete", derived.automaton_b.complete() ? 1 : 0, "==", 1);
    cert.check("partition_a_classc",
               check_alphabet_partition(derived.automaton_a, derived.partition_a) ? 1 : 0, "==", 1);
    cert.check("partition_b_classc",
               check_alphabet_partition(derived.automaton_b, derived.partition_b) ? 1 : 0, "==", 1);
    const auto exp_outcome = exponent(s, product_cap);
    if (exp_outcome.status == ExponentStatus::kCapExceeded) {
        throw CapExceededError("exponent search hit the product cap");
    }
    cert.source_stats["primitive"] = exp_outcome.status == ExponentStatus::kFound ? 1 : 0;
    if (exp_outcome.status == ExponentStatus::kFound) {
        const auto rt_a = reset_threshold(derived.automaton_a);
        const auto rt_b = reset_threshold(derived.automaton_b);
        cert.check("a_synchronizing", rt_a ? 1 : 0, "==", 1);
        cert.check("b_synchronizing", rt_b ? 1 : 0, "==", 1);
        if (rt_a && rt_b) {
            cert.source_stats["exponent"] = exp_outcome.result->exponent;
            cert.target_stats["rt_a"] = rt_a->threshold;
            cert.target_stats["rt_b"] = rt_b->threshold;
            cert.witnesses.words["exponent_witness"] = exp_outcome.result->witness;
            cert.witnesses.words["reset_word_a"] = rt_a->witness;
            cert.witnesses.words["reset_word_b"] = rt_b->witness;
            cert.check("exponent_witness_positive",
                       verify_witness(s, exp_outcome.result->witness) ? 1 : 0, "==", 1);
            cert.check(
                "reset_word_a_replays",
                popcount(apply_word(derived.automaton_a, derived.automaton_a.all_states(),
                                    rt_a->witness))
                        == 1
                    ? 1
                    : 0,
                "==", 1);
            cert.check(
                "reset_word_b_replays",
                popcount(apply_word(derived.automaton_b, derived.automaton_b.all_states(),
                                    rt_b->witness))
                        == 1
                    ? 1
                    : 0,
                "==", 1);
            cert.check("exponent_le_rta_rtb_n_minus_1", exp_outcome.result->exponent, "<=",
                       static_cast<long long>(rt_a->threshold) + rt_b->threshold + s.n - 1);
        }
    }
    return cert;
}

/// Both weighted automata are Eulerian; their reset thresholds obey the
/// quadratic Eulerian bound, and a primitive source obeys the quadratic
/// exponent bound.
inline ReductionCertificate certify_totalsupport_to_eulerian(
    const MatrixSet& s, std::int64_t letter_cap = kDefaultLetterCap,
    std::uint64_t product_cap = kDefaultProductCap) {
    const EulerianDerivation derived = totalsupport_to_eulerian(s, letter_cap);
    const long long n = s.n;
    const long long eulerian_rt_bound = n * n - 3 * n + 3;
    ReductionCertificate cert;
    cert.kind = ReductionKind::kTotalSupportToEulerian;
    cert.source_stats["n"] = s.n;
    cert.source_stats["matrices"] = s.size();
    cert.target_stats["letters_a"] = derived.automaton_a.num_letters();
    cert.target_stats["letters_b"] = derived.automaton_b.num_letters();
    cert.witnesses.sequences["multiplicities_a"] = derived.multiplicities_a;
    cert.witnesses.sequences["multiplicities_b"] = derived.multiplicities_b;
    cert.witnesses.sequences["cover_counts_a"] =
        std::vector<long long>(derived.cover_count_a.begin(), derived.cover_count_a.end());
    cert.witnesses.sequences["cover_counts_b"] =
        std::vector<long long>(derived.cover_count_b.begin(), derived.cover_count_b.end());
    cert.check("automaton_a_complete", derived.automaton_a.complete() ? 1 : 0, "==", 1);
    cert.check("automaton_b_complete", derived.automaton_b.complete() ? 1 : 0, "==", 1);
    cert.check("automaton_a_eulerian",
               is_eulerian(derived.automaton_a, derived.multiplicities_a) ? 1 : 0, "==", 1);
    cert.check("automaton_b_eulerian",
               is_eulerian(derived.automaton_b, derived.multiplicities_b) ? 1 : 0, "==", 1);
    const auto rt_a = reset_threshold(derived.automaton_a);
    const auto rt_b = reset_threshold(derived.automaton_b);
    cert.target_stats["a_synchronizing"] = rt_a ? 1 : 0;
    cert.target_stats["b_synchronizing"] = rt_b ? 1 : 0;
    if (rt_a) {
        cert.target_stats["rt_a"] = rt_a->threshold;
        cert.witnesses.words["reset_word_a"] = rt_a->witness;
        cert.check(
            "reset_word_a_replays",
            popcount(apply_word(derived.automaton_a, derived.automaton_a.all_states(),
                                rt_a->witness))
                    == 1
                ? 1
                : 0,
            "==", 1);
        cert.check("rt_a_le_eulerian_bound", rt_a->threshold, "<=", eulerian_rt_bound);
    }
    if (rt_b) {
        cert.target_stats["rt_b"] = rt_b->threshold;
        cert.witnesses.words["reset_word_b"] = rt_b->witness;
        cert.check(
            "reset_word_b_replays",
            popcount(apply_word(derived.automaton_b, derived.automaton_b.all_states(),
                                rt_b->witness))
                    == 1
                ? 1
                : 0,
            "==", 1);
        cert.check("rt_b_le_eulerian_bound", rt_b->threshold, "<=", eulerian_rt_bound);
    }
    const auto exp_outcome = exponent(s, product_cap);
    if (exp_outcome.status == ExponentStatus::kCapExceeded) {
        throw CapExceededError("exponent search hit the product cap");
    }
    cert.source_stats["primitive"] = exp_outcome.status == ExponentStatus::kFound ? 1 : 0;
    if (exp_outcome.status == ExponentStatus::kFound) {
        cert.source_stats["exponent"] = exp_outcome.result->exponent;
        cert.witnesses.words["exponent_witness"] = exp_outcome.result->witness;
        cert.check("exponent_witness_positive",
                   verify_witness(s, exp_outcome.result->witness) ? 1 : 0, "==", 1);
        if (rt_a && rt_b) {
            cert.check("exponent_le_rta_rtb_n_minus_1", exp_outcome.result->exponent, "<=",
                       static_cast<long long>(rt_a->threshold) + rt_b->threshold + n - 1);
        }
        cert.check("exponent_le_quadratic_bound", exp_outcome.result->exponent, "<=",
                   2 * n * n - 5 * n + 5);
    }
    return cert;
}

}  // namespace primsync
