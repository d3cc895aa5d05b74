// Complete and partial deterministic automata over state sets encoded as
// 64-bit masks: exact reset / careful-synchronization thresholds via subset
// BFS, the iterative greedy word construction, and structural predicates.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <set>
#include <unordered_map>
#include <vector>

#include "primsync/bits.hpp"
#include "primsync/errors.hpp"
#include "primsync/partition.hpp"

namespace primsync {

/// Sequence of letter indices, applied left to right.
using Word = std::vector<int>;

inline constexpr int kUndefined = -1;

class PartialAutomaton {
public:
    /// letters[l][q] = target state of q under letter l, or kUndefined.
    PartialAutomaton(int n, std::vector<std::vector<int>> letters)
        : n_(n), letters_(std::move(letters)) {
        if (n_ < 1 || n_ > 64) throw InputError("state count must be in [1, 64]");
        if (letters_.empty()) throw InputError("automaton needs at least one letter");
        defined_.reserve(letters_.size());
        for (const auto& letter : letters_) {
            if (letter.size() != static_cast<std::size_t>(n_)) {
                throw InputError("letter length does not match state count");
            }
            Mask defined = 0;
            for (int q = 0; q < n_; ++q) {
                const int target = letter[static_cast<std::size_t>(q)];
                if (target == kUndefined) continue;
                if (target < 0 || target >= n_) throw InputError("transition target out of range");
                defined |= Mask{1} << q;
            }
            defined_.push_back(defined);
        }
    }

    int num_states() const { return n_; }
    int num_letters() const { return static_cast<int>(letters_.size()); }
    const std::vector<int>& letter(int l) const { return letters_[static_cast<std::size_t>(l)]; }
    const std::vector<std::vector<int>>& letters() const { return letters_; }

    int target(int state, int l) const {
        return letters_[static_cast<std::size_t>(l)][static_cast<std::size_t>(state)];
    }

    /// States on which letter l is defined.
    Mask defined_mask(int l) const { return defined_[static_cast<std::size_t>(l)]; }

    bool complete() const {
        const Mask all = full_mask(n_);
        for (Mask d : defined_) {
            if (d != all) return false;
        }
        return true;
    }

    Mask all_states() const { return full_mask(n_); }

    /// Image of the state set s under letter l; only valid when l is defined
    /// on all of s.
    Mask image(Mask s, int l) const {
        Mask out = 0;
        const auto& letter = letters_[static_cast<std::size_t>(l)];
        for_each_bit(s, [&](int q) { out |= Mask{1} << letter[static_cast<std::size_t>(q)]; });
        return out;
    }

    /// Image of s under l, or nothing if l is undefined on some state of s.
    std::optional<Mask> try_step(Mask s, int l) const {
        if ((defined_[static_cast<std::size_t>(l)] & s) != s) return std::nullopt;
        return image(s, l);
    }

private:
    int n_;
    std::vector<std::vector<int>> letters_;
    std::vector<Mask> defined_;
};

/// Image of s under w, or nothing if some step hits an undefined transition.
inline std::optional<Mask> try_apply_word(const PartialAutomaton& a, Mask s, const Word& w) {
    Mask cur = s;
    for (int l : w) {
        if (l < 0 || l >= a.num_letters()) throw InputError("letter index out of range");
        auto next = a.try_step(cur, l);
        if (!next) return std::nullopt;
        cur = *next;
    }
    return cur;
}

/// Image of s under w. Throws UndefinedTransitionError (with the offending
/// state and word position) when w is not careful on s.
inline Mask apply_word(const PartialAutomaton& a, Mask s, const Word& w) {
    Mask cur = s;
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
        const int l = w[pos];
        if (l < 0 || l >= a.num_letters()) throw InputError("letter index out of range");
        const Mask undefined = cur & ~a.defined_mask(l);
        if (undefined != 0) throw UndefinedTransitionError(lowest_bit(undefined), pos);
        cur = a.image(cur, l);
    }
    return cur;
}

struct SyncResult {
    int threshold = 0;
    Word witness;
};

namespace detail {

/// Subset BFS from the full state set down to a singleton. careful = true
/// restricts each step to letters defined on the whole current set (for
/// complete automata the two modes coincide). Ties: letters in ascending
/// index order, FIFO over sets.
inline std::optional<SyncResult> synchronize_bfs(const PartialAutomaton& a, bool careful) {
    const Mask start = a.all_states();
    if (popcount(start) == 1) return SyncResult{0, {}};
    std::unordered_map<Mask, std::pair<Mask, int>> parent;  // set -> (previous set, letter)
    std::queue<Mask> queue;
    parent.emplace(start, std::make_pair(start, -1));
    queue.push(start);
    while (!queue.empty()) {
        const Mask cur = queue.front();
        queue.pop();
        for (int l = 0; l < a.num_letters(); ++l) {
            if (careful && (a.defined_mask(l) & cur) != cur) continue;
            const Mask next = a.image(cur, l);
            if (parent.contains(next)) continue;
            parent.emplace(next, std::make_pair(cur, l));
            if (popcount(next) == 1) {
                Word witness;
                for (Mask walk = next; walk != start;) {
                    const auto& [prev, letter] = parent.at(walk);
                    witness.push_back(letter);
                    walk = prev;
                }
                std::reverse(witness.begin(), witness.end());
                return SyncResult{static_cast<int>(witness.size()), std::move(witness)};
            }
            queue.push(next);
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Shortest word sending the full state set to a singleton. Requires a
/// complete automaton; nothing if the automaton is not synchronizing.
inline std::optional<SyncResult> reset_threshold(const PartialAutomaton& a) {
    if (!a.complete()) throw NotCompleteError();
    return detail::synchronize_bfs(a, /*careful=*/false);
}

/// Shortest word that is defined on every state at every step and sends the
/// full state set to a singleton; nothing if no such word exists.
inline std::optional<SyncResult> careful_threshold(const PartialAutomaton& a) {
    return detail::synchronize_bfs(a, /*careful=*/true);
}

struct GreedyTraceEntry {
    int k_before = 0;     // image-size guarantee before the sub-step
    int target_size = 0;  // guarantee after the sub-step
    int t_length = 0;     // connecting word found by BFS
    int word_length = 0;  // total word length after the sub-step
};

struct GreedyResult {
    Word word;
    std::vector<GreedyTraceEntry> trace;
};

namespace detail {

/// Shortest careful word t from `start` such that `tail` is defined after t
/// and the final image has at most `target_size` states. Nothing if BFS
/// exhausts or visits more than `step_cap` sets.
inline std::optional<Word> shortest_connector(const PartialAutomaton& a, Mask start,
                                              const Word& tail, int target_size,
                                              std::uint64_t step_cap) {
    auto reaches_goal = [&](Mask s) {
        auto image = try_apply_word(a, s, tail);
        return image && popcount(*image) <= target_size;
    };
    if (reaches_goal(start)) return Word{};
    std::unordered_map<Mask, std::pair<Mask, int>> parent;
    std::queue<Mask> queue;
    parent.emplace(start, std::make_pair(start, -1));
    queue.push(start);
    while (!queue.empty()) {
        if (parent.size() > step_cap) return std::nullopt;
        const Mask cur = queue.front();
        queue.pop();
        for (int l = 0; l < a.num_letters(); ++l) {
            if ((a.defined_mask(l) & cur) != cur) continue;
            const Mask next = a.image(cur, l);
            if (parent.contains(next)) continue;
            parent.emplace(next, std::make_pair(cur, l));
            if (reaches_goal(next)) {
                Word t;
                for (Mask walk = next; walk != start;) {
                    const auto& [prev, letter] = parent.at(walk);
                    t.push_back(letter);
                    walk = prev;
                }
                std::reverse(t.begin(), t.end());
                return t;
            }
            queue.push(next);
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Iterative construction of a carefully synchronizing word. Starting from a
/// totally defined letter that shrinks the full set, each round appends
/// shortest connector words t and copies of the current word until the image
/// guarantee drops by the scheduled amount. The schedule lists the drop per
/// round; its last entry repeats once exhausted (empty = always 1); entries
/// are clamped to the remaining drop. The trace records one entry per
/// sub-step for bound checks.
inline GreedyResult greedy_careful_word(const PartialAutomaton& a,
                                        const std::vector<int>& schedule = {},
                                        std::uint64_t step_cap = std::uint64_t{1} << 22) {
    const int n = a.num_states();
    GreedyResult out;
    if (n == 1) return out;
    const Mask full = a.all_states();

    int first = -1;
    for (int l = 0; l < a.num_letters(); ++l) {
        if (a.defined_mask(l) == full && popcount(a.image(full, l)) < n) {
            first = l;
            break;
        }
    }
    if (first < 0) {
        throw ProcedureStuckError("no totally defined letter shrinks the state set");
    }
    Word word{first};
    int k = n - 1;
    out.trace.push_back({n, k, 0, 1});

    std::size_t schedule_pos = 0;
    while (k > 1) {
        int ell = 1;
        if (!schedule.empty()) {
            ell = schedule[std::min(schedule_pos, schedule.size() - 1)];
            ++schedule_pos;
            if (ell < 1) throw InputError("schedule entries must be positive");
        }
        ell = std::min(ell, k - 1);
        Word extended = word;
        for (int s = 1; s <= ell; ++s) {
            const int target = k - s;
            const auto prefix_image = try_apply_word(a, full, extended);
            // The construction keeps every intermediate word defined on the
            // full state set.
            if (!prefix_image) {
                throw ProcedureStuckError("intermediate word stopped being defined everywhere");
            }
            auto t = detail::shortest_connector(a, *prefix_image, word, target, step_cap);
            if (!t) {
                throw ProcedureStuckError("no connector word reaches the next image size");
            }
            extended.insert(extended.end(), t->begin(), t->end());
            extended.insert(extended.end(), word.begin(), word.end());
            out.trace.push_back(
                {k, target, static_cast<int>(t->size()), static_cast<int>(extended.size())});
        }
        word = std::move(extended);
        k -= ell;
    }
    out.word = std::move(word);
    return out;
}

/// The classical two-letter slowly synchronizing automaton on n states:
/// letter 0 is the cyclic shift q -> q+1 (mod n), letter 1 fixes every state
/// except n-1, which it sends to 0.
inline PartialAutomaton cerny(int n) {
    if (n < 2) throw InputError("cerny automaton needs at least 2 states");
    std::vector<int> shift(static_cast<std::size_t>(n));
    std::vector<int> merge(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) {
        shift[static_cast<std::size_t>(q)] = (q + 1) % n;
        merge[static_cast<std::size_t>(q)] = q;
    }
    merge[static_cast<std::size_t>(n - 1)] = 0;
    return PartialAutomaton(n, {shift, merge});
}

/// Weighted in-degree = weighted out-degree at every state; out-degree of
/// every state is the total letter weight since the automaton is complete.
inline bool is_eulerian(const PartialAutomaton& a, const std::vector<long long>& weights = {}) {
    if (!a.complete()) throw NotCompleteError();
    if (!weights.empty() && weights.size() != static_cast<std::size_t>(a.num_letters())) {
        throw InputError("need one weight per letter");
    }
    long long total = 0;
    std::vector<long long> indeg(static_cast<std::size_t>(a.num_states()), 0);
    for (int l = 0; l < a.num_letters(); ++l) {
        const long long w = weights.empty() ? 1 : weights[static_cast<std::size_t>(l)];
        if (w <= 0) throw InputError("letter weights must be positive");
        total += w;
        for (int q = 0; q < a.num_states(); ++q) {
            indeg[static_cast<std::size_t>(a.target(q, l))] += w;
        }
    }
    for (long long d : indeg) {
        if (d != total) return false;
    }
    return true;
}

/// Least state fixed by every letter, if any.
inline std::optional<int> find_sink(const PartialAutomaton& a) {
    if (!a.complete()) throw NotCompleteError();
    for (int q = 0; q < a.num_states(); ++q) {
        bool fixed = true;
        for (int l = 0; l < a.num_letters() && fixed; ++l) fixed = a.target(q, l) == q;
        if (fixed) return q;
    }
    return std::nullopt;
}

/// Checks the two alphabet-partition conditions on a complete automaton:
/// (1) within each block every state has a preimage, and (2) the distinct
/// letter functions of each block realize every combination of per-state
/// options (counted as the product of per-state option counts).
inline bool check_alphabet_partition(const PartialAutomaton& a, const Partition& p) {
    if (!a.complete()) throw NotCompleteError();
    p.validate();
    if (p.ground_size() != a.num_letters()) {
        throw InputError("partition does not cover the alphabet");
    }
    const Mask all = a.all_states();
    for (const auto& block : p.parts) {
        Mask reached = 0;
        std::set<std::vector<int>> distinct;
        for (int l : block) {
            for (int q = 0; q < a.num_states(); ++q) {
                reached |= Mask{1} << a.target(q, l);
            }
            distinct.insert(a.letter(l));
        }
        if (reached != all) return false;
        // distinct functions inject into the option tuples, so condition (2)
        // is exactly |distinct| >= product of option counts.
        unsigned long long combinations = 1;
        for (int q = 0; q < a.num_states(); ++q) {
            Mask options = 0;
            for (int l : block) options |= Mask{1} << a.target(q, l);
            combinations *= static_cast<unsigned long long>(popcount(options));
            if (combinations > distinct.size()) return false;
        }
        if (combinations != distinct.size()) return false;
    }
    return true;
}

/// First alphabet partition (coarsest first, i.e. by ascending block count)
/// satisfying check_alphabet_partition, or nothing. Alphabets larger than
/// max_alphabet are rejected because the search is a Bell-number enumeration.
inline std::optional<Partition> class_c_partition(const PartialAutomaton& a,
                                                  int max_alphabet = 12) {
    if (!a.complete()) throw NotCompleteError();
    const int m = a.num_letters();
    if (m > max_alphabet) {
        throw CapExceededError("alphabet too large for partition enumeration", m);
    }
    std::optional<Partition> found;
    for (int k = 1; k <= m && !found; ++k) {
        enumerate_set_partitions_with_parts(m, k, [&](const std::vector<int>& rgs) {
            Partition candidate = partition_from_rgs(rgs);
            if (check_alphabet_partition(a, candidate)) {
                found = std::move(candidate);
                return false;
            }
            return true;
        });
    }
    return found;
}

}  // namespace primsync
