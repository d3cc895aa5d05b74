// Exact exponent computation by breadth-first closure of the generated
// boolean matrix semigroup, plus the partition-stabilization test for
// imprimitivity of NZ irreducible sets.
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "primsync/automata.hpp"
#include "primsync/boolmat.hpp"
#include "primsync/errors.hpp"
#include "primsync/partition.hpp"

namespace primsync {

inline constexpr std::uint64_t kDefaultProductCap = std::uint64_t{1} << 25;

struct ClosureOptions {
    std::uint64_t max_elements = kDefaultProductCap;
    bool stop_at_positive = true;
};

/// Distinct products of the generators, enumerated in order of product
/// length. Elements are stored packed (one 64-bit row mask per row, dim rows
/// per element) with parent pointers for witness reconstruction.
class SemigroupClosure {
public:
    using Options = ClosureOptions;

    explicit SemigroupClosure(const MatrixSet& generators, Options options = ClosureOptions{})
        : n_(generators.n), stride_(static_cast<std::size_t>(generators.n)) {
        rehash(1024);
        layer_offsets_.push_back(0);

        std::vector<std::size_t> frontier;
        for (int g = 0; g < generators.size(); ++g) {
            if (size() >= options.max_elements) {
                truncated_ = true;
                break;
            }
            const auto [idx, inserted] = insert(generators.matrices[static_cast<std::size_t>(g)].rows().data());
            if (!inserted) continue;
            parent_.emplace_back(-1, g);
            frontier.push_back(idx);
            if (first_positive_ < 0 && element_is_positive(idx)) {
                first_positive_ = static_cast<std::int64_t>(idx);
                if (options.stop_at_positive) break;
            }
        }
        layer_offsets_.push_back(size());

        std::vector<Mask> scratch(stride_);
        while (!frontier.empty() && !truncated_
               && !(options.stop_at_positive && first_positive_ >= 0)) {
            std::vector<std::size_t> next;
            for (std::size_t e : frontier) {
                for (int g = 0; g < generators.size(); ++g) {
                    const BoolMatrix& gen = generators.matrices[static_cast<std::size_t>(g)];
                    const Mask* left = row_ptr(e);
                    for (int i = 0; i < n_; ++i) {
                        Mask acc = 0;
                        for_each_bit(left[i], [&](int k) { acc |= gen.row(k); });
                        scratch[static_cast<std::size_t>(i)] = acc;
                    }
                    if (size() >= options.max_elements) {
                        truncated_ = true;
                        break;
                    }
                    const auto [idx, inserted] = insert(scratch.data());
                    if (!inserted) continue;
                    parent_.emplace_back(static_cast<std::int64_t>(e), g);
                    next.push_back(idx);
                    if (first_positive_ < 0 && element_is_positive(idx)) {
                        first_positive_ = static_cast<std::int64_t>(idx);
                        if (options.stop_at_positive) break;
                    }
                }
                if (truncated_ || (options.stop_at_positive && first_positive_ >= 0)) break;
            }
            layer_offsets_.push_back(size());
            frontier = std::move(next);
        }
        if (layer_offsets_.size() >= 2 && layer_offsets_.back() == layer_offsets_[layer_offsets_.size() - 2]) {
            layer_offsets_.pop_back();
        }
    }

    int dim() const { return n_; }
    std::uint64_t size() const { return static_cast<std::uint64_t>(parent_.size()); }
    bool truncated() const { return truncated_; }

    /// Index of the first all-ones element in BFS order, or -1.
    std::int64_t first_positive() const { return first_positive_; }

    /// Number of complete product-length layers; layer L holds the distinct
    /// products of length L+1.
    int layer_count() const { return static_cast<int>(layer_offsets_.size()) - 1; }

    std::pair<std::size_t, std::size_t> layer_range(int layer) const {
        return {layer_offsets_[static_cast<std::size_t>(layer)],
                layer_offsets_[static_cast<std::size_t>(layer) + 1]};
    }

    BoolMatrix element(std::size_t idx) const {
        const Mask* p = row_ptr(idx);
        return BoolMatrix(n_, std::vector<Mask>(p, p + stride_));
    }

    bool element_is_positive(std::size_t idx) const {
        const Mask want = full_mask(n_);
        const Mask* p = row_ptr(idx);
        for (int i = 0; i < n_; ++i) {
            if (p[i] != want) return false;
        }
        return true;
    }

    /// Product length of element idx = 1 + chain length to its generator.
    int element_length(std::size_t idx) const {
        int len = 0;
        std::int64_t walk = static_cast<std::int64_t>(idx);
        while (walk >= 0) {
            ++len;
            walk = parent_[static_cast<std::size_t>(walk)].first;
        }
        return len;
    }

    /// Generator indices whose left-to-right product equals element idx.
    Word witness(std::size_t idx) const {
        Word w;
        std::int64_t walk = static_cast<std::int64_t>(idx);
        while (walk >= 0) {
            w.push_back(parent_[static_cast<std::size_t>(walk)].second);
            walk = parent_[static_cast<std::size_t>(walk)].first;
        }
        std::reverse(w.begin(), w.end());
        return w;
    }

private:
    const Mask* row_ptr(std::size_t idx) const { return arena_.data() + idx * stride_; }

    void rehash(std::size_t capacity) {
        slots_.assign(capacity, 0);
        slot_mask_ = capacity - 1;
        for (std::size_t e = 0; e < parent_.size(); ++e) place(e);
    }

    std::size_t hash_rows(const Mask* rows) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (std::size_t i = 0; i < stride_; ++i) {
            h ^= rows[i] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 0xbf58476d1ce4e5b9ull;
        }
        return static_cast<std::size_t>(h);
    }

    void place(std::size_t element_idx) {
        std::size_t slot = hash_rows(row_ptr(element_idx)) & slot_mask_;
        while (slots_[slot] != 0) slot = (slot + 1) & slot_mask_;
        slots_[slot] = static_cast<std::uint64_t>(element_idx) + 1;
    }

    std::pair<std::size_t, bool> insert(const Mask* rows) {
        if ((parent_.size() + 1) * 2 > slots_.size()) rehash(slots_.size() * 2);
        std::size_t slot = hash_rows(rows) & slot_mask_;
        while (slots_[slot] != 0) {
            const std::size_t existing = static_cast<std::size_t>(slots_[slot] - 1);
            const Mask* have = row_ptr(existing);
            bool equal = true;
            for (std::size_t i = 0; i < stride_ && equal; ++i) equal = have[i] == rows[i];
            if (equal) return {existing, false};
            slot = (slot + 1) & slot_mask_;
        }
        const std::size_t idx = parent_.size();
        arena_.insert(arena_.end(), rows, rows + stride_);
        slots_[slot] = static_cast<std::uint64_t>(idx) + 1;
        return {idx, true};
    }

    int n_;
    std::size_t stride_;
    std::vector<Mask> arena_;
    std::vector<std::pair<std::int64_t, int>> parent_;  // (parent element or -1, generator)
    std::vector<std::size_t> layer_offsets_;
    std::vector<std::uint64_t> slots_;
    std::size_t slot_mask_ = 0;
    bool truncated_ = false;
    std::int64_t first_positive_ = -1;
};

struct ExponentResult {
    int exponent = 0;
    Word witness;  // matrix indices, product taken left to right
};

enum class ExponentStatus {
    kFound,
    kNotPrimitive,
    kCapExceeded,
};

struct ExponentOutcome {
    ExponentStatus status = ExponentStatus::kNotPrimitive;
    std::optional<ExponentResult> result;
    std::uint64_t products_explored = 0;
};

/// Length and witness of the shortest entrywise positive product, found by
/// BFS over distinct products; NotPrimitive when the closure completes
/// without one, CapExceeded when the product cap is hit first.
inline ExponentOutcome exponent(const MatrixSet& s, std::uint64_t cap = kDefaultProductCap) {
    SemigroupClosure closure(s, {cap, /*stop_at_positive=*/true});
    ExponentOutcome out;
    out.products_explored = closure.size();
    if (closure.first_positive() >= 0) {
        const auto idx = static_cast<std::size_t>(closure.first_positive());
        Word witness = closure.witness(idx);
        out.status = ExponentStatus::kFound;
        out.result = ExponentResult{static_cast<int>(witness.size()), std::move(witness)};
    } else if (closure.truncated()) {
        out.status = ExponentStatus::kCapExceeded;
    } else {
        out.status = ExponentStatus::kNotPrimitive;
    }
    return out;
}

/// true / false, or nothing when the cap was exceeded before resolution.
inline std::optional<bool> is_primitive(const MatrixSet& s,
                                        std::uint64_t cap = kDefaultProductCap) {
    const auto outcome = exponent(s, cap);
    if (outcome.status == ExponentStatus::kCapExceeded) return std::nullopt;
    return outcome.status == ExponentStatus::kFound;
}

/// Replays the product named by the indices; true iff it is all-ones. The
/// empty product is the identity.
inline bool verify_witness(const MatrixSet& s, const Word& witness) {
    BoolMatrix acc = BoolMatrix::identity(s.n);
    for (int idx : witness) {
        if (idx < 0 || idx >= s.size()) throw InputError("witness index out of range");
        acc = acc * s.matrices[static_cast<std::size_t>(idx)];
    }
    return acc.is_positive();
}

struct PvCertificate {
    Partition partition;                  // nontrivial partition of [0, n)
    std::vector<std::vector<int>> perms;  // per matrix, the induced permutation of parts
};

inline constexpr int kDefaultPartitionCap = 10;

/// Searches for a nontrivial partition of the basis indices on which every
/// matrix acts as a permutation. For irreducible NZ sets the set is
/// primitive iff no such partition exists. Partitions are enumerated in
/// restricted-growth-string order; the first hit is returned.
inline std::optional<PvCertificate> pv_partition_test(const MatrixSet& s,
                                                      int max_dim = kDefaultPartitionCap) {
    for (const auto& m : s.matrices) {
        if (!is_nz(m)) throw PreconditionError("partition test requires NZ matrices");
    }
    if (!is_irreducible_set(s)) throw PreconditionError("partition test requires an irreducible set");
    if (s.n > max_dim) {
        throw CapExceededError("dimension too large for partition enumeration", s.n);
    }
    std::optional<PvCertificate> found;
    enumerate_set_partitions(s.n, [&](const std::vector<int>& rgs) {
        int parts = 0;
        for (int v : rgs) parts = std::max(parts, v + 1);
        if (parts < 2) return true;
        Partition candidate = partition_from_rgs(rgs);
        std::vector<std::vector<int>> perms;
        perms.reserve(s.matrices.size());
        for (const auto& m : s.matrices) {
            auto sigma = acts_as_permutation(m, candidate);
            if (!sigma) return true;
            perms.push_back(std::move(*sigma));
        }
        found = PvCertificate{std::move(candidate), std::move(perms)};
        return false;
    });
    return found;
}

}  // namespace primsync
