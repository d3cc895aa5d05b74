// Partitions of an index set [0, n) and set-partition enumeration.
#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "primsync/errors.hpp"

namespace primsync {

/// A partition of [0, n) into disjoint nonempty parts. Parts are kept in a
/// canonical form: each part sorted ascending, parts ordered by smallest
/// element.
struct Partition {
    std::vector<std::vector<int>> parts;

    Partition() = default;
    explicit Partition(std::vector<std::vector<int>> parts_) : parts(std::move(parts_)) {
        canonicalize();
    }

    int num_parts() const { return static_cast<int>(parts.size()); }

    int ground_size() const {
        int total = 0;
        for (const auto& p : parts) total += static_cast<int>(p.size());
        return total;
    }

    std::vector<int> part_sizes() const {
        std::vector<int> sizes;
        sizes.reserve(parts.size());
        for (const auto& p : parts) sizes.push_back(static_cast<int>(p.size()));
        return sizes;
    }

    /// part_of()[x] = index of the part containing x.
    std::vector<int> part_of() const {
        std::vector<int> owner(ground_size(), -1);
        for (int i = 0; i < num_parts(); ++i) {
            for (int x : parts[i]) {
                if (x < 0 || x >= static_cast<int>(owner.size()) || owner[x] != -1) {
                    throw InputError("parts are not a partition of [0, n)");
                }
                owner[x] = i;
            }
        }
        return owner;
    }

    /// Throws InputError unless the parts are disjoint, nonempty and cover [0, n).
    void validate() const {
        if (parts.empty()) throw InputError("partition has no parts");
        for (const auto& p : parts) {
            if (p.empty()) throw InputError("partition has an empty part");
        }
        (void)part_of();  // checks range, disjointness and coverage
    }

    bool is_trivial() const { return parts.size() == 1; }

    friend bool operator==(const Partition& a, const Partition& b) = default;

private:
    void canonicalize() {
        for (auto& p : parts) std::sort(p.begin(), p.end());
        // Empty parts sort first and are rejected by validate().
        std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
            const int ka = a.empty() ? -1 : a.front();
            const int kb = b.empty() ? -1 : b.front();
            return ka < kb;
        });
    }
};

/// Builds a partition from a restricted growth string (rgs[0] = 0,
/// rgs[i] <= 1 + max(rgs[0..i-1])); part j collects the positions labelled j.
inline Partition partition_from_rgs(const std::vector<int>& rgs) {
    int num_parts = 0;
    for (int v : rgs) num_parts = std::max(num_parts, v + 1);
    std::vector<std::vector<int>> parts(num_parts);
    for (int i = 0; i < static_cast<int>(rgs.size()); ++i) parts[rgs[i]].push_back(i);
    return Partition(std::move(parts));
}

/// Enumerates all set partitions of [0, n) in lexicographic restricted-growth-
/// string order. The callback receives the growth string and returns false to
/// stop the enumeration early.
template <typename F>
inline void enumerate_set_partitions(int n, F&& visit) {
    if (n <= 0) return;
    std::vector<int> rgs(n, 0);
    std::vector<int> maxes(n, 0);  // maxes[i] = max(rgs[0..i-1]); maxes[0] = 0
    while (true) {
        if (!visit(static_cast<const std::vector<int>&>(rgs))) return;
        int i = n - 1;
        while (i > 0 && rgs[i] == maxes[i] + 1) --i;
        if (i == 0) return;
        ++rgs[i];
        for (int j = i + 1; j < n; ++j) {
            rgs[j] = 0;
            maxes[j] = std::max(maxes[j - 1], rgs[j - 1]);
        }
    }
}

/// Enumerates set partitions of [0, n) with exactly k parts, in the same
/// lexicographic order as enumerate_set_partitions.
template <typename F>
inline void enumerate_set_partitions_with_parts(int n, int k, F&& visit) {
    if (n <= 0 || k <= 0 || k > n) return;
    std::vector<int> rgs(n, 0);
    bool stop = false;
    auto rec = [&](auto&& self, int i, int used) -> void {
        if (stop) return;
        if (i == n) {
            if (used == k && !visit(static_cast<const std::vector<int>&>(rgs))) stop = true;
            return;
        }
        // Prune: remaining positions must be able to reach exactly k labels.
        const int remaining = n - i;
        if (used > k || used + remaining < k) return;
        const int limit = std::min(used, k - 1);
        for (int v = 0; v <= limit && !stop; ++v) {
            rgs[i] = v;
            self(self, i + 1, std::max(used, v + 1));
        }
    };
    rec(rec, 0, 0);
}

}  // namespace primsync
