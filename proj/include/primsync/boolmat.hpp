// Square 0/1 matrices over the boolean semiring (plus = OR, times = AND),
// stored as one 64-bit row mask per row, and the structural predicates the
// rest of the library is built on.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "primsync/bits.hpp"
#include "primsync/errors.hpp"
#include "primsync/partition.hpp"

namespace primsync {

class BoolMatrix {
public:
    /// Zero matrix of dimension n (1 <= n <= 64).
    explicit BoolMatrix(int n) : n_(check_dim(n)), rows_(static_cast<std::size_t>(n), 0) {}

    BoolMatrix(int n, std::vector<Mask> rows) : n_(check_dim(n)), rows_(std::move(rows)) {
        if (rows_.size() != static_cast<std::size_t>(n_)) {
            throw InputError("row count does not match dimension");
        }
        const Mask allowed = full_mask(n_);
        for (Mask r : rows_) {
            if ((r & ~allowed) != 0) throw InputError("row has bits outside [0, n)");
        }
    }

    /// Builds from explicit entries; rejects non-square or non-0/1 data.
    static BoolMatrix from_entries(const std::vector<std::vector<int>>& entries) {
        const int n = static_cast<int>(entries.size());
        BoolMatrix m(n);
        for (int i = 0; i < n; ++i) {
            if (entries[i].size() != static_cast<std::size_t>(n)) {
                throw InputError("matrix is not square");
            }
            for (int j = 0; j < n; ++j) {
                const int v = entries[i][j];
                if (v != 0 && v != 1) throw InputError("matrix entry is not 0 or 1");
                if (v) m.set(i, j, true);
            }
        }
        return m;
    }

    static BoolMatrix identity(int n) {
        BoolMatrix m(n);
        for (int i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    static BoolMatrix ones(int n) {
        BoolMatrix m(n);
        for (auto& r : m.rows_) r = full_mask(n);
        return m;
    }

    int dim() const { return n_; }
    Mask row(int i) const { return rows_[static_cast<std::size_t>(i)]; }
    const std::vector<Mask>& rows() const { return rows_; }

    bool get(int i, int j) const { return (rows_[static_cast<std::size_t>(i)] >> j) & 1; }

    void set(int i, int j, bool v) {
        if (v) {
            rows_[static_cast<std::size_t>(i)] |= Mask{1} << j;
        } else {
            rows_[static_cast<std::size_t>(i)] &= ~(Mask{1} << j);
        }
    }

    void set_row(int i, Mask r) { rows_[static_cast<std::size_t>(i)] = r & full_mask(n_); }

    BoolMatrix transpose() const {
        BoolMatrix t(n_);
        for (int i = 0; i < n_; ++i) {
            for_each_bit(rows_[static_cast<std::size_t>(i)],
                         [&](int j) { t.rows_[static_cast<std::size_t>(j)] |= Mask{1} << i; });
        }
        return t;
    }

    bool is_positive() const {
        const Mask want = full_mask(n_);
        for (Mask r : rows_) {
            if (r != want) return false;
        }
        return true;
    }

    bool is_zero() const {
        for (Mask r : rows_) {
            if (r != 0) return false;
        }
        return true;
    }

    /// Entrywise OR.
    BoolMatrix operator|(const BoolMatrix& other) const {
        require_same_dim(other);
        BoolMatrix out(n_);
        for (int i = 0; i < n_; ++i) {
            out.rows_[static_cast<std::size_t>(i)] =
                rows_[static_cast<std::size_t>(i)] | other.rows_[static_cast<std::size_t>(i)];
        }
        return out;
    }

    friend bool operator==(const BoolMatrix& a, const BoolMatrix& b) {
        return a.n_ == b.n_ && a.rows_ == b.rows_;
    }

    friend bool operator<(const BoolMatrix& a, const BoolMatrix& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        return a.rows_ < b.rows_;
    }

    std::size_t hash() const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(n_);
        for (Mask r : rows_) {
            h ^= r + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 0xbf58476d1ce4e5b9ull;
        }
        return static_cast<std::size_t>(h);
    }

    std::string to_string() const {
        std::string out;
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < n_; ++j) out += get(i, j) ? '1' : '0';
            out += '\n';
        }
        return out;
    }

private:
    static int check_dim(int n) {
        if (n < 1 || n > 64) throw InputError("dimension must be in [1, 64]");
        return n;
    }

    void require_same_dim(const BoolMatrix& other) const {
        if (n_ != other.n_) throw DimensionMismatchError(n_, other.n_);
    }

    int n_;
    std::vector<Mask> rows_;
};

struct BoolMatrixHash {
    std::size_t operator()(const BoolMatrix& m) const { return m.hash(); }
};

/// Boolean product: result[i,j] = 1 iff a[i,k] = b[k,j] = 1 for some k.
/// Row i of the result is the OR of the rows of b selected by row i of a.
inline BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatchError(a.dim(), b.dim());
    const int n = a.dim();
    BoolMatrix out(n);
    for (int i = 0; i < n; ++i) {
        Mask acc = 0;
        for_each_bit(a.row(i), [&](int k) { acc |= b.row(k); });
        out.set_row(i, acc);
    }
    return out;
}

inline BoolMatrix operator*(const BoolMatrix& a, const BoolMatrix& b) {
    return bool_product(a, b);
}

/// An ordered, nonempty list of same-dimension boolean matrices.
struct MatrixSet {
    int n = 0;
    std::vector<BoolMatrix> matrices;

    MatrixSet() = default;
    explicit MatrixSet(std::vector<BoolMatrix> ms) : matrices(std::move(ms)) {
        if (matrices.empty()) throw InputError("matrix set is empty");
        n = matrices.front().dim();
        for (const auto& m : matrices) {
            if (m.dim() != n) throw DimensionMismatchError(n, m.dim());
        }
    }

    int size() const { return static_cast<int>(matrices.size()); }

    MatrixSet transposed() const {
        std::vector<BoolMatrix> out;
        out.reserve(matrices.size());
        for (const auto& m : matrices) out.push_back(m.transpose());
        return MatrixSet(std::move(out));
    }

    /// Entrywise OR of all members.
    BoolMatrix union_matrix() const {
        BoolMatrix u(n);
        for (const auto& m : matrices) u = u | m;
        return u;
    }
};

struct NzStatus {
    bool is_nz = false;
    std::vector<int> zero_rows;
    std::vector<int> zero_cols;
};

/// No-zero-rows-and-columns test; the offending indices are listed (0-based).
inline NzStatus nz_status(const BoolMatrix& m) {
    NzStatus st;
    Mask col_union = 0;
    for (int i = 0; i < m.dim(); ++i) {
        if (m.row(i) == 0) st.zero_rows.push_back(i);
        col_union |= m.row(i);
    }
    for_each_bit(full_mask(m.dim()) & ~col_union, [&](int j) { st.zero_cols.push_back(j); });
    st.is_nz = st.zero_rows.empty() && st.zero_cols.empty();
    return st;
}

inline bool is_nz(const BoolMatrix& m) {
    return nz_status(m).is_nz;
}

inline bool all_nz(const MatrixSet& s) {
    for (const auto& m : s.matrices) {
        if (!is_nz(m)) return false;
    }
    return true;
}

/// True iff the digraph of the entrywise OR of all members is strongly
/// connected (for n = 1: iff the single vertex has a loop).
inline bool is_irreducible_set(const MatrixSet& s) {
    const BoolMatrix u = s.union_matrix();
    const int n = u.dim();
    if (n == 1) return u.get(0, 0);
    const Mask all = full_mask(n);
    auto reach_from_0 = [&](const BoolMatrix& adj) {
        Mask seen = Mask{1};
        Mask frontier = seen;
        while (frontier != 0) {
            Mask next = 0;
            for_each_bit(frontier, [&](int v) { next |= adj.row(v); });
            frontier = next & ~seen;
            seen |= next;
        }
        return seen;
    };
    return reach_from_0(u) == all && reach_from_0(u.transpose()) == all;
}

namespace detail {

/// Kuhn augmenting-path matching of rows to columns inside the support masks.
/// skip_row / used_cols pre-commit part of the matching. Returns col_of_row
/// (skip_row left as its preset value) or nullopt if no full matching exists.
inline bool kuhn_augment(const std::vector<Mask>& adj, int row, Mask banned_cols, Mask& visited,
                         std::vector<int>& row_of_col) {
    Mask candidates = adj[static_cast<std::size_t>(row)] & ~banned_cols & ~visited;
    while (candidates != 0) {
        const int col = lowest_bit(candidates);
        candidates &= candidates - 1;
        visited |= Mask{1} << col;
        if (row_of_col[static_cast<std::size_t>(col)] == -1
            || kuhn_augment(adj, row_of_col[static_cast<std::size_t>(col)], banned_cols, visited,
                            row_of_col)) {
            row_of_col[static_cast<std::size_t>(col)] = row;
            return true;
        }
        candidates &= ~visited;
    }
    return false;
}

/// Perfect matching of the support bipartite graph with row `force_row`
/// pre-assigned to column `force_col` (pass -1/-1 for an unconstrained
/// matching). Returns sigma with sigma[row] = col, or nullopt.
inline std::optional<std::vector<int>> support_matching(const BoolMatrix& m, int force_row,
                                                        int force_col) {
    const int n = m.dim();
    std::vector<Mask> adj(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) adj[static_cast<std::size_t>(i)] = m.row(i);
    std::vector<int> row_of_col(static_cast<std::size_t>(n), -1);
    Mask banned = 0;
    if (force_row >= 0) {
        if (!m.get(force_row, force_col)) return std::nullopt;
        row_of_col[static_cast<std::size_t>(force_col)] = force_row;
        banned = Mask{1} << force_col;
    }
    for (int i = 0; i < n; ++i) {
        if (i == force_row) continue;
        Mask visited = 0;
        if (!kuhn_augment(adj, i, banned, visited, row_of_col)) return std::nullopt;
    }
    std::vector<int> sigma(static_cast<std::size_t>(n), -1);
    for (int col = 0; col < n; ++col) {
        if (row_of_col[static_cast<std::size_t>(col)] >= 0) {
            sigma[static_cast<std::size_t>(row_of_col[static_cast<std::size_t>(col)])] = col;
        }
    }
    return sigma;
}

}  // namespace detail

/// True iff m is nonzero and every 1-entry lies on a positive diagonal, i.e.
/// on a permutation contained in the support.
inline bool has_total_support(const BoolMatrix& m) {
    bool nonzero = false;
    for (int i = 0; i < m.dim(); ++i) nonzero = nonzero || m.row(i) != 0;
    if (!nonzero) return false;
    for (int i = 0; i < m.dim(); ++i) {
        bool ok = true;
        for_each_bit(m.row(i), [&](int j) {
            if (ok && !detail::support_matching(m, i, j)) ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

/// A positive-diagonal cover of the support: d = sum of the permutation
/// matrices in perms, every row and column of d sums to h = perms.size(),
/// and support(d) = support(m).
struct DsPattern {
    std::vector<std::vector<int>> d;
    int h = 0;
    std::vector<std::vector<int>> perms;  // each perm maps row -> col
};

/// Greedy cover: repeatedly take the lexicographically least uncovered
/// support entry and extract a permutation through it.
inline DsPattern doubly_stochastic_pattern(const BoolMatrix& m) {
    if (!has_total_support(m)) throw NoTotalSupportError();
    const int n = m.dim();
    DsPattern out;
    out.d.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    std::vector<Mask> covered(static_cast<std::size_t>(n), 0);
    while (true) {
        int fi = -1, fj = -1;
        for (int i = 0; i < n && fi < 0; ++i) {
            const Mask uncovered = m.row(i) & ~covered[static_cast<std::size_t>(i)];
            if (uncovered != 0) {
                fi = i;
                fj = lowest_bit(uncovered);
            }
        }
        if (fi < 0) break;
        auto sigma = detail::support_matching(m, fi, fj);
        // Total support guarantees a diagonal through every support entry.
        if (!sigma) throw NoTotalSupportError();
        for (int k = 0; k < n; ++k) {
            const int col = (*sigma)[static_cast<std::size_t>(k)];
            covered[static_cast<std::size_t>(k)] |= Mask{1} << col;
            out.d[static_cast<std::size_t>(k)][static_cast<std::size_t>(col)] += 1;
        }
        out.perms.push_back(std::move(*sigma));
    }
    out.h = static_cast<int>(out.perms.size());
    return out;
}

/// If every part's row-support union is nonempty and contained in a single
/// part, and the induced map of parts is a bijection, returns that
/// permutation of parts (sigma[part] = image part). Otherwise nothing.
inline std::optional<std::vector<int>> acts_as_permutation(const BoolMatrix& m,
                                                           const Partition& p) {
    p.validate();
    if (p.ground_size() != m.dim()) {
        throw InputError("partition does not cover the matrix index set");
    }
    const int k = p.num_parts();
    std::vector<Mask> part_mask(static_cast<std::size_t>(k), 0);
    for (int t = 0; t < k; ++t) {
        for (int x : p.parts[static_cast<std::size_t>(t)]) {
            part_mask[static_cast<std::size_t>(t)] |= Mask{1} << x;
        }
    }
    std::vector<int> sigma(static_cast<std::size_t>(k), -1);
    std::vector<bool> hit(static_cast<std::size_t>(k), false);
    for (int t = 0; t < k; ++t) {
        Mask support = 0;
        for (int x : p.parts[static_cast<std::size_t>(t)]) support |= m.row(x);
        if (support == 0) return std::nullopt;
        int target = -1;
        for (int u = 0; u < k; ++u) {
            if ((support & ~part_mask[static_cast<std::size_t>(u)]) == 0) {
                target = u;
                break;
            }
        }
        if (target < 0 || hit[static_cast<std::size_t>(target)]) return std::nullopt;
        hit[static_cast<std::size_t>(target)] = true;
        sigma[static_cast<std::size_t>(t)] = target;
    }
    return sigma;
}

}  // namespace primsync
