#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hodgeforge/rational.hpp"

namespace hodgeforge {

using Mat = std::vector<RatVec>;

inline Mat mat_identity(std::size_t n) {
    Mat m(n, zero_vec(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline RatVec mat_vec(const Mat& m, const RatVec& v) {
    RatVec r(m.size(), Rat(0));
    for (std::size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], v);
    return r;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
    std::size_t n = a.size(), k = b.size(), p = k ? b[0].size() : 0;
    Mat r(n, zero_vec(p));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (a[i][j] != 0)
                for (std::size_t c = 0; c < p; ++c) r[i][c] += a[i][j] * b[j][c];
    return r;
}

inline Mat mat_transpose(const Mat& a) {
    if (a.empty()) return {};
    Mat t(a[0].size(), zero_vec(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

inline bool is_symmetric(const Mat& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            if (m[i][j] != m[j][i]) return false;
    return true;
}

/// Reduced row echelon form processing columns in the given order.
/// Afterwards `m` holds exactly the pivot rows (rank many, normalized,
/// mutually reduced). Returns the pivot columns in processing order.
/// RREF is unique, so the result does not depend on row order.
inline std::vector<int> rref_cols(Mat& m, const std::vector<int>& col_order) {
    std::vector<int> pivots;
    std::size_t row = 0;
    for (int col : col_order) {
        std::size_t sel = m.size();
        for (std::size_t r = row; r < m.size(); ++r)
            if (m[r][col] != 0) { sel = r; break; }
        if (sel == m.size()) continue;
        std::swap(m[row], m[sel]);
        Rat inv = 1 / m[row][col];
        for (Rat& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (std::size_t c = 0; c < m[r].size(); ++c) m[r][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    m.resize(row, RatVec{});
    return pivots;
}

inline std::vector<int> rref(Mat& m) {
    std::vector<int> order;
    if (!m.empty())
        for (std::size_t c = 0; c < m[0].size(); ++c) order.push_back(static_cast<int>(c));
    return rref_cols(m, order);
}

/// RREF processing columns right-to-left; pivots land at the largest
/// possible indices. Used for quotient coordinates.
inline std::vector<int> rref_right(Mat& m) {
    std::vector<int> order;
    if (!m.empty())
        for (int c = static_cast<int>(m[0].size()) - 1; c >= 0; --c) order.push_back(c);
    return rref_cols(m, order);
}

inline int rank_of(Mat m) {
    return static_cast<int>(rref(m).size());
}

/// Canonical kernel basis of the row space viewed as a map: vectors v with
/// m v = 0. One basis vector per free column, in ascending column order.
inline std::vector<RatVec> kernel_basis(Mat m, std::size_t ncols) {
    std::vector<int> piv = rref(m);
    std::vector<bool> is_piv(ncols, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<RatVec> basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_piv[f]) continue;
        RatVec v = zero_vec(ncols);
        v[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Solves A x = b exactly. Returns the particular solution with all free
/// variables zero, or nullopt when inconsistent.
inline std::optional<RatVec> solve(const Mat& a, const RatVec& b) {
    std::size_t ncols = a.empty() ? 0 : a[0].size();
    Mat aug(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        aug[i] = a[i];
        aug[i].push_back(b[i]);
    }
    if (a.empty()) {
        for (const Rat& x : b)
            if (x != 0) return std::nullopt;
        return RatVec{};
    }
    // The RHS column is eliminated last: it picks up a pivot exactly when
    // some combination of the rows reads 0 = 1, i.e. the system is
    // inconsistent. Non-pivot rows are discarded by rref_cols, so checking
    // leftover rows instead would miss it.
    std::vector<int> order;
    for (std::size_t c = 0; c <= ncols; ++c) order.push_back(static_cast<int>(c));
    std::vector<int> piv = rref_cols(aug, order);
    if (!piv.empty() && piv.back() == static_cast<int>(ncols)) return std::nullopt;
    RatVec x = zero_vec(ncols);
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug[r][ncols];
    return x;
}

/// Sparse row: (column, coefficient) pairs sorted by column.
using SparseVec = std::vector<std::pair<int, Rat>>;

inline SparseVec sparse_axpy(const SparseVec& r, const Rat& c, const SparseVec& p) {
    SparseVec out;
    out.reserve(r.size() + p.size());
    std::size_t i = 0, j = 0;
    while (i < r.size() || j < p.size()) {
        if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
            out.push_back(r[i++]);
        } else if (i == r.size() || p[j].first < r[i].first) {
            out.emplace_back(p[j].first, c * p[j].second);
            ++j;
        } else {
            Rat v = r[i].second + c * p[j].second;
            if (v != 0) out.emplace_back(r[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

/// Incremental exact Gaussian elimination over sparse rational rows with
/// the natural column order. Pivot columns (and the final RREF) are the
/// canonical ones regardless of insertion order.
class Eliminator {
public:
    /// Reduces `row` against the current pivots and stores the remainder
    /// as a new pivot row when nonzero. Returns true when rank grew.
    bool insert(SparseVec row) {
        while (!row.empty()) {
            auto it = rows_.find(row.front().first);
            if (it == rows_.end()) break;
            row = sparse_axpy(row, -row.front().second, it->second);
        }
        if (row.empty()) return false;
        Rat inv = 1 / row.front().second;
        for (auto& t : row) t.second *= inv;
        int lead = row.front().first;
        rows_.emplace(lead, std::move(row));
        finalized_ = false;
        return true;
    }

    int rank() const { return static_cast<int>(rows_.size()); }

    std::vector<int> pivot_cols() const {
        std::vector<int> p;
        p.reserve(rows_.size());
        for (const auto& [c, r] : rows_) p.push_back(c);
        return p;
    }

    /// Back-substitutes so every stored row is fully reduced (true RREF).
    void finalize() {
        if (finalized_) return;
        for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
            SparseVec& row = it->second;
            bool changed = true;
            while (changed) {
                changed = false;
                for (std::size_t k = 1; k < row.size(); ++k) {
                    auto jt = rows_.find(row[k].first);
                    if (jt == rows_.end()) continue;
                    row = sparse_axpy(row, -row[k].second, jt->second);
                    changed = true;
                    break;
                }
            }
        }
        finalized_ = true;
    }

    /// Fully reduced row for a pivot column (finalize() first).
    const SparseVec* row_for(int col) const {
        auto it = rows_.find(col);
        return it == rows_.end() ? nullptr : &it->second;
    }

    /// Normal form of v modulo the row space; call finalize() first so the
    /// result is supported on non-pivot columns only. Pivot rows carry no
    /// columns below their own pivot, so a single left-to-right sweep works.
    SparseVec reduce(SparseVec v) const {
        std::size_t k = 0;
        while (k < v.size()) {
            auto it = rows_.find(v[k].first);
            if (it == rows_.end()) {
                ++k;
                continue;
            }
            v = sparse_axpy(v, -v[k].second, it->second);
        }
        return v;
    }

private:
    std::map<int, SparseVec> rows_;
    bool finalized_ = true;
};

} // namespace hodgeforge
