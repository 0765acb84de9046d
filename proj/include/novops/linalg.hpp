#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "novops/scalar.hpp"

namespace novops {

/// Sparse vector: (column, value) pairs, strictly ascending columns, no zero values.
using SparseVec = std::vector<std::pair<std::uint32_t, Scalar>>;

/*
 * Incrementally maintained reduced row echelon form over the rationals.
 *
 * The pivot of a row is its largest column. Rows are monic at the pivot and
 * every pivot column is zero in all other rows, so a vector lies in the span
 * iff it vanishes after subtracting v[p] * row(p) for each pivot p it touches,
 * and those v[p] are its coordinates.
 */
class Echelon {
public:
    explicit Echelon(std::size_t columns) : pivot_row_(columns, -1), occurs_(columns), dense_(columns), touched_flag_(columns, 0) {}

    std::size_t columns() const { return pivot_row_.size(); }
    std::size_t rank() const { return rows_.size(); }
    bool full() const { return rows_.size() == pivot_row_.size(); }

    /// Residual of v modulo the row space (empty iff v is in the span).
    SparseVec reduce(const SparseVec &v) const {
        for (const auto &[c, x] : v) touch(c) += x;
        for (const auto &[c, x] : v) {
            int r = pivot_row_[c];
            if (r < 0) continue;
            for (const auto &[c2, y] : rows_[static_cast<std::size_t>(r)]) touch(c2) -= x * y;
        }
        return collect();
    }

    bool contains(const SparseVec &v) const { return reduce(v).empty(); }

    /// Coordinates against the rows, keyed by pivot column; nullopt if v is outside the span.
    std::optional<SparseVec> coordinates(const SparseVec &v) const {
        if (!contains(v)) return std::nullopt;
        SparseVec coords;
        for (const auto &[c, x] : v)
            if (pivot_row_[c] >= 0) coords.emplace_back(c, x);
        return coords;
    }

    /// Adds v to the row space; returns the reduced, monic new row if the rank grew.
    std::optional<SparseVec> insert(const SparseVec &v) {
        SparseVec r = reduce(v);
        if (r.empty()) return std::nullopt;
        const std::uint32_t p = r.back().first;
        const Scalar inv = r.back().second.inverse();
        for (auto &e : r) e.second *= inv;

        // eliminate p from rows that mention it
        std::vector<std::uint32_t> holders;
        holders.swap(occurs_[p]);
        for (std::uint32_t k : holders) {
            SparseVec &row = rows_[k];
            auto it = std::lower_bound(row.begin(), row.end(), p, [](const auto &e, std::uint32_t c) { return e.first < c; });
            if (it == row.end() || it->first != p) continue;  // stale entry
            Scalar factor = it->second;
            row = axpy(row, r, factor, k);
        }

        const auto index = static_cast<std::uint32_t>(rows_.size());
        for (const auto &e : r)
            if (e.first != p) occurs_[e.first].push_back(index);
        pivot_row_[p] = static_cast<int>(index);
        rows_.push_back(r);
        return r;
    }

    /// Rows ordered by descending pivot.
    std::vector<SparseVec> rows_by_pivot() const {
        std::vector<SparseVec> out;
        out.reserve(rows_.size());
        for (std::size_t c = pivot_row_.size(); c-- > 0;)
            if (pivot_row_[c] >= 0) out.push_back(rows_[static_cast<std::size_t>(pivot_row_[c])]);
        return out;
    }

    std::vector<std::uint32_t> pivots_descending() const {
        std::vector<std::uint32_t> out;
        for (std::size_t c = pivot_row_.size(); c-- > 0;)
            if (pivot_row_[c] >= 0) out.push_back(static_cast<std::uint32_t>(c));
        return out;
    }

private:
    std::vector<SparseVec> rows_;
    std::vector<int> pivot_row_;
    std::vector<std::vector<std::uint32_t>> occurs_;

    // scratch for reduce(); logically const
    mutable std::vector<Scalar> dense_;
    mutable std::vector<std::uint32_t> touched_;
    mutable std::vector<char> touched_flag_;

    Scalar &touch(std::uint32_t c) const {
        if (!touched_flag_[c]) {
            touched_flag_[c] = 1;
            touched_.push_back(c);
        }
        return dense_[c];
    }

    SparseVec collect() const {
        std::sort(touched_.begin(), touched_.end());
        SparseVec out;
        for (std::uint32_t c : touched_) {
            if (!dense_[c].is_zero()) out.emplace_back(c, std::move(dense_[c]));
            dense_[c] = Scalar();
            touched_flag_[c] = 0;
        }
        touched_.clear();
        return out;
    }

    // row - factor * r, registering new columns of row `k` in occurs_
    SparseVec axpy(const SparseVec &row, const SparseVec &r, const Scalar &factor, std::uint32_t k) {
        SparseVec out;
        out.reserve(row.size() + r.size());
        std::size_t i = 0, j = 0;
        while (i < row.size() || j < r.size()) {
            if (j == r.size() || (i < row.size() && row[i].first < r[j].first)) {
                out.push_back(row[i++]);
            } else if (i == row.size() || r[j].first < row[i].first) {
                Scalar v = -(factor * r[j].second);
                occurs_[r[j].first].push_back(k);
                out.emplace_back(r[j].first, std::move(v));
                ++j;
            } else {
                Scalar v = row[i].second - factor * r[j].second;
                if (!v.is_zero()) out.emplace_back(row[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        return out;
    }
};

}  // namespace novops
