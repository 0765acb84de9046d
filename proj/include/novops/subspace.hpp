#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "novops/combinatorics.hpp"
#include "novops/diffpoly.hpp"
#include "novops/errors.hpp"
#include "novops/linalg.hpp"

namespace novops {

/*
 * Subspace of the (arity, weight) grade of the differential operad, kept in
 * reduced echelon form with respect to descending lexicographic order on
 * degree sequences.
 */
class GradedSubspace {
public:
    GradedSubspace(std::size_t arity, int weight, bool novikov = false)
        : index_(std::make_shared<const GradeIndex>(arity, weight)),
          echelon_(std::make_shared<Echelon>(static_cast<std::size_t>(index_->size()))), novikov_(novikov) {
        if (index_->size() > (1u << 31)) throw BoundError("grade too large to index");
    }

    std::size_t arity() const { return index_->arity(); }
    int weight() const { return index_->weight(); }
    /// True for components of the embedded Novikov operad (weight = arity - 1 implied).
    bool novikov_marker() const { return novikov_; }
    std::size_t dimension() const { return echelon_->rank(); }
    std::uint64_t ambient_dimension() const { return index_->size(); }
    bool full() const { return echelon_->full(); }
    const GradeIndex &index() const { return *index_; }
    const Echelon &echelon() const { return *echelon_; }

    bool in_grade(const DiffPoly &f) const {
        if (f.arity() != arity()) return false;
        for (const auto &[m, c] : f.terms())
            if (m.weight() != weight()) return false;
        return true;
    }

    SparseVec to_vec(const DiffPoly &f) const {
        if (!in_grade(f)) throw ArityError("polynomial outside the (" + std::to_string(arity()) + ", " + std::to_string(weight()) + ") grade");
        SparseVec v;
        v.reserve(f.size());
        for (const auto &[m, c] : f.terms()) v.emplace_back(static_cast<std::uint32_t>(index_->rank(m.degrees())), c);
        std::sort(v.begin(), v.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
        return v;
    }

    DiffPoly to_poly(const SparseVec &v) const {
        DiffPoly f(arity());
        for (const auto &[c, x] : v) f.add_term(Monomial(index_->unrank(c)), x);
        return f;
    }

    /// Returns the new reduced row if the dimension grew.
    std::optional<SparseVec> insert(const DiffPoly &f) { return insert(to_vec(f)); }
    std::optional<SparseVec> insert(const SparseVec &v) { return writable().insert(v); }

    bool contains(const DiffPoly &f) const { return in_grade(f) && echelon_->contains(to_vec(f)); }

    std::vector<DiffPoly> basis() const {
        std::vector<DiffPoly> out;
        for (const auto &row : echelon_->rows_by_pivot()) out.push_back(to_poly(row));
        return out;
    }

private:
    std::shared_ptr<const GradeIndex> index_;
    std::shared_ptr<Echelon> echelon_;
    bool novikov_;

    Echelon &writable() {
        if (echelon_.use_count() > 1) echelon_ = std::make_shared<Echelon>(*echelon_);
        return *echelon_;
    }
};

}  // namespace novops
