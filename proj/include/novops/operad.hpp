#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "novops/combinatorics.hpp"
#include "novops/diffpoly.hpp"
#include "novops/errors.hpp"
#include "novops/nov_term.hpp"
#include "novops/subspace.hpp"

namespace novops {

/*
 * Partial composition f o_k g (k is 0-based). Slot k of each monomial of f,
 * carrying degree s, is replaced by derive_power(g, s); g's arguments occupy
 * positions k .. k+n-1 and the later arguments of f shift up by n-1.
 */
inline DiffPoly compose(const DiffPoly &f, std::size_t k, const DiffPoly &g) {
    if (k >= f.arity())
        throw SlotError("slot " + std::to_string(k + 1) + " out of range for arity " + std::to_string(f.arity()));
    const std::size_t n = g.arity();
    DiffPoly out(f.arity() + n - 1);
    std::map<int, DiffPoly> powers;
    for (const auto &[mf, cf] : f.terms()) {
        const int s = mf[k];
        auto it = powers.find(s);
        if (it == powers.end()) it = powers.emplace(s, derive_power(g, s)).first;
        for (const auto &[mg, cg] : it->second.terms()) {
            std::vector<int> d;
            d.reserve(out.arity());
            d.insert(d.end(), mf.degrees().begin(), mf.degrees().begin() + static_cast<std::ptrdiff_t>(k));
            d.insert(d.end(), mg.degrees().begin(), mg.degrees().end());
            d.insert(d.end(), mf.degrees().begin() + static_cast<std::ptrdiff_t>(k) + 1, mf.degrees().end());
            out.add_term(Monomial(std::move(d)), cf * cg);
        }
    }
    return out;
}

/// x o y = x D(y)
inline DiffPoly novikov_product(const DiffPoly &f, const DiffPoly &g) { return mul(f, derive(g)); }

/// The image a_1 a_2' of the Novikov generator.
inline DiffPoly novikov_generator() { return DiffPoly(Monomial{0, 1}); }

/// The product generator a_1 a_2.
inline DiffPoly product_generator() { return DiffPoly(Monomial{0, 0}); }

/// The derivation generator a_1'.
inline DiffPoly derivation_generator() { return DiffPoly(Monomial{1}); }

/// True iff f is zero or weight-homogeneous of weight arity - 1.
inline bool is_novikov_image(const DiffPoly &f) {
    for (const auto &[m, c] : f.terms())
        if (m.weight() + 1 != static_cast<int>(f.arity())) return false;
    return true;
}

namespace detail {

// polynomial whose arguments are the sorted labels `labels`
struct LabeledPoly {
    std::vector<std::size_t> labels;
    DiffPoly poly;
};

LabeledPoly expand_labeled(const NovExpr &e);

inline LabeledPoly expand_atom(const NovAtom &a) {
    if (a.is_leaf()) {
        if (a.var == 0) throw ArityError("variable index must be positive");
        return {{a.var}, variable()};
    }
    return expand_labeled(*a.group);
}

inline LabeledPoly expand_product(const NovProduct &p) {
    LabeledPoly left = expand_atom(p.left);
    if (!p.right) return left;
    LabeledPoly right = expand_atom(*p.right);
    std::vector<std::size_t> joined = left.labels;
    joined.insert(joined.end(), right.labels.begin(), right.labels.end());
    std::vector<std::size_t> sorted = joined;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw MultilinearityError("variable x" + std::to_string(*std::adjacent_find(sorted.begin(), sorted.end())) +
                                  " occurs twice in one product");
    DiffPoly prod = novikov_product(left.poly, right.poly);
    Permutation sigma(joined.size());
    for (std::size_t i = 0; i < joined.size(); ++i)
        sigma[i] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), joined[i]) - sorted.begin());
    return {std::move(sorted), permute(prod, sigma)};
}

inline LabeledPoly expand_labeled(const NovExpr &e) {
    if (e.terms.empty()) throw ArityError("empty Novikov expression");
    std::optional<LabeledPoly> acc;
    for (const auto &t : e.terms) {
        LabeledPoly p = expand_product(t.body);
        p.poly *= t.coeff;
        if (!acc) {
            acc = std::move(p);
        } else {
            if (acc->labels != p.labels)
                throw MultilinearityError("summands of one sum must use the same variables");
            acc->poly += p.poly;
        }
    }
    return std::move(*acc);
}

}  // namespace detail

/*
 * Image of a multilinear Novikov expression under x o y -> x y'. The
 * variables used must be exactly x1..xn; x_i becomes argument a_i.
 */
inline DiffPoly expand_nov_term(const NovExpr &e) {
    detail::LabeledPoly p = detail::expand_labeled(e);
    for (std::size_t i = 0; i < p.labels.size(); ++i)
        if (p.labels[i] != i + 1)
            throw ArityError("Novikov variables must be x1..x" + std::to_string(p.labels.size()) + " without gaps");
    if (!is_novikov_image(p.poly)) throw DiagnosticError("expansion is not weight-homogeneous of weight arity-1");
    return p.poly;
}

enum class ChainKind { right_associator, right_commutator };

/// The Novikov expression behind canonical_chain.
inline NovExpr canonical_chain_term(ChainKind kind, std::size_t p) {
    if (p == 0) throw ArityError("chain length must be positive");
    NovExpr acc = nov::x(1);
    for (std::size_t i = 1; i <= p; ++i) {
        NovExpr u = nov::x(2 * i), v = nov::x(2 * i + 1);
        acc = kind == ChainKind::right_associator ? nov::associator(acc, u, v) : nov::op(acc, nov::commutator(u, v));
    }
    return acc;
}

/*
 * Expansion of the p-fold iterated right associator
 *   ((..((x1,x2,x3),x4,x5)..),x_{2p},x_{2p+1})  =  (-1)^p a1 a2 a3'' a4 a5'' ... a_{2p} a_{2p+1}''
 * or of the right product (..((x1 o [x2,x3]) o [x4,x5])..) o [x_{2p},x_{2p+1}].
 */
inline DiffPoly canonical_chain(ChainKind kind, std::size_t p) { return expand_nov_term(canonical_chain_term(kind, p)); }

namespace detail {

inline void close_under_symmetric_group(GradedSubspace &space, std::deque<SparseVec> queue) {
    const std::size_t n = space.arity();
    if (n < 2) return;
    std::vector<Permutation> swaps;
    for (std::size_t i = 0; i + 1 < n; ++i) swaps.push_back(transposition(n, i, i + 1));
    while (!queue.empty() && !space.full()) {
        DiffPoly v = space.to_poly(queue.front());
        queue.pop_front();
        for (const auto &tau : swaps) {
            if (auto row = space.insert(permute(v, tau))) queue.push_back(std::move(*row));
        }
    }
}

}  // namespace detail

/*
 * Span of the images of all multilinear Novikov terms of arity n, built by
 * arity: products of lower components, closed under S_n.
 */
inline GradedSubspace generate_nov_component(std::size_t n, std::size_t arity_bound = 9) {
    if (n == 0) throw ArityError("arity must be positive");
    if (n > arity_bound) throw BoundError("arity " + std::to_string(n) + " exceeds bound " + std::to_string(arity_bound));
    std::vector<std::vector<DiffPoly>> bases(n + 1);
    bases[1] = {variable()};
    GradedSubspace last(1, 0, true);
    last.insert(variable());
    for (std::size_t m = 2; m <= n; ++m) {
        GradedSubspace space(m, static_cast<int>(m) - 1, true);
        std::deque<SparseVec> fresh;
        for (std::size_t a = 1; a < m && !space.full(); ++a)
            for (const auto &u : bases[a])
                for (const auto &v : bases[m - a])
                    if (auto row = space.insert(novikov_product(u, v))) fresh.push_back(std::move(*row));
        detail::close_under_symmetric_group(space, std::move(fresh));
        bases[m] = space.basis();
        last = std::move(space);
    }
    return last;
}

}  // namespace novops
