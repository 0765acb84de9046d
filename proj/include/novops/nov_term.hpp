#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "novops/scalar.hpp"

namespace novops {

struct NovExpr;

/// A leaf x_var (var >= 1) or a parenthesized sub-expression.
struct NovAtom {
    std::size_t var = 0;
    std::shared_ptr<const NovExpr> group;

    bool is_leaf() const { return !group; }
};

/// `left o right`, or a lone atom when `right` is empty.
struct NovProduct {
    NovAtom left;
    std::optional<NovAtom> right;
};

struct NovSummand {
    Scalar coeff = 1;
    NovProduct body;
};

/*
 * Rational linear combination of Novikov products. A plain binary tree over
 * the Novikov product (a NovTerm) is the special case where every sum has a
 * single summand with coefficient 1.
 */
struct NovExpr {
    std::vector<NovSummand> terms;
};

bool operator==(const NovExpr &a, const NovExpr &b);

inline bool operator==(const NovAtom &a, const NovAtom &b) {
    if (a.is_leaf() != b.is_leaf()) return false;
    if (a.is_leaf()) return a.var == b.var;
    return *a.group == *b.group;
}

inline bool operator==(const NovProduct &a, const NovProduct &b) {
    return a.left == b.left && a.right == b.right;
}

inline bool operator==(const NovSummand &a, const NovSummand &b) { return a.coeff == b.coeff && a.body == b.body; }

inline bool operator==(const NovExpr &a, const NovExpr &b) { return a.terms == b.terms; }

namespace nov {

/// The leaf x_i.
inline NovExpr x(std::size_t i) { return NovExpr{{NovSummand{1, NovProduct{NovAtom{i, nullptr}, std::nullopt}}}}; }

inline NovAtom as_atom(const NovExpr &e) {
    if (e.terms.size() == 1 && e.terms[0].coeff.is_one() && !e.terms[0].body.right && e.terms[0].body.left.is_leaf())
        return e.terms[0].body.left;
    return NovAtom{0, std::make_shared<const NovExpr>(e)};
}

/// a o b
inline NovExpr op(const NovExpr &a, const NovExpr &b) {
    return NovExpr{{NovSummand{1, NovProduct{as_atom(a), as_atom(b)}}}};
}

inline NovExpr scaled(const NovExpr &e, const Scalar &c) {
    NovExpr r = e;
    for (auto &t : r.terms) t.coeff *= c;
    return r;
}

inline NovExpr sum(const NovExpr &a, const NovExpr &b) {
    NovExpr r = a;
    r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
    return r;
}

inline NovExpr difference(const NovExpr &a, const NovExpr &b) { return sum(a, scaled(b, -1)); }

/// (a, b, c) = (a o b) o c - a o (b o c)
inline NovExpr associator(const NovExpr &a, const NovExpr &b, const NovExpr &c) {
    return difference(op(op(a, b), c), op(a, op(b, c)));
}

/// [a, b] = a o b - b o a
inline NovExpr commutator(const NovExpr &a, const NovExpr &b) { return difference(op(a, b), op(b, a)); }

}  // namespace nov

}  // namespace novops
