#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "novops/novops.hpp"

namespace novops::gen {

using Rng = std::mt19937_64;

inline Scalar random_coeff(Rng &rng) {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
    int n = 0;
    while (n == 0) n = num(rng);
    return Scalar(n, den(rng));
}

inline Monomial random_monomial(Rng &rng, std::size_t arity, int max_degree) {
    std::uniform_int_distribution<int> d(0, max_degree);
    std::vector<int> deg(arity);
    for (auto &x : deg) x = d(rng);
    return Monomial(std::move(deg));
}

/// Random polynomial, possibly zero, with up to `terms` terms.
inline DiffPoly random_poly(Rng &rng, std::size_t arity, int max_degree, int terms) {
    DiffPoly f(arity);
    for (int i = 0; i < terms; ++i) f.add_term(random_monomial(rng, arity, max_degree), random_coeff(rng));
    return f;
}

inline DiffPoly random_nonzero_poly(Rng &rng, std::size_t arity, int max_degree, int terms) {
    DiffPoly f(arity);
    while (f.is_zero()) f = random_poly(rng, arity, max_degree, terms);
    return f;
}

/// Random monomial of the given arity and weight.
inline Monomial random_monomial_of_weight(Rng &rng, std::size_t arity, int weight) {
    GradeIndex idx(arity, weight);
    std::uniform_int_distribution<std::uint64_t> r(0, idx.size() - 1);
    return Monomial(idx.unrank(r(rng)));
}

inline DiffPoly random_homogeneous(Rng &rng, std::size_t arity, int weight, int terms) {
    DiffPoly f(arity);
    while (f.is_zero())
        for (int i = 0; i < terms; ++i) f.add_term(random_monomial_of_weight(rng, arity, weight), random_coeff(rng));
    return f;
}

inline DiffPoly random_novikov(Rng &rng, std::size_t arity, int terms) {
    return random_homogeneous(rng, arity, static_cast<int>(arity) - 1, terms);
}

inline Permutation random_permutation(Rng &rng, std::size_t n) {
    Permutation p = identity_permutation(n);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

/// Random binary Novikov tree on x1..xn with a random leaf order.
inline NovExpr random_nov_tree(Rng &rng, std::size_t n) {
    Permutation labels = random_permutation(rng, n);
    std::vector<NovExpr> pool;
    for (std::size_t i = 0; i < n; ++i) pool.push_back(nov::x(labels[i] + 1));
    while (pool.size() > 1) {
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 2);
        std::size_t i = pick(rng);
        pool[i] = nov::op(pool[i], pool[i + 1]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    }
    return pool[0];
}

}  // namespace novops::gen
