#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "novops/combinatorics.hpp"
#include "novops/errors.hpp"
#include "novops/scalar.hpp"

namespace novops {

/*
 * A multilinear differential monomial a_1^(i_1) a_2^(i_2) ... a_n^(i_n),
 * stored as its degree sequence (i_1, ..., i_n). Arguments are labeled, the
 * product is commutative, so the sequence is a complete canonical form.
 */
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<int> degrees) : degrees_(std::move(degrees)) {
        for (int d : degrees_)
            if (d < 0) throw ArityError("negative differential degree");
    }
    Monomial(std::initializer_list<int> degrees) : Monomial(std::vector<int>(degrees)) {}

    std::size_t arity() const { return degrees_.size(); }
    int weight() const { return std::accumulate(degrees_.begin(), degrees_.end(), 0); }
    const std::vector<int> &degrees() const { return degrees_; }
    int operator[](std::size_t k) const { return degrees_[k]; }

    friend auto operator<=>(const Monomial &, const Monomial &) = default;
    friend bool operator==(const Monomial &, const Monomial &) = default;

private:
    std::vector<int> degrees_;
};

/// Finite linear combination of monomials of one arity with exact coefficients.
class DiffPoly {
public:
    using TermMap = std::map<Monomial, Scalar>;

    explicit DiffPoly(std::size_t arity) : arity_(arity) {
        if (arity == 0) throw ArityError("polynomial arity must be at least 1");
    }
    DiffPoly(const Monomial &m, Scalar c = 1) : DiffPoly(m.arity()) { add_term(m, std::move(c)); }

    std::size_t arity() const { return arity_; }
    const TermMap &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Scalar coefficient(const Monomial &m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Scalar() : it->second;
    }

    void add_term(const Monomial &m, const Scalar &c) {
        if (m.arity() != arity_)
            throw ArityError("monomial of arity " + std::to_string(m.arity()) + " added to polynomial of arity " +
                             std::to_string(arity_));
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    DiffPoly &operator+=(const DiffPoly &o) {
        require_same_arity(o);
        for (const auto &[m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    DiffPoly &operator-=(const DiffPoly &o) {
        require_same_arity(o);
        for (const auto &[m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    DiffPoly &operator*=(const Scalar &s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto &[m, c] : terms_) c *= s;
        return *this;
    }

    friend DiffPoly operator+(DiffPoly a, const DiffPoly &b) { return a += b; }
    friend DiffPoly operator-(DiffPoly a, const DiffPoly &b) { return a -= b; }
    friend DiffPoly operator*(DiffPoly a, const Scalar &s) { return a *= s; }
    friend DiffPoly operator*(const Scalar &s, DiffPoly a) { return a *= s; }
    DiffPoly operator-() const { return *this * Scalar(-1); }

    friend bool operator==(const DiffPoly &a, const DiffPoly &b) { return a.arity_ == b.arity_ && a.terms_ == b.terms_; }

    /// Split into weight-homogeneous layers, ascending by weight.
    std::vector<DiffPoly> homogeneous_layers() const {
        std::map<int, DiffPoly> layers;
        for (const auto &[m, c] : terms_) layers.try_emplace(m.weight(), arity_).first->second.add_term(m, c);
        std::vector<DiffPoly> out;
        for (auto &[w, p] : layers) out.push_back(std::move(p));
        return out;
    }

private:
    void require_same_arity(const DiffPoly &o) const {
        if (o.arity_ != arity_)
            throw ArityError("arity mismatch: " + std::to_string(arity_) + " vs " + std::to_string(o.arity_));
    }

    std::size_t arity_;
    TermMap terms_;
};

/// The single argument a_1 (unit of the operad).
inline DiffPoly variable() { return DiffPoly(Monomial{0}); }

/*
 * Permutations act by relabeling: sigma[k] is the new (0-based) label of the
 * argument whose old label is k. With this convention
 *   permute(permute(f, sigma), tau) == permute(f, compose(tau, sigma))
 * where compose(tau, sigma)[k] = tau[sigma[k]].
 */
using Permutation = std::vector<std::size_t>;

inline bool is_permutation(const Permutation &sigma) {
    std::vector<bool> seen(sigma.size(), false);
    for (std::size_t v : sigma) {
        if (v >= sigma.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

inline Permutation identity_permutation(std::size_t n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    return p;
}

inline Permutation compose(const Permutation &tau, const Permutation &sigma) {
    Permutation r(sigma.size());
    for (std::size_t k = 0; k < sigma.size(); ++k) r[k] = tau[sigma[k]];
    return r;
}

inline Permutation transposition(std::size_t n, std::size_t i, std::size_t j) {
    Permutation p = identity_permutation(n);
    std::swap(p[i], p[j]);
    return p;
}

inline Monomial permute(const Monomial &m, const Permutation &sigma) {
    std::vector<int> d(m.arity());
    for (std::size_t k = 0; k < sigma.size(); ++k) d[sigma[k]] = m[k];
    return Monomial(std::move(d));
}

inline DiffPoly permute(const DiffPoly &f, const Permutation &sigma) {
    if (sigma.size() != f.arity())
        throw ArityError("permutation of length " + std::to_string(sigma.size()) + " applied to arity " +
                         std::to_string(f.arity()));
    if (!is_permutation(sigma)) throw ArityError("not a permutation");
    DiffPoly out(f.arity());
    for (const auto &[m, c] : f.terms()) out.add_term(permute(m, sigma), c);
    return out;
}

/// Commutative product; g's arguments are relabeled m+1..m+n.
inline DiffPoly mul(const DiffPoly &f, const DiffPoly &g) {
    DiffPoly out(f.arity() + g.arity());
    for (const auto &[mf, cf] : f.terms())
        for (const auto &[mg, cg] : g.terms()) {
            std::vector<int> d = mf.degrees();
            d.insert(d.end(), mg.degrees().begin(), mg.degrees().end());
            out.add_term(Monomial(std::move(d)), cf * cg);
        }
    return out;
}

/// Leibniz rule.
inline DiffPoly derive(const DiffPoly &f) {
    DiffPoly out(f.arity());
    for (const auto &[m, c] : f.terms())
        for (std::size_t k = 0; k < m.arity(); ++k) {
            std::vector<int> d = m.degrees();
            ++d[k];
            out.add_term(Monomial(std::move(d)), c);
        }
    return out;
}

/// s-fold derivation, expanded by the multinomial Leibniz formula.
inline DiffPoly derive_power(const DiffPoly &f, int s) {
    if (s < 0) throw ArityError("negative derivation power");
    if (s == 0) return f;
    DiffPoly out(f.arity());
    std::vector<std::pair<std::vector<int>, Scalar>> spread;
    for_each_weak_composition(s, f.arity(), [&](const std::vector<int> &c) {
        spread.emplace_back(c, Scalar(mpq_class(multinomial(c))));
    });
    for (const auto &[m, coeff] : f.terms())
        for (const auto &[c, mult] : spread) {
            std::vector<int> d = m.degrees();
            for (std::size_t k = 0; k < d.size(); ++k) d[k] += c[k];
            out.add_term(Monomial(std::move(d)), coeff * mult);
        }
    return out;
}

struct Grading {
    std::size_t arity;
    std::set<int> weights;

    bool homogeneous() const { return weights.size() <= 1; }
    friend bool operator==(const Grading &, const Grading &) = default;
};

inline Grading grading(const DiffPoly &f) {
    Grading g{f.arity(), {}};
    for (const auto &[m, c] : f.terms()) g.weights.insert(m.weight());
    return g;
}

inline bool is_homogeneous(const DiffPoly &f) { return grading(f).homogeneous(); }

}  // namespace novops
