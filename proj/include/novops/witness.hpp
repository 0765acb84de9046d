#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "novops/diffpoly.hpp"
#include "novops/errors.hpp"
#include "novops/operad.hpp"
#include "novops/trace.hpp"

namespace novops {

namespace detail {

inline std::set<int> degrees_at(const DiffPoly &f, std::size_t k) {
    std::set<int> out;
    for (const auto &[m, c] : f.terms()) out.insert(m[k]);
    return out;
}

// largest deg(y) + deg(z) over the monomials of h
inline int pair_top(const DiffPoly &h, std::size_t y, std::size_t z) {
    int top = -1;
    for (const auto &[m, c] : h.terms()) top = std::max(top, m[y] + m[z]);
    return top;
}

// permutation of {0..n-1} moving position `from` to the end, order of the rest kept
inline Permutation move_to_end(std::size_t n, std::size_t from) {
    Permutation p(n);
    for (std::size_t k = 0; k < n; ++k) p[k] = k < from ? k : k == from ? n - 1 : k - 1;
    return p;
}

/*
 * Elimination of one argument at a time, always the highest-index argument
 * still active. An argument whose degree is the same in every monomial and
 * lies in `settled` is left alone; otherwise the h-chain at that argument
 * replaces it by y, z (degree 0) and fresh t's of degree `t_degree`, all
 * settled, multiplied by the top-degree coefficient of the argument.
 */
class Eliminator {
public:
    enum class Flavor { cdiff, bimodule };

    Eliminator(Flavor flavor, ClosureMode mode, const DiffPoly &f) : flavor_(flavor), b_(mode, f), active_(f.arity(), true) {
        if (f.is_zero()) throw ZeroInputError("witness of the zero polynomial requested");
    }

    TraceBuilder &builder() { return b_; }
    const DiffPoly &current() const { return b_.element(cur_); }
    std::size_t cursor() const { return cur_; }
    void set_cursor(std::size_t c) {
        cur_ = c;
        active_.resize(current().arity(), false);
    }

    bool settled(int d) const { return flavor_ == Flavor::cdiff ? (d == 0 || d == 1) : (d == 0 || d == 2); }

    void eliminate_all() {
        for (std::size_t k = active_.size(); k-- > 0;) {
            if (!active_[k]) continue;
            auto ds = degrees_at(current(), k);
            if (ds.size() == 1 && settled(*ds.begin())) {
                active_[k] = false;
                continue;
            }
            chain(k);
        }
    }

    /// Runs the h-chain at argument k regardless of its degree pattern.
    void chain(std::size_t k) {
        if (flavor_ == Flavor::cdiff) chain_cdiff(k);
        else chain_bimodule(k);
        active_.assign(current().arity(), false);
        for (std::size_t i = 0; i < k; ++i) active_[i] = was_active_[i];
    }

private:
    Flavor flavor_;
    TraceBuilder b_;
    std::size_t cur_ = 0;
    std::vector<bool> active_, was_active_;

    void check_step(std::size_t h, std::size_t y, std::size_t z, int expected_top, const char *stage) {
        const DiffPoly &p = b_.element(h);
        if (p.is_zero()) throw DiagnosticError(std::string("h-chain vanished at ") + stage);
        int top = pair_top(p, y, z);
        if (expected_top >= 0 && top != expected_top)
            throw DiagnosticError(std::string("h-chain top degree is ") + std::to_string(top) + " at " + stage + ", expected " +
                                  std::to_string(expected_top));
    }

    // h(y,z) - h(z,y) given the index of h(y,z) and of its second part
    std::size_t antisymmetrize(std::size_t a, std::size_t bpart, std::size_t y, std::size_t z) {
        const std::size_t n = b_.element(a).arity();
        std::size_t sa = b_.permute(a, transposition(n, y, z));
        std::size_t sb = b_.permute(bpart, transposition(n, y, z));
        return b_.combine({{a, 1}, {bpart, -1}, {sa, -1}, {sb, 1}});
    }

    // substitution at slot y followed by moving the fresh argument (at y+1) to the end
    std::size_t subst_append(std::size_t src, std::size_t y, bool nov, NovOrientation o = NovOrientation::derivative_on_new) {
        std::size_t s = nov ? b_.subst_nov(src, y, o) : b_.subst_product(src, y);
        const std::size_t n = b_.element(s).arity();
        if (y + 2 == n) return s;
        return b_.permute(s, move_to_end(n, y + 1));
    }

    void chain_cdiff(std::size_t k) {
        was_active_ = active_;
        const std::size_t y = k, z = current().arity();
        const int n = *degrees_at(current(), k).rbegin();
        // h0 = f(y) z - f(z) y
        std::size_t fz = b_.mul_fresh(cur_, z);
        std::size_t h = b_.combine({{fz, 1}, {b_.permute(fz, transposition(z + 1, y, z)), -1}});
        check_step(h, y, z, n, "h0");
        // h <- h(yt,z) - h(y,z)t - h(zt,y) + h(z,y)t
        for (int top = n; top > 1; --top) {
            std::size_t a = subst_append(h, y, false);
            std::size_t t = b_.mul_fresh(h, b_.element(h).arity());
            h = antisymmetrize(a, t, y, z);
            check_step(h, y, z, top - 1, "h-step");
        }
        // h(yt,z) - h(y,z)t
        std::size_t a = subst_append(h, y, false);
        std::size_t t = b_.mul_fresh(h, b_.element(h).arity());
        cur_ = b_.combine({{a, 1}, {t, -1}});
        check_step(cur_, y, z, 0, "final step");
    }

    void chain_bimodule(std::size_t k) {
        was_active_ = active_;
        const std::size_t y = k, z = current().arity();
        const int n = *degrees_at(current(), k).rbegin();
        // h0 = f(y z') - f(y) z' - f(y' z) + y' f(z)
        std::size_t p1 = subst_append(cur_, y, true, NovOrientation::derivative_on_new);
        std::size_t p2 = b_.nov_mul_right(cur_, z);
        std::size_t p3 = subst_append(cur_, y, true, NovOrientation::derivative_on_old);
        std::size_t p4 = b_.permute(p2, transposition(z + 1, y, z));
        std::size_t h = b_.combine({{p1, 1}, {p2, -1}, {p3, -1}, {p4, 1}});
        check_step(h, y, z, n + 1, "h0");
        // h <- h(yt',z) - h(y,z)t' - h(zt',y) + h(z,y)t'
        for (int top = n + 1; top > 1; --top) {
            std::size_t a = subst_append(h, y, true);
            std::size_t t = b_.nov_mul_right(h, b_.element(h).arity());
            h = antisymmetrize(a, t, y, z);
            check_step(h, y, z, top - 1, "h-step");
        }
        // h(yt',z) - h(y,z)t'
        std::size_t a = subst_append(h, y, true);
        std::size_t t = b_.nov_mul_right(h, b_.element(h).arity());
        cur_ = b_.combine({{a, 1}, {t, -1}});
        check_step(cur_, y, z, 0, "final step");
    }
};

inline bool single_monomial_with_degrees(const DiffPoly &f, const std::set<int> &allowed) {
    if (f.size() != 1) return false;
    for (int d : f.terms().begin()->first.degrees())
        if (!allowed.count(d)) return false;
    return true;
}

inline DerivationTrace bimodule_like_witness(ClosureMode mode, const DiffPoly &f) {
    Eliminator e(Eliminator::Flavor::bimodule, mode, f);
    e.eliminate_all();
    auto count = [&](int d) {
        const auto &deg = e.current().terms().begin()->first.degrees();
        return std::count(deg.begin(), deg.end(), d);
    };
    if (count(2) == 0) {
        // every argument has degree 0: f o b brings in a degree-1 argument to run the chain on
        std::size_t n = e.current().arity();
        e.set_cursor(e.builder().nov_mul_right(e.cursor(), n));
        e.chain(n);
    } else if (count(0) == 0) {
        const auto &deg = e.current().terms().begin()->first.degrees();
        std::size_t k = static_cast<std::size_t>(std::find(deg.rbegin(), deg.rend(), 2).base() - deg.begin()) - 1;
        e.chain(k);
    }
    if (!single_monomial_with_degrees(e.current(), {0, 2}) || count(0) == 0 || count(2) == 0)
        throw DiagnosticError("bimodule elimination did not reach the expected monomial shape");
    return std::move(e.builder()).finish();
}

}  // namespace detail

/*
 * Element c a_1' ... a_m' (c != 0) of the CDiff ideal generated by f, with a
 * replayable cdiff-ideal trace.
 */
inline DerivationTrace derive_diff_witness(const DiffPoly &f) {
    detail::Eliminator e(detail::Eliminator::Flavor::cdiff, ClosureMode::cdiff_ideal, f);
    e.eliminate_all();
    if (!detail::single_monomial_with_degrees(e.current(), {0, 1}))
        throw DiagnosticError("cdiff elimination did not reach a single monomial");
    const auto deg = e.current().terms().begin()->first.degrees();
    std::size_t cur = e.cursor();
    for (std::size_t k = 0; k < deg.size(); ++k)
        if (deg[k] == 0) cur = e.builder().subst_derivative(cur, k);
    return std::move(e.builder()).finish();
}

/*
 * Element c a_1''...a_p'' a_{p+1}...a_{p+q} (c != 0, p, q >= 1, up to the order
 * of arguments) of the infinitesimal Nov-bimodule generated by f.
 */
inline DerivationTrace derive_bimodule_witness(const DiffPoly &f) {
    return detail::bimodule_like_witness(ClosureMode::nov_bimodule, f);
}

/*
 * For a Novikov image f: the same construction read as nov-ideal moves. The
 * output is a permuted right-associator monomial with one more degree-0 than
 * degree-2 argument.
 */
inline DerivationTrace derive_nov_witness(const DiffPoly &f) {
    if (!is_novikov_image(f)) throw ModeError("Novikov witness needs a Novikov image (weight = arity - 1)");
    DerivationTrace t = detail::bimodule_like_witness(ClosureMode::nov_ideal, f);
    const auto &deg = t.output.terms().begin()->first.degrees();
    if (!is_novikov_image(t.output) || std::count(deg.begin(), deg.end(), 2) + 1 != std::count(deg.begin(), deg.end(), 0))
        throw DiagnosticError("Novikov witness has an unexpected shape");
    return t;
}

}  // namespace novops
