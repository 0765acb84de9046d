#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "novops/diffpoly.hpp"
#include "novops/errors.hpp"
#include "novops/operad.hpp"
#include "novops/trace.hpp"

namespace novops {

enum class OrderMode { cdiff, nov };

inline const char *to_string(OrderMode m) { return m == OrderMode::cdiff ? "cdiff" : "nov"; }

inline OrderMode order_mode_from_string(const std::string &s) {
    if (s == "cdiff") return OrderMode::cdiff;
    if (s == "nov") return OrderMode::nov;
    throw ModeError("unknown order mode '" + s + "'");
}

inline ClosureMode closure_mode_for(OrderMode m) { return m == OrderMode::cdiff ? ClosureMode::cdiff_ideal : ClosureMode::nov_ideal; }

/// cdiff: alpha(e); nov: (number of zero degrees, alpha(e)). Compared lexicographically.
struct OrderKey {
    std::size_t zeros = 0;
    std::vector<int> alpha;

    friend auto operator<=>(const OrderKey &, const OrderKey &) = default;
};

inline OrderKey order_key(const Monomial &e, OrderMode mode) {
    OrderKey k;
    k.alpha = e.degrees();
    if (mode == OrderMode::nov)
        for (int d : k.alpha) k.zeros += d == 0;
    return k;
}

inline std::strong_ordering compare(const Monomial &a, const Monomial &b, OrderMode mode) {
    if (a.arity() != b.arity())
        throw ArityError("cannot compare monomials of arity " + std::to_string(a.arity()) + " and " + std::to_string(b.arity()));
    return order_key(a, mode) <=> order_key(b, mode);
}

inline std::pair<Monomial, Scalar> leading_term(const DiffPoly &f, OrderMode mode) {
    if (f.is_zero()) throw ZeroInputError("the zero polynomial has no leading term");
    auto best = f.terms().begin();
    for (auto it = std::next(best); it != f.terms().end(); ++it)
        if (compare(it->first, best->first, mode) > 0) best = it;
    return {best->first, best->second};
}

/// 0 is comparable only with itself; positive integers are ordered as usual.
inline bool exotic_leq(int x, int y) { return (x == 0 && y == 0) || (x >= 1 && y >= 1 && x <= y); }

/*
 * Strictly increasing phi with exotic_leq(alpha[i], beta[phi[i]]), or nullopt.
 * Matching each entry to the earliest admissible position is optimal.
 */
inline std::optional<std::vector<std::size_t>> higman_embedding(const std::vector<int> &alpha, const std::vector<int> &beta) {
    std::vector<std::size_t> phi;
    phi.reserve(alpha.size());
    std::size_t j = 0;
    for (int a : alpha) {
        while (j < beta.size() && !exotic_leq(a, beta[j])) ++j;
        if (j == beta.size()) return std::nullopt;
        phi.push_back(j++);
    }
    return phi;
}

inline bool higman_embeds(const std::vector<int> &alpha, const std::vector<int> &beta) {
    return higman_embedding(alpha, beta).has_value();
}

/// Embedding map (argument i of e_s goes to argument map[i] of e_t), or nullopt.
inline std::optional<std::vector<std::size_t>> divides(const Monomial &es, const Monomial &et, OrderMode) {
    return higman_embedding(es.degrees(), et.degrees());
}

namespace detail {

inline void check_embedding(const Monomial &src, const Monomial &target, const std::vector<std::size_t> &map) {
    if (map.size() != src.arity()) throw NotDivisibleError("embedding map has wrong length");
    for (std::size_t i = 0; i < map.size(); ++i) {
        if (map[i] >= target.arity() || (i > 0 && map[i] <= map[i - 1]))
            throw NotDivisibleError("embedding map is not strictly increasing into the target");
        if (!exotic_leq(src[i], target[map[i]])) throw NotDivisibleError("embedding map does not respect the exotic order");
    }
}

inline DerivationTrace lift_cdiff(const DiffPoly &f, const Monomial &target, const std::vector<std::size_t> &map) {
    TraceBuilder b(ClosureMode::cdiff_ideal, f);
    std::vector<bool> matched(target.arity(), false);
    for (std::size_t p : map) matched[p] = true;
    std::size_t cur = 0;
    for (std::size_t p = 0; p < target.arity(); ++p)
        if (!matched[p]) cur = b.mul_fresh(cur, p);
    const Monomial lead = leading_term(f, OrderMode::cdiff).first;
    std::vector<int> have(target.arity(), 0);
    for (std::size_t i = 0; i < map.size(); ++i) have[map[i]] = lead[i];
    for (std::size_t p = 0; p < target.arity(); ++p)
        for (int d = have[p]; d < target[p]; ++d) cur = b.subst_derivative(cur, p);
    return std::move(b).finish();
}

/*
 * Positive gaps of the target are filled by v o b; every missing unit of
 * degree at a positive position is supplied by a -> a' b, whose fresh b (degree
 * 0 in the leading monomial) is then routed to an unmatched zero position.
 * Weight = arity - 1 on both sides makes the counts agree.
 */
inline DerivationTrace lift_nov(const DiffPoly &f, const Monomial &target, const std::vector<std::size_t> &map) {
    if (!is_novikov_image(f) || target.weight() + 1 != static_cast<int>(target.arity()))
        throw ModeError("nov lifting needs Novikov inputs");
    TraceBuilder b(ClosureMode::nov_ideal, f);
    const Monomial lead = leading_term(f, OrderMode::nov).first;
    std::vector<bool> matched(target.arity(), false);
    for (std::size_t p : map) matched[p] = true;

    // labels[pos] = target position that the argument at pos will end up in
    std::vector<std::size_t> labels(map.begin(), map.end());
    std::vector<int> degree(lead.degrees());
    std::vector<std::size_t> zero_gaps;
    std::size_t cur = 0;
    for (std::size_t p = 0; p < target.arity(); ++p) {
        if (matched[p]) continue;
        if (target[p] == 0) {
            zero_gaps.push_back(p);
        } else {
            cur = b.nov_mul_right(cur, labels.size());
            labels.push_back(p);
            degree.push_back(1);
        }
    }
    std::size_t next_zero = 0;
    for (std::size_t p = 0; p < target.arity(); ++p) {
        if (target[p] == 0) continue;
        std::size_t pos = static_cast<std::size_t>(std::find(labels.begin(), labels.end(), p) - labels.begin());
        while (degree[pos] < target[p]) {
            if (next_zero == zero_gaps.size()) throw DiagnosticError("nov lift ran out of zero positions");
            cur = b.subst_nov(cur, pos, NovOrientation::derivative_on_old);
            ++degree[pos];
            labels.insert(labels.begin() + static_cast<std::ptrdiff_t>(pos) + 1, zero_gaps[next_zero++]);
            degree.insert(degree.begin() + static_cast<std::ptrdiff_t>(pos) + 1, 0);
        }
    }
    if (next_zero != zero_gaps.size()) throw DiagnosticError("nov lift left zero positions unfilled");
    Permutation sigma(labels.begin(), labels.end());
    if (sigma != identity_permutation(sigma.size())) cur = b.permute(cur, sigma);
    return std::move(b).finish();
}

}  // namespace detail

/*
 * An element of the closure generated by f (cdiff-ideal or nov-ideal moves)
 * whose leading monomial is `target`, with the leading coefficient of f.
 */
inline DerivationTrace lift(const DiffPoly &f, const Monomial &target, const std::vector<std::size_t> &map, OrderMode mode) {
    const Monomial lead = leading_term(f, mode).first;
    detail::check_embedding(lead, target, map);
    DerivationTrace t = mode == OrderMode::cdiff ? detail::lift_cdiff(f, target, map) : detail::lift_nov(f, target, map);
    if (leading_term(t.output, mode).first != target) throw DiagnosticError("lifted element has an unexpected leading term");
    return t;
}

inline DerivationTrace lift(const DiffPoly &f, const Monomial &target, OrderMode mode) {
    auto map = divides(leading_term(f, mode).first, target, mode);
    if (!map) throw NotDivisibleError("leading term of f does not divide the target");
    return lift(f, target, *map, mode);
}

struct ReductionStep {
    std::size_t generator = 0;
    DerivationTrace lift;
    /// remainder <- remainder - coeff * lift.output
    Scalar coeff;
};

struct Reduction {
    DiffPoly remainder{1};
    std::vector<ReductionStep> steps;
};

/*
 * Leading-term reduction of f by F; the lowest-index divisor wins. Stops at the
 * first remainder whose leading term no generator divides.
 */
inline Reduction reduce(const DiffPoly &f, const std::vector<DiffPoly> &F, OrderMode mode, std::size_t max_steps = 100000) {
    for (const auto &g : F) {
        if (g.is_zero()) throw ZeroInputError("reduction by the zero polynomial");
        if (mode == OrderMode::nov && !is_novikov_image(g)) throw ModeError("nov reduction needs Novikov generators");
    }
    if (mode == OrderMode::nov && !is_novikov_image(f)) throw ModeError("nov reduction needs a Novikov input");
    Reduction r{f, {}};
    std::vector<Monomial> leads;
    for (const auto &g : F) leads.push_back(leading_term(g, mode).first);
    while (!r.remainder.is_zero()) {
        if (r.steps.size() == max_steps) throw DiagnosticError("reduction did not terminate within the step limit");
        auto [lt, lc] = leading_term(r.remainder, mode);
        std::optional<std::size_t> pick;
        std::optional<std::vector<std::size_t>> map;
        for (std::size_t i = 0; i < F.size() && !pick; ++i)
            if ((map = divides(leads[i], lt, mode))) pick = i;
        if (!pick) break;
        DerivationTrace t = lift(F[*pick], lt, *map, mode);
        Scalar c = lc / leading_term(t.output, mode).second;
        DiffPoly next = r.remainder - t.output * c;
        if (!next.is_zero() && compare(leading_term(next, mode).first, lt, mode) >= 0)
            throw DiagnosticError("reduction step did not decrease the leading term");
        r.remainder = std::move(next);
        r.steps.push_back({*pick, std::move(t), std::move(c)});
    }
    return r;
}

/// Replays every lift against its generator and checks f - sum c_i lift_i = remainder.
inline TraceCheck verify_reduction(const DiffPoly &f, const std::vector<DiffPoly> &F, const Reduction &r, OrderMode mode) {
    DiffPoly acc = f;
    for (std::size_t i = 0; i < r.steps.size(); ++i) {
        const auto &s = r.steps[i];
        if (s.generator >= F.size()) return {false, i, "generator index out of range"};
        if (!(s.lift.input == F[s.generator])) return {false, i, "lift does not start from its generator"};
        if (s.lift.mode != closure_mode_for(mode)) return {false, i, "lift uses the wrong closure mode"};
        TraceCheck c = verify_trace(s.lift, {F[s.generator]});
        if (!c.ok) return {false, i, "lift trace rejected: " + c.reason};
        try {
            acc -= s.lift.output * s.coeff;
        } catch (const Error &e) {
            return {false, i, e.what()};
        }
    }
    if (!(acc == r.remainder)) return {false, std::nullopt, "remainder does not match the certificate"};
    return {};
}

}  // namespace novops
