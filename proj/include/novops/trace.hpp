#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "novops/closure.hpp"
#include "novops/diffpoly.hpp"
#include "novops/errors.hpp"
#include "novops/linalg.hpp"
#include "novops/operad.hpp"

namespace novops {

enum class MoveKind {
    permute,           // relabel arguments
    mul_fresh,         // multiply by a fresh degree-0 argument inserted at `position`
    derive_outside,    // apply the derivation to the whole element
    subst_product,     // a_k -> a_k a_{k+1}
    subst_derivative,  // a_k -> a_k'
    subst_nov,         // a_k -> a_k b' or a_k -> a_k' b, b fresh at k+1
    nov_mul_right,     // v o b = v b', b fresh at `position`
    nov_mul_left,      // b o v = b v', b fresh at `position`
    combine            // linear combination of earlier elements
};

/// Which side of a Novikov substitution carries the derivative.
enum class NovOrientation { derivative_on_new, derivative_on_old };

inline const char *to_string(MoveKind k) {
    switch (k) {
    case MoveKind::permute: return "permute";
    case MoveKind::mul_fresh: return "mul-fresh";
    case MoveKind::derive_outside: return "derive-outside";
    case MoveKind::subst_product: return "subst-product";
    case MoveKind::subst_derivative: return "subst-derivative";
    case MoveKind::subst_nov: return "subst-nov";
    case MoveKind::nov_mul_right: return "nov-mul-right";
    case MoveKind::nov_mul_left: return "nov-mul-left";
    case MoveKind::combine: return "combine";
    }
    return "?";
}

inline MoveKind move_kind_from_string(const std::string &s) {
    for (MoveKind k : {MoveKind::permute, MoveKind::mul_fresh, MoveKind::derive_outside, MoveKind::subst_product,
                       MoveKind::subst_derivative, MoveKind::subst_nov, MoveKind::nov_mul_right, MoveKind::nov_mul_left,
                       MoveKind::combine})
        if (s == to_string(k)) return k;
    throw FormatError("unknown move kind '" + s + "'");
}

inline const char *to_string(NovOrientation o) {
    return o == NovOrientation::derivative_on_new ? "derivative-on-new" : "derivative-on-old";
}

inline NovOrientation nov_orientation_from_string(const std::string &s) {
    if (s == "derivative-on-new") return NovOrientation::derivative_on_new;
    if (s == "derivative-on-old") return NovOrientation::derivative_on_old;
    throw FormatError("unknown orientation '" + s + "'");
}

inline bool move_admissible(MoveKind k, ClosureMode mode) {
    if (mode == ClosureMode::cdiff_ideal) return true;
    switch (k) {
    case MoveKind::permute:
    case MoveKind::subst_nov:
    case MoveKind::nov_mul_right:
    case MoveKind::nov_mul_left:
    case MoveKind::combine: return true;
    default: return false;
    }
}

/*
 * One move. Elements of a trace are numbered 0 (the input), 1, 2, ... with
 * element i the result of step i-1. `source` names the element a unary move
 * acts on; combine reads `terms` instead.
 */
struct Step {
    MoveKind kind = MoveKind::permute;
    std::size_t source = 0;
    Permutation sigma{};
    std::size_t position = 0;  // slot or insertion position, 0-based
    NovOrientation orientation = NovOrientation::derivative_on_new;
    std::vector<std::pair<std::size_t, Scalar>> terms{};
    DiffPoly result{1};
};

struct DerivationTrace {
    ClosureMode mode = ClosureMode::cdiff_ideal;
    DiffPoly input{1};
    std::vector<Step> steps;
    DiffPoly output{1};
};

namespace detail {

inline DiffPoly insert_fresh(const DiffPoly &f, std::size_t pos, int degree) {
    if (pos > f.arity())
        throw SlotError("insertion position " + std::to_string(pos + 1) + " out of range for arity " + std::to_string(f.arity()));
    DiffPoly out(f.arity() + 1);
    for (const auto &[m, c] : f.terms()) {
        std::vector<int> d = m.degrees();
        d.insert(d.begin() + static_cast<std::ptrdiff_t>(pos), degree);
        out.add_term(Monomial(std::move(d)), c);
    }
    return out;
}

}  // namespace detail

/// Result of applying a non-combine move to `f`.
inline DiffPoly apply_move(const Step &s, const DiffPoly &f) {
    switch (s.kind) {
    case MoveKind::permute: return permute(f, s.sigma);
    case MoveKind::mul_fresh: return detail::insert_fresh(f, s.position, 0);
    case MoveKind::derive_outside: return derive(f);
    case MoveKind::subst_product: return compose(f, s.position, product_generator());
    case MoveKind::subst_derivative: return compose(f, s.position, derivation_generator());
    case MoveKind::subst_nov: {
        DiffPoly g = compose(f, s.position, novikov_generator());
        if (s.orientation == NovOrientation::derivative_on_new) return g;
        return permute(g, transposition(g.arity(), s.position, s.position + 1));
    }
    case MoveKind::nov_mul_right: return detail::insert_fresh(f, s.position, 1);
    case MoveKind::nov_mul_left: {
        DiffPoly d = derive(f);
        return detail::insert_fresh(d, s.position, 0);
    }
    case MoveKind::combine: break;
    }
    throw DiagnosticError("combine is not a unary move");
}

/// Evaluates step `s` against the elements produced so far.
inline DiffPoly evaluate_step(const Step &s, const std::vector<DiffPoly> &elements) {
    if (s.kind != MoveKind::combine) {
        if (s.source >= elements.size()) throw SlotError("step refers to element " + std::to_string(s.source) + " not yet produced");
        return apply_move(s, elements[s.source]);
    }
    if (s.terms.empty()) throw ArityError("empty combination");
    std::optional<DiffPoly> acc;
    for (const auto &[src, c] : s.terms) {
        if (src >= elements.size()) throw SlotError("step refers to element " + std::to_string(src) + " not yet produced");
        DiffPoly t = elements[src] * c;
        if (!acc) acc = std::move(t);
        else *acc += t;
    }
    return std::move(*acc);
}

/// Appends moves to a trace, keeping every intermediate element.
class TraceBuilder {
public:
    TraceBuilder(ClosureMode mode, const DiffPoly &input) {
        trace_.mode = mode;
        trace_.input = input;
        trace_.output = input;
        elements_.push_back(input);
    }

    std::size_t last() const { return elements_.size() - 1; }
    const DiffPoly &element(std::size_t i) const { return elements_.at(i); }

    std::size_t push(Step s) {
        if (!move_admissible(s.kind, trace_.mode))
            throw ModeError(std::string("move ") + to_string(s.kind) + " is not admissible in mode " + to_string(trace_.mode));
        s.result = evaluate_step(s, elements_);
        elements_.push_back(s.result);
        trace_.steps.push_back(std::move(s));
        return last();
    }

    std::size_t permute(std::size_t src, Permutation sigma) {
        Step s{.kind = MoveKind::permute, .source = src};
        s.sigma = std::move(sigma);
        return push(std::move(s));
    }
    std::size_t mul_fresh(std::size_t src, std::size_t pos) { return push({.kind = MoveKind::mul_fresh, .source = src, .position = pos}); }
    std::size_t derive_outside(std::size_t src) { return push({.kind = MoveKind::derive_outside, .source = src}); }
    std::size_t subst_product(std::size_t src, std::size_t slot) {
        return push({.kind = MoveKind::subst_product, .source = src, .position = slot});
    }
    std::size_t subst_derivative(std::size_t src, std::size_t slot) {
        return push({.kind = MoveKind::subst_derivative, .source = src, .position = slot});
    }
    std::size_t subst_nov(std::size_t src, std::size_t slot, NovOrientation o) {
        return push({.kind = MoveKind::subst_nov, .source = src, .position = slot, .orientation = o});
    }
    std::size_t nov_mul_right(std::size_t src, std::size_t pos) {
        return push({.kind = MoveKind::nov_mul_right, .source = src, .position = pos});
    }
    std::size_t nov_mul_left(std::size_t src, std::size_t pos) {
        return push({.kind = MoveKind::nov_mul_left, .source = src, .position = pos});
    }
    std::size_t combine(std::vector<std::pair<std::size_t, Scalar>> terms) {
        Step s{.kind = MoveKind::combine};
        s.terms = std::move(terms);
        return push(std::move(s));
    }

    DerivationTrace finish() && {
        trace_.output = elements_.back();
        return std::move(trace_);
    }

private:
    DerivationTrace trace_;
    std::vector<DiffPoly> elements_;
};

struct TraceCheck {
    bool ok = true;
    /// 0-based index of the first failing step; nullopt when the input check failed or all passed.
    std::optional<std::size_t> failing_step;
    std::string reason;
};

namespace detail {

/*
 * Is f in the span of the S_n-orbits of those gens with f's arity? Works on the
 * direct sum of the weight grades that occur, closing under adjacent
 * transpositions.
 */
inline bool in_orbit_span(const DiffPoly &f, const std::vector<DiffPoly> &gens) {
    if (f.is_zero()) return true;
    const std::size_t n = f.arity();
    std::map<int, std::uint64_t> offset;
    std::map<int, GradeIndex> grades;
    std::uint64_t columns = 0;
    auto register_weights = [&](const DiffPoly &p) {
        for (int w : grading(p).weights)
            if (!grades.count(w)) grades.emplace(w, GradeIndex(n, w));
    };
    register_weights(f);
    for (const auto &g : gens)
        if (g.arity() == n) register_weights(g);
    for (auto &[w, idx] : grades) {
        offset[w] = columns;
        columns += idx.size();
    }
    if (columns > (1u << 26)) throw BoundError("orbit span too large to check");
    auto to_vec = [&](const DiffPoly &p) {
        SparseVec v;
        for (const auto &[m, c] : p.terms())
            v.emplace_back(static_cast<std::uint32_t>(offset[m.weight()] + grades.at(m.weight()).rank(m.degrees())), c);
        std::sort(v.begin(), v.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
        return v;
    };
    auto to_poly = [&](const SparseVec &v) {
        DiffPoly p(n);
        for (const auto &[col, x] : v) {
            auto it = std::prev(std::find_if(offset.begin(), offset.end(), [&](const auto &e) { return e.second > col; }));
            p.add_term(Monomial(grades.at(it->first).unrank(col - it->second)), x);
        }
        return p;
    };
    Echelon ech(static_cast<std::size_t>(columns));
    std::deque<SparseVec> queue;
    for (const auto &g : gens)
        if (g.arity() == n)
            if (auto row = ech.insert(to_vec(g))) queue.push_back(std::move(*row));
    const SparseVec target = to_vec(f);
    while (!queue.empty()) {
        if (ech.contains(target)) return true;
        DiffPoly v = to_poly(queue.front());
        queue.pop_front();
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (auto row = ech.insert(to_vec(permute(v, transposition(n, i, i + 1))))) queue.push_back(std::move(*row));
    }
    return ech.contains(target);
}

}  // namespace detail

/*
 * Replays a trace: the input must lie in the span of permuted generators, each
 * step must be admissible for the trace's mode and reproduce its stored
 * result, and the last element must equal the stated output.
 */
inline TraceCheck verify_trace(const DerivationTrace &t, const std::vector<DiffPoly> &gens) {
    TraceCheck r;
    if (!detail::in_orbit_span(t.input, gens)) return {false, std::nullopt, "input is not in the span of the permuted generators"};
    std::vector<DiffPoly> elements{t.input};
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const Step &s = t.steps[i];
        auto fail = [&](std::string why) { return TraceCheck{false, i, std::move(why)}; };
        if (!move_admissible(s.kind, t.mode))
            return fail(std::string("move ") + to_string(s.kind) + " is not admissible in mode " + to_string(t.mode));
        try {
            DiffPoly got = evaluate_step(s, elements);
            if (!(got == s.result)) return fail("replayed result differs from the recorded one");
            elements.push_back(std::move(got));
        } catch (const Error &e) {
            return fail(e.what());
        }
    }
    if (!(elements.back() == t.output)) return {false, std::nullopt, "final element differs from the stated output"};
    return r;
}

}  // namespace novops
