#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "novops/diffpoly.hpp"
#include "novops/errors.hpp"
#include "novops/operad.hpp"
#include "novops/subspace.hpp"

namespace novops {

enum class ClosureMode { cdiff_ideal, nov_ideal, nov_bimodule };

inline const char *to_string(ClosureMode m) {
    switch (m) {
    case ClosureMode::cdiff_ideal: return "cdiff-ideal";
    case ClosureMode::nov_ideal: return "nov-ideal";
    case ClosureMode::nov_bimodule: return "nov-bimodule";
    }
    return "?";
}

inline ClosureMode closure_mode_from_string(const std::string &s) {
    if (s == "cdiff-ideal") return ClosureMode::cdiff_ideal;
    if (s == "nov-ideal") return ClosureMode::nov_ideal;
    if (s == "nov-bimodule") return ClosureMode::nov_bimodule;
    throw ModeError("unknown closure mode '" + s + "'");
}

struct Bounds {
    std::size_t max_arity = 9;
    int max_weight = 9;
};

/// C(n+w-1, n-1): number of degree sequences of length n and weight w.
inline mpz_class full_component_dimension(std::size_t n, int w) {
    if (n == 0 || w < 0) return 0;
    return weak_composition_count(static_cast<std::size_t>(w), n);
}

namespace detail {

/// All n! permutations of {0..n-1}, identity first.
inline std::vector<Permutation> all_permutations(std::size_t n) {
    std::vector<Permutation> out;
    Permutation p = identity_permutation(n);
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline std::uint64_t fnv1a(const std::string &s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace detail

/*
 * Graded closure of a generator set under the moves of a mode:
 *
 *   cdiff-ideal   two-sided operadic ideal of CDiff: multiplication by a fresh
 *                 argument, outer derivation, substitution of a1 a2 and a1'
 *                 into a slot;
 *   nov-ideal     ideal of the embedded Novikov operad (generators must be
 *                 Novikov images);
 *   nov-bimodule  infinitesimal Nov-bimodule inside CDiff: substitution of the
 *                 Novikov generator a1 a2' into a slot, and v o b, b o v for a
 *                 fresh argument b.
 *
 * Every component is additionally closed under the symmetric group. Components
 * are computed bottom-up and memoized; an optional on-disk cache is consulted
 * when NOVOPS_CACHE_DIR is set.
 */
class ClosureEngine {
public:
    ClosureEngine(ClosureMode mode, const std::vector<DiffPoly> &gens, Bounds bounds = {}) : mode_(mode), bounds_(bounds) {
        for (const auto &g : gens) {
            if (mode == ClosureMode::nov_ideal && !is_novikov_image(g))
                throw ModeError("nov-ideal generators must be Novikov images (weight = arity - 1)");
            for (auto &layer : g.homogeneous_layers()) layers_.push_back(std::move(layer));
        }
        if (const char *dir = std::getenv("NOVOPS_CACHE_DIR"); dir && *dir) cache_dir_ = dir;
    }

    ClosureMode mode() const { return mode_; }
    const Bounds &bounds() const { return bounds_; }
    const std::vector<DiffPoly> &layers() const { return layers_; }

    void set_cache_dir(std::optional<std::filesystem::path> dir) { cache_dir_ = std::move(dir); }

    const GradedSubspace &component(std::size_t n, int w) {
        if (n == 0 || w < 0) throw ArityError("invalid grade");
        if (mode_ == ClosureMode::nov_ideal && w + 1 != static_cast<int>(n))
            throw ModeError("nov-ideal components live at weight = arity - 1");
        if (n > bounds_.max_arity || w > bounds_.max_weight)
            throw BoundError("grade (" + std::to_string(n) + ", " + std::to_string(w) + ") exceeds bounds (" +
                             std::to_string(bounds_.max_arity) + ", " + std::to_string(bounds_.max_weight) + ")");
        auto key = std::make_pair(n, w);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::optional<GradedSubspace> cached = load_cached(n, w);
        GradedSubspace space = cached ? std::move(*cached) : compute(n, w);
        if (!cached) store_cached(space);
        return memo_.emplace(key, std::move(space)).first->second;
    }

    /// Canonical text of the homogeneous generator layers, order-independent.
    std::string canonical_generators() const {
        std::vector<std::string> parts;
        for (const auto &g : layers_) {
            std::ostringstream os;
            os << g.arity() << ':';
            for (const auto &[m, c] : g.terms()) {
                for (int d : m.degrees()) os << d << ',';
                os << '=' << c << ';';
            }
            parts.push_back(os.str());
        }
        std::sort(parts.begin(), parts.end());
        std::string out;
        for (const auto &p : parts) out += p + "|";
        return out;
    }

private:
    ClosureMode mode_;
    Bounds bounds_;
    std::vector<DiffPoly> layers_;
    std::map<std::pair<std::size_t, int>, GradedSubspace> memo_;
    std::optional<std::filesystem::path> cache_dir_;

    bool novikov_moves() const { return mode_ != ClosureMode::cdiff_ideal; }

    // can any generator layer reach (n, w)?
    bool reachable(std::size_t n, int w) const {
        for (const auto &g : layers_) {
            const std::size_t gn = g.arity();
            const int gw = g.terms().begin()->first.weight();
            if (gn > n || gw > w) continue;
            if (!novikov_moves() || static_cast<int>(n - gn) == w - gw) return true;
        }
        return false;
    }

    GradedSubspace compute(std::size_t n, int w) {
        GradedSubspace space(n, w, mode_ == ClosureMode::nov_ideal);
        if (!reachable(n, w)) return space;
        std::deque<SparseVec> fresh;
        auto add = [&](const DiffPoly &f) {
            if (space.full()) return;
            if (auto row = space.insert(f)) fresh.push_back(std::move(*row));
        };

        for (const auto &g : layers_) {
            if (g.arity() != n || g.terms().begin()->first.weight() != w) continue;
            for (const auto &sigma : detail::all_permutations(n)) add(permute(g, sigma));
        }

        const DiffPoly fresh_var = variable();
        if (novikov_moves()) {
            if (n >= 2 && w >= 1 && reachable(n - 1, w - 1)) {
                const DiffPoly nu = novikov_generator();
                for (const auto &v : component(n - 1, w - 1).basis()) {
                    add(compose(v, 0, nu));
                    add(novikov_product(v, fresh_var));
                    add(novikov_product(fresh_var, v));
                }
            }
        } else {
            if (n >= 2 && reachable(n - 1, w)) {
                const DiffPoly mu = product_generator();
                for (const auto &v : component(n - 1, w).basis()) {
                    add(mul(v, fresh_var));
                    add(compose(v, 0, mu));
                }
            }
            if (w >= 1 && reachable(n, w - 1)) {
                const DiffPoly delta = derivation_generator();
                for (const auto &v : component(n, w - 1).basis()) {
                    add(derive(v));
                    add(compose(v, 0, delta));
                }
            }
        }
        detail::close_under_symmetric_group(space, std::move(fresh));
        return space;
    }

    std::optional<std::filesystem::path> cache_path(std::size_t n, int w) const {
        if (!cache_dir_) return std::nullopt;
        std::ostringstream name;
        name << "v1-" << to_string(mode_) << '-' << std::hex << detail::fnv1a(canonical_generators()) << std::dec << '-'
             << n << '-' << w << ".txt";
        return *cache_dir_ / name.str();
    }

    /*
     * Cache file: header line, the canonical generator text (guards against
     * hash collisions), then one basis row per line as "col:value" pairs.
     */
    std::optional<GradedSubspace> load_cached(std::size_t n, int w) const {
        auto path = cache_path(n, w);
        if (!path || !std::filesystem::exists(*path)) return std::nullopt;
        std::ifstream in(*path);
        std::string header, gens;
        if (!std::getline(in, header) || header != "novops-component v1") return std::nullopt;
        if (!std::getline(in, gens) || gens != canonical_generators()) return std::nullopt;
        GradedSubspace space(n, w, mode_ == ClosureMode::nov_ideal);
        std::string line;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            SparseVec row;
            std::string tok;
            while (ls >> tok) {
                auto colon = tok.find(':');
                if (colon == std::string::npos) return std::nullopt;
                row.emplace_back(static_cast<std::uint32_t>(std::stoul(tok.substr(0, colon))), Scalar::parse(tok.substr(colon + 1)));
            }
            if (!space.insert(row)) return std::nullopt;
        }
        return space;
    }

    void store_cached(const GradedSubspace &space) const {
        auto path = cache_path(space.arity(), space.weight());
        if (!path || std::filesystem::exists(*path)) return;
        std::error_code ec;
        std::filesystem::create_directories(path->parent_path(), ec);
        std::ofstream out(*path);
        if (!out) return;
        out << "novops-component v1\n" << canonical_generators() << '\n';
        for (const auto &row : space.echelon().rows_by_pivot()) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i].first << ':' << row[i].second;
            out << '\n';
        }
    }
};

inline GradedSubspace ideal_component_cdiff(const std::vector<DiffPoly> &gens, std::size_t n, int w, Bounds b = {}) {
    ClosureEngine engine(ClosureMode::cdiff_ideal, gens, b);
    return engine.component(n, w);
}

inline GradedSubspace ideal_component_nov(const std::vector<DiffPoly> &gens, std::size_t n, Bounds b = {}) {
    ClosureEngine engine(ClosureMode::nov_ideal, gens, b);
    return engine.component(n, static_cast<int>(n) - 1);
}

inline GradedSubspace bimodule_component(const std::vector<DiffPoly> &gens, std::size_t n, int w, Bounds b = {}) {
    ClosureEngine engine(ClosureMode::nov_bimodule, gens, b);
    return engine.component(n, w);
}

struct Membership {
    bool member = false;
    /// Coordinates against the basis (same order as GradedSubspace::basis()).
    std::vector<Scalar> coordinates;
    std::string note;
};

inline Membership member(const DiffPoly &f, const GradedSubspace &space) {
    Membership r;
    if (f.is_zero()) {
        r.member = true;
        r.coordinates.assign(space.dimension(), Scalar());
        return r;
    }
    if (!space.in_grade(f)) {
        r.note = "grading mismatch: element is not homogeneous of arity " + std::to_string(space.arity()) + " and weight " +
                 std::to_string(space.weight());
        return r;
    }
    auto coords = space.echelon().coordinates(space.to_vec(f));
    if (!coords) return r;
    r.member = true;
    auto pivots = space.echelon().pivots_descending();
    r.coordinates.assign(pivots.size(), Scalar());
    for (const auto &[col, x] : *coords) {
        auto it = std::find(pivots.begin(), pivots.end(), col);
        r.coordinates[static_cast<std::size_t>(it - pivots.begin())] = x;
    }
    return r;
}

}  // namespace novops
