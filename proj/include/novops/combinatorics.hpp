#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include <gmpxx.h>

#include "novops/errors.hpp"

namespace novops {

/// Binomial coefficient C(n, k); zero when k > n.
inline mpz_class binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// Machine-word binomial; throws BoundError if it does not fit.
inline std::uint64_t binomial_u64(std::size_t n, std::size_t k) {
    mpz_class r = binomial(n, k);
    if (!r.fits_ulong_p()) throw BoundError("binomial coefficient overflows 64 bits");
    return r.get_ui();
}

/// Number of weak compositions of `total` into `parts` non-negative parts.
inline mpz_class weak_composition_count(std::size_t total, std::size_t parts) {
    if (parts == 0) return total == 0 ? 1 : 0;
    return binomial(total + parts - 1, parts - 1);
}

inline mpz_class factorial(std::size_t n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/// s! / (c_1! ... c_n!)
inline mpz_class multinomial(const std::vector<int> &parts) {
    mpz_class r = 1;
    unsigned long running = 0;
    for (int c : parts) {
        running += static_cast<unsigned long>(c);
        r *= binomial(running, static_cast<std::size_t>(c));
    }
    return r;
}

/// Calls `visit` on every weak composition of `total` into `parts` parts, in ascending lexicographic order.
inline void for_each_weak_composition(int total, std::size_t parts, const std::function<void(const std::vector<int> &)> &visit) {
    if (parts == 0) {
        if (total == 0) visit({});
        return;
    }
    std::vector<int> cur(parts, 0);
    // recursive fill, smallest first entry first
    std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int remaining) {
        if (pos + 1 == parts) {
            cur[pos] = remaining;
            visit(cur);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            cur[pos] = v;
            rec(pos + 1, remaining - v);
        }
    };
    rec(0, total);
}

inline std::vector<std::vector<int>> weak_compositions(int total, std::size_t parts) {
    std::vector<std::vector<int>> out;
    for_each_weak_composition(total, parts, [&](const std::vector<int> &c) { out.push_back(c); });
    return out;
}

/*
 * Dense ranking of the degree sequences of a fixed (arity, weight) grade.
 * Rank 0 is the lexicographically smallest sequence (0,…,0,w); the largest
 * rank belongs to (w,0,…,0).
 */
class GradeIndex {
public:
    GradeIndex(std::size_t arity, int weight) : arity_(arity), weight_(weight) {
        if (arity == 0) throw ArityError("grade index needs arity >= 1");
        // count_[len][sum] = number of sequences of length len with the given sum
        count_.assign(arity + 1, std::vector<std::uint64_t>(static_cast<std::size_t>(weight) + 1, 0));
        for (std::size_t len = 0; len <= arity; ++len)
            for (int s = 0; s <= weight; ++s)
                count_[len][static_cast<std::size_t>(s)] =
                    len == 0 ? (s == 0 ? 1 : 0) : binomial_u64(static_cast<std::size_t>(s) + len - 1, len - 1);
        size_ = count_[arity][static_cast<std::size_t>(weight)];
    }

    std::size_t arity() const { return arity_; }
    int weight() const { return weight_; }
    std::uint64_t size() const { return size_; }

    std::uint64_t rank(const std::vector<int> &degrees) const {
        std::uint64_t r = 0;
        int remaining = weight_;
        for (std::size_t i = 0; i + 1 < arity_; ++i) {
            std::size_t rest = arity_ - i - 1;
            for (int v = 0; v < degrees[i]; ++v) r += count_[rest][static_cast<std::size_t>(remaining - v)];
            remaining -= degrees[i];
        }
        return r;
    }

    std::vector<int> unrank(std::uint64_t r) const {
        std::vector<int> d(arity_, 0);
        int remaining = weight_;
        for (std::size_t i = 0; i + 1 < arity_; ++i) {
            std::size_t rest = arity_ - i - 1;
            int v = 0;
            while (r >= count_[rest][static_cast<std::size_t>(remaining - v)]) {
                r -= count_[rest][static_cast<std::size_t>(remaining - v)];
                ++v;
            }
            d[i] = v;
            remaining -= v;
        }
        d[arity_ - 1] = remaining;
        return d;
    }

private:
    std::size_t arity_;
    int weight_;
    std::uint64_t size_ = 0;
    std::vector<std::vector<std::uint64_t>> count_;
};

}  // namespace novops
