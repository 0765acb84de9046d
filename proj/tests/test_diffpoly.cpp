#include <gtest/gtest.h>

#include "support.hpp"

using namespace novops;

static DiffPoly P(const char *s) { return parse_diff(s); }

TEST(DiffPoly, MulExamples) {
    EXPECT_EQ(mul(P("a1'"), P("a1")), P("a1' a2"));
    EXPECT_EQ(mul(P("a1"), P("a1")), P("a1 a2"));
    EXPECT_EQ(mul(P("a1' a2 + a1 a2'"), P("a1")), P("a1' a2 a3 + a1 a2' a3"));
}

TEST(DiffPoly, DeriveExamples) {
    EXPECT_EQ(derive(P("a1 a2")), P("a1' a2 + a1 a2'"));
    EXPECT_EQ(derive(P("a1")), P("a1'"));
    EXPECT_EQ(derive(P("a1' a2'")), P("a1'' a2' + a1' a2''"));
}

TEST(DiffPoly, DerivePowerExamples) {
    EXPECT_EQ(derive_power(P("a1 a2"), 2), P("a1'' a2 + 2 a1' a2' + a1 a2''"));
    DiffPoly f = P("3 a1' a2 - a1 a2''");
    EXPECT_EQ(derive_power(f, 0), f);
    EXPECT_EQ(derive_power(P("a1"), 3), P("a1^(3)"));
}

TEST(DiffPoly, PermuteExamples) {
    EXPECT_EQ(permute(P("a1' a2"), Permutation{1, 0}), P("a1 a2'"));
    DiffPoly f = P("a1 a2' - 2 a1'' a2");
    EXPECT_EQ(permute(f, identity_permutation(2)), f);
    // cycle 1->2->3->1: old label k becomes sigma[k]
    EXPECT_EQ(permute(P("a1 a2' a3''"), Permutation{1, 2, 0}), P("a1'' a2 a3'"));
    EXPECT_THROW(permute(f, Permutation{0, 1, 2}), ArityError);
}

TEST(DiffPoly, Grading) {
    auto g = grading(P("a1 a2' a3'"));
    EXPECT_EQ(g.arity, 3u);
    EXPECT_EQ(g.weights, (std::set<int>{2}));
    EXPECT_EQ(grading(P("a1' a2 + a1'' a2'")).weights, (std::set<int>{1, 3}));
    EXPECT_TRUE(grading(DiffPoly(4)).weights.empty());
    EXPECT_EQ(grading(DiffPoly(4)).arity, 4u);
}

TEST(DiffPoly, ZeroCoefficientsAreDropped) {
    DiffPoly f = P("a1' a2 - a1' a2");
    EXPECT_TRUE(f.is_zero());
    EXPECT_EQ(f.arity(), 2u);
    EXPECT_THROW(DiffPoly(0), ArityError);
    EXPECT_THROW(f.add_term(Monomial{1}, 1), ArityError);
}

class DiffPolyProperties : public ::testing::Test {
protected:
    gen::Rng rng{2024};
};

TEST_F(DiffPolyProperties, Leibniz) {
    for (int i = 0; i < 200; ++i) {
        DiffPoly f = gen::random_poly(rng, 1 + rng() % 3, 3, 4), g = gen::random_poly(rng, 1 + rng() % 3, 3, 4);
        EXPECT_EQ(derive(mul(f, g)), mul(derive(f), g) + mul(f, derive(g)));
    }
}

// oracle: iterate derive s times
TEST_F(DiffPolyProperties, DerivePowerIsIteratedDerive) {
    for (int i = 0; i < 100; ++i) {
        DiffPoly f = gen::random_poly(rng, 1 + rng() % 3, 3, 4);
        DiffPoly it = f;
        for (int s = 0; s <= 5; ++s) {
            EXPECT_EQ(derive_power(f, s), it);
            it = derive(it);
        }
    }
}

TEST_F(DiffPolyProperties, DeriveRaisesWeightByOne) {
    for (int i = 0; i < 100; ++i) {
        DiffPoly f = gen::random_poly(rng, 1 + rng() % 4, 3, 4);
        std::set<int> expected;
        for (const auto &[m, c] : f.terms()) expected.insert(m.weight() + 1);
        DiffPoly df = derive(f);
        for (const auto &[m, c] : df.terms()) EXPECT_TRUE(expected.count(m.weight()));
    }
}

TEST_F(DiffPolyProperties, MulCommutesUpToBlockSwap) {
    for (int i = 0; i < 100; ++i) {
        std::size_t m = 1 + rng() % 3, n = 1 + rng() % 3;
        DiffPoly f = gen::random_poly(rng, m, 3, 3), g = gen::random_poly(rng, n, 3, 3);
        Permutation swap(m + n);
        for (std::size_t k = 0; k < n; ++k) swap[k] = m + k;  // g's arguments move behind f's
        for (std::size_t k = 0; k < m; ++k) swap[n + k] = k;
        EXPECT_EQ(permute(mul(g, f), swap), mul(f, g));
    }
}

TEST_F(DiffPolyProperties, PermuteIsRightAction) {
    for (int i = 0; i < 100; ++i) {
        std::size_t n = 1 + rng() % 5;
        DiffPoly f = gen::random_poly(rng, n, 3, 4);
        Permutation s = gen::random_permutation(rng, n), t = gen::random_permutation(rng, n);
        EXPECT_EQ(permute(permute(f, s), t), permute(f, compose(t, s)));
    }
}

TEST_F(DiffPolyProperties, IntegerInputsGiveIntegerOutputs) {
    for (int i = 0; i < 100; ++i) {
        DiffPoly f(2 + rng() % 2), g(1 + rng() % 2);
        for (int k = 0; k < 3; ++k) {
            f.add_term(gen::random_monomial(rng, f.arity(), 3), static_cast<int>(rng() % 7) - 3);
            g.add_term(gen::random_monomial(rng, g.arity(), 3), static_cast<int>(rng() % 7) - 3);
        }
        DiffPoly fg = mul(f, g), d3 = derive_power(f, 3);
        for (const auto &[m, c] : fg.terms()) EXPECT_TRUE(c.is_integer());
        for (const auto &[m, c] : d3.terms()) EXPECT_TRUE(c.is_integer());
    }
}
