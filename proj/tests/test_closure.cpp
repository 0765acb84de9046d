#include <gtest/gtest.h>

#include <filesystem>

#include "support.hpp"

using namespace novops;

static DiffPoly P(const char *s) { return parse_diff(s); }

TEST(Closure, FullDimension) {
    EXPECT_EQ(full_component_dimension(2, 1), 2);
    EXPECT_EQ(full_component_dimension(3, 2), 6);
    EXPECT_EQ(full_component_dimension(5, 0), 1);
}

TEST(Closure, CdiffExamples) {
    auto s = ideal_component_cdiff({P("a1'")}, 2, 1);
    EXPECT_EQ(s.dimension(), 2u);
    EXPECT_TRUE(s.full());

    auto t = ideal_component_cdiff({P("a1' a2 + a1 a2'")}, 2, 2);
    EXPECT_EQ(t.dimension(), 2u);
    EXPECT_TRUE(t.contains(P("a1'' a2 + a1' a2'")));
    EXPECT_TRUE(t.contains(P("a1' a2' + a1 a2''")));
    EXPECT_FALSE(t.contains(P("a1' a2'")));

    EXPECT_EQ(ideal_component_cdiff({}, 3, 2).dimension(), 0u);
}

TEST(Closure, MemberExamples) {
    auto t = ideal_component_cdiff({P("a1' a2 + a1 a2'")}, 2, 2);
    EXPECT_FALSE(member(P("a1' a2'"), t).member);
    Membership m = member(P("a1'' a2 + 2 a1' a2' + a1 a2''"), t);
    ASSERT_TRUE(m.member);
    DiffPoly back(2);
    auto basis = t.basis();
    for (std::size_t i = 0; i < basis.size(); ++i) back += basis[i] * m.coordinates[i];
    EXPECT_EQ(back, P("a1'' a2 + 2 a1' a2' + a1 a2''"));
    Membership z = member(DiffPoly(2), t);
    EXPECT_TRUE(z.member);
    EXPECT_EQ(z.coordinates, (std::vector<Scalar>{0, 0}));
    Membership g = member(P("a1' a2"), t);
    EXPECT_FALSE(g.member);
    EXPECT_NE(g.note.find("grading mismatch"), std::string::npos);
}

TEST(Closure, NovIdealExamples) {
    DiffPoly comm = P("a1 a2' - a1' a2");
    auto s3 = ideal_component_nov({comm}, 3);
    EXPECT_TRUE(s3.contains(expand_nov_term(parse_nov("(x1 o x2) o x3 - (x2 o x1) o x3"))));
    auto s5 = ideal_component_nov({P("- a1 a2 a3''")}, 5);
    EXPECT_TRUE(s5.contains(P("a1 a2 a3'' a4 a5''")));
    EXPECT_EQ(ideal_component_nov({}, 4).dimension(), 0u);
    EXPECT_THROW(ideal_component_nov({P("a1' a2'")}, 3), ModeError);
}

TEST(Closure, BimoduleExamples) {
    auto s = bimodule_component({P("a1' a2'")}, 2, 2);
    EXPECT_EQ(s.dimension(), 1u);
    EXPECT_TRUE(s.contains(P("a1' a2'")));
    EXPECT_FALSE(bimodule_component({P("a1'' a2''")}, 2, 2).contains(P("a1' a2'")));
}

TEST(Closure, Bounds) {
    EXPECT_THROW(ideal_component_cdiff({P("a1'")}, 10, 1), BoundError);
    EXPECT_THROW(ideal_component_cdiff({P("a1'")}, 2, 10), BoundError);
    EXPECT_NO_THROW(ideal_component_cdiff({P("a1'")}, 10, 1, Bounds{10, 9}));
}

class ClosureProperties : public ::testing::Test {
protected:
    gen::Rng rng{5};
};

TEST_F(ClosureProperties, Monotonicity) {
    for (int i = 0; i < 10; ++i) {
        DiffPoly g1 = gen::random_homogeneous(rng, 2, 1 + rng() % 2, 2);
        DiffPoly g2 = gen::random_homogeneous(rng, 1 + rng() % 2, 1 + rng() % 2, 2);
        for (std::size_t n = 2; n <= 3; ++n)
            for (int w = 1; w <= 3; ++w) {
                auto small = ideal_component_cdiff({g1}, n, w);
                auto big = ideal_component_cdiff({g1, g2}, n, w);
                for (const auto &b : small.basis()) EXPECT_TRUE(big.contains(b));
            }
    }
}

TEST_F(ClosureProperties, FixpointSoundnessCdiff) {
    for (int i = 0; i < 5; ++i) {
        DiffPoly g = gen::random_homogeneous(rng, 2, 1 + rng() % 2, 2);
        ClosureEngine e(ClosureMode::cdiff_ideal, {g});
        for (std::size_t n = 2; n <= 3; ++n)
            for (int w = 1; w <= 3; ++w)
                for (const auto &v : e.component(n, w).basis()) {
                    EXPECT_TRUE(e.component(n + 1, w).contains(mul(v, variable())));
                    EXPECT_TRUE(e.component(n, w + 1).contains(derive(v)));
                    for (std::size_t k = 0; k < n; ++k) {
                        EXPECT_TRUE(e.component(n + 1, w).contains(compose(v, k, product_generator())));
                        EXPECT_TRUE(e.component(n, w + 1).contains(compose(v, k, derivation_generator())));
                    }
                    EXPECT_TRUE(e.component(n, w).contains(permute(v, gen::random_permutation(rng, n))));
                }
    }
}

TEST_F(ClosureProperties, FixpointSoundnessNov) {
    for (ClosureMode mode : {ClosureMode::nov_ideal, ClosureMode::nov_bimodule}) {
        DiffPoly g = gen::random_novikov(rng, 3, 3);
        ClosureEngine e(mode, {g});
        for (std::size_t n = 3; n <= 5; ++n) {
            const int w = static_cast<int>(n) - 1;
            for (const auto &v : e.component(n, w).basis()) {
                EXPECT_TRUE(e.component(n + 1, w + 1).contains(novikov_product(v, variable())));
                EXPECT_TRUE(e.component(n + 1, w + 1).contains(novikov_product(variable(), v)));
                for (std::size_t k = 0; k < n; ++k) EXPECT_TRUE(e.component(n + 1, w + 1).contains(compose(v, k, novikov_generator())));
            }
        }
    }
}

TEST_F(ClosureProperties, NovIdealInsideCdiffIdeal) {
    for (int i = 0; i < 5; ++i) {
        DiffPoly g = gen::random_novikov(rng, 2 + rng() % 2, 2);
        for (std::size_t n = 2; n <= 5; ++n) {
            auto nov = ideal_component_nov({g}, n);
            auto cd = ideal_component_cdiff({g}, n, static_cast<int>(n) - 1);
            for (const auto &b : nov.basis()) EXPECT_TRUE(cd.contains(b));
        }
    }
}

TEST_F(ClosureProperties, BasisIndependentOfGeneratorOrder) {
    for (int i = 0; i < 5; ++i) {
        DiffPoly a = gen::random_homogeneous(rng, 2, 2, 2), b = gen::random_homogeneous(rng, 3, 1, 2);
        for (ClosureMode mode : {ClosureMode::cdiff_ideal, ClosureMode::nov_bimodule}) {
            ClosureEngine e1(mode, {a, b}), e2(mode, {b, a});
            EXPECT_EQ(e1.component(4, 3).basis(), e2.component(4, 3).basis());
        }
    }
}

TEST_F(ClosureProperties, DimensionAtMostFull) {
    DiffPoly g = gen::random_homogeneous(rng, 2, 1, 2);
    ClosureEngine e(ClosureMode::cdiff_ideal, {g});
    for (std::size_t n = 1; n <= 4; ++n)
        for (int w = 0; w <= 4; ++w) EXPECT_LE(mpz_class(static_cast<unsigned long>(e.component(n, w).dimension())), full_component_dimension(n, w));
}

TEST(Closure, HeterogeneousGeneratorsAreSplit) {
    ClosureEngine e(ClosureMode::cdiff_ideal, {P("a1' a2 + a1 a2 + a1'' a2''")});
    EXPECT_EQ(e.layers().size(), 3u);
}

TEST(Closure, DiskCacheIsTransparent) {
    auto dir = std::filesystem::temp_directory_path() / "novops-cache-test";
    std::filesystem::remove_all(dir);
    std::vector<DiffPoly> gens{P("a1 a2' - a1' a2")};
    ClosureEngine plain(ClosureMode::nov_bimodule, gens);
    plain.set_cache_dir(std::nullopt);
    ClosureEngine writer(ClosureMode::nov_bimodule, gens), reader(ClosureMode::nov_bimodule, gens);
    writer.set_cache_dir(dir);
    reader.set_cache_dir(dir);
    auto expected = plain.component(4, 3).basis();
    EXPECT_EQ(writer.component(4, 3).basis(), expected);
    EXPECT_FALSE(std::filesystem::is_empty(dir));
    EXPECT_EQ(reader.component(4, 3).basis(), expected);
    std::filesystem::remove_all(dir);
}
