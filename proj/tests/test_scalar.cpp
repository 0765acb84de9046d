#include <gtest/gtest.h>

#include <climits>

#include "support.hpp"

using namespace novops;

TEST(Scalar, CanonicalForm) {
    EXPECT_EQ(Scalar(2, 4), Scalar(1, 2));
    EXPECT_EQ(Scalar(3, -6).to_string(), "-1/2");
    EXPECT_EQ(Scalar(-4, 2).to_string(), "-2");
    EXPECT_TRUE(Scalar(0, 5).is_zero());
    EXPECT_THROW(Scalar(1, 0), std::domain_error);
}

TEST(Scalar, Parse) {
    EXPECT_EQ(Scalar::parse("3/2"), Scalar(3, 2));
    EXPECT_EQ(Scalar::parse("-7"), Scalar(-7));
    EXPECT_EQ(Scalar::parse("10/4").to_string(), "5/2");
    EXPECT_EQ(Scalar::parse("123456789012345678901234567890").to_string(), "123456789012345678901234567890");
    EXPECT_THROW(Scalar::parse("1/0"), std::exception);
    EXPECT_THROW(Scalar::parse("abc"), std::exception);
}

TEST(Scalar, OverflowPromotesToExact) {
    Scalar big(LLONG_MAX);
    Scalar sum = big + big;
    EXPECT_EQ(sum.to_mpq(), mpq_class(mpz_class(std::to_string(LLONG_MAX)) * 2));
    Scalar back = sum - big;
    EXPECT_EQ(back, big);
    Scalar prod = big * big;
    EXPECT_EQ(prod / big, big);
    EXPECT_EQ(Scalar(LLONG_MIN).to_mpq(), mpq_class(mpz_class(std::to_string(LLONG_MIN))));
    EXPECT_EQ(-Scalar(LLONG_MIN), Scalar(mpz_class(mpz_class(std::to_string(LLONG_MIN)) * -1)));
}

// Randomized agreement with GMP rationals, including values near the fast-path limits.
TEST(Scalar, AgreesWithGmp) {
    gen::Rng rng(7);
    std::uniform_int_distribution<long long> small(-1000, 1000), huge(LLONG_MIN / 2, LLONG_MAX / 2);
    for (int i = 0; i < 5000; ++i) {
        auto draw = [&] { return (i % 3 == 0) ? huge(rng) : small(rng); };
        long long an = draw(), ad = draw(), bn = draw(), bd = draw();
        if (ad == 0 || bd == 0) continue;
        Scalar a(an, ad), b(bn, bd);
        mpq_class qa = a.to_mpq(), qb = b.to_mpq();
        EXPECT_EQ((a + b).to_mpq(), qa + qb);
        EXPECT_EQ((a - b).to_mpq(), qa - qb);
        EXPECT_EQ((a * b).to_mpq(), qa * qb);
        if (!b.is_zero()) { EXPECT_EQ((a / b).to_mpq(), qa / qb); }
        EXPECT_EQ(a < b, qa < qb);
        EXPECT_EQ(a == b, qa == qb);
    }
}

TEST(Scalar, ParseIsDecimal) {
    EXPECT_EQ(Scalar::parse("010"), Scalar(10));
    EXPECT_EQ(Scalar::parse("09/03"), Scalar(3));
    EXPECT_EQ(parse_diff("09 a1"), DiffPoly(Monomial{0}, Scalar(9)));
}
