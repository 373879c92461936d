#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qtower/qform.hpp"

using namespace qtower;

TEST(ClassGroup, SmallStructures)
{
    EXPECT_EQ(class_group(-23, true).elementary_divisors, (std::vector<i64>{3}));
    EXPECT_EQ(class_group(40, false).elementary_divisors, (std::vector<i64>{2}));
    EXPECT_EQ(two_part(class_group(19176, false).elementary_divisors), (std::vector<i64>{2, 2}));
    EXPECT_EQ(class_group(-4, true).order(), 1);
    EXPECT_EQ(class_group(-84, true).elementary_divisors, (std::vector<i64>{2, 2}));
}

TEST(ClassGroup, NarrowDoublesWithoutNormMinusOne)
{
    EXPECT_EQ(class_number(12, false), 1);
    EXPECT_EQ(class_number(12, true), 2);
    EXPECT_EQ(class_number(5, true), 1);
    EXPECT_EQ(class_group(19176, true).elementary_divisors, (std::vector<i64>{2, 2, 2}));
}

TEST(ClassGroup, RejectsBadInput)
{
    EXPECT_THROW(class_group(16, false), error);
    EXPECT_THROW(class_group(15, false), error);
    EXPECT_THROW(class_group(0, false), error);
}

TEST(ClassGroup, CompositionIsAGroupLaw)
{
    for (i64 d : {-3299, -4027, 1345, 19176}) {
        auto g = class_group(d, true);
        int n = static_cast<int>(g.class_representatives.size());
        int e = g.identity();
        for (int a = 0; a < n; ++a) {
            EXPECT_EQ(g.multiply(a, e), a);
            for (int b = 0; b < n; ++b) {
                EXPECT_EQ(g.multiply(a, b), g.multiply(b, a));
                for (int c = 0; c < n; c += 3) EXPECT_EQ(g.multiply(g.multiply(a, b), c), g.multiply(a, g.multiply(b, c)));
            }
        }
    }
}

TEST(ClassGroup, ReducedFormsHaveRightDiscriminant)
{
    for (i64 d : {-23, -84, -3299, 40, 229, 19176}) {
        for (const auto& f : class_group(d, true).class_representatives) EXPECT_EQ(f.b * f.b - 4 * f.a * f.c, d);
    }
}

// Every fundamental discriminant with |d| <= 10^4 against the analytic class number formula
TEST(ClassGroup, AnalyticOracleSweep)
{
    int checked = 0;
    for (i64 d = -10000; d <= 10000; ++d) {
        if (!oracle::is_fundamental(d)) continue;
        if (d < 0) {
            ASSERT_EQ(class_number(d, true), oracle::class_number_negative(d)) << d;
        } else {
            auto h = oracle::class_number_positive(d);
            ASSERT_TRUE(h.has_value()) << d;
            ASSERT_EQ(class_number(d, false), *h) << d;
            i64 hplus = oracle::unit_norm(d) < 0 ? *h : 2 * *h;
            ASSERT_EQ(class_number(d, true), hplus) << d;
        }
        ++checked;
    }
    EXPECT_EQ(checked, 6086);
}

TEST(Genus, TwoRankIsFactorCountMinusOne)
{
    for (i64 d = -3000; d <= 3000; ++d) {
        if (!oracle::is_fundamental(d)) continue;
        auto g = class_group(d, true);
        i64 rank = 0;
        for (i64 e : g.elementary_divisors)
            if (e % 2 == 0) ++rank;
        ASSERT_EQ(rank, static_cast<i64>(factor_discriminant(d).factors.size()) - 1) << d;
    }
}

TEST(Genus, CharactersAreTrivialOnPrincipalValues)
{
    // the principal form represents 1 and every product of its values
    for (i64 d : {19176L, 27993L, 3948L, 13244L, 6072L}) {
        auto chis = genus_characters(d);
        for (const auto& chi : chis) EXPECT_EQ(chi(1), 1);
        // x^2 - (d/4) y^2 or x^2 + x y - (d-1)/4 y^2
        for (i64 x = 1; x < 40; ++x)
            for (i64 y = 0; y < 40; ++y) {
                i64 v = (d % 4 == 0) ? x * x - (d / 4) * y * y : x * x + x * y - (d - 1) / 4 * y * y;
                if (v == 0 || std::gcd(v, d) != 1) continue;
                for (const auto& chi : chis) ASSERT_EQ(chi(v), 1) << d << " " << v;
            }
    }
}

TEST(C4Splitting, ExampleDiscriminant)
{
    // d = 8 * 17: (8/17) = (17/2) = +1
    auto s = c4_splittings(136);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].delta1 * s[0].delta2, 136);
    EXPECT_TRUE(c4_splittings(8 * 5).empty());
}

TEST(H2, TwoClassNumbers)
{
    EXPECT_EQ(h2(19176), 4);
    EXPECT_EQ(h2(-84), 4);
    EXPECT_EQ(h2(-23), 1);
}
