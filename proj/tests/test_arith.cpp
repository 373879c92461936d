#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qtower/arith.hpp"

using namespace qtower;

TEST(Kronecker, AgreesWithEulerCriterionOracle)
{
    for (i64 a = -200; a <= 200; ++a)
        for (i64 n = -200; n <= 200; ++n) {
            if (a == 0 && n == 0) continue;
            ASSERT_EQ(kronecker(a, n), oracle::kronecker(a, n)) << a << " " << n;
        }
}

TEST(Kronecker, SpecialValues)
{
    EXPECT_EQ(kronecker(2, 7), 1);
    EXPECT_EQ(kronecker(2, 3), -1);
    EXPECT_EQ(kronecker(-1, 7), -1);
    EXPECT_EQ(kronecker(5, 0), 0);
    EXPECT_EQ(kronecker(-1, 0), 1);
    EXPECT_EQ(kronecker(-3, -1), -1);
    EXPECT_THROW(kronecker(0, 0), error);
}

TEST(Kronecker, QuadraticReciprocityForOddPrimes)
{
    for (i64 p = 3; p < 300; p += 2) {
        if (!oracle::is_prime(p)) continue;
        for (i64 q = p + 2; q < 300; q += 2) {
            if (!oracle::is_prime(q)) continue;
            int sign = (p % 4 == 3 && q % 4 == 3) ? -1 : 1;
            EXPECT_EQ(kronecker(p, q) * kronecker(q, p), sign);
        }
    }
}

TEST(Primality, MatchesTrialDivision)
{
    for (i64 n = 0; n < 20000; ++n) ASSERT_EQ(is_prime(static_cast<u64>(n)), oracle::is_prime(n)) << n;
    EXPECT_TRUE(is_prime(2305843009213693951ULL));
    EXPECT_FALSE(is_prime(3215031751ULL)); // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(Factor, IntegerFactorization)
{
    auto f = factor_integer(19176);
    std::vector<std::pair<i64, int>> want{{2, 3}, {3, 1}, {17, 1}, {47, 1}};
    EXPECT_EQ(f, want);
    EXPECT_THROW(factor_integer(0), error);
}

TEST(Factor, BoundIsEnforced)
{
    i64 big = 1000003LL * 1000033LL;
    EXPECT_THROW(factor_integer(big, 1000), error);
}

TEST(Discriminant, Fundamental)
{
    for (i64 d = -3000; d <= 3000; ++d) ASSERT_EQ(is_fundamental_discriminant(d), oracle::is_fundamental(d)) << d;
}

TEST(Discriminant, FactorsSortedByAbsoluteValue)
{
    auto f = factor_discriminant(19176);
    EXPECT_EQ(f.factors, (std::vector<i64>{-3, 8, 17, -47}));
    auto g = factor_discriminant(19964);
    EXPECT_EQ(g.factors, (std::vector<i64>{-4, -7, -23, -31}));
    EXPECT_EQ(factor_discriminant(-84).factors, (std::vector<i64>{-3, -4, -7}));
    EXPECT_THROW(factor_discriminant(12 * 9), error);
}

TEST(Discriminant, ProductOfFactorsIsInput)
{
    for (i64 d = -5000; d <= 5000; ++d) {
        if (!oracle::is_fundamental(d)) continue;
        i64 prod = 1;
        for (i64 f : factor_discriminant(d).factors) {
            EXPECT_TRUE(is_prime_discriminant(f));
            prod *= f;
        }
        ASSERT_EQ(prod, d);
    }
}

TEST(Discriminant, SumOfTwoSquares)
{
    EXPECT_TRUE(is_sum_of_two_squares(5 * 13 * 4));
    EXPECT_FALSE(is_sum_of_two_squares(19176));
    for (i64 n = 1; n < 2000; ++n) {
        bool brute = false;
        for (i64 a = 0; a * a <= n && !brute; ++a) {
            i64 r = n - a * a, b = static_cast<i64>(std::sqrt(static_cast<double>(r)));
            while (b * b > r) --b;
            while ((b + 1) * (b + 1) <= r) ++b;
            brute = b * b == r;
        }
        ASSERT_EQ(is_sum_of_two_squares(n), brute) << n;
    }
}

TEST(TwoSquares, CornacchiaGivesOddSecondPart)
{
    for (i64 p = 5; p < 5000; p += 4) {
        if (!oracle::is_prime(p)) continue;
        auto [s, t] = two_square_decomposition(p);
        EXPECT_EQ(s * s + t * t, p);
        EXPECT_EQ(t % 2, 1);
    }
}

TEST(Hilbert, AgreesWithOracleAndProductFormula)
{
    std::vector<i64> vals;
    for (i64 v = -60; v <= 60; ++v)
        if (v != 0) vals.push_back(v);
    for (i64 a : vals)
        for (i64 b : vals) {
            int prod = hilbert_symbol(a, b, 0);
            ASSERT_EQ(prod, oracle::hilbert(a, b, 0));
            for (i64 p : oracle::prime_factors(2 * a * b)) {
                int h = hilbert_symbol(a, b, p);
                ASSERT_EQ(h, oracle::hilbert(a, b, p)) << a << " " << b << " " << p;
                prod *= h;
            }
            ASSERT_EQ(prod, 1) << a << " " << b;
        }
}

TEST(Squarefree, Kernel)
{
    EXPECT_EQ(squarefree_kernel(72), 2);
    EXPECT_EQ(squarefree_kernel(-75), -3);
    EXPECT_EQ(squarefree_kernel(1), 1);
}
