#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qtower/units.hpp"

using namespace qtower;

TEST(FundamentalUnit, Examples)
{
    auto u5 = fundamental_unit(5);
    EXPECT_EQ(u5.x, 1);
    EXPECT_EQ(u5.y, 1);
    EXPECT_EQ(u5.norm, -1);
    auto u12 = fundamental_unit(12);
    EXPECT_EQ(u12.x, 4); // (4 + 2 sqrt 3)/2 = 2 + sqrt 3
    EXPECT_EQ(u12.norm, 1);
    auto u40 = fundamental_unit(40);
    EXPECT_EQ(u40.x, 6);
    EXPECT_EQ(u40.y, 1);
    EXPECT_EQ(u40.norm, -1);
    EXPECT_THROW(fundamental_unit(-4), error);
    EXPECT_THROW(fundamental_unit(16), error);
}

TEST(FundamentalUnit, CapIsEnforced)
{
    try {
        fundamental_unit(19176, 2);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::bound_exceeded);
    }
}

// smallest solution of x^2 - d y^2 = +-4 by direct search
TEST(FundamentalUnit, MatchesPellBruteForce)
{
    int checked = 0;
    for (i64 d = 5; d <= 1000; ++d) {
        if (!oracle::is_fundamental(d)) continue;
        auto u = fundamental_unit(d);
        if (u.y > 200000) continue;
        auto b = oracle::pell_brute(d, 200000);
        ASSERT_TRUE(b.has_value()) << d;
        EXPECT_EQ(u.x, b->first) << d;
        EXPECT_EQ(u.y, b->second) << d;
        EXPECT_EQ(u.norm, oracle::unit_norm(d)) << d;
        ++checked;
    }
    EXPECT_GT(checked, 200);
}

TEST(FundamentalUnit, IdentityHoldsUpTo10000)
{
    for (i64 d = 5; d <= 10000; ++d) {
        if (!oracle::is_fundamental(d)) continue;
        auto u = fundamental_unit(d);
        mpz_class n = u.x * u.x - d * u.y * u.y;
        ASSERT_EQ(n, 4 * u.norm) << d;
        ASSERT_GT(u.x, 0);
        ASSERT_GT(u.y, 0);
        ASSERT_EQ(u.norm, oracle::unit_norm(d)) << d;
    }
}

TEST(Delta, Examples)
{
    EXPECT_EQ(delta_invariant(fundamental_unit(12)).delta, 6);
    try {
        delta_invariant(fundamental_unit(5));
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::norm_minus_one);
    }
}

TEST(Delta, GenusPositive)
{
    for (i64 d = 5; d <= 6000; ++d) {
        if (!oracle::is_fundamental(d)) continue;
        auto u = fundamental_unit(d);
        if (u.norm != 1) continue;
        i64 delta = delta_invariant(u).delta;
        ASSERT_TRUE(oracle::is_local_norm_everywhere(delta, d)) << d << " delta " << delta;
    }
}

TEST(SqrtUnit, TwelveAndTwentyOne)
{
    auto s = sqrt_unit_decomposition(fundamental_unit(12));
    EXPECT_EQ(s.lemma, LemmaCase::p);
    EXPECT_EQ(s.u, 6);
    EXPECT_EQ(s.v, 2);
    EXPECT_EQ(abs(s.a), 1);
    EXPECT_EQ(abs(s.b), 1);
    EXPECT_EQ(s.denom, 2);
    EXPECT_EQ(s.relative_norm(), 1);

    auto t = sqrt_unit_decomposition(fundamental_unit(21));
    EXPECT_EQ(t.lemma, LemmaCase::pq);
    EXPECT_EQ(t.u, 3);
    EXPECT_EQ(t.v, 7);
    EXPECT_EQ(t.relative_norm(), -1);
}

namespace {

// (a sqrt u + b sqrt v)^2 / denom^2 == (x + y sqrt d)/2
void expect_squares_back(const SqrtUnitDecomposition& s, const QuadUnit& e)
{
    mpz_class dd = s.denom * s.denom;
    EXPECT_EQ(2 * (s.a * s.a * s.u + s.b * s.b * s.v), dd * e.x) << e.d;
    EXPECT_EQ(16 * s.a * s.a * s.b * s.b * s.u * s.v, dd * dd * e.y * e.y * e.d) << e.d;
}

} // namespace

// sqrt(eps_p) = (a sqrt(2p) + b sqrt 2)/2, (a^2 p - b^2)/2 = -(-p/2)
TEST(LemmaSix, PrimeCase)
{
    int n = 0;
    for (i64 p = 3; p < 500; p += 4) {
        if (!oracle::is_prime(p)) continue;
        auto e = fundamental_unit(4 * p);
        auto s = sqrt_unit_decomposition(e);
        ASSERT_EQ(s.lemma, LemmaCase::p);
        expect_squares_back(s, e);
        ASSERT_EQ(s.u, 2 * p);
        ASSERT_EQ(s.v, 2);
        EXPECT_EQ(s.denom, 2);
        EXPECT_TRUE(s.a % 2 != 0 && s.b % 2 != 0) << p;
        mpz_class lhs = s.a * s.a * p - s.b * s.b;
        EXPECT_EQ(lhs, -2 * oracle::kronecker(-p, 2)) << p;
        ++n;
    }
    EXPECT_EQ(n, 50);
}

// sqrt(eps_2p) = a sqrt 2 + b sqrt p, 2a^2 - b^2 p = (2/p)
TEST(LemmaSix, TwoPCase)
{
    for (i64 p = 3; p < 500; p += 4) {
        if (!oracle::is_prime(p)) continue;
        auto e = fundamental_unit(8 * p);
        auto s = sqrt_unit_decomposition(e);
        ASSERT_EQ(s.lemma, LemmaCase::two_p);
        expect_squares_back(s, e);
        ASSERT_EQ(s.u, 2);
        ASSERT_EQ(s.v, p);
        ASSERT_EQ(s.denom, 1);
        mpz_class lhs = 2 * s.a * s.a - s.b * s.b * p;
        EXPECT_EQ(lhs, oracle::legendre(2, p)) << p;
    }
}

// sqrt(eps_pq) = (a sqrt p + b sqrt q)/2, (a^2 p - b^2 q)/4 = (p/q)
TEST(LemmaSix, PairCase)
{
    int n = 0;
    for (i64 p = 3; p < 200; p += 4) {
        if (!oracle::is_prime(p)) continue;
        for (i64 q = p + 4; q < 200; q += 4) {
            if (!oracle::is_prime(q)) continue;
            auto e = fundamental_unit(p * q);
            auto s = sqrt_unit_decomposition(e);
            ASSERT_EQ(s.lemma, LemmaCase::pq);
            expect_squares_back(s, e);
            ASSERT_EQ(s.u, p);
            ASSERT_EQ(s.v, q);
            mpz_class lhs = s.a * s.a * p - s.b * s.b * q;
            EXPECT_EQ(lhs, s.denom * s.denom * oracle::legendre(p, q))
                << p << " " << q;
            ++n;
        }
    }
    EXPECT_GT(n, 150);
}

TEST(SignTable, ConjugateSigns)
{
    auto s = sqrt_unit_decomposition(fundamental_unit(12));
    std::vector<std::vector<TwoTerm>> units{{as_term(s)}};
    std::vector<Embedding> embs{{{2, 1}, {3, 1}}, {{2, 1}, {3, -1}}};
    auto tab = conjugate_sign_table(units, embs);
    ASSERT_EQ(tab.size(), 1u);
    EXPECT_EQ(tab[0][0], 1);
    EXPECT_EQ(tab[0][1], -1);
}

// Q(sqrt 2, sqrt 3): all three subfields have class number 1 and K has class number 1,
// so q h1 h2 h3 / 4 = 1 forces q = 4
TEST(Kubota, ClassNumberOneBiquadratic)
{
    EXPECT_EQ(kubota_index(2, 3), 4);
}

// Q(sqrt 2, sqrt 5): h(10) = 2 so q is even; all three units have norm -1 so no product
// of two is totally positive in every conjugate pair and q <= 2
TEST(Kubota, NormMinusOneBiquadratic)
{
    EXPECT_EQ(kubota_index(2, 5), 2);
}

TEST(Kubota, PowerOfTwoAndBounded)
{
    for (i64 m1 : {2, 3, 5, 7, 13})
        for (i64 m2 : {6, 11, 17, 21, 29}) {
            i64 q = kubota_index(m1, m2);
            EXPECT_TRUE(q >= 1 && q <= 8 && (q & (q - 1)) == 0) << m1 << " " << m2;
        }
    i64 q8 = kubota_index(2, 3, 5);
    EXPECT_TRUE(q8 >= 1 && q8 <= 128 && (q8 & (q8 - 1)) == 0);
}

TEST(MultiquadraticH2, Formula)
{
    EXPECT_EQ(multiquadratic_h2({1, 1, 1}, 4, 4), 1);
    EXPECT_EQ(multiquadratic_h2({2, 2, 2}, 2, 4), 4);
    EXPECT_EQ(multiquadratic_h2({1, 1, 1, 1, 1, 2, 2}, 128, 8), 1);
    EXPECT_THROW(multiquadratic_h2({1, 1, 1}, 2, 4), error);
    EXPECT_THROW(multiquadratic_h2({1, 1}, 4, 4), error);
}
