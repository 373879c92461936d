#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qtower/conic.hpp"

using namespace qtower;

namespace {

bool on_conic(i64 a, i64 b, i64 c, i64 d1, i64 d2) { return a * a == b * b * d1 + c * c * d2; }

} // namespace

TEST(Conic, KnownPointsSatisfyTheirEquations)
{
    EXPECT_TRUE(on_conic(5, 1, 1, 8, 17));
    EXPECT_TRUE(on_conic(9, 1, 2, 61, 5));
    EXPECT_TRUE(on_conic(383, 1, 26, -3, 217));
    EXPECT_EQ(16 * 13 - 225 * 5, -917);
}

TEST(Conic, SolverFindsPrimitivePoints)
{
    for (auto [d1, d2] : std::vector<std::pair<i64, i64>>{{8, 17}, {61, 5}, {-3, 217}, {41, 5}}) {
        auto s = solve_conic(d1, d2);
        EXPECT_TRUE(s.satisfied()) << d1 << " " << d2;
        EXPECT_TRUE(s.primitive());
        EXPECT_GT(s.a, 0);
        EXPECT_NE(s.c, 0);
    }
    auto s = solve_conic(8, 17);
    EXPECT_EQ(s.a, 5);
    EXPECT_EQ(s.b, 1);
    EXPECT_EQ(s.c, 1);
}

TEST(Conic, InsolubleIsReported)
{
    // x^2 = 3 y^2 + 3 z^2 fails at 3; x^2 = -y^2 - z^2 fails at infinity
    try {
        solve_conic(3, 3);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::insoluble);
    }
    try {
        solve_conic(-1, -1);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::insoluble);
    }
    EXPECT_THROW(solve_conic(0, 5), error);
}

// soluble exactly when every local symbol is +1; a small search then finds a point
TEST(Conic, AgreesWithLocalSymbols)
{
    for (i64 d1 = -30; d1 <= 30; ++d1)
        for (i64 d2 = -30; d2 <= 30; ++d2) {
            if (d1 == 0 || d2 == 0) continue;
            bool local = oracle::is_local_norm_everywhere(d1, d2);
            if (!local) {
                EXPECT_THROW(solve_conic(d1, d2), error) << d1 << " " << d2;
                continue;
            }
            auto s = solve_conic(d1, d2);
            ASSERT_TRUE(s.satisfied()) << d1 << " " << d2;
            ASSERT_TRUE(s.primitive());
        }
}

// nearest point of (-3, 217) is (29, 3, 2)
TEST(Conic, BoundExhaustion)
{
    EXPECT_NO_THROW(solve_conic(-3, 217, 3));
    try {
        solve_conic(-3, 217, 2);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::no_solution);
    }
}

TEST(Alpha, NormAndSign)
{
    auto s = solve_conic(8, 17);
    auto al = build_alpha(s, 17, 8, -3, SignRule::force_positive);
    EXPECT_EQ(al.norm(), 8);
    EXPECT_EQ(al.alpha_sign, 1);
    EXPECT_EQ(al.conj_sign, 1); // 5 - sqrt 17 > 0
    auto neg = build_alpha(s, 17, 8, -3, SignRule::force_negative);
    EXPECT_EQ(neg.alpha_sign, -1);
    EXPECT_EQ(neg.gamma_factor, 1);
    EXPECT_EQ(al.gamma_factor, -3);
    EXPECT_TRUE(alpha_non_normal(al));
}

TEST(Alpha, SignRuleFromH2)
{
    auto s = solve_conic(8, 17);
    EXPECT_LT(build_alpha(s, 17, 8, -3, SignRule::from_h2, 2).a, 0);
    EXPECT_GT(build_alpha(s, 17, 8, -3, SignRule::from_h2, 4).a, 0);
    EXPECT_THROW(build_alpha(s, 17, 8, -3, SignRule::from_h2), error);
    EXPECT_THROW(build_alpha(s, 17, 8, -3, SignRule::from_h2, 1), error);
    EXPECT_THROW(build_alpha(s, 5, 8, -3, SignRule::force_positive), error);
}

TEST(H8, Example)
{
    auto mu = solve_h8(13, 5, 917);
    EXPECT_TRUE(mu.satisfied());
    EXPECT_EQ(mu.x1, 4);
    EXPECT_EQ(mu.x2, 15);
    EXPECT_EQ(mu.x3, 1);
    EXPECT_EQ(mu.p, 5);
    EXPECT_EQ(mu.s * mu.s + mu.t * mu.t, 5);
    EXPECT_EQ(mu.u2.norm, -1);
}

TEST(H8, HypothesisChecks)
{
    EXPECT_THROW(solve_h8(13, 5, 7), error);
    EXPECT_THROW(solve_h8(0, 5, 917), error);
}
