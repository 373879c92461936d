#include <gtest/gtest.h>

#include "qtower/formulas.hpp"

using namespace qtower;

TEST(Ambiguous, Instances)
{
    EXPECT_EQ(ambiguous_number({1, 0, 1}), 1);
    EXPECT_EQ(ambiguous_number({4, 2, 4}), 8);
    EXPECT_EQ(ambiguous_number({1, 2, 4}), 1);
}

TEST(Ambiguous, Inconsistent)
{
    EXPECT_THROW(ambiguous_number({0, 0, 1}), error);
    EXPECT_THROW(ambiguous_number({1, 0, 2}), error);
    EXPECT_THROW(ambiguous_number({3, 2, 3}), error);
}

TEST(Ambiguous, AlwaysPowerOfTwo)
{
    for (int tf = 0; tf < 10; ++tf)
        for (int ti = 0; ti < 4; ++ti)
            for (i64 idx : {1, 2, 4, 8}) {
                int t = tf + ti;
                if (t < 1 || (i64{1} << (t - 1)) % idx != 0) continue;
                i64 n = ambiguous_number({tf, ti, idx});
                EXPECT_TRUE(is_power_of_two(n));
                EXPECT_EQ(n * idx, i64{1} << (t - 1));
            }
}

// t = 6 for the split case, 5 otherwise
TEST(Ambiguous, RankBySplitting)
{
    EXPECT_EQ(ambiguous_rank(1, 1).t, 7);
    auto a = ambiguous_rank(1, -1);
    EXPECT_EQ(a.t, 6);
    EXPECT_EQ(a.rank, 3);
    auto b = ambiguous_rank(-1, -1);
    EXPECT_EQ(b.t, 5);
    EXPECT_EQ(b.rank, 2);
}

TEST(MainChain, Values)
{
    EXPECT_EQ(main_chain(GType::Qg, 2).value, mpq_class(1, 2));
    EXPECT_EQ(main_chain(GType::D, 4).value, 2);
    EXPECT_EQ(main_chain(GType::S, 1).value, mpq_class(1, 8));
    EXPECT_FALSE(main_chain(GType::Qg, 2).length_at_least_3);
    EXPECT_TRUE(main_chain(GType::S, 4).length_at_least_3);
    EXPECT_THROW(main_chain(GType::D, 0), error);
    EXPECT_THROW(main_chain(GType::V4, 2), error);
}

TEST(MainChain, EllCancels)
{
    for (GType g : {GType::Qg, GType::D, GType::S}) {
        EXPECT_EQ(ell_factor(g) * n_over_k1(g, 1), mpq_class(1, 8));
        for (i64 h = 1; h <= 64; h *= 2) {
            mpq_class want(h * h, 8);
            want.canonicalize();
            EXPECT_EQ(main_chain(g, h).value, want);
        }
    }
}

TEST(Kuroda, Instances)
{
    EXPECT_EQ(kuroda_ratio(kuroda_biquadratic(2, 1, 2, 1)), 1);
    EXPECT_EQ(kuroda_ratio(kuroda_quartic_cm(1, 8)), 4);
    KurodaInput in;
    in.d = 1;
    EXPECT_EQ(kuroda_ratio(in), mpq_class(1, 2));
}

TEST(Kuroda, DegreeEightPrefactor)
{
    KurodaInput in;
    in.d = 8;
    in.kappa = 7;
    in.v = 0;
    EXPECT_EQ(kuroda_ratio(in), mpq_class(1, 2));
    in.v = 1;
    EXPECT_EQ(kuroda_ratio(in), mpq_class(1, 4));
}

TEST(Kuroda, Validation)
{
    KurodaInput in;
    in.v = 2;
    EXPECT_THROW(kuroda_ratio(in), error);
    in.v = 0;
    in.q = 3;
    EXPECT_THROW(kuroda_ratio(in), error);
    in.q = 1;
    in.subfield_h2 = {0, 1, 1};
    EXPECT_THROW(kuroda_ratio(in), error);
}
