#include <gtest/gtest.h>

#include "qtower/records.hpp"

using namespace qtower;

TEST(Parse, Discriminants)
{
    EXPECT_EQ(parse_discriminant("19176").value, 19176);
    auto p = parse_discriminant("8*17*-3*-47");
    EXPECT_EQ(p.value, 19176);
    EXPECT_EQ(p.factors, (std::vector<i64>{8, 17, -3, -47}));
    EXPECT_EQ(parse_discriminant("(-7)(-3)(-43)(-31)").value, 27993);
    EXPECT_EQ(parse_discriminant("-3 x -8 x -11 x -23").value, 6072);
    EXPECT_THROW(parse_discriminant(""), error);
    EXPECT_THROW(parse_discriminant("12a"), error);
    EXPECT_THROW(parse_discriminant("8*17*3*-47"), error); // 3 is not a prime discriminant
    EXPECT_THROW(parse_discriminant("8*8*-3"), error);
}

TEST(Parse, IntLists)
{
    EXPECT_EQ(parse_int_list("2,4,4"), (std::vector<i64>{2, 4, 4}));
    EXPECT_EQ(parse_int_list("2, 4 ,8"), (std::vector<i64>{2, 4, 8}));
    EXPECT_TRUE(parse_int_list("").empty());
}

TEST(ExitCodes, Mapping)
{
    EXPECT_EQ(exit_code_for(errc::precondition), 2);
    EXPECT_EQ(exit_code_for(errc::insoluble), 2);
    EXPECT_EQ(exit_code_for(errc::io), 2);
    EXPECT_EQ(exit_code_for(errc::no_row_match), 3);
    EXPECT_EQ(exit_code_for(errc::bound_exceeded), 5);
    EXPECT_EQ(exit_code_for(errc::no_solution), 5);
    EXPECT_EQ(exit_code_for(errc::inconsistent), 4);
}

TEST(ScanRecords, JsonRoundTrip)
{
    ScanRecord r;
    r.dk = 19176;
    r.factorization = {-3, 8, 17, -47};
    r.label = "a1";
    r.gplus = "64.144";
    r.verdict = "AtLeast3";
    r.assignment = "8*17*-3*-47";
    r.verification = "match";
    EXPECT_EQ(scan_record_from_json(to_json(r)), r);
    auto j = to_json(r);
    EXPECT_EQ(j.dump(), R"({"d_k":19176,"factors":[-3,8,17,-47],"case":"a1","gplus":"64.144","verdict":"AtLeast3",)"
                        R"("labeling":"8*17*-3*-47","verification":"match"})");

    ScanRecord empty;
    empty.dk = 5;
    auto je = to_json(empty);
    EXPECT_TRUE(je["case"].is_null());
    EXPECT_EQ(scan_record_from_json(je), empty);

    r.millis = 1.5;
    EXPECT_EQ(scan_record_from_json(json::parse(to_json(r).dump())), r);
}

TEST(ScanRecords, Csv)
{
    ScanRecord r;
    r.dk = 6072;
    r.factorization = {-3, -8, -11, -23};
    r.label = "c3";
    EXPECT_EQ(to_csv(r), "6072,-3*-8*-11*-23,c3,,,,");
    EXPECT_EQ(csv_header().substr(0, 4), "d_k,");
}

TEST(CaseTables, JsonShape)
{
    auto j = case_tables_json();
    EXPECT_EQ(j["types"].size(), 4u);
    size_t rows = 0;
    for (const auto& t : j["types"]) rows += t["rows"].size();
    EXPECT_FALSE(j["invariants"].empty());
    EXPECT_GT(rows, 20u);
}
