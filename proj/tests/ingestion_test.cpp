#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "metaurban/ingestion.hpp"
#include "test_support.hpp"

using namespace metaurban;

TEST_CASE("record splitting honors RFC-4180 quoting") {
    CHECK(split_delimited_record("a,b,c", ',') ==
          std::vector<std::string>{"a", "b", "c"});
    CHECK(split_delimited_record("a,\"b,c\",d", ',') ==
          std::vector<std::string>{"a", "b,c", "d"});
    CHECK(split_delimited_record("a,\"he said \"\"hi\"\"\"", ',') ==
          std::vector<std::string>{"a", "he said \"hi\""});
    CHECK(split_delimited_record("a,,c", ',') == std::vector<std::string>{"a", "", "c"});
    CHECK(split_delimited_record("a\tb", '\t') == std::vector<std::string>{"a", "b"});
}

TEST_CASE("delimiter auto-detection") {
    RawTable comma = read_table("a,b\n1,2\n", "t");
    CHECK(comma.header == std::vector<std::string>{"a", "b"});

    RawTable tabs = read_table("a\tb\tc\n1\t2\t3\n", "t");
    CHECK(tabs.header.size() == 3);

    RawTable semis = read_table("a;b\n1;2\n3;4\n", "t");
    CHECK(semis.header == std::vector<std::string>{"a", "b"});
    CHECK(semis.rows.size() == 2);

    // commas inside leading quoted cells must not sway detection
    RawTable quoted = read_table("note;name\n\"a,b\";x\n\"c,d\";y\n", "t");
    CHECK(quoted.header == std::vector<std::string>{"note", "name"});
    CHECK(quoted.rows[0][0] == "a,b");
}

TEST_CASE("BOM, CRLF, embedded newlines, and trailing blank lines") {
    RawTable t = read_table("\xEF\xBB\xBF" "a,b\r\n1,\"x\ny\"\r\n\n\n", "t");
    CHECK(t.header == std::vector<std::string>{"a", "b"});
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0][1] == "x\ny");
}

TEST_CASE("empty and ragged input") {
    CHECK_THROWS_AS(read_table("", "t"), EmptyInput);
    CHECK_THROWS_AS(read_table("\n\n", "t"), EmptyInput);
    try {
        read_table("a,b\n1,2\n3\n", "t");
        FAIL("expected RaggedRows");
    } catch (const RaggedRows& e) {
        CHECK(e.line == 3);
    }
    CHECK_THROWS_AS(read_table_with_delimiter("a,,b\n1,2,3\n", "t", ','), RaggedRows);
}

TEST_CASE("column profiling on the survey fixture") {
    RawTable t = read_table(testsup::slurp(testsup::fixture_path("cbecs2018_final_public.csv")),
                            "cbecs2018_final_public.csv");
    auto profiles = profile_columns(t);
    REQUIRE(profiles.size() == 9);
    CHECK(profiles[0].name == "ID");
    CHECK(profiles[0].kind == ColumnKind::Identifier);
    CHECK(profiles[1].name == "REGION");
    CHECK(profiles[1].kind == ColumnKind::Numeric);
    CHECK(profiles[8].kind == ColumnKind::Numeric);
    CHECK(profiles[0].samples.size() == 5);

    KeyColumn key = detect_key_column(profiles);
    CHECK(key.kind == KeyKind::Id);
    CHECK(key.name == "ID");
    CHECK(!key.promoted);
}

TEST_CASE("timestamp columns win the key over identifiers") {
    RawTable t = read_table(testsup::slurp(testsup::fixture_path("eia_monthly.csv")),
                            "eia_monthly.csv");
    auto profiles = profile_columns(t);
    CHECK(profiles[0].kind == ColumnKind::Timestamp);
    KeyColumn key = detect_key_column(profiles);
    CHECK(key.kind == KeyKind::Timestamp);
    CHECK(key.name == "Timestamp");
}

TEST_CASE("sentinel cells are excluded from kind voting") {
    RawTable t = read_table(testsup::slurp(testsup::fixture_path("recs2020.csv")),
                            "recs2020.csv");
    auto profiles = profile_columns(t);
    const ColumnProfile* temphomeac = nullptr;
    for (const auto& p : profiles)
        if (p.name == "TEMPHOMEAC") temphomeac = &p;
    REQUIRE(temphomeac != nullptr);
    CHECK(temphomeac->sentinel_count == 1);
    CHECK(temphomeac->kind == ColumnKind::Numeric);

    // custom sentinel set
    RawTable small = read_table("DOEID,V\n1,x\n2,-2\n3,-7\n", "t");
    auto custom = profile_columns(small, {"-7", ""});
    CHECK(custom[1].sentinel_count == 1);

    // a strictly increasing integer column needs an id-like name to be a key
    RawTable noid = read_table("seq,val\n1,a\n2,b\n3,c\n", "t");
    auto noid_profiles = profile_columns(noid);
    CHECK(noid_profiles[0].kind != ColumnKind::Identifier);
    KeyColumn promoted = detect_key_column(noid_profiles);
    CHECK(promoted.promoted);
    CHECK(promoted.name == "seq");
}

TEST_CASE("codebook parsing") {
    Codebook book = read_codebook(testsup::slurp(testsup::fixture_path("cbecs2018_codebook.csv")),
                                  "cbecs2018_codebook.csv");
    REQUIRE(book.entries.count("PBA") == 1);
    CHECK(book.entries["PBA"].decodes.at("2") == "Office");
    CHECK(book.entries["PBA"].decodes.at("25") == "Public assembly");
    CHECK(book.entries["REGION"].decodes.size() == 4);
    // code-less rows carry the human label
    CHECK(book.entries["SQFT"].label == "Square footage of the building");
    CHECK(book.entries["MFBTU"].label == "Annual major fuel consumption in thousand Btu");

    Codebook two = read_codebook("variable,label\nSQFT,Square footage\n", "t");
    CHECK(two.entries["SQFT"].label == "Square footage");
    CHECK(two.entries["SQFT"].decodes.empty());

    CHECK_THROWS_AS(read_codebook("onlyone\nx\n", "t"), RaggedRows);
}

TEST_CASE("default sentinels") {
    const auto& s = default_sentinels();
    CHECK(s.count("-2") == 1);
    CHECK(s.count("-9") == 1);
    CHECK(s.count("") == 1);
    CHECK(s.size() == 3);
}
