#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "metaurban/validation.hpp"
#include "test_support.hpp"

using namespace metaurban;

namespace {

MetadataDocument survey_doc() {
    MetadataDocument doc;
    doc.category = SchemaCategory::BuildingCharacteristics;
    doc.entries.emplace_back("Name of Dataset/ Website", TextValue{"cbecs"});
    doc.entries.emplace_back("Effective coverage", CoverageValue{parse_coverage("U.S.")});
    doc.entries.emplace_back("Sample or Probability", EnumValue{"Sample"});
    doc.entries.emplace_back("Building characteristics distribution list",
                             ListValue{{"floorspace", "number of story"}});
    doc.entries.emplace_back("Joint distribution list",
                             GroupListValue{{{"floorspace", "number of story"}}});
    return doc;
}

MetadataDocument weather_doc() {
    MetadataDocument doc;
    doc.category = SchemaCategory::Weather;
    doc.entries.emplace_back("Name of Dataset/ Website", TextValue{"tmy3"});
    doc.entries.emplace_back("Timestamp format", PatternValue{"YYYY-MM-DD HH:MM:SS"});
    doc.entries.emplace_back("Constant Interval?", BoolValue{true});
    doc.entries.emplace_back("Time interval",
                             IntervalValue{TimeInterval::of(60, TimeInterval::Unit::Min)});
    doc.entries.emplace_back("EPW or not", BoolValue{true});
    doc.entries.emplace_back("AMY/TMY/Others", EnumValue{"TMY"});
    return doc;
}

bool has(const ValidationReport& r, const char* rule, const char* field) {
    for (const auto& f : r.findings)
        if (f.rule == rule && f.field == field) return true;
    return false;
}

}  // namespace

TEST_CASE("well-formed documents validate cleanly") {
    CHECK(validate_document(survey_doc()).valid());
    CHECK(validate_document(survey_doc()).findings.empty());
    CHECK(validate_document(weather_doc()).valid());
}

TEST_CASE("R1 missing required field") {
    MetadataDocument doc = survey_doc();
    doc.entries.erase(doc.entries.begin() + 2);  // Sample or Probability
    ValidationReport r = validate_document(doc);
    CHECK(!r.valid());
    CHECK(r.error_count() == 1);
    CHECK(has(r, "R1", "Sample or Probability"));
}

TEST_CASE("R2 kind mismatch and unknown field") {
    MetadataDocument doc = survey_doc();
    doc.entries[0].second = BoolValue{true};
    doc.entries.emplace_back("Shoe size", TextValue{"42"});
    ValidationReport r = validate_document(doc);
    CHECK(has(r, "R2", "Name of Dataset/ Website"));
    CHECK(has(r, "R2", "Shoe size"));
    CHECK(r.error_count() == 2);
}

TEST_CASE("R3 interval consistency, both polarities") {
    MetadataDocument doc = weather_doc();
    std::get<IntervalValue>(doc.entries[3].second).value = TimeInterval::nan();
    CHECK(has(validate_document(doc), "R3", "Time interval"));

    doc = weather_doc();
    std::get<BoolValue>(doc.entries[2].second).value = false;
    CHECK(has(validate_document(doc), "R3", "Time interval"));

    // NaN interval with Constant Interval? = False is fine
    doc = weather_doc();
    std::get<BoolValue>(doc.entries[2].second).value = false;
    std::get<IntervalValue>(doc.entries[3].second).value = TimeInterval::nan();
    CHECK(validate_document(doc).valid());
}

TEST_CASE("R4 joint groups must be a subset of the distribution list") {
    MetadataDocument doc = survey_doc();
    std::get<GroupListValue>(doc.entries[4].second)
        .groups.push_back({"floorspace", "wall material"});
    ValidationReport r = validate_document(doc);
    CHECK(!r.valid());
    CHECK(has(r, "R4", "Joint distribution list"));
    CHECK(r.error_count() == 1);
}

TEST_CASE("R5 probability bounds") {
    MetadataDocument doc = survey_doc();
    std::get<EnumValue>(doc.entries[2].second).value = "Probability";
    doc.probability = 0.37;
    CHECK(validate_document(doc).valid());
    doc.probability = 1.5;
    CHECK(has(validate_document(doc), "R5", "Sample or Probability"));
    doc.probability = -0.1;
    CHECK(has(validate_document(doc), "R5", "Sample or Probability"));
    // the annotation is ignored under Sample mode
    std::get<EnumValue>(doc.entries[2].second).value = "Sample";
    CHECK(validate_document(doc).valid());
}

TEST_CASE("R6 coordinate range") {
    MetadataDocument doc = weather_doc();
    doc.entries.emplace_back("Location of weather collection",
                             CoordValue{{32.36, -111.07}});
    CHECK(validate_document(doc).valid());
    std::get<CoordValue>(doc.entries.back().second).value.longitude = -181.0;
    CHECK(has(validate_document(doc), "R6", "Location of weather collection"));
}

TEST_CASE("R7 pattern well-formedness; NaN is accepted") {
    MetadataDocument doc = weather_doc();
    std::get<PatternValue>(doc.entries[1].second).pattern = "YYYY-Q";
    CHECK(has(validate_document(doc), "R7", "Timestamp format"));
    std::get<PatternValue>(doc.entries[1].second).pattern = "NaN";
    CHECK(validate_document(doc).valid());
}

TEST_CASE("R8 and R9 enum membership") {
    MetadataDocument doc = weather_doc();
    std::get<EnumValue>(doc.entries[5].second).value = "Historic";
    CHECK(has(validate_document(doc), "R8", "AMY/TMY/Others"));

    MetadataDocument gis;
    gis.category = SchemaCategory::BuildingStockGIS;
    gis.entries.emplace_back("Name of Dataset/ Website", TextValue{"footprints"});
    gis.entries.emplace_back("3D or 2D", EnumValue{"3D"});
    gis.entries.emplace_back("Levels of detail (LoD)", EnumValue{"LoD2"});
    CHECK(validate_document(gis).valid());
    std::get<EnumValue>(gis.entries.back().second).value = "LoD9";
    CHECK(has(validate_document(gis), "R9", "Levels of detail (LoD)"));
}

TEST_CASE("R10 sample check is a warning, not an error") {
    MetadataDocument doc = weather_doc();
    doc.timestamp_sample = "1973-01-01 00:00:00";
    CHECK(validate_document(doc).findings.empty());

    doc.timestamp_sample = "1/1/1973 0:00";
    ValidationReport r = validate_document(doc);
    CHECK(r.valid());
    REQUIRE(r.findings.size() == 1);
    CHECK(r.findings[0].severity == Severity::Warning);
    CHECK(r.findings[0].rule == "R10");

    // no check under the NaN pattern
    std::get<PatternValue>(doc.entries[1].second).pattern = "NaN";
    CHECK(validate_document(doc).findings.empty());
}

TEST_CASE("findings are ordered by schema position, then rule") {
    MetadataDocument doc = weather_doc();
    std::get<EnumValue>(doc.entries[5].second).value = "Historic";      // pos 8
    std::get<PatternValue>(doc.entries[1].second).pattern = "YYYY-Q";   // pos 1
    doc.entries.erase(doc.entries.begin() + 4);                         // EPW, pos 7
    ValidationReport r = validate_document(doc);
    REQUIRE(r.findings.size() == 3);
    CHECK(r.findings[0].rule == "R7");
    CHECK(r.findings[1].field == "EPW or not");
    CHECK(r.findings[2].rule == "R8");
}

TEST_CASE("report rendering") {
    MetadataDocument doc = survey_doc();
    doc.entries.erase(doc.entries.begin());
    ValidationReport r = validate_document(doc, "doc-1");
    CHECK(r.document_id == "doc-1");
    std::string text = r.to_text();
    CHECK(text.find("ERROR R1 [Name of Dataset/ Website]") != std::string::npos);
    std::string tsv = r.to_tsv();
    CHECK(tsv.rfind("severity\trule\tfield\tmessage\n", 0) == 0);
    CHECK(tsv.find("error\tR1\tName of Dataset/ Website\t") != std::string::npos);
}

TEST_CASE("the data lake category has no schema to validate against") {
    MetadataDocument doc;
    doc.category = SchemaCategory::ComprehensiveDataLake;
    CHECK_THROWS_AS(validate_document(doc), NoSchemaForCategory);
}

TEST_CASE("production and naive validators agree on a quick sample") {
    testsup::Gen g(7);
    for (int i = 0; i < 50; ++i) {
        MetadataDocument doc = testsup::random_document(g, testsup::random_category(g));
        if (i % 2) doc = testsup::mutate_document(g, doc);
        ValidationReport r = validate_document(doc);
        CHECK(testsup::reports_agree(r, testsup::naive_validate(doc)));
    }
}
