#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "metaurban/coverage.hpp"

namespace metaurban {

enum class SchemaCategory {
    Weather,
    BuildingStockGIS,
    OccupantBehavior,
    BuildingCharacteristics,
    MacroscopicEnergy,
    MicroscopicEnergy,
    ComprehensiveDataLake,  // no field schema
};

constexpr int kCategoryCount = 7;

const char* to_string(SchemaCategory category);

// CLI token <-> category ("weather", "gis", "occupant-behavior",
// "building-characteristics", "macro-energy", "micro-energy", "data-lake").
std::optional<SchemaCategory> category_from_token(const std::string& token);
const char* category_token(SchemaCategory category);

// All six schema-carrying categories, in taxonomy order.
const std::vector<SchemaCategory>& schema_categories();

enum class FieldKindTag {
    Text,
    Boolean,
    Enum,
    TextList,
    PairList,
    Coordinate,
    Coverage,
    TimestampFormat,
    TimeInterval,
};

struct FieldKind {
    FieldKindTag tag = FieldKindTag::Text;
    std::vector<std::string> allowed;  // Enum only, non-empty there

    bool operator==(const FieldKind&) const = default;
};

const char* to_string(FieldKindTag tag);

struct FieldSpec {
    std::string canonical_name;
    FieldKind kind;
    bool required = false;
    std::vector<std::string> aliases;
    std::string notes;  // Table 1 "Notes" column, also rendered into prompts
};

struct CategorySchema {
    SchemaCategory category;
    std::vector<FieldSpec> fields;  // Table 1 row order

    const FieldSpec* find(const std::string& canonical_name) const;
    // Index in Table 1 order, -1 when absent.
    int position(const std::string& canonical_name) const;
};

struct NoSchemaForCategory : std::runtime_error {
    explicit NoSchemaForCategory(SchemaCategory category)
        : std::runtime_error(std::string("no field schema defined for category ") +
                             to_string(category)) {}
};

struct UnknownField : std::runtime_error {
    UnknownField(SchemaCategory category, const std::string& name)
        : std::runtime_error("unknown field \"" + name + "\" for category " +
                             to_string(category)) {}
};

// Transcription of Table 1 ("Energy Data List" added to macroscopic energy,
// see the case-study outputs). Pure: stable across calls.
const CategorySchema& builtin_schema(SchemaCategory category);

// Case-insensitive, punctuation-tolerant match against canonical names then
// aliases. Throws UnknownField when nothing matches.
const std::string& resolve_field_name(SchemaCategory category, const std::string& name);

// nullptr instead of throwing.
const std::string* try_resolve_field_name(SchemaCategory category, const std::string& name);

// ---------------------------------------------------------------------------
// Values

struct TimeInterval {
    // NaN (not applicable) when !value; otherwise value > 0 with a unit.
    enum class Unit { Min, Day, Month, Year };
    std::optional<long long> value;
    Unit unit = Unit::Min;

    static TimeInterval nan() { return {}; }
    static TimeInterval of(long long n, Unit u) { return {n, u}; }
    bool is_nan() const { return !value.has_value(); }

    std::string serialize() const;  // "30 min", "1 month", ... or "NaN"
    // Accepts "NaN" case-insensitively; std::nullopt on malformed input.
    static std::optional<TimeInterval> parse(const std::string& text);

    bool operator==(const TimeInterval&) const = default;
};

struct TextValue {
    std::string value;
    bool operator==(const TextValue&) const = default;
};
struct BoolValue {
    bool value = false;
    bool operator==(const BoolValue&) const = default;
};
struct EnumValue {
    std::string value;  // canonical casing from the allowed set
    bool operator==(const EnumValue&) const = default;
};
struct ListValue {
    std::vector<std::string> items;
    bool operator==(const ListValue&) const = default;
};
struct GroupListValue {
    std::vector<std::vector<std::string>> groups;
    bool operator==(const GroupListValue&) const = default;
};
struct CoordValue {
    GeoCoordinate value;
    bool operator==(const CoordValue&) const = default;
};
struct CoverageValue {
    EffectiveCoverage value;
    bool operator==(const CoverageValue&) const = default;
};
struct PatternValue {
    std::string pattern;  // timestamp format pattern, or "NaN"
    bool operator==(const PatternValue&) const = default;
};
struct IntervalValue {
    TimeInterval value;
    bool operator==(const IntervalValue&) const = default;
};

using FieldValue = std::variant<TextValue, BoolValue, EnumValue, ListValue, GroupListValue,
                                CoordValue, CoverageValue, PatternValue, IntervalValue>;

FieldKindTag kind_of(const FieldValue& value);

// Cell-text serialization used by metadata.csv: booleans TRUE/FALSE, lists
// "['A', 'B']", pair lists "[['a', 'b'], ['c', 'd']]", coordinates
// "(lat, lon)", "NaN" intervals as "NaN".
std::string field_value_to_cell(const FieldValue& value);

struct MalformedListLiteral : std::runtime_error {
    explicit MalformedListLiteral(const std::string& cell)
        : std::runtime_error("malformed list literal: " + cell) {}
};

struct MalformedCell : std::runtime_error {
    MalformedCell(const std::string& field, const std::string& cell)
        : std::runtime_error("cannot parse cell for \"" + field + "\": " + cell) {}
};

// Inverse of field_value_to_cell, driven by the spec's kind. Tolerates the
// case-study variants: "[3 4 1 2]" space lists, case-insensitive booleans and
// enums, "nan". Throws MalformedListLiteral / MalformedCell.
FieldValue cell_to_field_value(const FieldSpec& spec, const std::string& cell);

// ---------------------------------------------------------------------------
// Documents

struct MetadataDocument {
    SchemaCategory category = SchemaCategory::Weather;
    // Order matches CategorySchema field order; names canonical; no duplicates.
    std::vector<std::pair<std::string, FieldValue>> entries;

    // Unhoused numeric accompanying "Sample or Probability" = Probability.
    // Not serialized; excluded from equality.
    std::optional<double> probability;
    // Raw key-cell sample, attached by alignment for the declared-format check.
    std::optional<std::string> timestamp_sample;

    const FieldValue* find(const std::string& canonical_name) const;
    bool operator==(const MetadataDocument& o) const {
        return category == o.category && entries == o.entries;
    }
};

// Shortest decimal text that round-trips through strtod.
std::string format_double(double v);

// Lowercase, alphanumerics only; the key used by resolve_field_name.
std::string normalize_name(const std::string& name);

}  // namespace metaurban
