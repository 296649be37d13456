#include "metaurban/schema.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

namespace metaurban {

const char* to_string(SchemaCategory category) {
    switch (category) {
        case SchemaCategory::Weather: return "Weather Information";
        case SchemaCategory::BuildingStockGIS: return "Building Stock GIS Information";
        case SchemaCategory::OccupantBehavior: return "Occupant Behavior";
        case SchemaCategory::BuildingCharacteristics: return "Building Characteristics";
        case SchemaCategory::MacroscopicEnergy: return "Macroscopic energy data";
        case SchemaCategory::MicroscopicEnergy: return "Microscopic energy data";
        case SchemaCategory::ComprehensiveDataLake: return "Comprehensive Data Lake";
    }
    return "?";
}

const char* category_token(SchemaCategory category) {
    switch (category) {
        case SchemaCategory::Weather: return "weather";
        case SchemaCategory::BuildingStockGIS: return "gis";
        case SchemaCategory::OccupantBehavior: return "occupant-behavior";
        case SchemaCategory::BuildingCharacteristics: return "building-characteristics";
        case SchemaCategory::MacroscopicEnergy: return "macro-energy";
        case SchemaCategory::MicroscopicEnergy: return "micro-energy";
        case SchemaCategory::ComprehensiveDataLake: return "data-lake";
    }
    return "?";
}

std::optional<SchemaCategory> category_from_token(const std::string& token) {
    static const std::map<std::string, SchemaCategory> table = {
        {"weather", SchemaCategory::Weather},
        {"gis", SchemaCategory::BuildingStockGIS},
        {"building-stock-gis", SchemaCategory::BuildingStockGIS},
        {"occupant-behavior", SchemaCategory::OccupantBehavior},
        {"building-characteristics", SchemaCategory::BuildingCharacteristics},
        {"macro-energy", SchemaCategory::MacroscopicEnergy},
        {"micro-energy", SchemaCategory::MicroscopicEnergy},
        {"data-lake", SchemaCategory::ComprehensiveDataLake},
    };
    auto it = table.find(token);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

const std::vector<SchemaCategory>& schema_categories() {
    static const std::vector<SchemaCategory> cats = {
        SchemaCategory::Weather,
        SchemaCategory::BuildingStockGIS,
        SchemaCategory::OccupantBehavior,
        SchemaCategory::BuildingCharacteristics,
        SchemaCategory::MacroscopicEnergy,
        SchemaCategory::MicroscopicEnergy,
    };
    return cats;
}

const char* to_string(FieldKindTag tag) {
    switch (tag) {
        case FieldKindTag::Text: return "text";
        case FieldKindTag::Boolean: return "boolean";
        case FieldKindTag::Enum: return "enum";
        case FieldKindTag::TextList: return "text-list";
        case FieldKindTag::PairList: return "pair-list";
        case FieldKindTag::Coordinate: return "coordinate";
        case FieldKindTag::Coverage: return "coverage";
        case FieldKindTag::TimestampFormat: return "timestamp-format";
        case FieldKindTag::TimeInterval: return "time-interval";
    }
    return "?";
}

const FieldSpec* CategorySchema::find(const std::string& canonical_name) const {
    for (const auto& f : fields)
        if (f.canonical_name == canonical_name) return &f;
    return nullptr;
}

int CategorySchema::position(const std::string& canonical_name) const {
    for (size_t i = 0; i < fields.size(); ++i)
        if (fields[i].canonical_name == canonical_name) return static_cast<int>(i);
    return -1;
}

std::string normalize_name(const std::string& name) {
    std::string out;
    out.reserve(name.size());
    for (unsigned char c : name)
        if (std::isalnum(c)) out.push_back(static_cast<char>(std::tolower(c)));
    return out;
}

namespace {

FieldKind text_kind() { return {FieldKindTag::Text, {}}; }
FieldKind bool_kind() { return {FieldKindTag::Boolean, {}}; }
FieldKind enum_kind(std::vector<std::string> allowed) {
    return {FieldKindTag::Enum, std::move(allowed)};
}
FieldKind list_kind() { return {FieldKindTag::TextList, {}}; }
FieldKind pair_list_kind() { return {FieldKindTag::PairList, {}}; }
FieldKind coord_kind() { return {FieldKindTag::Coordinate, {}}; }
FieldKind coverage_kind() { return {FieldKindTag::Coverage, {}}; }
FieldKind tsfmt_kind() { return {FieldKindTag::TimestampFormat, {}}; }
FieldKind interval_kind() { return {FieldKindTag::TimeInterval, {}}; }

const char* kNameNotes = "String value";
const char* kTsFmtNotes = "e.g., HH:MM:SS MM/DD/YYYY";
const char* kBoolNotes = "True or False";
const char* kIntervalMinNotes =
    "Unit: min, e.g., “1 min”, “30 min”, “60 min”, or "
    "“NaN” (if constant interval is False)";
const char* kInterpNotes = "Linear, etc.";
const char* kCoverageNotes =
    "Format such as “GeoJSON” defining the effective area; or geographic "
    "information such as country, state, zip code, etc.";

std::vector<CategorySchema> build_all_schemas() {
    std::vector<CategorySchema> all;

    {
        CategorySchema s;
        s.category = SchemaCategory::Weather;
        s.fields = {
            {"Name of Dataset/ Website", text_kind(), true, {}, kNameNotes},
            {"Timestamp format", tsfmt_kind(), true, {}, kTsFmtNotes},
            {"Constant Interval?", bool_kind(), true, {}, kBoolNotes},
            {"Time interval", interval_kind(), true, {}, kIntervalMinNotes},
            {"Interpolation Methodology", text_kind(), false, {}, kInterpNotes},
            {"Location of weather collection", coord_kind(), false, {},
             "Coordinate in tuple format, e.g. (32.36200946378022, -111.07590759052607)"},
            {"Effective coverage", coverage_kind(), false, {}, kCoverageNotes},
            {"EPW or not", bool_kind(), true, {}, kBoolNotes},
            {"AMY/TMY/Others", enum_kind({"AMY", "TMY", "Others"}), true, {},
             "[“AMY”, “TMY”, “Others”]"},
        };
        all.push_back(std::move(s));
    }
    {
        CategorySchema s;
        s.category = SchemaCategory::BuildingStockGIS;
        s.fields = {
            {"Name of Dataset/ Website", text_kind(), true, {}, kNameNotes},
            {"Resolution", text_kind(), false, {}, "By building or community level"},
            {"3D or 2D", enum_kind({"3D", "2D"}), true, {},
             "“3D” or “2D” Building Models"},
            {"Data Format", text_kind(), false, {},
             "Shapefile/FileGDB, GeoJSON, and CityGML"},
            {"Levels of detail (LoD)", enum_kind({"LoD1", "LoD2", "LoD3", "LoD4"}), true,
             {"LoD"},
             "1) LoD1: simple 2-D footprint, 2) LoD2: a box shape, adding slope roofs, "
             "3) LoD3: adding exterior shades and windows and doors, 4) LoD4: and full "
             "details of interior layout and zoning"},
        };
        all.push_back(std::move(s));
    }
    {
        CategorySchema s;
        s.category = SchemaCategory::OccupantBehavior;
        s.fields = {
            {"Name of Dataset/ Website", text_kind(), true, {}, kNameNotes},
            {"Timestamp format", tsfmt_kind(), true, {}, kTsFmtNotes},
            {"Constant Interval?", bool_kind(), true, {}, kBoolNotes},
            {"Time interval", interval_kind(), true, {}, kIntervalMinNotes},
            {"Building Type", list_kind(), false, {},
             "Effective building type list, e.g., [“Office Building”, "
             "“Single Family House”, “Multi-family House” etc.]"},
            {"Behavior Type", list_kind(), true, {},
             "[“occupancy”, “HVAC”, “laundry”, "
             "“cooking”, “lighting” etc.]"},
            {"Control Action", list_kind(), false, {},
             "[“Thermostat Adjustment”, “HVAC on/off”, "
             "“Lighting on/off”, “Window open/close” etc.]"},
            {"Behavior Relevant Factors", list_kind(), false, {},
             "[“Indoor Temperature”, “Outdoor Temperature”, "
             "“Humidity”, “Illuminance Level” etc.]"},
            // Figure 7 labels this row "Study Area".
            {"Effective coverage", coverage_kind(), false, {"Study Area"}, kCoverageNotes},
        };
        all.push_back(std::move(s));
    }
    {
        CategorySchema s;
        s.category = SchemaCategory::BuildingCharacteristics;
        s.fields = {
            {"Name of Dataset/ Website", text_kind(), true, {}, kNameNotes},
            {"Effective coverage", coverage_kind(), true, {}, kCoverageNotes},
            {"Sample or Probability", enum_kind({"Sample", "Probability"}), true, {},
             "Select from “Sample” and “Probability”. The unit of "
             "sample is number of buildings; the probability is unitless and its value "
             "is less than 1"},
            {"Building characteristics distribution list", list_kind(), true, {},
             "List all the available building characteristics included in a list, e.g., "
             "[“floorspace”, “building envelope”, “building "
             "systems”, “principal building activity”, “number of "
             "story”]"},
            {"Joint distribution list", pair_list_kind(), true, {},
             "Subset of building characteristics distribution list only listing joint "
             "distribution groups, e.g., [[“floorspace”, “number of "
             "story”], [“building systems”, “principal building "
             "activity”]]; if no joint distribution, the value is an empty list []"},
        };
        all.push_back(std::move(s));
    }
    {
        CategorySchema s;
        s.category = SchemaCategory::MacroscopicEnergy;
        s.fields = {
            {"Name of Dataset/ Website", text_kind(), true, {}, kNameNotes},
            {"Sector", enum_kind({"Residential", "Commercial", "All", "Unknown"}), true,
             {}, "Residential, commercial, all, and unknown"},
            {"Timeseries", bool_kind(), true, {}, kBoolNotes},
            {"Timestamp format", tsfmt_kind(), true, {}, kTsFmtNotes},
            {"Constant Interval", bool_kind(), true, {}, kBoolNotes},
            {"Time interval", interval_kind(), true, {},
             "e.g., “1 min”, “30 min”, “60 min”, "
             "“1 day”, “1 month”, “1 year”, (if constant "
             "interval is True), or “NaN” (if constant interval is False)"},
            {"Interpolation Methodology", text_kind(), false, {}, kInterpNotes},
            {"Effective coverage", coverage_kind(), true, {}, kCoverageNotes},
            // Absent from the schema table but demanded by the prompt and the
            // macroscopic case-study output, so transcribed as a first-class field.
            {"Energy Data List", list_kind(), true, {},
             "List all the available energy data series included in a list, e.g., "
             "[“Total Primary Energy Consumed by the Commercial Sector”]"},
        };
        all.push_back(std::move(s));
    }
    {
        CategorySchema s;
        s.category = SchemaCategory::MicroscopicEnergy;
        s.fields = {
            {"Name of Dataset/ Website", text_kind(), true, {}, kNameNotes},
            {"Timestamp format", tsfmt_kind(), true, {}, kTsFmtNotes},
            {"Constant Interval?", bool_kind(), true, {}, kBoolNotes},
            {"Time interval", interval_kind(), true, {}, kIntervalMinNotes},
            {"Interpolation Methodology", text_kind(), false, {}, kInterpNotes},
            {"Geographic information", coverage_kind(), false, {},
             "Geographic information such as country, state, zip code, address, etc."},
            {"Existing Metadata Schema?", bool_kind(), true, {}, kBoolNotes},
        };
        all.push_back(std::move(s));
    }
    return all;
}

const std::vector<CategorySchema>& all_schemas() {
    static const std::vector<CategorySchema> all = build_all_schemas();
    return all;
}

}  // namespace

const CategorySchema& builtin_schema(SchemaCategory category) {
    if (category == SchemaCategory::ComprehensiveDataLake)
        throw NoSchemaForCategory(category);
    for (const auto& s : all_schemas())
        if (s.category == category) return s;
    throw NoSchemaForCategory(category);
}

const std::string* try_resolve_field_name(SchemaCategory category, const std::string& name) {
    const CategorySchema& schema = builtin_schema(category);
    std::string key = normalize_name(name);
    if (key.empty()) return nullptr;
    for (const auto& f : schema.fields)
        if (normalize_name(f.canonical_name) == key) return &f.canonical_name;
    for (const auto& f : schema.fields)
        for (const auto& alias : f.aliases)
            if (normalize_name(alias) == key) return &f.canonical_name;
    return nullptr;
}

const std::string& resolve_field_name(SchemaCategory category, const std::string& name) {
    const std::string* canonical = try_resolve_field_name(category, name);
    if (!canonical) throw UnknownField(category, name);
    return *canonical;
}

// ---------------------------------------------------------------------------
// TimeInterval

std::string TimeInterval::serialize() const {
    if (is_nan()) return "NaN";
    const char* u = "min";
    switch (unit) {
        case Unit::Min: u = "min"; break;
        case Unit::Day: u = "day"; break;
        case Unit::Month: u = "month"; break;
        case Unit::Year: u = "year"; break;
    }
    return std::to_string(*value) + " " + u;
}

std::optional<TimeInterval> TimeInterval::parse(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)) || (!t.empty() && t.back() != ' '))
            t.push_back(std::isspace(static_cast<unsigned char>(c)) ? ' ' : c);
    while (!t.empty() && t.back() == ' ') t.pop_back();
    std::string lower = t;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (lower == "nan") return TimeInterval::nan();

    std::istringstream in(lower);
    long long n = 0;
    std::string u;
    if (!(in >> n >> u) || n <= 0) return std::nullopt;
    std::string rest;
    if (in >> rest) return std::nullopt;
    if (u == "min" || u == "mins" || u == "minute" || u == "minutes")
        return TimeInterval::of(n, Unit::Min);
    if (u == "day" || u == "days") return TimeInterval::of(n, Unit::Day);
    if (u == "month" || u == "months") return TimeInterval::of(n, Unit::Month);
    if (u == "year" || u == "years") return TimeInterval::of(n, Unit::Year);
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Field values

FieldKindTag kind_of(const FieldValue& value) {
    struct V {
        FieldKindTag operator()(const TextValue&) { return FieldKindTag::Text; }
        FieldKindTag operator()(const BoolValue&) { return FieldKindTag::Boolean; }
        FieldKindTag operator()(const EnumValue&) { return FieldKindTag::Enum; }
        FieldKindTag operator()(const ListValue&) { return FieldKindTag::TextList; }
        FieldKindTag operator()(const GroupListValue&) { return FieldKindTag::PairList; }
        FieldKindTag operator()(const CoordValue&) { return FieldKindTag::Coordinate; }
        FieldKindTag operator()(const CoverageValue&) { return FieldKindTag::Coverage; }
        FieldKindTag operator()(const PatternValue&) { return FieldKindTag::TimestampFormat; }
        FieldKindTag operator()(const IntervalValue&) { return FieldKindTag::TimeInterval; }
    };
    return std::visit(V{}, value);
}

std::string format_double(double v) {
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

namespace {

std::string quote_items(const std::vector<std::string>& items) {
    std::string out = "[";
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += "'" + items[i] + "'";
    }
    return out + "]";
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Splits a bracketless list body into items: quoted strings ('..' or "..")
// or bare atoms; commas and runs of whitespace both separate.
std::vector<std::string> split_items(const std::string& body) {
    std::vector<std::string> items;
    std::string cur;
    bool in_item = false, quoted = false;
    char quote = 0;
    auto flush = [&] {
        if (in_item) {
            std::string t = quoted ? cur : trim(cur);
            items.push_back(t);
        }
        cur.clear();
        in_item = quoted = false;
    };
    for (size_t i = 0; i < body.size(); ++i) {
        char c = body[i];
        if (quoted) {
            if (c == quote) {
                // next separator closes the item
                in_item = true;
                flush();
            } else {
                cur.push_back(c);
            }
            continue;
        }
        if (c == '\'' || c == '"') {
            if (!in_item) {
                quoted = true;
                quote = c;
                in_item = true;
                cur.clear();
                continue;
            }
        }
        if (c == ',' || (std::isspace(static_cast<unsigned char>(c)) && !in_item)) {
            if (c == ',') flush();
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c)) && in_item) {
            // bare atoms are whitespace-separated too ("[3 4 1 2]")
            flush();
            continue;
        }
        in_item = true;
        cur.push_back(c);
    }
    flush();
    return items;
}

std::vector<std::string> parse_list_literal(const std::string& cell) {
    std::string t = trim(cell);
    if (t.empty()) throw MalformedListLiteral(cell);
    if (t.front() != '[' || t.back() != ']') throw MalformedListLiteral(cell);
    return split_items(t.substr(1, t.size() - 2));
}

std::vector<std::vector<std::string>> parse_group_list_literal(const std::string& cell) {
    std::string t = trim(cell);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw MalformedListLiteral(cell);
    std::string body = trim(t.substr(1, t.size() - 2));
    std::vector<std::vector<std::string>> groups;
    if (body.empty()) return groups;
    size_t i = 0;
    while (i < body.size()) {
        while (i < body.size() &&
               (body[i] == ',' || std::isspace(static_cast<unsigned char>(body[i]))))
            ++i;
        if (i >= body.size()) break;
        char open = body[i];
        char close = open == '[' ? ']' : open == '{' ? '}' : 0;
        if (!close) throw MalformedListLiteral(cell);
        size_t end = body.find(close, i + 1);
        if (end == std::string::npos) throw MalformedListLiteral(cell);
        groups.push_back(split_items(body.substr(i + 1, end - i - 1)));
        i = end + 1;
    }
    return groups;
}

std::optional<bool> parse_bool(const std::string& cell) {
    std::string t = trim(cell);
    std::transform(t.begin(), t.end(), t.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (t == "true") return true;
    if (t == "false") return false;
    return std::nullopt;
}

std::optional<GeoCoordinate> parse_coordinate(const std::string& cell) {
    std::string t = trim(cell);
    if (!t.empty() && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
    size_t comma = t.find(',');
    if (comma == std::string::npos) return std::nullopt;
    char* end1 = nullptr;
    char* end2 = nullptr;
    std::string a = trim(t.substr(0, comma)), b = trim(t.substr(comma + 1));
    if (a.empty() || b.empty()) return std::nullopt;
    double lat = std::strtod(a.c_str(), &end1);
    double lon = std::strtod(b.c_str(), &end2);
    if (*end1 || *end2) return std::nullopt;
    return GeoCoordinate{lat, lon};
}

}  // namespace

std::string field_value_to_cell(const FieldValue& value) {
    struct V {
        std::string operator()(const TextValue& v) { return v.value; }
        std::string operator()(const BoolValue& v) { return v.value ? "TRUE" : "FALSE"; }
        std::string operator()(const EnumValue& v) { return v.value; }
        std::string operator()(const ListValue& v) { return quote_items(v.items); }
        std::string operator()(const GroupListValue& v) {
            std::string out = "[";
            for (size_t i = 0; i < v.groups.size(); ++i) {
                if (i) out += ", ";
                out += quote_items(v.groups[i]);
            }
            return out + "]";
        }
        std::string operator()(const CoordValue& v) {
            return "(" + format_double(v.value.latitude) + ", " +
                   format_double(v.value.longitude) + ")";
        }
        std::string operator()(const CoverageValue& v) { return v.value.serialize(); }
        std::string operator()(const PatternValue& v) { return v.pattern; }
        std::string operator()(const IntervalValue& v) { return v.value.serialize(); }
    };
    return std::visit(V{}, value);
}

FieldValue cell_to_field_value(const FieldSpec& spec, const std::string& cell) {
    switch (spec.kind.tag) {
        case FieldKindTag::Text:
            return TextValue{cell};
        case FieldKindTag::Boolean: {
            auto b = parse_bool(cell);
            if (!b) throw MalformedCell(spec.canonical_name, cell);
            return BoolValue{*b};
        }
        case FieldKindTag::Enum: {
            std::string key = normalize_name(cell);
            for (const auto& allowed : spec.kind.allowed)
                if (normalize_name(allowed) == key) return EnumValue{allowed};
            // kept verbatim so validation can report R8/R9 instead of losing the cell
            return EnumValue{trim(cell)};
        }
        case FieldKindTag::TextList:
            return ListValue{parse_list_literal(cell)};
        case FieldKindTag::PairList:
            return GroupListValue{parse_group_list_literal(cell)};
        case FieldKindTag::Coordinate: {
            auto c = parse_coordinate(cell);
            if (!c) throw MalformedCell(spec.canonical_name, cell);
            return CoordValue{*c};
        }
        case FieldKindTag::Coverage:
            return CoverageValue{parse_coverage(cell)};
        case FieldKindTag::TimestampFormat:
            return PatternValue{trim(cell)};
        case FieldKindTag::TimeInterval: {
            auto iv = TimeInterval::parse(cell);
            if (!iv) throw MalformedCell(spec.canonical_name, cell);
            return IntervalValue{*iv};
        }
    }
    throw MalformedCell(spec.canonical_name, cell);
}

const FieldValue* MetadataDocument::find(const std::string& canonical_name) const {
    for (const auto& [name, value] : entries)
        if (name == canonical_name) return &value;
    return nullptr;
}

}  // namespace metaurban
