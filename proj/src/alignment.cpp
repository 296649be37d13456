#include "metaurban/alignment.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "metaurban/timestamp.hpp"

namespace metaurban {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string file_stem(const std::string& path) {
    size_t slash = path.find_last_of("/\\");
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    size_t dot = name.find_last_of('.');
    if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
    return name;
}

bool all_numeric(const std::vector<std::string>& values) {
    for (const auto& v : values) {
        if (v.empty()) return false;
        for (size_t i = 0; i < v.size(); ++i) {
            char c = v[i];
            if (!std::isdigit(static_cast<unsigned char>(c)) &&
                !(i == 0 && (c == '-' || c == '+')))
                return false;
        }
    }
    return true;
}

}  // namespace

std::string digest_hex(const std::string& text) {
    unsigned long long h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    return buf;
}

// ---------------------------------------------------------------------------
// Prompt

std::string build_prompt(SchemaCategory category, bool has_codebook) {
    const CategorySchema& schema = builtin_schema(category);

    std::string out = "Automate everything without asking follow-up questions.\n\n";
    if (has_codebook) {
        out +=
            "The uploaded File 1 and File 2 are data value and code book. File 2 is "
            "optional. Below is the target schema.\n\n";
    } else {
        out += "The uploaded File 1 is data value. Below is the target schema.\n\n";
    }
    out += "“\n\n";
    for (const auto& field : schema.fields)
        out += field.canonical_name + " " + field.notes + "\n\n";
    out += "”\n\n";
    out +=
        "The first task is to generate a metadata.csv that represents the aligned "
        "schema of the data in ";
    out += has_codebook ? "file 1 and file 2" : "file 1";
    out +=
        " in accordance with the schema. Make sure that the rows in the generated csv "
        "file are the fields of the schema with one column representing the value.\n\n";
    out +=
        "The second task is to generate processed data under desired format. For each "
        "item in the value list (for example “Energy Data List”, and "
        "“Building characteristics distribution list”), generate a csv "
        "file whose first column is timestamp or ID, and second column is value "
        "(timeseries or non-timeseries). The first column name is "
        "“timestamp” or “ID”, and the second column name is the "
        "value label.\n";
    return out;
}

// ---------------------------------------------------------------------------
// Rule-based alignment

namespace {

struct IntervalAnalysis {
    bool constant = false;
    TimeInterval interval = TimeInterval::nan();
};

IntervalAnalysis analyze_interval(const RawTable& table, const KeyColumn& key) {
    IntervalAnalysis result;
    if (key.kind != KeyKind::Timestamp) return result;
    int col = table.column_index(key.name);
    if (col < 0 || table.rows.size() < 2) return result;

    std::vector<DateTime> stamps;
    stamps.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        auto dt = parse_timestamp_lenient(row[col]);
        if (!dt) return result;
        stamps.push_back(*dt);
    }

    // calendar-month steps first: same day and time, months advance by a
    // constant count
    bool monthly = true;
    int month_step = 0;
    for (size_t i = 1; i < stamps.size(); ++i) {
        const DateTime& a = stamps[i - 1];
        const DateTime& b = stamps[i];
        if (a.day != b.day || a.hour != b.hour || a.minute != b.minute ||
            a.second != b.second) {
            monthly = false;
            break;
        }
        int step = (b.year - a.year) * 12 + (b.month - a.month);
        if (step <= 0 || (month_step && step != month_step)) {
            monthly = false;
            break;
        }
        month_step = step;
    }
    if (monthly && month_step > 0) {
        result.constant = true;
        result.interval = month_step % 12 == 0
                              ? TimeInterval::of(month_step / 12, TimeInterval::Unit::Year)
                              : TimeInterval::of(month_step, TimeInterval::Unit::Month);
        return result;
    }

    long long step = 0;
    for (size_t i = 1; i < stamps.size(); ++i) {
        long long d = to_unix_seconds(stamps[i]) - to_unix_seconds(stamps[i - 1]);
        if (d <= 0 || (step && d != step)) return result;
        step = d;
    }
    if (!step) return result;
    result.constant = true;
    if (step % 86400 == 0)
        result.interval = TimeInterval::of(step / 86400, TimeInterval::Unit::Day);
    else if (step % 60 == 0)
        result.interval = TimeInterval::of(step / 60, TimeInterval::Unit::Min);
    else
        result.constant = false;  // sub-minute steps are out of the schema's units
    if (!result.constant) result.interval = TimeInterval::nan();
    return result;
}

struct ExtractionContext {
    const RawDataset& dataset;
    const std::vector<ColumnProfile>& profiles;
    const KeyColumn& key;
    const IntervalAnalysis& interval;

    bool is_value_column(const std::string& name) const {
        if (name == key.name) return false;
        for (const auto& p : profiles)
            if (p.name == name) return p.kind != ColumnKind::Identifier;
        return false;
    }
};

struct ExtractorEval {
    const ExtractionContext& ctx;

    std::optional<FieldValue> operator()(const ConstantValue& e) const { return e.value; }

    std::optional<FieldValue> operator()(const DatasetName&) const {
        return TextValue{file_stem(ctx.dataset.table.source)};
    }

    std::optional<FieldValue> operator()(const ColumnNameList& e) const {
        ListValue out;
        std::optional<std::regex> re;
        if (!e.pattern.empty()) re.emplace(e.pattern, std::regex::icase);
        for (const auto& name : ctx.dataset.table.header) {
            if (!ctx.is_value_column(name)) continue;
            if (re && !std::regex_search(name, *re)) continue;
            out.items.push_back(name);
        }
        return out;
    }

    std::optional<FieldValue> operator()(const KeyKindDerived&) const {
        return BoolValue{ctx.key.kind == KeyKind::Timestamp};
    }

    std::optional<FieldValue> operator()(const TimestampFormatDerived&) const {
        return PatternValue{ctx.key.kind == KeyKind::Timestamp ? kCanonicalTimestampFormat
                                                               : "NaN"};
    }

    std::optional<FieldValue> operator()(const ConstantIntervalDerived&) const {
        return BoolValue{ctx.interval.constant};
    }

    std::optional<FieldValue> operator()(const IntervalDerived&) const {
        return IntervalValue{ctx.interval.interval};
    }

    std::optional<FieldValue> operator()(const SectorFromColumns&) const {
        bool residential = false, commercial = false;
        for (const auto& name : ctx.dataset.table.header) {
            if (name == ctx.key.name) continue;
            std::string lower;
            for (char c : name)
                lower.push_back(
                    static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
            if (lower.find("residential") != std::string::npos) residential = true;
            if (lower.find("commercial") != std::string::npos) commercial = true;
        }
        const char* sector = residential && commercial ? "All"
                             : commercial              ? "Commercial"
                             : residential             ? "Residential"
                                                       : "Unknown";
        return EnumValue{sector};
    }

    std::optional<FieldValue> operator()(const CoverageFromColumns& e) const {
        std::string raw;
        for (const auto& [label, column] : e.labeled_columns) {
            int col = ctx.dataset.table.column_index(column);
            if (col < 0) continue;
            std::vector<std::string> seen;
            for (const auto& row : ctx.dataset.table.rows) {
                std::string v = trim(row[col]);
                if (v.empty()) continue;
                if (std::find(seen.begin(), seen.end(), v) == seen.end())
                    seen.push_back(v);
            }
            if (seen.empty()) continue;
            if (!raw.empty()) raw += ", ";
            raw += label + ": [";
            bool numeric = all_numeric(seen);
            for (size_t i = 0; i < seen.size(); ++i) {
                if (i) raw += numeric ? " " : ", ";
                raw += numeric ? seen[i] : "'" + seen[i] + "'";
            }
            raw += "]";
        }
        if (raw.empty()) return std::nullopt;
        return CoverageValue{parse_coverage(raw)};
    }

    std::optional<FieldValue> operator()(const CodebookLookup& e) const {
        if (!ctx.dataset.codebook) return std::nullopt;
        auto it = ctx.dataset.codebook->entries.find(e.column);
        if (it == ctx.dataset.codebook->entries.end()) return std::nullopt;
        return TextValue{it->second.label};
    }
};

}  // namespace

AlignmentResult align_rule_based(const RawDataset& dataset, SchemaCategory category,
                                 const RuleSet& rules) {
    const CategorySchema& schema = builtin_schema(category);
    if (rules.category != category)
        throw RuleTargetMissing("rule set \"" + rules.id + "\" targets another category");
    for (const auto& rule : rules.rules)
        if (!schema.find(rule.target)) throw RuleTargetMissing(rule.target);

    std::vector<ColumnProfile> profiles = profile_columns(dataset.table);
    KeyColumn key = detect_key_column(profiles);
    IntervalAnalysis interval = analyze_interval(dataset.table, key);
    ExtractionContext ctx{dataset, profiles, key, interval};

    AlignmentResult result;
    result.provenance = RuleBasedProvenance{rules.id};
    if (key.promoted)
        result.warnings.push_back("no timestamp or identifier column; promoted \"" +
                                  key.name + "\" to the ID key");

    std::map<std::string, FieldValue> extracted;
    for (const auto& rule : rules.rules) {
        auto value = std::visit(ExtractorEval{ctx}, rule.extractor);
        if (value) extracted.emplace(rule.target, std::move(*value));
    }

    MetadataDocument doc;
    doc.category = category;
    for (const auto& spec : schema.fields) {
        auto it = extracted.find(spec.canonical_name);
        if (it != extracted.end()) {
            doc.entries.emplace_back(spec.canonical_name, std::move(it->second));
            continue;
        }
        // schema defaults for unruled fields
        if (spec.kind.tag == FieldKindTag::TextList) {
            doc.entries.emplace_back(spec.canonical_name, ListValue{});
        } else if (spec.kind.tag == FieldKindTag::PairList) {
            doc.entries.emplace_back(spec.canonical_name, GroupListValue{});
        } else if (spec.kind.tag == FieldKindTag::Enum &&
                   std::find(spec.kind.allowed.begin(), spec.kind.allowed.end(),
                             "Unknown") != spec.kind.allowed.end()) {
            doc.entries.emplace_back(spec.canonical_name, EnumValue{"Unknown"});
        } else {
            result.warnings.push_back("no rule produced a value for \"" +
                                      spec.canonical_name + "\"");
        }
    }

    if (key.kind == KeyKind::Timestamp && !dataset.table.rows.empty()) {
        int col = dataset.table.column_index(key.name);
        if (col >= 0) doc.timestamp_sample = dataset.table.rows.front()[col];
    }

    ValidationReport report = validate_document(doc, dataset.table.source);
    if (!report.valid()) throw ProducedInvalidDocument(std::move(report));

    // extraction plan: every list item naming a real value column
    std::set<std::string> planned;
    for (const auto& [name, value] : doc.entries) {
        const auto* list = std::get_if<ListValue>(&value);
        if (!list) continue;
        for (const auto& label : list->items) {
            if (!ctx.is_value_column(label) || planned.count(label)) continue;
            planned.insert(label);
            result.plan.push_back({label, label, key.name, key.kind});
        }
    }

    result.document = std::move(doc);
    return result;
}

// ---------------------------------------------------------------------------
// Bundled rule sets

namespace {

std::vector<RuleSet> build_bundled_rule_sets() {
    std::vector<RuleSet> sets;
    {
        RuleSet s;
        s.id = "cbecs";
        s.category = SchemaCategory::BuildingCharacteristics;
        s.rules = {
            {"Name of Dataset/ Website", DatasetName{}},
            {"Effective coverage",
             CoverageFromColumns{{{"Regions", "REGION"}, {"Census divisions", "CENDIV"}}}},
            {"Sample or Probability", ConstantValue{EnumValue{"Sample"}}},
            {"Building characteristics distribution list", ColumnNameList{""}},
            {"Joint distribution list", ConstantValue{GroupListValue{}}},
        };
        sets.push_back(std::move(s));
    }
    {
        RuleSet s;
        s.id = "eia";
        s.category = SchemaCategory::MacroscopicEnergy;
        s.rules = {
            {"Name of Dataset/ Website",
             ConstantValue{TextValue{"U.S. Energy Information Administration"}}},
            {"Sector", SectorFromColumns{}},
            {"Timeseries", KeyKindDerived{}},
            {"Timestamp format", TimestampFormatDerived{}},
            {"Constant Interval", ConstantIntervalDerived{}},
            {"Time interval", IntervalDerived{}},
            {"Interpolation Methodology", ConstantValue{TextValue{"Unknown"}}},
            {"Effective coverage", ConstantValue{CoverageValue{parse_coverage("U.S.")}}},
            {"Energy Data List", ColumnNameList{""}},
        };
        sets.push_back(std::move(s));
    }
    {
        RuleSet s;
        s.id = "recs";
        s.category = SchemaCategory::OccupantBehavior;
        s.rules = {
            {"Name of Dataset/ Website", ConstantValue{TextValue{"RECS 2020 Public Data"}}},
            {"Timestamp format", TimestampFormatDerived{}},
            {"Constant Interval?", ConstantIntervalDerived{}},
            {"Time interval", IntervalDerived{}},
            {"Behavior Type", ColumnNameList{"USE"}},
            {"Control Action", ColumnNameList{"TEMP|CNTL|HEATHOME|SSLIGHT|WASHTEMP"}},
            {"Behavior Relevant Factors", ColumnNameList{"HDD|CDD"}},
            {"Effective coverage",
             CoverageFromColumns{{{"Region", "REGIONC"}, {"Division", "DIVISION"}}}},
        };
        sets.push_back(std::move(s));
    }
    return sets;
}

const std::vector<RuleSet>& bundled_sets() {
    static const std::vector<RuleSet> sets = build_bundled_rule_sets();
    return sets;
}

}  // namespace

const RuleSet& bundled_rule_set(const std::string& id) {
    for (const auto& s : bundled_sets())
        if (s.id == id) return s;
    throw UnknownRuleSet(id);
}

std::vector<std::string> bundled_rule_set_ids() {
    std::vector<std::string> ids;
    for (const auto& s : bundled_sets()) ids.push_back(s.id);
    return ids;
}

// ---------------------------------------------------------------------------
// metadata.csv parsing

ParsedMetadata parse_metadata_csv(const std::string& text,
                                  std::optional<SchemaCategory> category_hint) {
    if (trim(text).empty()) throw UnresolvableCategory();

    // logical rows: (field, one value per physical row); a row with an empty
    // field cell continues the previous row's value list
    std::vector<std::pair<std::string, std::vector<std::string>>> rows;
    std::string line;
    std::istringstream in(text);
    std::vector<std::string> lines;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    for (const auto& l : lines) {
        if (trim(l).empty()) continue;
        std::vector<std::string> cells = split_delimited_record(l, ',');
        std::string field = trim(cells[0]);
        std::string value = cells.size() > 1 ? trim(cells[1]) : "";
        // tolerate a trailing colon in the field label
        if (!field.empty() && field.back() == ':') field.pop_back(), field = trim(field);
        if (field.empty()) {
            if (!rows.empty() && !value.empty()) rows.back().second.push_back(value);
            continue;
        }
        if (normalize_name(field) == "field" &&
            (value.empty() || normalize_name(value) == "value"))
            continue;  // header row
        rows.push_back({field, {value}});
    }

    // category inference by field-name overlap
    SchemaCategory best = SchemaCategory::Weather;
    int best_count = -1;
    bool tie = false;
    for (SchemaCategory c : schema_categories()) {
        int count = 0;
        for (const auto& [field, values] : rows)
            if (try_resolve_field_name(c, field)) ++count;
        if (count > best_count) {
            best = c;
            best_count = count;
            tie = false;
        } else if (count == best_count) {
            tie = true;
        }
    }
    if (best_count <= 0) {
        if (!category_hint || *category_hint == SchemaCategory::ComprehensiveDataLake)
            throw UnresolvableCategory();
        best = *category_hint;
    } else if (tie && category_hint) {
        // keep the declared category when the evidence does not discriminate
        int hint_count = 0;
        for (const auto& [field, values] : rows)
            if (*category_hint != SchemaCategory::ComprehensiveDataLake &&
                try_resolve_field_name(*category_hint, field))
                ++hint_count;
        if (hint_count == best_count) best = *category_hint;
    }

    const CategorySchema& schema = builtin_schema(best);
    ParsedMetadata result;
    result.document.category = best;

    std::map<std::string, FieldValue> values;
    for (const auto& [field, cell_values] : rows) {
        const std::string* canonical = try_resolve_field_name(best, field);
        if (!canonical) {
            result.unknown_fields.push_back(field);
            continue;
        }
        if (values.count(*canonical)) continue;  // first occurrence wins
        const FieldSpec* spec = schema.find(*canonical);

        const std::string& first = cell_values.front();
        if (spec->kind.tag == FieldKindTag::TextList) {
            ListValue list;
            for (const auto& v : cell_values) {
                if (v.empty()) continue;
                if (v.front() == '[') {
                    FieldValue parsed = cell_to_field_value(*spec, v);
                    auto& items = std::get<ListValue>(parsed).items;
                    list.items.insert(list.items.end(), items.begin(), items.end());
                } else {
                    list.items.push_back(v);
                }
            }
            if (cell_values.size() == 1 && first.empty()) continue;  // absent
            values.emplace(*canonical, std::move(list));
            continue;
        }
        if (first.empty()) continue;  // absent field
        values.emplace(*canonical, cell_to_field_value(*spec, first));
    }

    for (const auto& spec : schema.fields) {
        auto it = values.find(spec.canonical_name);
        if (it != values.end())
            result.document.entries.emplace_back(spec.canonical_name,
                                                 std::move(it->second));
    }
    return result;
}

}  // namespace metaurban
