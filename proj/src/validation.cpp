#include "metaurban/validation.hpp"

#include <algorithm>

#include "metaurban/timestamp.hpp"

namespace metaurban {

std::string ValidationReport::to_text() const {
    std::string out;
    for (const auto& f : findings) {
        out += f.severity == Severity::Error ? "ERROR " : "WARNING ";
        out += f.rule + " [" + f.field + "] " + f.message + "\n";
    }
    return out;
}

std::string ValidationReport::to_tsv() const {
    std::string out = "severity\trule\tfield\tmessage\n";
    for (const auto& f : findings) {
        out += std::string(f.severity == Severity::Error ? "error" : "warning") + "\t" +
               f.rule + "\t" + f.field + "\t" + f.message + "\n";
    }
    return out;
}

namespace {

const char* kNoField = "∅";

struct Collector {
    const CategorySchema& schema;
    std::vector<std::pair<std::pair<int, std::string>, Finding>> items;

    void add(Severity sev, const std::string& field, const std::string& rule,
             const std::string& message) {
        int pos = field == kNoField ? 1000 : schema.position(field);
        if (pos < 0) pos = 1000;
        items.push_back({{pos, rule}, {sev, field, rule, message}});
    }

    std::vector<Finding> sorted() {
        std::stable_sort(items.begin(), items.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<Finding> out;
        out.reserve(items.size());
        for (auto& [key, f] : items) out.push_back(std::move(f));
        return out;
    }
};

const BoolValue* find_bool(const MetadataDocument& doc, const std::string& name) {
    const FieldValue* v = doc.find(name);
    return v ? std::get_if<BoolValue>(v) : nullptr;
}

}  // namespace

ValidationReport validate_document(const MetadataDocument& doc,
                                   const std::string& document_id) {
    const CategorySchema& schema = builtin_schema(doc.category);
    Collector out{schema, {}};

    // R1: required fields present
    for (const auto& spec : schema.fields) {
        if (spec.required && !doc.find(spec.canonical_name))
            out.add(Severity::Error, spec.canonical_name, "R1",
                    "required field is missing");
    }

    // Per-entry rules
    for (const auto& [name, value] : doc.entries) {
        const FieldSpec* spec = schema.find(name);
        if (!spec) {
            out.add(Severity::Error, name, "R2", "field is not part of the schema");
            continue;
        }
        if (kind_of(value) != spec->kind.tag) {
            out.add(Severity::Error, name, "R2",
                    std::string("expected ") + to_string(spec->kind.tag) + ", got " +
                        to_string(kind_of(value)));
            continue;
        }
        if (const auto* coord = std::get_if<CoordValue>(&value)) {
            if (!coord->value.in_range())
                out.add(Severity::Error, name, "R6", "coordinate out of range");
        }
        if (const auto* pat = std::get_if<PatternValue>(&value)) {
            if (!pattern_well_formed(pat->pattern))
                out.add(Severity::Error, name, "R7",
                        "timestamp pattern is not well formed: " + pat->pattern);
        }
        if (const auto* en = std::get_if<EnumValue>(&value)) {
            bool member = std::find(spec->kind.allowed.begin(), spec->kind.allowed.end(),
                                    en->value) != spec->kind.allowed.end();
            bool is_lod = name == "Levels of detail (LoD)";
            if (!member)
                out.add(Severity::Error, name, is_lod ? "R9" : "R8",
                        "\"" + en->value + "\" is not an allowed value");
        }
    }

    // R3: interval consistency
    const BoolValue* ci = find_bool(doc, "Constant Interval?");
    if (!ci) ci = find_bool(doc, "Constant Interval");
    if (const FieldValue* iv = doc.find("Time interval"); ci && iv) {
        if (const auto* interval = std::get_if<IntervalValue>(iv)) {
            if (ci->value && interval->value.is_nan())
                out.add(Severity::Error, "Time interval", "R3",
                        "constant interval is True but time interval is NaN");
            if (!ci->value && !interval->value.is_nan())
                out.add(Severity::Error, "Time interval", "R3",
                        "constant interval is False but time interval is " +
                            interval->value.serialize());
        }
    }

    // R4: joint distribution groups are a subset of the distribution list
    const FieldValue* joint = doc.find("Joint distribution list");
    const FieldValue* dist = doc.find("Building characteristics distribution list");
    if (joint && dist) {
        const auto* groups = std::get_if<GroupListValue>(joint);
        const auto* items = std::get_if<ListValue>(dist);
        if (groups && items) {
            for (const auto& group : groups->groups)
                for (const auto& member : group)
                    if (std::find(items->items.begin(), items->items.end(), member) ==
                        items->items.end())
                        out.add(Severity::Error, "Joint distribution list", "R4",
                                "\"" + member +
                                    "\" is not in the building characteristics "
                                    "distribution list");
        }
    }

    // R5: probability bounds, when a numeric accompanies the Probability mode
    if (const FieldValue* mode = doc.find("Sample or Probability")) {
        const auto* en = std::get_if<EnumValue>(mode);
        if (en && en->value == "Probability" && doc.probability) {
            if (!(*doc.probability > 0.0 && *doc.probability < 1.0))
                out.add(Severity::Error, "Sample or Probability", "R5",
                        "probability " + format_double(*doc.probability) +
                            " is not in (0, 1)");
        }
    }

    // R10: declared format vs attached raw sample (Warning only)
    if (const FieldValue* fmt = doc.find("Timestamp format"); fmt && doc.timestamp_sample) {
        const auto* pat = std::get_if<PatternValue>(fmt);
        if (pat && pattern_well_formed(pat->pattern) && !pattern_is_nan(pat->pattern)) {
            TimestampCheck check = check_timestamp_sample(pat->pattern, *doc.timestamp_sample);
            if (!check.match)
                out.add(Severity::Warning, "Timestamp format", "R10",
                        "sample \"" + *doc.timestamp_sample +
                            "\" does not match the declared format (" + check.reason + ")");
        }
    }

    ValidationReport report;
    report.document_id = document_id;
    report.findings = out.sorted();
    return report;
}

TimestampCheck check_timestamp_sample(const std::string& pattern, const std::string& sample) {
    std::string reason;
    if (parse_timestamp_strict(pattern, sample, &reason)) return {true, ""};
    return {false, reason};
}

}  // namespace metaurban
