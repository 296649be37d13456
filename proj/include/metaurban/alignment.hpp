#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "metaurban/ingestion.hpp"
#include "metaurban/schema.hpp"
#include "metaurban/validation.hpp"

namespace metaurban {

// --- rule-based aligner -----------------------------------------------------

struct ConstantValue {
    FieldValue value;
};
// Source file stem ("cbecs2018_final_public.csv" -> "cbecs2018_final_public").
struct DatasetName {};
// Column names matching an optional case-insensitive pattern, key column and
// identifier columns excluded, table order preserved.
struct ColumnNameList {
    std::string pattern;  // empty = all non-key columns
};
// Boolean from the detected key kind (timestamp key -> true).
struct KeyKindDerived {};
// Canonical declared format when a timestamp key exists, else "NaN".
struct TimestampFormatDerived {};
// True when consecutive key timestamps step by one constant interval.
struct ConstantIntervalDerived {};
// The constant step itself ("1 month", "1 day", ...), NaN when none.
struct IntervalDerived {};
// Residential/Commercial/All/Unknown from sector words in column names.
struct SectorFromColumns {};
// "Label1: [v ...], Label2: [v ...]" from distinct column values in
// first-appearance order.
struct CoverageFromColumns {
    std::vector<std::pair<std::string, std::string>> labeled_columns;  // (label, column)
};
// Codebook label of a column, as text.
struct CodebookLookup {
    std::string column;
};

using Extractor =
    std::variant<ConstantValue, DatasetName, ColumnNameList, KeyKindDerived,
                 TimestampFormatDerived, ConstantIntervalDerived, IntervalDerived,
                 SectorFromColumns, CoverageFromColumns, CodebookLookup>;

struct FieldRule {
    std::string target;  // canonical field name
    Extractor extractor;
};

struct RuleSet {
    std::string id;
    SchemaCategory category;
    std::vector<FieldRule> rules;  // each target at most once
};

struct RuleTargetMissing : std::runtime_error {
    explicit RuleTargetMissing(const std::string& target)
        : std::runtime_error("rule target \"" + target + "\" is not in the schema") {}
};

struct UnknownRuleSet : std::runtime_error {
    explicit UnknownRuleSet(const std::string& id)
        : std::runtime_error("unknown rule set \"" + id + "\"") {}
};

struct ProducedInvalidDocument : std::runtime_error {
    ValidationReport report;
    explicit ProducedInvalidDocument(ValidationReport r)
        : std::runtime_error("alignment produced an invalid document:\n" + r.to_text()),
          report(std::move(r)) {}
};

// Bundled sets: "cbecs", "eia", "recs".
const RuleSet& bundled_rule_set(const std::string& id);
std::vector<std::string> bundled_rule_set_ids();

// --- results ----------------------------------------------------------------

struct PlanEntry {
    std::string variable_label;
    std::string source_column;
    std::string key_column;
    KeyKind key_kind = KeyKind::Id;
    bool operator==(const PlanEntry&) const = default;
};

struct RuleBasedProvenance {
    std::string rule_set_id;
};
struct LlmProvenance {
    std::string model_id;
    std::string prompt_digest;
};
using Provenance = std::variant<RuleBasedProvenance, LlmProvenance>;

struct AlignmentResult {
    MetadataDocument document;
    std::vector<PlanEntry> plan;
    Provenance provenance;
    std::vector<std::string> warnings;
};

// --- operations -------------------------------------------------------------

// Renders the engineered prompt for a category: opening sentence, the file
// sentence (codebook clause omitted when has_codebook is false), the target
// schema block between “ and ” markers, and the two task paragraphs.
std::string build_prompt(SchemaCategory category, bool has_codebook);

// Applies each rule in order; unruled fields fall back to schema defaults
// (empty list for list kinds, the Unknown enum variant when available, else
// omitted with a warning). The resulting document must validate with zero
// errors or ProducedInvalidDocument is thrown.
AlignmentResult align_rule_based(const RawDataset& dataset, SchemaCategory category,
                                 const RuleSet& rules);

struct UnresolvableCategory : std::runtime_error {
    UnresolvableCategory() : std::runtime_error("cannot infer a schema category") {}
};

struct ParsedMetadata {
    MetadataDocument document;
    std::vector<std::string> unknown_fields;  // collected, parsing continued
};

// Parses (field, value) rows; field names resolved per category; category
// inferred by best field-name overlap, ties broken by the hint. The "Field,
// Value" header row is optional; rows with an empty field cell continue the
// previous list value.
ParsedMetadata parse_metadata_csv(const std::string& text,
                                  std::optional<SchemaCategory> category_hint = std::nullopt);

// FNV-1a 64 hex digest, used for prompt provenance.
std::string digest_hex(const std::string& text);

}  // namespace metaurban
