#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "metaurban/alignment.hpp"
#include "metaurban/ingestion.hpp"
#include "metaurban/schema.hpp"

namespace metaurban {

struct ProcessedSeries {
    KeyKind key_kind = KeyKind::Id;
    std::string variable_label;
    std::vector<std::pair<std::string, std::string>> rows;  // (key cell, value cell)

    // "timestamp"/"ID" header, label verbatim, LF newlines, minimal quoting.
    std::string to_csv() const;
};

struct InvalidDocument : std::runtime_error {
    ValidationReport report;
    explicit InvalidDocument(ValidationReport r)
        : std::runtime_error("document does not validate:\n" + r.to_text()),
          report(std::move(r)) {}
};

struct MissingColumn : std::runtime_error {
    explicit MissingColumn(const std::string& name)
        : std::runtime_error("column \"" + name + "\" is not in the table") {}
};

struct UnparseableTimestamp : std::runtime_error {
    size_t row;
    UnparseableTimestamp(size_t row_number, const std::string& cell)
        : std::runtime_error("row " + std::to_string(row_number) +
                             ": cannot parse timestamp \"" + cell + "\""),
          row(row_number) {}
};

struct IoFailure : std::runtime_error {
    explicit IoFailure(const std::string& path)
        : std::runtime_error("cannot write " + path) {}
};

// Canonical metadata.csv: "Field,Value" header, one row per schema field in
// table order (absent optional fields leave the value cell empty), lists as
// bracketed single-quoted literals, booleans TRUE/FALSE, LF newlines.
// Throws InvalidDocument when the document has validation errors.
std::string write_metadata_csv(const MetadataDocument& doc);

// Projects (key, variable) in source row order; timestamp keys are re-rendered
// in the declared format; value cells pass through verbatim (sentinels kept).
ProcessedSeries emit_series(const RawTable& table, const KeyColumn& key,
                            const std::string& variable,
                            const std::optional<std::string>& timestamp_format);

// Writes metadata.csv plus one "<sanitized label>.csv" per plan entry into
// out_dir; returns the written file names in plan order. Overwrites.
std::vector<std::string> emit_all(const AlignmentResult& result, const RawTable& table,
                                  const std::string& out_dir);

// Non-alphanumerics become "_" in file names; the header keeps the raw label.
std::string sanitize_label(const std::string& label);

// Minimal RFC-4180 quoting.
std::string csv_escape(const std::string& cell);

}  // namespace metaurban
