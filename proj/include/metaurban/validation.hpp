#pragma once

#include <string>
#include <vector>

#include "metaurban/schema.hpp"

namespace metaurban {

enum class Severity { Error, Warning };

struct Finding {
    Severity severity = Severity::Error;
    std::string field;  // "∅" for document-level findings
    std::string rule;   // "R1".."R10"
    std::string message;
    bool operator==(const Finding&) const = default;
};

struct ValidationReport {
    std::string document_id;
    std::vector<Finding> findings;  // ordered by (field position, rule id)

    bool valid() const {
        for (const auto& f : findings)
            if (f.severity == Severity::Error) return false;
        return true;
    }
    int error_count() const {
        int n = 0;
        for (const auto& f : findings) n += f.severity == Severity::Error;
        return n;
    }

    // One finding per line: "ERROR R3 [Time interval] message".
    std::string to_text() const;
    // Tab-separated (severity, rule, field, message) rows for CI consumption.
    std::string to_tsv() const;
};

// Runs every rule, no fail-fast. Throws NoSchemaForCategory for the data-lake
// category. Rules:
//   R1 required-field presence          R6 coordinate range
//   R2 kind conformance                 R7 timestamp pattern well-formedness
//   R3 interval consistency             R8 enum membership
//   R4 joint-distribution subset        R9 LoD membership
//   R5 probability bounds               R10 declared format vs sample (Warning)
ValidationReport validate_document(const MetadataDocument& doc,
                                   const std::string& document_id = "");

struct TimestampCheck {
    bool match = false;
    std::string reason;  // set on mismatch
};

// Token-wise check of a sample against a declared pattern (pattern must pass R7).
TimestampCheck check_timestamp_sample(const std::string& pattern, const std::string& sample);

}  // namespace metaurban
