#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace metaurban {

struct RawTable {
    std::string source;  // file stem or caller-supplied name
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;  // each row matches header size

    size_t row_count() const { return rows.size(); }
    int column_index(const std::string& name) const;
};

struct CodebookEntry {
    std::string label;
    std::map<std::string, std::string> decodes;  // code -> meaning
    std::optional<std::string> units;
};

struct Codebook {
    std::map<std::string, CodebookEntry> entries;  // keyed by column name
};

enum class ColumnKind { Identifier, Timestamp, Numeric, Categorical, Text };

const char* to_string(ColumnKind kind);

struct ColumnProfile {
    std::string name;
    ColumnKind kind = ColumnKind::Text;
    size_t distinct_count = 0;
    size_t sentinel_count = 0;  // null/sentinel cells
    std::vector<std::string> samples;  // <= 5
};

struct EmptyInput : std::runtime_error {
    EmptyInput() : std::runtime_error("input is empty") {}
};

struct RaggedRows : std::runtime_error {
    size_t line;
    explicit RaggedRows(size_t line_number)
        : std::runtime_error("row at line " + std::to_string(line_number) +
                             " does not match the header cell count"),
          line(line_number) {}
};

// Delimited-text reader: UTF-8 (BOM tolerated), delimiter auto-detected among
// comma/tab/semicolon over the first 20 lines, quoted cells honored, trailing
// empty lines dropped.
RawTable read_table(const std::string& bytes, const std::string& source_name);

// Same parse with a forced delimiter.
RawTable read_table_with_delimiter(const std::string& bytes, const std::string& source_name,
                                   char delimiter);

// Codebook sheets: (variable, code, meaning) rows, or (variable, label) which
// degrades to label-only entries.
Codebook read_codebook(const std::string& bytes, const std::string& source_name);

// Default sentinel cells excluded from kind voting ({-2, -9, ""}).
const std::set<std::string>& default_sentinels();

std::vector<ColumnProfile> profile_columns(const RawTable& table,
                                           const std::set<std::string>& sentinels =
                                               default_sentinels());

enum class KeyKind { Timestamp, Id };

struct KeyColumn {
    KeyKind kind = KeyKind::Id;
    std::string name;
    bool promoted = false;  // leftmost column fallback, worth a warning
};

// First timestamp column, else first identifier column, else the leftmost
// column promoted to an ID key.
KeyColumn detect_key_column(const std::vector<ColumnProfile>& profiles);

// One CSV record (RFC-4180-style quoting) from pre-split physical lines.
std::vector<std::string> split_delimited_record(const std::string& line, char delimiter);

struct RawDataset {
    RawTable table;
    std::optional<Codebook> codebook;
};

}  // namespace metaurban
