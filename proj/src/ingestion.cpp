#include "metaurban/ingestion.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <regex>

#include "metaurban/timestamp.hpp"

namespace metaurban {

int RawTable::column_index(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

const char* to_string(ColumnKind kind) {
    switch (kind) {
        case ColumnKind::Identifier: return "identifier";
        case ColumnKind::Timestamp: return "timestamp";
        case ColumnKind::Numeric: return "numeric";
        case ColumnKind::Categorical: return "categorical";
        case ColumnKind::Text: return "text";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_lines(const std::string& bytes) {
    std::vector<std::string> lines;
    std::string cur;
    bool in_quotes = false;
    for (size_t i = 0; i < bytes.size(); ++i) {
        char c = bytes[i];
        if (c == '"') in_quotes = !in_quotes;
        if (c == '\n' && !in_quotes) {
            if (!cur.empty() && cur.back() == '\r') cur.pop_back();
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) {
        if (cur.back() == '\r') cur.pop_back();
        lines.push_back(cur);
    }
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    return lines;
}

}  // namespace

std::vector<std::string> split_delimited_record(const std::string& line, char delimiter) {
    std::vector<std::string> cells;
    std::string cur;
    bool in_quotes = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"' && cur.empty()) {
            in_quotes = true;
        } else if (c == delimiter) {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    return cells;
}

namespace {

char detect_delimiter(const std::vector<std::string>& lines) {
    const char candidates[] = {',', '\t', ';'};
    char best = ',';
    long best_score = -1;
    size_t probe = std::min<size_t>(lines.size(), 20);
    for (char d : candidates) {
        // score: column count if consistent over the probe window, else the
        // most common count, penalized
        std::map<size_t, size_t> counts;
        for (size_t i = 0; i < probe; ++i)
            counts[split_delimited_record(lines[i], d).size()]++;
        size_t mode_count = 0, mode_freq = 0;
        for (auto& [cols, freq] : counts)
            if (freq > mode_freq || (freq == mode_freq && cols > mode_count)) {
                mode_count = cols;
                mode_freq = freq;
            }
        bool consistent = counts.size() == 1;
        if (mode_count < 2) continue;
        long score = static_cast<long>(mode_count) * 100 + (consistent ? 50 : 0) +
                     static_cast<long>(mode_freq);
        if (score > best_score) {
            best_score = score;
            best = d;
        }
    }
    return best;
}

}  // namespace

RawTable read_table_with_delimiter(const std::string& bytes, const std::string& source_name,
                                   char delimiter) {
    std::string content = bytes;
    if (content.size() >= 3 && content.compare(0, 3, "\xEF\xBB\xBF") == 0)
        content.erase(0, 3);
    std::vector<std::string> lines = split_lines(content);
    if (lines.empty()) throw EmptyInput();

    RawTable table;
    table.source = source_name;
    table.header = split_delimited_record(lines[0], delimiter);
    for (auto& h : table.header) h = trim(h);
    if (std::any_of(table.header.begin(), table.header.end(),
                    [](const std::string& h) { return h.empty(); }))
        throw RaggedRows(1);

    for (size_t i = 1; i < lines.size(); ++i) {
        std::vector<std::string> cells = split_delimited_record(lines[i], delimiter);
        if (cells.size() != table.header.size()) throw RaggedRows(i + 1);
        table.rows.push_back(std::move(cells));
    }
    return table;
}

RawTable read_table(const std::string& bytes, const std::string& source_name) {
    std::string content = bytes;
    if (content.size() >= 3 && content.compare(0, 3, "\xEF\xBB\xBF") == 0)
        content.erase(0, 3);
    std::vector<std::string> lines = split_lines(content);
    if (lines.empty()) throw EmptyInput();
    return read_table_with_delimiter(bytes, source_name, detect_delimiter(lines));
}

Codebook read_codebook(const std::string& bytes, const std::string& source_name) {
    RawTable table = read_table(bytes, source_name);
    Codebook book;
    if (table.header.size() >= 3) {
        // (variable, code, meaning[, units])
        for (const auto& row : table.rows) {
            CodebookEntry& entry = book.entries[trim(row[0])];
            if (entry.label.empty()) entry.label = trim(row[0]);
            std::string code = trim(row[1]);
            if (code.empty())
                entry.label = trim(row[2]);  // code-less row carries the label
            else
                entry.decodes[code] = trim(row[2]);
            if (table.header.size() >= 4 && !trim(row[3]).empty())
                entry.units = trim(row[3]);
        }
    } else if (table.header.size() == 2) {
        // (variable, label): label-only entries
        for (const auto& row : table.rows) {
            CodebookEntry& entry = book.entries[trim(row[0])];
            entry.label = trim(row[1]);
        }
    } else {
        throw RaggedRows(1);
    }
    return book;
}

const std::set<std::string>& default_sentinels() {
    static const std::set<std::string> s = {"-2", "-9", ""};
    return s;
}

namespace {

bool parse_integer(const std::string& cell, long long* out) {
    std::string t = trim(cell);
    if (t.empty()) return false;
    char* end = nullptr;
    long long v = std::strtoll(t.c_str(), &end, 10);
    if (end != t.c_str() + t.size()) return false;
    if (out) *out = v;
    return true;
}

bool parse_number(const std::string& cell) {
    std::string t = trim(cell);
    if (t.empty()) return false;
    char* end = nullptr;
    std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size();
}

bool name_looks_like_id(const std::string& name) {
    static const std::regex id_re("id", std::regex::icase);
    return std::regex_search(name, id_re);
}

}  // namespace

std::vector<ColumnProfile> profile_columns(const RawTable& table,
                                           const std::set<std::string>& sentinels) {
    std::vector<ColumnProfile> profiles;
    profiles.reserve(table.header.size());

    for (size_t col = 0; col < table.header.size(); ++col) {
        ColumnProfile p;
        p.name = table.header[col];

        std::set<std::string> distinct;
        size_t voting = 0, numeric = 0, integer = 0, timestamp = 0;
        bool increasing = true;
        bool all_int = true;
        long long prev = 0;
        bool have_prev = false;

        for (const auto& row : table.rows) {
            const std::string& cell = row[col];
            std::string t = trim(cell);
            distinct.insert(t);
            if (sentinels.count(t)) {
                ++p.sentinel_count;
                continue;  // sentinels never vote
            }
            ++voting;
            if (p.samples.size() < 5) p.samples.push_back(t);

            long long v = 0;
            if (parse_integer(t, &v)) {
                ++integer;
                if (have_prev && v <= prev) increasing = false;
                prev = v;
                have_prev = true;
            } else {
                all_int = false;
            }
            if (parse_number(t)) ++numeric;
            if (parse_timestamp_lenient(t)) ++timestamp;
        }

        p.distinct_count = distinct.size();

        if (voting > 0 && all_int && integer == voting && increasing &&
            name_looks_like_id(p.name)) {
            p.kind = ColumnKind::Identifier;
        } else if (voting > 0 && timestamp * 100 >= voting * 95) {
            p.kind = ColumnKind::Timestamp;
        } else if (voting > 0 && numeric * 100 >= voting * 95) {
            p.kind = ColumnKind::Numeric;
        } else if (!table.rows.empty() &&
                   p.distinct_count * 5 <= table.rows.size() && p.distinct_count <= 50) {
            p.kind = ColumnKind::Categorical;
        } else {
            p.kind = ColumnKind::Text;
        }
        profiles.push_back(std::move(p));
    }
    return profiles;
}

KeyColumn detect_key_column(const std::vector<ColumnProfile>& profiles) {
    for (const auto& p : profiles)
        if (p.kind == ColumnKind::Timestamp) return {KeyKind::Timestamp, p.name, false};
    for (const auto& p : profiles)
        if (p.kind == ColumnKind::Identifier) return {KeyKind::Id, p.name, false};
    return {KeyKind::Id, profiles.front().name, true};
}

}  // namespace metaurban
