#include "metaurban/emission.hpp"

#include <filesystem>
#include <fstream>

#include "metaurban/timestamp.hpp"

namespace metaurban {

std::string csv_escape(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

std::string sanitize_label(const std::string& label) {
    std::string out;
    out.reserve(label.size());
    for (unsigned char c : label) out.push_back(std::isalnum(c) ? char(c) : '_');
    return out;
}

std::string write_metadata_csv(const MetadataDocument& doc) {
    ValidationReport report = validate_document(doc);
    if (!report.valid()) throw InvalidDocument(std::move(report));

    const CategorySchema& schema = builtin_schema(doc.category);
    std::string out = "Field,Value\n";
    for (const auto& spec : schema.fields) {
        const FieldValue* value = doc.find(spec.canonical_name);
        out += csv_escape(spec.canonical_name) + ",";
        if (value) out += csv_escape(field_value_to_cell(*value));
        out += "\n";
    }
    return out;
}

std::string ProcessedSeries::to_csv() const {
    std::string out = key_kind == KeyKind::Timestamp ? "timestamp" : "ID";
    out += "," + csv_escape(variable_label) + "\n";
    for (const auto& [key, value] : rows)
        out += csv_escape(key) + "," + csv_escape(value) + "\n";
    return out;
}

ProcessedSeries emit_series(const RawTable& table, const KeyColumn& key,
                            const std::string& variable,
                            const std::optional<std::string>& timestamp_format) {
    int key_col = table.column_index(key.name);
    if (key_col < 0) throw MissingColumn(key.name);
    int var_col = table.column_index(variable);
    if (var_col < 0) throw MissingColumn(variable);

    ProcessedSeries series;
    series.key_kind = key.kind;
    series.variable_label = variable;
    series.rows.reserve(table.rows.size());

    bool render = key.kind == KeyKind::Timestamp && timestamp_format &&
                  !pattern_is_nan(*timestamp_format);
    for (size_t i = 0; i < table.rows.size(); ++i) {
        std::string key_cell = table.rows[i][key_col];
        if (render) {
            auto dt = parse_timestamp_lenient(key_cell);
            if (!dt) throw UnparseableTimestamp(i + 1, key_cell);
            key_cell = render_timestamp(*timestamp_format, *dt);
        }
        series.rows.emplace_back(std::move(key_cell), table.rows[i][var_col]);
    }
    return series;
}

std::vector<std::string> emit_all(const AlignmentResult& result, const RawTable& table,
                                  const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);

    auto write_file = [&](const std::string& name, const std::string& content) {
        fs::path path = fs::path(out_dir) / name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out || !(out << content)) throw IoFailure(path.string());
    };

    std::optional<std::string> declared_format;
    if (const FieldValue* fmt = result.document.find("Timestamp format"))
        if (const auto* pat = std::get_if<PatternValue>(fmt))
            declared_format = pat->pattern;

    std::vector<std::string> written;
    write_file("metadata.csv", write_metadata_csv(result.document));
    written.push_back("metadata.csv");

    for (const auto& entry : result.plan) {
        KeyColumn key{entry.key_kind, entry.key_column, false};
        ProcessedSeries series =
            emit_series(table, key, entry.source_column, declared_format);
        series.variable_label = entry.variable_label;
        std::string name = sanitize_label(entry.variable_label) + ".csv";
        write_file(name, series.to_csv());
        written.push_back(name);
    }
    return written;
}

}  // namespace metaurban
