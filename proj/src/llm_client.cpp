#include "metaurban/llm_client.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "metaurban/emission.hpp"
#include "metaurban/validation.hpp"

namespace metaurban {

namespace {

using nlohmann::json;

// "http://host:1234/v1/chat" -> ("http://host:1234", "/v1/chat")
std::pair<std::string, std::string> split_url(const std::string& url) {
    size_t scheme = url.find("://");
    size_t path = scheme == std::string::npos ? url.find('/')
                                              : url.find('/', scheme + 3);
    if (path == std::string::npos) return {url, "/v1/chat/completions"};
    return {url.substr(0, path), url.substr(path)};
}

std::string capped_table_text(const RawTable& table, size_t row_cap) {
    std::string out;
    auto join = [](const std::vector<std::string>& cells) {
        std::string line;
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) line += ",";
            line += csv_escape(cells[i]);
        }
        return line;
    };
    out += join(table.header) + "\n";
    size_t n = std::min(table.rows.size(), row_cap);
    for (size_t i = 0; i < n; ++i) out += join(table.rows[i]) + "\n";
    return out;
}

}  // namespace

std::optional<std::string> extract_csv_block(const std::string& reply) {
    size_t fence = reply.find("```");
    if (fence != std::string::npos) {
        size_t start = reply.find('\n', fence);
        if (start != std::string::npos) {
            size_t close = reply.find("```", start);
            if (close != std::string::npos)
                return reply.substr(start + 1, close - start - 1);
        }
    }
    // fall back: from a line that looks like the metadata header or a
    // field,value pair
    std::istringstream in(reply);
    std::string line;
    size_t offset = 0;
    while (std::getline(in, line)) {
        std::string t = line;
        if (!t.empty() && t.back() == '\r') t.pop_back();
        if (t.rfind("Field,", 0) == 0) {
            size_t pos = reply.find(line, offset);
            return reply.substr(pos);
        }
        offset += line.size() + 1;
    }
    return std::nullopt;
}

AlignmentResult align_llm(const RawDataset& dataset, SchemaCategory category,
                          const LlmEndpointConfig& cfg) {
    std::string prompt = build_prompt(category, dataset.codebook.has_value());

    std::string content = prompt;
    content += "\nFile 1:\n" + capped_table_text(dataset.table, cfg.upload_row_cap);
    // File 2 travels as raw label/decode rows
    if (dataset.codebook) {
        content += "\nFile 2:\nvariable,code,meaning\n";
        for (const auto& [name, entry] : dataset.codebook->entries) {
            if (entry.decodes.empty())
                content += csv_escape(name) + ",," + csv_escape(entry.label) + "\n";
            for (const auto& [code, meaning] : entry.decodes)
                content += csv_escape(name) + "," + csv_escape(code) + "," +
                           csv_escape(meaning) + "\n";
        }
    }

    json body = {
        {"model", cfg.model_id},
        {"messages", json::array({json{{"role", "user"}, {"content", content}}})},
    };

    auto [host, path] = split_url(cfg.base_url);
    httplib::Client client(host);
    client.set_connection_timeout(cfg.timeout_seconds);
    client.set_read_timeout(cfg.timeout_seconds);

    httplib::Headers headers;
    if (const char* token = std::getenv(cfg.auth_env.c_str()); token && *token)
        headers.emplace("Authorization", std::string("Bearer ") + token);

    httplib::Result res;
    int attempts = std::max(1, cfg.max_retries + 1);
    for (int i = 0; i < attempts; ++i) {
        res = client.Post(path, headers, body.dump(), "application/json");
        if (res) break;
    }
    if (!res) throw EndpointUnreachable(httplib::to_string(res.error()));
    if (res->status != 200) throw HttpError(res->status);

    json reply = json::parse(res->body, nullptr, false);
    std::string text;
    if (!reply.is_discarded() && reply.contains("choices") && !reply["choices"].empty()) {
        const json& message = reply["choices"][0].value("message", json::object());
        text = message.value("content", "");
    }
    if (text.empty()) throw NoCsvInResponse();

    std::optional<std::string> csv = extract_csv_block(text);
    if (!csv) throw NoCsvInResponse();

    ParsedMetadata parsed = parse_metadata_csv(*csv, category);

    ValidationReport report = validate_document(parsed.document, dataset.table.source);
    if (!report.valid()) throw ProducedInvalidDocument(std::move(report));

    AlignmentResult result;
    result.document = std::move(parsed.document);
    result.provenance = LlmProvenance{cfg.model_id, digest_hex(prompt)};

    // plan from the document's list fields, same contract as the rule path
    std::vector<ColumnProfile> profiles = profile_columns(dataset.table);
    KeyColumn key = detect_key_column(profiles);
    std::set<std::string> planned;
    for (const auto& [name, value] : result.document.entries) {
        const auto* list = std::get_if<ListValue>(&value);
        if (!list) continue;
        for (const auto& label : list->items) {
            if (dataset.table.column_index(label) < 0 || label == key.name ||
                planned.count(label))
                continue;
            planned.insert(label);
            result.plan.push_back({label, label, key.name, key.kind});
        }
    }
    return result;
}

}  // namespace metaurban
