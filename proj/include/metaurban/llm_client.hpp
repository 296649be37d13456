#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "metaurban/alignment.hpp"
#include "metaurban/ingestion.hpp"

namespace metaurban {

struct LlmEndpointConfig {
    std::string base_url;                       // scheme://host[:port][/path]
    std::string model_id;
    std::string auth_env = "METAURBAN_LLM_TOKEN";  // token read from this env var
    int timeout_seconds = 60;                   // > 0
    int max_retries = 2;                        // <= 5
    size_t upload_row_cap = 200;                // data rows sent per file
};

struct EndpointUnreachable : std::runtime_error {
    explicit EndpointUnreachable(const std::string& detail)
        : std::runtime_error("endpoint unreachable: " + detail) {}
};

struct HttpError : std::runtime_error {
    int status;
    explicit HttpError(int status_code)
        : std::runtime_error("endpoint returned HTTP " + std::to_string(status_code)),
          status(status_code) {}
};

struct NoCsvInResponse : std::runtime_error {
    NoCsvInResponse() : std::runtime_error("no CSV block in the model response") {}
};

struct MissingToken : std::runtime_error {
    explicit MissingToken(const std::string& var)
        : std::runtime_error("environment variable " + var + " is not set"),
          variable(var) {}
    std::string variable;
};

// POSTs {model, messages:[{role,content}]} with the prompt and row-capped file
// contents, pulls the first CSV block out of the reply, parses and validates
// it. Transport failures raise EndpointUnreachable/HttpError; model failures
// raise NoCsvInResponse/ProducedInvalidDocument.
AlignmentResult align_llm(const RawDataset& dataset, SchemaCategory category,
                          const LlmEndpointConfig& cfg);

// First fenced code block, else the text from a "Field,Value"-style header
// line onward. Exposed for tests.
std::optional<std::string> extract_csv_block(const std::string& reply);

}  // namespace metaurban
