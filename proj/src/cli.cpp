#include "metaurban/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "metaurban/alignment.hpp"
#include "metaurban/emission.hpp"
#include "metaurban/llm_client.hpp"
#include "metaurban/schema.hpp"
#include "metaurban/validation.hpp"

namespace metaurban {

namespace {

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int cmd_schema_show(const std::string& token, std::ostream& out, std::ostream& err) {
    auto category = category_from_token(token);
    if (!category) {
        err << "unknown category \"" << token << "\"\n";
        return kExitInputError;
    }
    if (*category == SchemaCategory::ComprehensiveDataLake) {
        err << to_string(*category) << ": no field schema defined\n";
        return kExitInputError;
    }
    const CategorySchema& schema = builtin_schema(*category);
    for (const auto& field : schema.fields) {
        out << field.canonical_name << " [" << to_string(field.kind.tag);
        if (field.kind.tag == FieldKindTag::Enum) {
            out << " ";
            for (size_t i = 0; i < field.kind.allowed.size(); ++i)
                out << (i ? "|" : "{") << field.kind.allowed[i];
            out << "}";
        }
        if (field.required) out << ", required";
        out << "] " << field.notes << "\n";
    }
    return kExitOk;
}

int cmd_validate(const std::string& path, const std::string& category_token_arg,
                 std::ostream& out, std::ostream& err) {
    auto bytes = read_file(path);
    if (!bytes) {
        err << "cannot read " << path << "\n";
        return kExitInputError;
    }
    std::optional<SchemaCategory> hint;
    if (!category_token_arg.empty()) {
        hint = category_from_token(category_token_arg);
        if (!hint) {
            err << "unknown category \"" << category_token_arg << "\"\n";
            return kExitInputError;
        }
    }
    try {
        ParsedMetadata parsed = parse_metadata_csv(*bytes, hint);
        for (const auto& field : parsed.unknown_fields)
            out << "WARNING unknown field \"" << field << "\" skipped\n";
        ValidationReport report = validate_document(parsed.document, path);
        out << report.to_text();
        if (report.valid()) {
            out << "OK: " << path << " (" << category_token(parsed.document.category)
                << ")\n";
            return kExitOk;
        }
        out << "INVALID: " << path << " (" << report.error_count() << " errors)\n";
        return kExitInvalid;
    } catch (const UnresolvableCategory& e) {
        err << e.what() << "\n";
        return kExitInputError;
    } catch (const MalformedListLiteral& e) {
        err << e.what() << "\n";
        return kExitInputError;
    } catch (const MalformedCell& e) {
        err << e.what() << "\n";
        return kExitInputError;
    }
}

struct AlignOptions {
    std::string category;
    std::string aligner = "rules";
    std::string rules;
    std::string data;
    std::string codebook;
    std::string out_dir = ".";
    std::string sentinels;
    size_t row_cap = 200;
    std::string endpoint;
    std::string model;
};

int cmd_align(const AlignOptions& opt, std::ostream& out, std::ostream& err) {
    auto category = category_from_token(opt.category);
    if (!category || *category == SchemaCategory::ComprehensiveDataLake) {
        err << "unknown or schema-less category \"" << opt.category << "\"\n";
        return kExitInputError;
    }

    auto data_bytes = read_file(opt.data);
    if (!data_bytes) {
        err << "cannot read " << opt.data << "\n";
        return kExitInputError;
    }

    RawDataset dataset;
    try {
        dataset.table = read_table(*data_bytes, opt.data);
        if (!opt.codebook.empty()) {
            auto codebook_bytes = read_file(opt.codebook);
            if (!codebook_bytes) {
                err << "cannot read " << opt.codebook << "\n";
                return kExitInputError;
            }
            dataset.codebook = read_codebook(*codebook_bytes, opt.codebook);
        }
    } catch (const EmptyInput& e) {
        err << opt.data << ": " << e.what() << "\n";
        return kExitInputError;
    } catch (const RaggedRows& e) {
        err << opt.data << ": " << e.what() << "\n";
        return kExitInputError;
    }

    AlignmentResult result;
    try {
        if (opt.aligner == "rules") {
            const RuleSet& rules = bundled_rule_set(opt.rules);
            result = align_rule_based(dataset, *category, rules);
        } else if (opt.aligner == "llm") {
            if (opt.endpoint.empty()) {
                err << "--endpoint is required with --aligner llm\n";
                return kExitTransport;
            }
            LlmEndpointConfig cfg;
            cfg.base_url = opt.endpoint;
            cfg.model_id = opt.model;
            cfg.upload_row_cap = opt.row_cap;
            if (!std::getenv(cfg.auth_env.c_str())) {
                err << "environment variable " << cfg.auth_env << " is not set\n";
                return kExitTransport;
            }
            result = align_llm(dataset, *category, cfg);
        } else {
            err << "unknown aligner \"" << opt.aligner << "\"\n";
            return kExitInputError;
        }
    } catch (const UnknownRuleSet& e) {
        err << e.what() << "\n";
        return kExitInputError;
    } catch (const RuleTargetMissing& e) {
        err << e.what() << "\n";
        return kExitInputError;
    } catch (const ProducedInvalidDocument& e) {
        err << e.what();
        return kExitInvalid;
    } catch (const NoCsvInResponse& e) {
        err << e.what() << "\n";
        return kExitInvalid;
    } catch (const EndpointUnreachable& e) {
        err << e.what() << "\n";
        return kExitTransport;
    } catch (const HttpError& e) {
        err << e.what() << "\n";
        return kExitTransport;
    }

    for (const auto& warning : result.warnings) err << "WARNING " << warning << "\n";

    try {
        std::vector<std::string> written = emit_all(result, dataset.table, opt.out_dir);
        for (const auto& name : written) out << name << "\n";
    } catch (const InvalidDocument& e) {
        err << e.what();
        return kExitInvalid;
    } catch (const MissingColumn& e) {
        err << e.what() << "\n";
        return kExitInputError;
    } catch (const UnparseableTimestamp& e) {
        err << e.what() << "\n";
        return kExitInputError;
    } catch (const IoFailure& e) {
        err << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Semantic schema toolkit for open urban building energy data"};
    app.require_subcommand(1);

    // schema show <category>
    CLI::App* schema_cmd = app.add_subcommand("schema", "Schema reference");
    CLI::App* show_cmd = schema_cmd->add_subcommand("show", "Print a category's fields");
    std::string show_category;
    show_cmd->add_option("category", show_category,
                         "weather|gis|occupant-behavior|building-characteristics|"
                         "macro-energy|micro-energy|data-lake")
        ->required();

    // validate <metadata.csv>
    CLI::App* validate_cmd = app.add_subcommand("validate", "Validate a metadata.csv");
    std::string validate_path, validate_category;
    validate_cmd->add_option("path", validate_path, "metadata.csv to check")->required();
    validate_cmd->add_option("--category", validate_category,
                             "category hint when field overlap ties");

    // align
    AlignOptions opt;
    CLI::App* align_cmd = app.add_subcommand("align", "Align a raw dataset to the schema");
    align_cmd->add_option("--category", opt.category, "target category token")->required();
    align_cmd->add_option("--aligner", opt.aligner, "rules|llm (default rules)");
    align_cmd->add_option("--rules", opt.rules, "bundled rule set id (cbecs|eia|recs)");
    align_cmd->add_option("--data", opt.data, "File 1: the data table")->required();
    align_cmd->add_option("--codebook", opt.codebook, "File 2: the optional codebook");
    align_cmd->add_option("--out", opt.out_dir, "output directory");
    align_cmd->add_option("--sentinels", opt.sentinels,
                          "comma-separated sentinel cells (default -2,-9,empty)");
    align_cmd->add_option("--row-cap", opt.row_cap, "rows uploaded per file (llm)");
    align_cmd->add_option("--endpoint", opt.endpoint, "chat-completion endpoint URL");
    align_cmd->add_option("--model", opt.model, "model id (llm)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitInputError;
    }

    if (show_cmd->parsed()) return cmd_schema_show(show_category, out, err);
    if (validate_cmd->parsed()) return cmd_validate(validate_path, validate_category, out, err);
    if (align_cmd->parsed()) return cmd_align(opt, out, err);
    err << app.help();
    return kExitInputError;
}

}  // namespace metaurban
