// Acceptance gate: one pass/fail line per criterion, exit 0 only when all pass.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "metaurban/alignment.hpp"
#include "metaurban/cli.hpp"
#include "metaurban/emission.hpp"
#include "metaurban/llm_client.hpp"
#include "metaurban/timestamp.hpp"
#include "metaurban/validation.hpp"
#include "test_support.hpp"

using namespace metaurban;
using namespace testsup;
namespace fs = std::filesystem;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool condition, const std::string& what) {
        if (!condition && ok) {
            ok = false;
            detail = what;
        }
    }
};

RawDataset load_dataset(const std::string& data_name, const std::string& codebook_name = "") {
    RawDataset ds;
    ds.table = read_table(slurp(fixture_path(data_name)), data_name);
    if (!codebook_name.empty())
        ds.codebook = read_codebook(slurp(fixture_path(codebook_name)), codebook_name);
    return ds;
}

std::string cell_of(const MetadataDocument& doc, const std::string& field) {
    const FieldValue* v = doc.find(field);
    return v ? field_value_to_cell(*v) : "<absent>";
}

fs::path fresh_dir(const char* tag) {
    fs::path p = fs::temp_directory_path() / (std::string("metaurban_accept_") + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

int run_cli_quiet(std::vector<std::string> args) {
    std::ostringstream out, err;
    return run_cli(args, out, err);
}

// --- criteria --------------------------------------------------------------

Check criterion_1() {
    Check c;
    auto start = std::chrono::steady_clock::now();
    RawDataset ds = load_dataset("cbecs2018_final_public.csv", "cbecs2018_codebook.csv");
    AlignmentResult result = align_rule_based(ds, SchemaCategory::BuildingCharacteristics,
                                              bundled_rule_set("cbecs"));
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                         .count();

    c.expect(cell_of(result.document, "Name of Dataset/ Website") ==
                 "cbecs2018_final_public",
             "dataset name cell");
    c.expect(cell_of(result.document, "Sample or Probability") == "Sample",
             "sample/probability cell");
    c.expect(cell_of(result.document, "Joint distribution list") == "[]",
             "joint distribution cell");
    const FieldValue* dist =
        result.document.find("Building characteristics distribution list");
    c.expect(dist && std::holds_alternative<ListValue>(*dist), "distribution list kind");
    if (c.ok) {
        const auto& items = std::get<ListValue>(*dist).items;
        c.expect(items.size() >= 4 && items[0] == "REGION" && items[1] == "CENDIV" &&
                     items[2] == "PBA" && items[3] == "SQFT",
                 "distribution list order");
    }
    c.expect(seconds < 1.0, "runtime " + format_double(seconds) + "s >= 1s");
    return c;
}

Check criterion_2() {
    Check c;
    RawDataset ds = load_dataset("cbecs2018_final_public.csv");
    AlignmentResult result = align_rule_based(ds, SchemaCategory::BuildingCharacteristics,
                                              bundled_rule_set("cbecs"));
    fs::path dir = fresh_dir("c2");
    emit_all(result, ds.table, dir.string());

    std::string pba = slurp((dir / "PBA.csv").string());
    c.expect(pba == "ID,PBA\n1,2\n2,2\n3,8\n4,5\n5,5\n6,14\n7,14\n8,5\n9,25\n10,14\n",
             "PBA.csv bytes");
    std::string mfbtu = slurp((dir / "MFBTU.csv").string());
    c.expect(mfbtu.rfind("ID,MFBTU\n1,29727152\n", 0) == 0, "MFBTU.csv row 1");
    fs::remove_all(dir);
    return c;
}

Check criterion_3() {
    Check c;
    RawDataset ds = load_dataset("eia_monthly.csv");
    AlignmentResult result = align_rule_based(ds, SchemaCategory::MacroscopicEnergy,
                                              bundled_rule_set("eia"));

    c.expect(cell_of(result.document, "Sector") == "Commercial", "sector cell");
    c.expect(cell_of(result.document, "Timeseries") == "TRUE", "timeseries cell");
    c.expect(cell_of(result.document, "Time interval") == "1 month", "interval cell");
    c.expect(cell_of(result.document, "Interpolation Methodology") == "Unknown",
             "interpolation cell");
    c.expect(cell_of(result.document, "Effective coverage") == "U.S.", "coverage cell");

    const FieldValue* list = result.document.find("Energy Data List");
    c.expect(list && std::holds_alternative<ListValue>(*list), "energy list kind");
    if (c.ok) {
        const auto& items = std::get<ListValue>(*list).items;
        c.expect(items.size() == 13, "energy list has 13 entries");
        bool found = false;
        for (const auto& i : items)
            found |= i == "Total Primary Energy Consumed by the Commercial Sector";
        c.expect(found, "total primary entry present");
    }

    fs::path dir = fresh_dir("c3");
    emit_all(result, ds.table, dir.string());
    std::string series =
        slurp((dir / "Total_Primary_Energy_Consumed_by_the_Commercial_Sector.csv").string());
    std::istringstream in(series);
    std::string header, row1;
    std::getline(in, header);
    std::getline(in, row1);
    size_t comma = row1.find(',');
    c.expect(comma != std::string::npos, "series row 1 shape");
    if (c.ok) {
        auto key = parse_timestamp_lenient(row1.substr(0, comma));
        c.expect(key.has_value() && *key == DateTime{1973, 1, 1, 0, 0, 0},
                 "series row 1 key parses to 1973-01-01 00:00:00");
        c.expect(row1.substr(comma + 1) == "657.977", "series row 1 value");
    }
    fs::remove_all(dir);
    return c;
}

Check criterion_4() {
    Check c;
    RawDataset ds = load_dataset("recs2020.csv");
    AlignmentResult result = align_rule_based(ds, SchemaCategory::OccupantBehavior,
                                              bundled_rule_set("recs"));

    c.expect(cell_of(result.document, "Constant Interval?") == "FALSE",
             "constant interval cell");
    c.expect(cell_of(result.document, "Time interval") == "NaN", "interval cell");
    const FieldValue* brf = result.document.find("Behavior Relevant Factors");
    c.expect(brf && std::holds_alternative<ListValue>(*brf) &&
                 std::get<ListValue>(*brf).items ==
                     std::vector<std::string>{"HDD65", "CDD65"},
             "behavior relevant factors");

    fs::path dir = fresh_dir("c4");
    emit_all(result, ds.table, dir.string());
    std::string temphome = slurp((dir / "TEMPHOME.csv").string());
    c.expect(temphome.find("100001,70\n") != std::string::npos, "TEMPHOME row for 100001");
    std::string temphomeac = slurp((dir / "TEMPHOMEAC.csv").string());
    c.expect(temphomeac.find("100008,-2\n") != std::string::npos,
             "sentinel row passes through");
    std::string tempgoneac = slurp((dir / "TEMPGONEAC.csv").string());
    c.expect(tempgoneac.find("100008,-2\n") != std::string::npos,
             "second sentinel row passes through");
    fs::remove_all(dir);
    return c;
}

Check criterion_5() {
    Check c;
    c.expect(build_prompt(SchemaCategory::BuildingCharacteristics, true) ==
                 slurp(golden_path("prompt_building_characteristics.txt")),
             "prompt differs from the golden file");
    return c;
}

Check criterion_6() {
    Check c;
    Gen g(1);
    const auto& cats = schema_categories();
    for (int i = 0; i < 1000 && c.ok; ++i) {
        SchemaCategory category = cats[i % cats.size()];
        MetadataDocument doc = random_document(g, category);
        try {
            ParsedMetadata back = parse_metadata_csv(write_metadata_csv(doc));
            c.expect(back.document == doc,
                     "document " + std::to_string(i) + " changed in the round trip");
        } catch (const std::exception& e) {
            c.expect(false, "document " + std::to_string(i) + ": " + e.what());
        }
    }
    return c;
}

Check criterion_7() {
    Check c;
    Gen g(2);
    for (int i = 0; i < 1000 && c.ok; ++i) {
        MetadataDocument doc = random_document(g, random_category(g));
        if (i % 2) doc = mutate_document(g, doc);
        ValidationReport report = validate_document(doc);
        c.expect(reports_agree(report, naive_validate(doc)),
                 "validators disagree on document " + std::to_string(i));
    }
    return c;
}

Check criterion_8() {
    Check c;
    Gen g(3);
    for (int poly = 0; poly < 50 && c.ok; ++poly) {
        std::vector<Ring> rings;
        EffectiveCoverage cov = parse_coverage(random_polygon_geojson(g, &rings));
        int checked = 0;
        while (checked < 1000 && c.ok) {
            double px = g.dreal(-60.0, 60.0), py = g.dreal(-60.0, 60.0);
            if (edge_distance(rings, px, py) < 1e-9) continue;
            ++checked;
            bool expected = winding_inside(rings, px, py);
            Containment got = contains_point(cov, {py, px});
            c.expect(got == (expected ? Containment::Inside : Containment::Outside),
                     "polygon " + std::to_string(poly) + " point (" + format_double(px) +
                         ", " + format_double(py) + ")");
        }
    }
    return c;
}

Check criterion_9() {
    Check c;
    setenv("METAURBAN_LLM_TOKEN", "test-token", 1);

    RawDataset ds = load_dataset("cbecs2018_final_public.csv", "cbecs2018_codebook.csv");
    AlignmentResult ruled = align_rule_based(ds, SchemaCategory::BuildingCharacteristics,
                                             bundled_rule_set("cbecs"));

    httplib::Server server;
    std::string reply_content =
        "```\n" + slurp(golden_path("cbecs_metadata.csv")) + "```";
    std::atomic<bool> malformed{false};
    server.Post("/v1/chat/completions", [&](const httplib::Request&, httplib::Response& res) {
        nlohmann::json reply = {
            {"choices",
             nlohmann::json::array({nlohmann::json{
                 {"message",
                  nlohmann::json{{"content", malformed ? "no table here"
                                                       : reply_content}}}}})}};
        res.set_content(reply.dump(), "application/json");
    });
    int port = server.bind_to_any_port("127.0.0.1");
    std::thread listener([&] { server.listen_after_bind(); });
    server.wait_until_ready();
    std::string endpoint = "http://127.0.0.1:" + std::to_string(port) +
                           "/v1/chat/completions";

    LlmEndpointConfig cfg;
    cfg.base_url = endpoint;
    cfg.model_id = "test-model";
    cfg.max_retries = 0;
    cfg.timeout_seconds = 5;
    try {
        AlignmentResult llm = align_llm(ds, SchemaCategory::BuildingCharacteristics, cfg);
        c.expect(llm.document == ruled.document, "mock-aligned document differs");
    } catch (const std::exception& e) {
        c.expect(false, std::string("mock alignment threw: ") + e.what());
    }

    fs::path dir = fresh_dir("c9");
    std::string data = fixture_path("cbecs2018_final_public.csv");
    int transport = run_cli_quiet({"align", "--category", "building-characteristics",
                                   "--aligner", "llm", "--endpoint", "http://127.0.0.1:1",
                                   "--model", "test-model", "--data", data, "--out",
                                   dir.string()});
    c.expect(transport == 3, "transport failure exit code " + std::to_string(transport));

    malformed = true;
    int bad_reply = run_cli_quiet({"align", "--category", "building-characteristics",
                                   "--aligner", "llm", "--endpoint", endpoint, "--model",
                                   "test-model", "--data", data, "--out", dir.string()});
    c.expect(bad_reply == 1, "malformed reply exit code " + std::to_string(bad_reply));

    server.stop();
    listener.join();
    fs::remove_all(dir);
    return c;
}

Check criterion_10() {
    Check c;
    struct Case {
        const char* data;
        const char* codebook;
        const char* category;
        const char* rules;
    } cases[] = {
        {"cbecs2018_final_public.csv", "cbecs2018_codebook.csv",
         "building-characteristics", "cbecs"},
        {"eia_monthly.csv", nullptr, "macro-energy", "eia"},
        {"recs2020.csv", nullptr, "occupant-behavior", "recs"},
    };
    for (const Case& k : cases) {
        fs::path dir = fresh_dir(k.rules);
        std::vector<std::string> args = {"align",  "--category", k.category,
                                         "--rules", k.rules,     "--data",
                                         fixture_path(k.data),   "--out", dir.string()};
        if (k.codebook) {
            args.push_back("--codebook");
            args.push_back(fixture_path(k.codebook));
        }
        int aligned = run_cli_quiet(args);
        c.expect(aligned == 0,
                 std::string(k.rules) + " align exit code " + std::to_string(aligned));
        int validated = run_cli_quiet({"validate", (dir / "metadata.csv").string()});
        c.expect(validated == 0,
                 std::string(k.rules) + " validate exit code " + std::to_string(validated));
        fs::remove_all(dir);
    }
    return c;
}

}  // namespace

int main() {
    struct Criterion {
        const char* label;
        std::function<Check()> run;
    } criteria[] = {
        {"criterion 1: survey metadata cells, fixture order, < 1 s", criterion_1},
        {"criterion 2: emitted PBA.csv and MFBTU.csv rows", criterion_2},
        {"criterion 3: timeseries metadata cells and first series row", criterion_3},
        {"criterion 4: occupant metadata cells and sentinel pass-through", criterion_4},
        {"criterion 5: engineered prompt matches the golden file", criterion_5},
        {"criterion 6: write/parse round trip on 1000 generated documents", criterion_6},
        {"criterion 7: validator agrees with the naive oracle on 1000 documents",
         criterion_7},
        {"criterion 8: ray casting agrees with the winding-number oracle", criterion_8},
        {"criterion 9: mock endpoint alignment and transport exit codes", criterion_9},
        {"criterion 10: align then validate exits 0 for all fixtures", criterion_10},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        Check result;
        try {
            result = criterion.run();
        } catch (const std::exception& e) {
            result.ok = false;
            result.detail = std::string("exception: ") + e.what();
        }
        if (result.ok) {
            std::printf("PASS %s\n", criterion.label);
        } else {
            std::printf("FAIL %s (%s)\n", criterion.label, result.detail.c_str());
            ++failures;
        }
    }
    return failures == 0 ? 0 : 1;
}
