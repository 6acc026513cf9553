#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cadrand/cli.hpp"
#include "cadrand/presets.hpp"
#include "cadrand/report_io.hpp"

using namespace cadrand;
using nlohmann::json;

namespace {

struct TempFile {
    std::filesystem::path path;

    explicit TempFile(const json& doc) {
        static int counter = 0;
        path = std::filesystem::temp_directory_path() /
               ("cadrand_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++) + ".json");
        std::ofstream out(path);
        out << doc.dump(2);
    }
    ~TempFile() { std::filesystem::remove(path); }
};

json base_config() {
    return json{
        {"structure", {{"levels", {2, 2}}}},
        {"distribution", {{"kind", "joint"}, {"probabilities", {0.1, 0.2, 0.3, 0.4}}}},
        {"design",
         {{"kind", "composite"},
          {"w_overall", 0.3},
          {"w_stratum", 0.5},
          {"w_margin", {0.1, 0.1}},
          {"p_bias", 0.85}}},
        {"run", {{"n_patients", 50}, {"n_replicates", 20}, {"seed", 4242}}}};
}

}  // namespace

TEST_CASE("config parsing accepts a complete document") {
    const ExperimentConfig config = parse_config(base_config());
    CHECK(config.structure.stratum_count() == 4);
    CHECK(config.design.kind == DesignSpec::Kind::Composite);
    CHECK(config.run.n_patients == 50);
    CHECK(config.run.seed == 4242);
    CHECK(config.format == OutputFormat::Json);
}

TEST_CASE("config parsing reports the offending field") {
    auto expect_field = [](json doc, const std::string& field) {
        try {
            parse_config(doc);
            FAIL_CHECK("expected ConfigError for " << field);
        } catch (const ConfigError& e) {
            CHECK(e.field() == field);
        }
    };

    json no_levels = base_config();
    no_levels["structure"].erase("levels");
    expect_field(no_levels, "structure.levels");

    json bad_weights = base_config();
    bad_weights["design"]["w_overall"] = 0.2;  // sums to 0.9
    expect_field(bad_weights, "design");

    json zero_reps = base_config();
    zero_reps["run"]["n_replicates"] = 0;
    expect_field(zero_reps, "run.n_replicates");

    json bad_kind = base_config();
    bad_kind["distribution"]["kind"] = "mystery";
    expect_field(bad_kind, "distribution.kind");

    json bad_probs = base_config();
    bad_probs["distribution"]["probabilities"] = {0.5, 0.5};
    expect_field(bad_probs, "distribution");

    json odd_block = base_config();
    odd_block["design"] = {{"kind", "stratified_block"}, {"block_size", 5}};
    expect_field(odd_block, "design");
}

TEST_CASE("simulate command writes a schema-valid report") {
    TempFile config(base_config());
    std::ostringstream out, err;
    const int code = cli::run_simulate(config.path.string(), {}, out, err);
    CHECK(code == cli::kExitOk);
    CHECK(err.str().empty());

    const json doc = json::parse(out.str());
    CHECK(validate_report_json(doc).empty());
    CHECK(doc["n_replicates"] == 20);
}

TEST_CASE("simulate command emits CSV when asked") {
    TempFile config(base_config());
    cli::Overrides overrides;
    overrides.format = "csv";
    overrides.replicates = 5;
    std::ostringstream out, err;
    CHECK(cli::run_simulate(config.path.string(), overrides, out, err) == cli::kExitOk);
    CHECK(out.str().rfind("level,identifier,statistic,value\n", 0) == 0);
    CHECK(out.str().find("overall,,std,") != std::string::npos);
    CHECK(out.str().find("stratum,2-2,mean_abs,") != std::string::npos);
}

TEST_CASE("simulate command writes files into the output directory") {
    TempFile config(base_config());
    const auto dir = std::filesystem::temp_directory_path() /
                     ("cadrand_out_" + std::to_string(::getpid()));
    cli::Overrides overrides;
    overrides.out_dir = dir.string();
    overrides.replicates = 5;
    std::ostringstream out, err;
    CHECK(cli::run_simulate(config.path.string(), overrides, out, err) == cli::kExitOk);
    CHECK(std::filesystem::exists(dir / "report.json"));

    std::ifstream in(dir / "report.json");
    json doc;
    in >> doc;
    CHECK(validate_report_json(doc).empty());
    std::filesystem::remove_all(dir);
}

TEST_CASE("simulate command rejects schema violations with exit 1") {
    json doc = base_config();
    doc["run"]["n_replicates"] = 0;
    TempFile config(doc);
    std::ostringstream out, err;
    CHECK(cli::run_simulate(config.path.string(), {}, out, err) == cli::kExitUsage);
    CHECK(err.str().find("run.n_replicates") != std::string::npos);

    std::ostringstream out2, err2;
    CHECK(cli::run_simulate("/nonexistent/config.json", {}, out2, err2) == cli::kExitUsage);
}

TEST_CASE("check-weights command: exit codes follow the conditions") {
    json good = base_config();
    TempFile good_file(good);
    std::ostringstream out, err;
    CHECK(cli::run_check_weights(good_file.path.string(), out, err) == cli::kExitOk);
    const json report = json::parse(out.str());
    CHECK(report["condition_a"] == true);
    CHECK(report["condition_b"]["satisfied"] == true);

    json bad = base_config();
    bad["design"] = {{"kind", "pocock_simon"}, {"w_margin", {0.5, 0.5}}, {"p_bias", 0.85}};
    TempFile bad_file(bad);
    std::ostringstream out2, err2;
    CHECK(cli::run_check_weights(bad_file.path.string(), out2, err2) == cli::kExitCondition);
    CHECK(json::parse(out2.str())["condition_b"]["satisfied"] == false);

    json bound = base_config();
    bound["design"]["w_overall"] = 0.2;
    bound["design"]["w_margin"] = {0.25, 0.25};
    bound["design"]["w_stratum"] = 0.3;
    TempFile bound_file(bound);
    std::ostringstream out3, err3;
    CHECK(cli::run_check_weights(bound_file.path.string(), out3, err3) == cli::kExitCondition);
    const json report3 = json::parse(out3.str());
    CHECK(report3["condition_b_prime"]["satisfied"] == false);

    json no_weights = base_config();
    no_weights["design"] = {{"kind", "complete"}};
    TempFile no_weights_file(no_weights);
    std::ostringstream out4, err4;
    CHECK(cli::run_check_weights(no_weights_file.path.string(), out4, err4) == cli::kExitUsage);
}

TEST_CASE("reproduce command: unknown table id fails with usage error") {
    std::ostringstream out, err;
    CHECK(cli::run_reproduce("table6", 1, 5, 1, std::nullopt, out, err) == cli::kExitUsage);
    CHECK(err.str().find("unknown table id") != std::string::npos);
}

TEST_CASE("reproduce command: text and json outputs carry the reference cells") {
    std::ostringstream out, err;
    CHECK(cli::run_reproduce("table4", 7, 10, 2, std::nullopt, out, err) == cli::kExitOk);
    CHECK(out.str().find("composite.n1000") != std::string::npos);
    CHECK(out.str().find("std.stratum.1-1") != std::string::npos);

    std::ostringstream jout, jerr;
    CHECK(cli::run_reproduce("table4", 7, 10, 2, std::string("json"), jout, jerr) ==
          cli::kExitOk);
    const json doc = json::parse(jout.str());
    CHECK(doc["table"] == "table4");
    CHECK(doc["cells"].size() == 45);
    bool found_reference = false;
    for (const auto& cell : doc["cells"]) {
        if (cell.contains("reference")) found_reference = true;
    }
    CHECK(found_reference);
}

TEST_CASE("multi-site preset: factor marginal times rest joint") {
    const PresetScenario scenario = preset_scenario("table8");
    CHECK(scenario.structure.stratum_count() == 160);
    const auto probs = scenario.distribution.stratum_probabilities(scenario.structure);
    double total = 0.0;
    for (double p : probs) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    // Large site 19, male, under 60, moderate disease: (11/120) * (10/20).
    const int r = scenario.structure.stratum_index(PatientProfile{{19, 1, 1, 1}});
    CHECK(probs[r] == doctest::Approx(11.0 / 120 * 10.0 / 20).epsilon(1e-12));
    // Small site 1, female, 60 plus, severe disease: (1/120) * (1/20).
    const int s = scenario.structure.stratum_index(PatientProfile{{1, 2, 2, 2}});
    CHECK(probs[s] == doctest::Approx(1.0 / 120 * 1.0 / 20).epsilon(1e-12));
}

TEST_CASE("reproduce presets are seed-stable") {
    const PresetResult a = run_preset("table8", 11, 15, 1);
    const PresetResult b = run_preset("table8", 11, 15, 4);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].row == b.rows[i].row);
        CHECK(a.rows[i].stat == b.rows[i].stat);
        CHECK(a.rows[i].simulated == b.rows[i].simulated);
    }
}

TEST_CASE("drift-diag command: fair coin yields a flat drift of 4") {
    json doc = base_config();
    doc["design"]["p_bias"] = 0.5;
    doc["run"]["n_patients"] = 25;
    TempFile config(doc);
    std::ostringstream out, err;
    CHECK(cli::run_drift_diag(config.path.string(), {}, out, err) == cli::kExitOk);
    const json result = json::parse(out.str());
    CHECK(result["states_sampled"] == 26);
    CHECK(result["max_discrepancy"].get<double>() <= 1e-10);
    for (const auto& row : result["rows"]) {
        CHECK(row["exact"].get<double>() == doctest::Approx(4.0));
    }
}

TEST_CASE("drift-diag command: zero-length trajectory samples only the zero state") {
    json doc = base_config();
    doc["run"]["n_patients"] = 0;
    TempFile config(doc);
    std::ostringstream out, err;
    CHECK(cli::run_drift_diag(config.path.string(), {}, out, err) == cli::kExitOk);
    const json result = json::parse(out.str());
    CHECK(result["states_sampled"] == 1);
    CHECK(result["rows"][0]["exact"].get<double>() == doctest::Approx(4.0));
}

TEST_CASE("drift-diag command: guards structure, design and probabilities") {
    json wide = base_config();
    wide["structure"]["levels"] = {2, 3};
    wide["distribution"] = {{"kind", "independent_uniform"}};
    wide["design"]["w_margin"] = {0.1, 0.1};
    TempFile wide_file(wide);
    std::ostringstream out, err;
    CHECK(cli::run_drift_diag(wide_file.path.string(), {}, out, err) == cli::kExitUsage);
    CHECK(err.str().find("2x2") != std::string::npos);

    json zero_prob = base_config();
    zero_prob["distribution"]["probabilities"] = {0.0, 0.3, 0.3, 0.4};
    TempFile zero_file(zero_prob);
    std::ostringstream out2, err2;
    CHECK(cli::run_drift_diag(zero_file.path.string(), {}, out2, err2) == cli::kExitNumerical);
}

TEST_CASE("emitted reports re-parse under the schema validator") {
    const auto report = replicate(DesignSpec::stratified_block(4), CovariateStructure({2, 2}),
                                  CovariateDistribution::joint({0.1, 0.2, 0.3, 0.4}), 40, 10, 3);
    const json doc = report_to_json(report);
    CHECK(validate_report_json(doc).empty());

    json broken = doc;
    broken.erase("overall");
    CHECK_FALSE(validate_report_json(broken).empty());

    json wrong_type = doc;
    wrong_type["design"] = 12;
    CHECK_FALSE(validate_report_json(wrong_type).empty());
}
