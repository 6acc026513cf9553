#include "cadrand/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "cadrand/presets.hpp"
#include "cadrand/report_io.hpp"
#include "cadrand/theory.hpp"

namespace cadrand::cli {

namespace {

using nlohmann::json;

int map_exception(const std::exception& e, std::ostream& err) {
    err << "error: " << e.what() << '\n';
    if (dynamic_cast<const NumericalError*>(&e)) return kExitNumerical;
    return kExitUsage;
}

void apply_overrides(ExperimentConfig& config, const Overrides& overrides) {
    if (overrides.seed) config.run.seed = *overrides.seed;
    if (overrides.replicates) config.run.n_replicates = *overrides.replicates;
    if (overrides.threads) config.run.threads = *overrides.threads;
    if (overrides.format) config.format = parse_output_format(*overrides.format);
    if (overrides.out_dir) config.out_dir = *overrides.out_dir;
}

void write_or_print(const std::string& text, const std::string& out_dir,
                    const std::string& filename, std::ostream& out) {
    if (out_dir.empty()) {
        out << text;
        if (!text.empty() && text.back() != '\n') out << '\n';
        return;
    }
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path path = std::filesystem::path(out_dir) / filename;
    std::ofstream file(path);
    if (!file) {
        throw ConfigError("output.dir", "cannot write to '" + path.string() + "'");
    }
    file << text;
    out << "wrote " << path.string() << '\n';
}

}  // namespace

int run_simulate(const std::string& config_path, const Overrides& overrides, std::ostream& out,
                 std::ostream& err) {
    try {
        ExperimentConfig config = load_config(config_path);
        apply_overrides(config, overrides);

        const ReplicationReport report =
            replicate(config.design, config.structure, config.distribution,
                      config.run.n_patients, config.run.n_replicates, config.run.seed,
                      config.run.threads);

        if (config.format == OutputFormat::Json) {
            write_or_print(report_to_json(report).dump(2), config.out_dir, "report.json", out);
        } else {
            std::ostringstream csv;
            report_to_csv(report, config.structure, csv);
            write_or_print(csv.str(), config.out_dir, "report.csv", out);
        }
        return kExitOk;
    } catch (const std::exception& e) {
        return map_exception(e, err);
    }
}

WeightCheckConfig load_weight_check(const std::string& path) {
    ExperimentConfig config = [&] {
        std::ifstream in(path);
        if (!in) throw ConfigError("(file)", "cannot read config file '" + path + "'");
        json doc;
        try {
            in >> doc;
        } catch (const json::parse_error& e) {
            throw ConfigError("(file)", std::string("malformed JSON: ") + e.what());
        }
        // Condition checking needs no patient stream: tolerate configs that
        // only carry structure and design.
        if (!doc.contains("distribution")) {
            doc["distribution"] = {{"kind", "independent_uniform"}};
        }
        if (!doc.contains("run")) {
            doc["run"] = {{"n_patients", 0}, {"n_replicates", 1}};
        }
        return parse_config(doc);
    }();

    switch (config.design.kind) {
        case DesignSpec::Kind::Composite:
            return {config.structure, *config.design.weights};
        case DesignSpec::Kind::PocockSimon:
            return {config.structure, WeightConfig(0.0, 0.0, config.design.margin_weights)};
        default:
            throw ConfigError("design.kind", "design '" + config.design.name() +
                                                 "' carries no imbalance weights to check");
    }
}

int run_check_weights(const std::string& config_path, std::ostream& out, std::ostream& err) {
    try {
        const WeightCheckConfig config = load_weight_check(config_path);
        const ConditionReport report = check_all(config.structure, config.weights);
        out << condition_report_to_json(report).dump(2) << '\n';
        return report.recurrence_certified ? kExitOk : kExitCondition;
    } catch (const std::exception& e) {
        return map_exception(e, err);
    }
}

int run_reproduce(const std::string& table_id, std::uint64_t seed, int replicates, int threads,
                  const std::optional<std::string>& format, std::ostream& out,
                  std::ostream& err) {
    try {
        const PresetResult result = run_preset(table_id, seed, replicates, threads);

        const OutputFormat fmt = format ? parse_output_format(*format) : OutputFormat::Json;
        const bool as_csv = format && fmt == OutputFormat::Csv;
        const bool as_json = format && fmt == OutputFormat::Json;

        if (as_json) {
            json rows = json::array();
            for (const ComparisonRow& row : result.rows) {
                json entry{{"row", row.row}, {"stat", row.stat}, {"simulated", row.simulated}};
                if (row.reference) {
                    entry["reference"] = *row.reference;
                    if (*row.reference != 0.0) {
                        entry["rel_dev"] = (row.simulated - *row.reference) / *row.reference;
                    } else {
                        entry["rel_dev"] = nullptr;
                    }
                }
                rows.push_back(entry);
            }
            out << json{{"table", result.table_id},
                        {"seed", result.seed},
                        {"n_replicates", result.n_replicates},
                        {"cells", rows}}
                       .dump(2)
                << '\n';
            return kExitOk;
        }

        if (as_csv) {
            out << "row,stat,simulated,reference,rel_dev\n";
            for (const ComparisonRow& row : result.rows) {
                out << row.row << ',' << row.stat << ',' << row.simulated << ',';
                if (row.reference) {
                    out << *row.reference << ',';
                    if (*row.reference != 0.0) {
                        out << (row.simulated - *row.reference) / *row.reference;
                    }
                }
                out << '\n';
            }
            return kExitOk;
        }

        // Aligned text table.
        out << result.table_id << "  (seed " << result.seed << ", " << result.n_replicates
            << " replicates)\n";
        out << std::left << std::setw(28) << "row" << std::setw(34) << "stat" << std::right
            << std::setw(10) << "simulated" << std::setw(11) << "reference" << std::setw(10)
            << "rel_dev" << '\n';
        for (const ComparisonRow& row : result.rows) {
            out << std::left << std::setw(28) << row.row << std::setw(34) << row.stat
                << std::right << std::fixed << std::setprecision(3) << std::setw(10)
                << row.simulated;
            if (row.reference) {
                out << std::setw(11) << *row.reference;
                if (*row.reference != 0.0) {
                    out << std::setw(9)
                        << (row.simulated - *row.reference) / *row.reference * 100.0 << '%';
                } else {
                    out << std::setw(10) << "-";
                }
            }
            out << '\n';
            out.unsetf(std::ios::fixed);
        }
        return kExitOk;
    } catch (const std::exception& e) {
        return map_exception(e, err);
    }
}

int run_drift_diag(const std::string& config_path, const Overrides& overrides, std::ostream& out,
                   std::ostream& err) {
    try {
        ExperimentConfig config = load_config(config_path);
        apply_overrides(config, overrides);

        const CovariateStructure& structure = config.structure;
        if (structure.levels() != std::vector<int>{2, 2}) {
            throw ConfigError("structure.levels",
                              "drift diagnostic supports 2x2 structures only");
        }
        if (config.design.kind != DesignSpec::Kind::Composite) {
            throw ConfigError("design.kind", "drift diagnostic requires the composite design");
        }
        const WeightConfig& weights = *config.design.weights;
        const double p_bias = config.design.p_bias;

        const std::vector<double> probs_vec = config.distribution.stratum_probabilities(structure);
        const std::array<double, 4> probs{probs_vec[0], probs_vec[1], probs_vec[2], probs_vec[3]};

        // Evaluate the drift along one simulated trajectory, including the
        // initial zero state.
        RngStream rng(config.run.seed, 0);
        auto design = make_design(config.design, structure);
        ImbalanceState state(structure);

        json rows = json::array();
        double max_discrepancy = 0.0;
        for (int step = 0; step <= config.run.n_patients; ++step) {
            const DriftDiagnostic drift = drift_delta_v(state, weights, p_bias, probs);
            const double discrepancy = std::abs(drift.exact - drift.closed_form);
            max_discrepancy = std::max(max_discrepancy, discrepancy);
            rows.push_back({{"step", step},
                            {"exact", drift.exact},
                            {"closed_form", drift.closed_form},
                            {"discrepancy", discrepancy}});
            if (step == config.run.n_patients) break;

            const PatientProfile profile = config.distribution.sample(structure, rng);
            const Arm arm = design->next_assignment(state, profile, rng.next_double());
            state.apply(profile, arm);
        }

        if (config.format == OutputFormat::Csv) {
            std::ostringstream csv;
            csv << "step,exact,closed_form,discrepancy\n";
            for (const auto& row : rows) {
                csv << row["step"] << ',' << row["exact"].get<double>() << ','
                    << row["closed_form"].get<double>() << ','
                    << row["discrepancy"].get<double>() << '\n';
            }
            write_or_print(csv.str(), config.out_dir, "drift.csv", out);
        } else {
            write_or_print(json{{"states_sampled", rows.size()},
                                {"max_discrepancy", max_discrepancy},
                                {"rows", rows}}
                               .dump(2),
                           config.out_dir, "drift.json", out);
        }
        return kExitOk;
    } catch (const std::exception& e) {
        return map_exception(e, err);
    }
}

}  // namespace cadrand::cli
