#include "cadrand/config.hpp"

#include <fstream>

namespace cadrand {

namespace {

using nlohmann::json;

const json& require(const json& doc, const std::string& path, const std::string& key) {
    if (!doc.is_object()) {
        throw ConfigError(path.empty() ? "(root)" : path, "must be an object");
    }
    auto it = doc.find(key);
    if (it == doc.end()) {
        throw ConfigError(path.empty() ? key : path + "." + key, "missing required field");
    }
    return *it;
}

double as_number(const json& value, const std::string& field) {
    if (!value.is_number()) throw ConfigError(field, "must be a number");
    return value.get<double>();
}

int as_int(const json& value, const std::string& field) {
    if (!value.is_number_integer()) throw ConfigError(field, "must be an integer");
    return value.get<int>();
}

std::vector<double> as_number_vector(const json& value, const std::string& field) {
    if (!value.is_array()) throw ConfigError(field, "must be an array of numbers");
    std::vector<double> out;
    out.reserve(value.size());
    for (const auto& entry : value) {
        if (!entry.is_number()) throw ConfigError(field, "must be an array of numbers");
        out.push_back(entry.get<double>());
    }
    return out;
}

CovariateStructure parse_structure(const json& doc) {
    const json& levels = require(doc, "structure", "levels");
    if (!levels.is_array() || levels.empty()) {
        throw ConfigError("structure.levels", "must be a non-empty array of integers");
    }
    std::vector<int> values;
    values.reserve(levels.size());
    for (const auto& entry : levels) {
        if (!entry.is_number_integer()) {
            throw ConfigError("structure.levels", "must be a non-empty array of integers");
        }
        values.push_back(entry.get<int>());
    }
    try {
        return CovariateStructure(values);
    } catch (const std::exception& e) {
        throw ConfigError("structure.levels", e.what());
    }
}

CovariateDistribution parse_distribution(const json& doc, const CovariateStructure& structure) {
    const json& dist = require(doc, "", "distribution");
    const json& kind = require(dist, "distribution", "kind");
    if (!kind.is_string()) throw ConfigError("distribution.kind", "must be a string");
    const std::string name = kind.get<std::string>();
    try {
        CovariateDistribution result = [&] {
            if (name == "joint") {
                return CovariateDistribution::joint(as_number_vector(
                    require(dist, "distribution", "probabilities"), "distribution.probabilities"));
            }
            if (name == "independent_uniform") {
                return CovariateDistribution::independent_uniform();
            }
            if (name == "product") {
                return CovariateDistribution::product(
                    as_int(require(dist, "distribution", "factor"), "distribution.factor"),
                    as_number_vector(require(dist, "distribution", "factor_marginal"),
                                     "distribution.factor_marginal"),
                    as_number_vector(require(dist, "distribution", "rest_joint"),
                                     "distribution.rest_joint"));
            }
            throw ConfigError("distribution.kind",
                              "unknown kind '" + name +
                                  "' (expected joint, independent_uniform or product)");
        }();
        result.validate_for(structure);
        return result;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError("distribution", e.what());
    }
}

DesignSpec parse_design(const json& doc, const CovariateStructure& structure) {
    const json& design = require(doc, "", "design");
    const json& kind = require(design, "design", "kind");
    if (!kind.is_string()) throw ConfigError("design.kind", "must be a string");
    const std::string name = kind.get<std::string>();

    auto p_bias = [&]() {
        auto it = design.find("p_bias");
        if (it == design.end()) return 0.85;
        return as_number(*it, "design.p_bias");
    };

    DesignSpec spec;
    if (name == "composite") {
        const double overall =
            as_number(require(design, "design", "w_overall"), "design.w_overall");
        const double stratum =
            as_number(require(design, "design", "w_stratum"), "design.w_stratum");
        std::vector<double> margin =
            as_number_vector(require(design, "design", "w_margin"), "design.w_margin");
        try {
            spec = DesignSpec::composite(WeightConfig(overall, stratum, std::move(margin)),
                                         p_bias());
        } catch (const std::exception& e) {
            throw ConfigError("design", e.what());
        }
    } else if (name == "pocock_simon") {
        spec = DesignSpec::pocock_simon(
            as_number_vector(require(design, "design", "w_margin"), "design.w_margin"), p_bias());
    } else if (name == "stratified_block") {
        spec = DesignSpec::stratified_block(
            as_int(require(design, "design", "block_size"), "design.block_size"));
    } else if (name == "complete") {
        spec = DesignSpec::complete();
    } else {
        throw ConfigError("design.kind",
                          "unknown kind '" + name +
                              "' (expected composite, pocock_simon, stratified_block or complete)");
    }

    // Instantiating against the structure surfaces every remaining
    // incompatibility (margin count, block size, p_bias range).
    try {
        make_design(spec, structure);
    } catch (const std::exception& e) {
        throw ConfigError("design", e.what());
    }
    return spec;
}

RunConfig parse_run(const json& doc) {
    const json& run = require(doc, "", "run");
    RunConfig config;
    config.n_patients = as_int(require(run, "run", "n_patients"), "run.n_patients");
    if (config.n_patients < 0) {
        throw ConfigError("run.n_patients", "must be nonnegative");
    }
    config.n_replicates = as_int(require(run, "run", "n_replicates"), "run.n_replicates");
    if (config.n_replicates < 1) {
        throw ConfigError("run.n_replicates", "must be >= 1");
    }
    if (auto it = run.find("seed"); it != run.end()) {
        if (!it->is_number_unsigned() && !it->is_number_integer()) {
            throw ConfigError("run.seed", "must be an unsigned integer");
        }
        config.seed = it->get<std::uint64_t>();
    }
    if (auto it = run.find("threads"); it != run.end()) {
        config.threads = as_int(*it, "run.threads");
        if (config.threads < 1) throw ConfigError("run.threads", "must be >= 1");
    }
    return config;
}

}  // namespace

OutputFormat parse_output_format(const std::string& text) {
    if (text == "json") return OutputFormat::Json;
    if (text == "csv") return OutputFormat::Csv;
    throw ConfigError("output.format", "unknown format '" + text + "' (expected csv or json)");
}

ExperimentConfig parse_config(const nlohmann::json& doc) {
    CovariateStructure structure = parse_structure(require(doc, "", "structure"));
    CovariateDistribution distribution = parse_distribution(doc, structure);
    DesignSpec design = parse_design(doc, structure);
    RunConfig run = parse_run(doc);

    ExperimentConfig config{std::move(structure), std::move(distribution), std::move(design), run,
                            OutputFormat::Json, ""};
    if (auto it = doc.find("output"); it != doc.end()) {
        if (auto fmt = it->find("format"); fmt != it->end()) {
            if (!fmt->is_string()) throw ConfigError("output.format", "must be a string");
            config.format = parse_output_format(fmt->get<std::string>());
        }
        if (auto dir = it->find("dir"); dir != it->end()) {
            if (!dir->is_string()) throw ConfigError("output.dir", "must be a string");
            config.out_dir = dir->get<std::string>();
        }
    }
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("(file)", "cannot read config file '" + path + "'");
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("(file)", std::string("malformed JSON: ") + e.what());
    }
    return parse_config(doc);
}

}  // namespace cadrand
