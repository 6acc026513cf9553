// JSON experiment configuration: parsing and schema validation.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cadrand/design.hpp"
#include "cadrand/distribution.hpp"

namespace cadrand {

/// Schema violation; `field` is the dotted path of the offending entry.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

enum class OutputFormat { Json, Csv };

struct RunConfig {
    int n_patients = 0;
    int n_replicates = 1;
    std::uint64_t seed = 0;
    int threads = 1;
};

/// Top-level config: {structure, distribution, design, run, output?}.
struct ExperimentConfig {
    CovariateStructure structure;
    CovariateDistribution distribution;
    DesignSpec design;
    RunConfig run;
    OutputFormat format = OutputFormat::Json;
    std::string out_dir;  // empty = stdout
};

/// Parses and validates a config document. Throws ConfigError with a
/// field-level message on any schema violation.
ExperimentConfig parse_config(const nlohmann::json& doc);

/// Reads a config file from disk; throws ConfigError on unreadable files or
/// malformed JSON.
ExperimentConfig load_config(const std::string& path);

OutputFormat parse_output_format(const std::string& text);

}  // namespace cadrand
