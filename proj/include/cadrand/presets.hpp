// Bundled benchmark scenarios and their reference values.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cadrand/simulate.hpp"

namespace cadrand {

/// A ready-to-run scenario: one structure/distribution and the three designs
/// compared by the corresponding reference table.
struct PresetScenario {
    std::string table_id;
    CovariateStructure structure;
    CovariateDistribution distribution;
    std::vector<DesignSpec> designs;  // stratified_block, pocock_simon, composite
    std::vector<int> sample_sizes;
    int default_replicates = 1000;
};

/// Scenario for one of {table4, table5, table8, table9, table10}; throws
/// std::invalid_argument for anything else.
PresetScenario preset_scenario(const std::string& table_id);

const std::vector<std::string>& preset_table_ids();

struct ComparisonRow {
    std::string row;   // e.g. "composite.n500"
    std::string stat;  // e.g. "std.stratum.1-1"
    double simulated = 0.0;
    std::optional<double> reference;
};

struct PresetResult {
    std::string table_id;
    std::uint64_t seed = 0;
    int n_replicates = 0;
    std::vector<ComparisonRow> rows;
};

PresetResult run_preset(const std::string& table_id, std::uint64_t seed, int n_replicates,
                        int threads = 1);

struct ReferenceCell {
    const char* row;
    const char* stat;
    double value;
};

/// Reference values keyed like the comparison rows; empty vector for an
/// unknown table id.
const std::vector<ReferenceCell>& reference_cells(const std::string& table_id);

}  // namespace cadrand
