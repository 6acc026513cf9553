// Command implementations behind the cadrand executable; separated from the
// argument parser so they can be exercised directly in tests.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "cadrand/config.hpp"

namespace cadrand::cli {

// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;      // usage or schema violation
inline constexpr int kExitCondition = 2;  // weight conditions not satisfied
inline constexpr int kExitNumerical = 3;  // numerical failure

/// Command-line overrides applied on top of a config file.
struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> replicates;
    std::optional<int> threads;
    std::optional<std::string> format;
    std::optional<std::string> out_dir;
};

int run_simulate(const std::string& config_path, const Overrides& overrides, std::ostream& out,
                 std::ostream& err);

int run_check_weights(const std::string& config_path, std::ostream& out, std::ostream& err);

int run_reproduce(const std::string& table_id, std::uint64_t seed, int replicates, int threads,
                  const std::optional<std::string>& format, std::ostream& out, std::ostream& err);

int run_drift_diag(const std::string& config_path, const Overrides& overrides, std::ostream& out,
                   std::ostream& err);

/// Structure + weights extracted from a config for condition checking; the
/// weights come from the design section (composite designs carry all three
/// weight groups, marginal-only designs imply w_o = w_s = 0).
struct WeightCheckConfig {
    CovariateStructure structure;
    WeightConfig weights;
};

WeightCheckConfig load_weight_check(const std::string& path);

}  // namespace cadrand::cli
