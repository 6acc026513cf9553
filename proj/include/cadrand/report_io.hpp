// Serialization of reports to JSON and long-format CSV.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "cadrand/simulate.hpp"
#include "cadrand/theory.hpp"

namespace cadrand {

nlohmann::json report_to_json(const ReplicationReport& report);

/// Long format, one row per statistic: level,identifier,statistic,value.
/// Margin identifiers are "i:k" (covariate:level), stratum identifiers are
/// the levels joined with '-'.
void report_to_csv(const ReplicationReport& report, const CovariateStructure& structure,
                   std::ostream& out);

/// Returns the schema violations of a serialized replication report; empty
/// means the document is valid.
std::vector<std::string> validate_report_json(const nlohmann::json& doc);

nlohmann::json condition_report_to_json(const ConditionReport& report);

}  // namespace cadrand
