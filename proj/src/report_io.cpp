#include "cadrand/report_io.hpp"

#include <ostream>
#include <sstream>

namespace cadrand {

using nlohmann::json;

namespace {

json conditional_to_json(const OccupancyConditional& conditional) {
    json dist = json::object();
    for (const auto& [value, prob] : conditional.distribution) {
        dist[std::to_string(value)] = prob;
    }
    return json{{"cells", conditional.cells},
                {"mean_abs", conditional.mean_abs},
                {"distribution", dist}};
}

std::string stratum_identifier(const CovariateStructure& structure, int index) {
    const PatientProfile profile = structure.stratum_profile(index);
    std::ostringstream out;
    for (std::size_t i = 0; i < profile.levels.size(); ++i) {
        if (i > 0) out << '-';
        out << profile.levels[i];
    }
    return out.str();
}

}  // namespace

json report_to_json(const ReplicationReport& report) {
    json margins = json::array();
    for (const MarginStats& margin : report.margins) {
        margins.push_back({{"covariate", margin.covariate},
                           {"level", margin.level},
                           {"std", margin.std_dev},
                           {"mean_signed", margin.mean_signed},
                           {"mean_abs", margin.mean_abs}});
    }
    json strata = json::array();
    for (const StratumStats& stratum : report.strata) {
        strata.push_back({{"index", stratum.index},
                          {"std", stratum.std_dev},
                          {"mean_signed", stratum.mean_signed},
                          {"mean_abs", stratum.mean_abs}});
    }
    return json{
        {"design", report.design},
        {"structure_levels", report.structure_levels},
        {"n_patients", report.n_patients},
        {"n_replicates", report.n_replicates},
        {"master_seed", report.master_seed},
        {"overall",
         {{"std", report.overall_std},
          {"mean_signed", report.overall_mean_signed},
          {"mean_abs", report.overall_mean_abs},
          {"median_abs", report.overall_median_abs},
          {"q95_abs", report.overall_q95_abs}}},
        {"margins", margins},
        {"marginal_mean_abs", report.marginal_mean_abs},
        {"strata", strata},
        {"occupancy_share",
         {{"0", report.occupancy_share[0]},
          {"1", report.occupancy_share[1]},
          {"2", report.occupancy_share[2]},
          {"3", report.occupancy_share[3]},
          {"4_plus", report.occupancy_share[4]}}},
        {"within_stratum",
         {{"occupancy_2", conditional_to_json(report.occupancy2)},
          {"occupancy_3", conditional_to_json(report.occupancy3)}}}};
}

void report_to_csv(const ReplicationReport& report, const CovariateStructure& structure,
                   std::ostream& out) {
    out.precision(12);
    out << "level,identifier,statistic,value\n";
    auto row = [&out](const std::string& level, const std::string& id, const std::string& stat,
                      double value) { out << level << ',' << id << ',' << stat << ',' << value << '\n'; };

    row("overall", "", "std", report.overall_std);
    row("overall", "", "mean_signed", report.overall_mean_signed);
    row("overall", "", "mean_abs", report.overall_mean_abs);
    row("overall", "", "median_abs", report.overall_median_abs);
    row("overall", "", "q95_abs", report.overall_q95_abs);

    for (const MarginStats& margin : report.margins) {
        const std::string id = std::to_string(margin.covariate) + ":" + std::to_string(margin.level);
        row("margin", id, "std", margin.std_dev);
        row("margin", id, "mean_signed", margin.mean_signed);
        row("margin", id, "mean_abs", margin.mean_abs);
    }
    row("margin", "all", "mean_abs_avg", report.marginal_mean_abs);

    for (const StratumStats& stratum : report.strata) {
        const std::string id = stratum_identifier(structure, stratum.index);
        row("stratum", id, "std", stratum.std_dev);
        row("stratum", id, "mean_signed", stratum.mean_signed);
        row("stratum", id, "mean_abs", stratum.mean_abs);
    }

    const char* occupancy_ids[5] = {"0", "1", "2", "3", "4_plus"};
    for (int c = 0; c < 5; ++c) {
        row("occupancy", occupancy_ids[c], "share", report.occupancy_share[c]);
    }
    for (const auto* conditional : {&report.occupancy2, &report.occupancy3}) {
        const std::string id = conditional == &report.occupancy2 ? "2" : "3";
        row("within_stratum", id, "cells", static_cast<double>(conditional->cells));
        row("within_stratum", id, "mean_abs", conditional->mean_abs);
        for (const auto& [value, prob] : conditional->distribution) {
            row("within_stratum", id, "prob_abs_eq_" + std::to_string(value), prob);
        }
    }
}

namespace {

void check_key(const json& doc, const std::string& where, const std::string& key,
               const char* type, std::vector<std::string>& errors) {
    auto it = doc.find(key);
    if (it == doc.end()) {
        errors.push_back(where + "." + key + ": missing");
        return;
    }
    const std::string actual = it->type_name();
    const std::string expected = type;
    bool ok = actual == expected;
    if (expected == "number" && (actual == "number" || it->is_number())) ok = true;
    if (!ok) {
        errors.push_back(where + "." + key + ": expected " + expected + ", got " + actual);
    }
}

}  // namespace

std::vector<std::string> validate_report_json(const json& doc) {
    std::vector<std::string> errors;
    if (!doc.is_object()) {
        errors.push_back("(root): expected object");
        return errors;
    }
    check_key(doc, "(root)", "design", "string", errors);
    check_key(doc, "(root)", "structure_levels", "array", errors);
    check_key(doc, "(root)", "n_patients", "number", errors);
    check_key(doc, "(root)", "n_replicates", "number", errors);
    check_key(doc, "(root)", "master_seed", "number", errors);
    check_key(doc, "(root)", "overall", "object", errors);
    check_key(doc, "(root)", "margins", "array", errors);
    check_key(doc, "(root)", "marginal_mean_abs", "number", errors);
    check_key(doc, "(root)", "strata", "array", errors);
    check_key(doc, "(root)", "occupancy_share", "object", errors);
    check_key(doc, "(root)", "within_stratum", "object", errors);
    if (!errors.empty()) return errors;

    const json& overall = doc["overall"];
    for (const char* key : {"std", "mean_signed", "mean_abs", "median_abs", "q95_abs"}) {
        check_key(overall, "overall", key, "number", errors);
    }
    for (const auto& margin : doc["margins"]) {
        for (const char* key : {"covariate", "level", "std", "mean_signed", "mean_abs"}) {
            check_key(margin, "margins[]", key, "number", errors);
        }
    }
    for (const auto& stratum : doc["strata"]) {
        for (const char* key : {"index", "std", "mean_signed", "mean_abs"}) {
            check_key(stratum, "strata[]", key, "number", errors);
        }
    }
    for (const char* key : {"0", "1", "2", "3", "4_plus"}) {
        check_key(doc["occupancy_share"], "occupancy_share", key, "number", errors);
    }
    for (const char* key : {"occupancy_2", "occupancy_3"}) {
        check_key(doc["within_stratum"], "within_stratum", key, "object", errors);
        if (doc["within_stratum"].contains(key)) {
            const json& conditional = doc["within_stratum"][key];
            check_key(conditional, key, "cells", "number", errors);
            check_key(conditional, key, "mean_abs", "number", errors);
            check_key(conditional, key, "distribution", "object", errors);
        }
    }
    return errors;
}

json condition_report_to_json(const ConditionReport& report) {
    json doc{{"condition_a", report.condition_a},
             {"u_star", report.u_star},
             {"condition_c", report.condition_c},
             {"recurrence_certified", report.recurrence_certified}};
    if (report.condition_b) {
        doc["condition_b"] = {{"x", report.condition_b->solution},
                              {"l1_norm", report.condition_b->l1_norm},
                              {"satisfied", report.condition_b->satisfied}};
    }
    if (report.condition_b_prime) {
        doc["condition_b_prime"] = {{"c_of_wo", report.condition_b_prime->margin_bound},
                                    {"satisfied", report.condition_b_prime->satisfied}};
    }
    return doc;
}

}  // namespace cadrand
