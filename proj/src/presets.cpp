#include "cadrand/presets.hpp"

#include <map>
#include <stdexcept>

namespace cadrand {

namespace {

PresetScenario two_by_two_scenario() {
    CovariateStructure structure({2, 2});
    return PresetScenario{
        "table4",
        structure,
        CovariateDistribution::joint({0.1, 0.2, 0.3, 0.4}),
        {DesignSpec::stratified_block(4), DesignSpec::pocock_simon({0.5, 0.5}, 0.85),
         DesignSpec::composite(WeightConfig(0.3, 0.5, {0.1, 0.1}), 0.85)},
        {200, 500, 1000},
        1000};
}

PresetScenario many_strata_scenario() {
    CovariateStructure structure(std::vector<int>(10, 2));
    return PresetScenario{
        "table5",
        structure,
        CovariateDistribution::independent_uniform(),
        {DesignSpec::stratified_block(4),
         DesignSpec::pocock_simon(std::vector<double>(10, 0.1), 0.85),
         DesignSpec::composite(WeightConfig(0.0, 0.5, std::vector<double>(10, 0.05)), 0.85)},
        {500},
        1000};
}

PresetScenario multi_site_scenario(const std::string& table_id) {
    // 20 sites (2 small, 16 medium, 2 large), gender, age group and disease
    // status; the site marginal is independent of the joint distribution of
    // the other three covariates.
    CovariateStructure structure({20, 2, 2, 2});
    std::vector<double> site_marginal(20, 6.0 / 120.0);
    site_marginal[0] = site_marginal[1] = 1.0 / 120.0;
    site_marginal[18] = site_marginal[19] = 11.0 / 120.0;
    const std::vector<double> rest_joint = {10.0 / 20, 2.0 / 20, 2.0 / 20, 2.0 / 20,
                                            1.0 / 20,  1.0 / 20, 1.0 / 20, 1.0 / 20};
    return PresetScenario{
        table_id,
        structure,
        CovariateDistribution::product(1, std::move(site_marginal), rest_joint),
        {DesignSpec::stratified_block(4),
         DesignSpec::pocock_simon(std::vector<double>(4, 0.25), 0.85),
         DesignSpec::composite(WeightConfig(1.0 / 3, 1.0 / 3, std::vector<double>(4, 1.0 / 12)),
                               0.85)},
        {120},
        1000};
}

const MarginStats& margin_stats(const ReplicationReport& report, int covariate, int level) {
    for (const MarginStats& margin : report.margins) {
        if (margin.covariate == covariate && margin.level == level) return margin;
    }
    throw std::out_of_range("margin not found in report");
}

double conditional_prob(const OccupancyConditional& conditional, int value) {
    auto it = conditional.distribution.find(value);
    return it == conditional.distribution.end() ? 0.0 : it->second;
}

void attach_references(PresetResult& result) {
    std::map<std::pair<std::string, std::string>, double> lookup;
    for (const ReferenceCell& cell : reference_cells(result.table_id)) {
        lookup[{cell.row, cell.stat}] = cell.value;
    }
    for (ComparisonRow& row : result.rows) {
        auto it = lookup.find({row.row, row.stat});
        if (it != lookup.end()) row.reference = it->second;
    }
}

}  // namespace

PresetScenario preset_scenario(const std::string& table_id) {
    if (table_id == "table4") return two_by_two_scenario();
    if (table_id == "table5") return many_strata_scenario();
    if (table_id == "table8" || table_id == "table9" || table_id == "table10") {
        return multi_site_scenario(table_id);
    }
    throw std::invalid_argument("unknown table id '" + table_id +
                                "' (expected table4, table5, table8, table9 or table10)");
}

const std::vector<std::string>& preset_table_ids() {
    static const std::vector<std::string> ids = {"table4", "table5", "table8", "table9",
                                                 "table10"};
    return ids;
}

PresetResult run_preset(const std::string& table_id, std::uint64_t seed, int n_replicates,
                        int threads) {
    const PresetScenario scenario = preset_scenario(table_id);
    const int replicates = n_replicates > 0 ? n_replicates : scenario.default_replicates;

    PresetResult result;
    result.table_id = table_id;
    result.seed = seed;
    result.n_replicates = replicates;

    for (const DesignSpec& spec : scenario.designs) {
        for (int n : scenario.sample_sizes) {
            const ReplicationReport report = replicate(spec, scenario.structure,
                                                       scenario.distribution, n, replicates, seed,
                                                       threads);
            const std::string design = spec.name();
            const std::string row_n = design + ".n" + std::to_string(n);

            if (table_id == "table4") {
                const int idx_11 = scenario.structure.stratum_index(PatientProfile{{1, 1}});
                const int idx_22 = scenario.structure.stratum_index(PatientProfile{{2, 2}});
                result.rows.push_back(
                    {row_n, "std.stratum.1-1", report.strata[idx_11].std_dev});
                result.rows.push_back(
                    {row_n, "std.stratum.2-2", report.strata[idx_22].std_dev});
                result.rows.push_back(
                    {row_n, "std.margin.1:1", margin_stats(report, 1, 1).std_dev});
                result.rows.push_back(
                    {row_n, "std.margin.2:2", margin_stats(report, 2, 2).std_dev});
                result.rows.push_back({row_n, "std.overall", report.overall_std});
            } else if (table_id == "table5") {
                result.rows.push_back({design, "mean_abs.overall", report.overall_mean_abs});
                result.rows.push_back(
                    {design, "mean_abs.marginal_avg", report.marginal_mean_abs});
                result.rows.push_back(
                    {design, "mean_abs.within_occ2", report.occupancy2.mean_abs});
                result.rows.push_back(
                    {design, "mean_abs.within_occ3", report.occupancy3.mean_abs});
                if (&spec == &scenario.designs.front()) {
                    // Stratum occupancy depends only on the covariate stream.
                    result.rows.push_back(
                        {"covariates", "share_empty_strata", report.occupancy_share[0]});
                }
            } else if (table_id == "table8") {
                result.rows.push_back({design, "mean_abs.overall", report.overall_mean_abs});
                result.rows.push_back({design, "median_abs.overall", report.overall_median_abs});
                result.rows.push_back({design, "q95_abs.overall", report.overall_q95_abs});
            } else if (table_id == "table9") {
                result.rows.push_back(
                    {design, "mean_abs.margin.gender_male", margin_stats(report, 2, 1).mean_abs});
                result.rows.push_back({design, "mean_abs.margin.gender_female",
                                       margin_stats(report, 2, 2).mean_abs});
                result.rows.push_back({design, "mean_abs.margin.age_under60",
                                       margin_stats(report, 3, 1).mean_abs});
                result.rows.push_back(
                    {design, "mean_abs.margin.age_60plus", margin_stats(report, 3, 2).mean_abs});
                result.rows.push_back({design, "mean_abs.margin.disease_moderate",
                                       margin_stats(report, 4, 1).mean_abs});
                result.rows.push_back({design, "mean_abs.margin.disease_severe",
                                       margin_stats(report, 4, 2).mean_abs});

                auto site_group_mean = [&](int first, int last) {
                    double total = 0.0;
                    for (int level = first; level <= last; ++level) {
                        total += margin_stats(report, 1, level).mean_abs;
                    }
                    return total / (last - first + 1);
                };
                result.rows.push_back(
                    {design, "mean_abs.margin.sites_small", site_group_mean(1, 2)});
                result.rows.push_back(
                    {design, "mean_abs.margin.sites_medium", site_group_mean(3, 18)});
                result.rows.push_back(
                    {design, "mean_abs.margin.sites_large", site_group_mean(19, 20)});
            } else if (table_id == "table10") {
                result.rows.push_back(
                    {design, "occ2.prob_abs_eq_0", conditional_prob(report.occupancy2, 0)});
                result.rows.push_back(
                    {design, "occ2.prob_abs_eq_2", conditional_prob(report.occupancy2, 2)});
                result.rows.push_back({design, "occ2.mean_abs", report.occupancy2.mean_abs});
                result.rows.push_back(
                    {design, "occ3.prob_abs_eq_1", conditional_prob(report.occupancy3, 1)});
                result.rows.push_back(
                    {design, "occ3.prob_abs_eq_3", conditional_prob(report.occupancy3, 3)});
                result.rows.push_back({design, "occ3.mean_abs", report.occupancy3.mean_abs});
                if (&spec == &scenario.designs.front()) {
                    const char* ids[5] = {"0", "1", "2", "3", "4_plus"};
                    for (int c = 0; c < 5; ++c) {
                        result.rows.push_back({"covariates",
                                               std::string("occupancy_share.") + ids[c],
                                               report.occupancy_share[c]});
                    }
                }
            }
        }
    }
    attach_references(result);
    return result;
}

}  // namespace cadrand
