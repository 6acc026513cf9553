// Reference values the `reproduce` command compares against, keyed exactly
// like the comparison rows emitted by run_preset.
#include "cadrand/presets.hpp"

namespace cadrand {

namespace {

// 2x2 scenario: std of the final imbalances at two strata, two margins and
// overall, for n = 200, 500, 1000.
const std::vector<ReferenceCell> kTable4 = {
    {"stratified_block.n200", "std.stratum.1-1", 0.92},
    {"stratified_block.n200", "std.stratum.2-2", 0.89},
    {"stratified_block.n200", "std.margin.1:1", 1.30},
    {"stratified_block.n200", "std.margin.2:2", 1.27},
    {"stratified_block.n200", "std.overall", 1.83},
    {"stratified_block.n500", "std.stratum.1-1", 0.92},
    {"stratified_block.n500", "std.stratum.2-2", 0.92},
    {"stratified_block.n500", "std.margin.1:1", 1.31},
    {"stratified_block.n500", "std.margin.2:2", 1.30},
    {"stratified_block.n500", "std.overall", 1.86},
    {"stratified_block.n1000", "std.stratum.1-1", 0.92},
    {"stratified_block.n1000", "std.stratum.2-2", 0.89},
    {"stratified_block.n1000", "std.margin.1:1", 1.31},
    {"stratified_block.n1000", "std.margin.2:2", 1.28},
    {"stratified_block.n1000", "std.overall", 1.81},

    {"pocock_simon.n200", "std.stratum.1-1", 3.16},
    {"pocock_simon.n200", "std.stratum.2-2", 3.27},
    {"pocock_simon.n200", "std.margin.1:1", 1.15},
    {"pocock_simon.n200", "std.margin.2:2", 1.13},
    {"pocock_simon.n200", "std.overall", 1.30},
    {"pocock_simon.n500", "std.stratum.1-1", 4.80},
    {"pocock_simon.n500", "std.stratum.2-2", 4.83},
    {"pocock_simon.n500", "std.margin.1:1", 1.16},
    {"pocock_simon.n500", "std.margin.2:2", 1.11},
    {"pocock_simon.n500", "std.overall", 1.31},
    {"pocock_simon.n1000", "std.stratum.1-1", 7.25},
    {"pocock_simon.n1000", "std.stratum.2-2", 7.33},
    {"pocock_simon.n1000", "std.margin.1:1", 1.15},
    {"pocock_simon.n1000", "std.margin.2:2", 1.13},
    {"pocock_simon.n1000", "std.overall", 1.30},

    {"composite.n200", "std.stratum.1-1", 1.11},
    {"composite.n200", "std.stratum.2-2", 1.07},
    {"composite.n200", "std.margin.1:1", 1.30},
    {"composite.n200", "std.margin.2:2", 1.27},
    {"composite.n200", "std.overall", 1.32},
    {"composite.n500", "std.stratum.1-1", 1.14},
    {"composite.n500", "std.stratum.2-2", 1.10},
    {"composite.n500", "std.margin.1:1", 1.33},
    {"composite.n500", "std.margin.2:2", 1.28},
    {"composite.n500", "std.overall", 1.22},
    {"composite.n1000", "std.stratum.1-1", 1.03},
    {"composite.n1000", "std.stratum.2-2", 1.10},
    {"composite.n1000", "std.margin.1:1", 1.20},
    {"composite.n1000", "std.margin.2:2", 1.24},
    {"composite.n1000", "std.overall", 1.27},
};

// 1024-strata scenario, 500 patients: mean absolute imbalances and the
// average share of empty strata.
const std::vector<ReferenceCell> kTable5 = {
    {"stratified_block", "mean_abs.overall", 17.07},
    {"pocock_simon", "mean_abs.overall", 0.76},
    {"composite", "mean_abs.overall", 0.98},
    {"stratified_block", "mean_abs.marginal_avg", 11.80},
    {"pocock_simon", "mean_abs.marginal_avg", 1.65},
    {"composite", "mean_abs.marginal_avg", 1.94},
    {"stratified_block", "mean_abs.within_occ2", 0.66},
    {"pocock_simon", "mean_abs.within_occ2", 0.98},
    {"composite", "mean_abs.within_occ2", 0.50},
    {"stratified_block", "mean_abs.within_occ3", 1.00},
    {"pocock_simon", "mean_abs.within_occ3", 1.23},
    {"composite", "mean_abs.within_occ3", 1.08},
    {"covariates", "share_empty_strata", 0.614},
};

// Multi-site scenario, 120 patients: overall |D| summary.
const std::vector<ReferenceCell> kTable8 = {
    {"stratified_block", "mean_abs.overall", 6.70},
    {"pocock_simon", "mean_abs.overall", 0.91},
    {"composite", "mean_abs.overall", 0.63},
    {"stratified_block", "median_abs.overall", 6.0},
    {"pocock_simon", "median_abs.overall", 0.0},
    {"composite", "median_abs.overall", 0.0},
    {"stratified_block", "q95_abs.overall", 16.0},
    {"pocock_simon", "q95_abs.overall", 2.0},
    {"composite", "q95_abs.overall", 2.0},
};

// Multi-site scenario: mean absolute marginal imbalances; sites are grouped
// by size and averaged within each group.
const std::vector<ReferenceCell> kTable9 = {
    {"stratified_block", "mean_abs.margin.gender_male", 5.52},
    {"pocock_simon", "mean_abs.margin.gender_male", 1.10},
    {"composite", "mean_abs.margin.gender_male", 1.59},
    {"stratified_block", "mean_abs.margin.gender_female", 3.86},
    {"pocock_simon", "mean_abs.margin.gender_female", 1.06},
    {"composite", "mean_abs.margin.gender_female", 1.55},
    {"stratified_block", "mean_abs.margin.age_under60", 4.84},
    {"pocock_simon", "mean_abs.margin.age_under60", 1.08},
    {"composite", "mean_abs.margin.age_under60", 1.57},
    {"stratified_block", "mean_abs.margin.age_60plus", 4.40},
    {"pocock_simon", "mean_abs.margin.age_60plus", 1.11},
    {"composite", "mean_abs.margin.age_60plus", 1.23},
    {"stratified_block", "mean_abs.margin.disease_moderate", 5.01},
    {"pocock_simon", "mean_abs.margin.disease_moderate", 1.10},
    {"composite", "mean_abs.margin.disease_moderate", 1.56},
    {"stratified_block", "mean_abs.margin.disease_severe", 4.35},
    {"pocock_simon", "mean_abs.margin.disease_severe", 1.18},
    {"composite", "mean_abs.margin.disease_severe", 1.52},
    {"stratified_block", "mean_abs.margin.sites_small", 1.45},
    {"pocock_simon", "mean_abs.margin.sites_small", 0.94},
    {"composite", "mean_abs.margin.sites_small", 1.02},
    {"stratified_block", "mean_abs.margin.sites_medium", 1.44},
    {"pocock_simon", "mean_abs.margin.sites_medium", 1.21},
    {"composite", "mean_abs.margin.sites_medium", 1.32},
    {"stratified_block", "mean_abs.margin.sites_large", 1.47},
    {"pocock_simon", "mean_abs.margin.sites_large", 1.33},
    {"composite", "mean_abs.margin.sites_large", 1.52},
};

// Multi-site scenario: within-stratum |D| distribution for strata holding
// exactly 2 or 3 patients, plus the emergent occupancy distribution.
const std::vector<ReferenceCell> kTable10 = {
    {"stratified_block", "occ2.prob_abs_eq_0", 0.68},
    {"pocock_simon", "occ2.prob_abs_eq_0", 0.57},
    {"composite", "occ2.prob_abs_eq_0", 0.69},
    {"stratified_block", "occ2.prob_abs_eq_2", 0.32},
    {"pocock_simon", "occ2.prob_abs_eq_2", 0.43},
    {"composite", "occ2.prob_abs_eq_2", 0.31},
    {"stratified_block", "occ2.mean_abs", 0.64},
    {"pocock_simon", "occ2.mean_abs", 0.86},
    {"composite", "occ2.mean_abs", 0.62},
    {"stratified_block", "occ3.prob_abs_eq_1", 1.00},
    {"pocock_simon", "occ3.prob_abs_eq_1", 0.85},
    {"composite", "occ3.prob_abs_eq_1", 0.94},
    {"stratified_block", "occ3.prob_abs_eq_3", 0.00},
    {"pocock_simon", "occ3.prob_abs_eq_3", 0.15},
    {"composite", "occ3.prob_abs_eq_3", 0.06},
    {"stratified_block", "occ3.mean_abs", 1.00},
    {"pocock_simon", "occ3.mean_abs", 1.30},
    {"composite", "occ3.mean_abs", 1.12},
    {"covariates", "occupancy_share.0", 0.596},
    {"covariates", "occupancy_share.1", 0.243},
    {"covariates", "occupancy_share.2", 0.079},
    {"covariates", "occupancy_share.3", 0.035},
    {"covariates", "occupancy_share.4_plus", 0.047},
};

const std::vector<ReferenceCell> kEmpty = {};

}  // namespace

const std::vector<ReferenceCell>& reference_cells(const std::string& table_id) {
    if (table_id == "table4") return kTable4;
    if (table_id == "table5") return kTable5;
    if (table_id == "table8") return kTable8;
    if (table_id == "table9") return kTable9;
    if (table_id == "table10") return kTable10;
    return kEmpty;
}

}  // namespace cadrand
