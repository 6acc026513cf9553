// Trial simulation and the replication engine that aggregates imbalance
// statistics over many independent trials.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cadrand/design.hpp"
#include "cadrand/distribution.hpp"
#include "cadrand/rng.hpp"

namespace cadrand {

struct TrajectoryStep {
    int patient;  // 1-based
    Arm arm;
    int stratum;  // linear index
};

struct TrialResult {
    ImbalanceState final_state;
    std::vector<TrajectoryStep> trajectory;  // empty unless requested
};

/// Runs one trial of `n_patients` sequential assignments. Each patient
/// consumes the profile draws first and the coin draw second, so a stream
/// replays identically with or without trajectory recording.
TrialResult run_trial(Design& design, const CovariateStructure& structure,
                      const CovariateDistribution& distribution, int n_patients, RngStream& rng,
                      bool record_trajectory = false);

struct MarginStats {
    int covariate = 0;  // 1-based
    int level = 0;      // 1-based
    double std_dev = 0.0;
    double mean_signed = 0.0;
    double mean_abs = 0.0;
};

struct StratumStats {
    int index = 0;  // linear index
    double std_dev = 0.0;
    double mean_signed = 0.0;
    double mean_abs = 0.0;
};

/// |D| statistics pooled over all (stratum, replicate) cells holding exactly
/// j patients.
struct OccupancyConditional {
    std::int64_t cells = 0;
    double mean_abs = 0.0;
    std::map<int, double> distribution;  // |D| value -> probability
};

struct ReplicationReport {
    std::string design;
    std::vector<int> structure_levels;
    int n_patients = 0;
    int n_replicates = 0;
    std::uint64_t master_seed = 0;

    double overall_std = 0.0;
    double overall_mean_signed = 0.0;
    double overall_mean_abs = 0.0;
    double overall_median_abs = 0.0;  // nearest-rank
    double overall_q95_abs = 0.0;     // nearest-rank

    std::vector<MarginStats> margins;
    double marginal_mean_abs = 0.0;  // unweighted average of mean_abs over margins

    std::vector<StratumStats> strata;

    std::array<double, 5> occupancy_share{};  // strata share with 0,1,2,3,>=4 patients
    OccupancyConditional occupancy2;
    OccupancyConditional occupancy3;
};

/// Nearest-rank quantile: the ceil(q*n)-th smallest value.
double nearest_rank_quantile(std::vector<double> values, double q);

/// Runs `n_replicates` independent trials, one fresh design and one RNG
/// stream per replicate (stream index = replicate index). Aggregation is a
/// reduction in replicate order, so serial and parallel runs produce
/// identical reports.
ReplicationReport replicate(const DesignSpec& spec, const CovariateStructure& structure,
                            const CovariateDistribution& distribution, int n_patients,
                            int n_replicates, std::uint64_t master_seed, int threads = 1);

}  // namespace cadrand
