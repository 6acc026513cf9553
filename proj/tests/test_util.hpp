// Shared helpers for the unit tests: independent brute-force oracles and
// simple random generators for structures, weights and states.
#pragma once

#include <random>
#include <vector>

#include "cadrand/design.hpp"
#include "cadrand/imbalance.hpp"

namespace cadrand::testutil {

/// Margin sum computed by brute-force enumeration of all strata; an oracle
/// independent of the incremental bookkeeping in ImbalanceState.
inline long long brute_force_margin(const CovariateStructure& structure,
                                    const std::vector<int>& d, int covariate, int level) {
    long long sum = 0;
    for (int r = 0; r < structure.stratum_count(); ++r) {
        if (structure.stratum_profile(r).levels[covariate - 1] == level) sum += d[r];
    }
    return sum;
}

inline long long brute_force_overall(const std::vector<int>& d) {
    long long sum = 0;
    for (int value : d) sum += value;
    return sum;
}

inline CovariateStructure random_structure(std::mt19937& gen, int max_covariates = 4,
                                           int max_levels = 4) {
    std::uniform_int_distribution<int> n_cov(1, max_covariates);
    std::uniform_int_distribution<int> n_lev(2, max_levels);
    std::vector<int> levels(n_cov(gen));
    for (int& m : levels) m = n_lev(gen);
    return CovariateStructure(levels);
}

inline WeightConfig random_weights(std::mt19937& gen, int margin_count) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> raw(margin_count + 2);
    double total = 0.0;
    for (double& w : raw) {
        w = unif(gen);
        total += w;
    }
    for (double& w : raw) w /= total;
    std::vector<double> margin(raw.begin() + 2, raw.end());
    // Rescale the margins so the full set sums to exactly 1 in double
    // arithmetic is unnecessary; the constructor tolerance covers it.
    return WeightConfig(raw[0], raw[1], margin);
}

inline std::vector<int> random_differences(std::mt19937& gen, int count, int max_abs = 25) {
    std::uniform_int_distribution<int> value(-max_abs, max_abs);
    std::vector<int> d(count);
    for (int& x : d) x = value(gen);
    return d;
}

inline PatientProfile random_profile(std::mt19937& gen, const CovariateStructure& structure) {
    std::uniform_int_distribution<int> pick(0, structure.stratum_count() - 1);
    return structure.stratum_profile(pick(gen));
}

/// A reachable chain state: the prefix of a biased-coin trial of random
/// length. All imbalance levels stay in the O_p(1) range the procedure
/// actually visits.
inline ImbalanceState random_reachable_state(std::mt19937& gen,
                                             const CovariateStructure& structure,
                                             const WeightConfig& weights,
                                             int max_patients = 120) {
    CompositeMinimizationDesign design(structure, weights, 0.85);
    ImbalanceState state(structure);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int length = std::uniform_int_distribution<int>(0, max_patients)(gen);
    for (int i = 0; i < length; ++i) {
        const PatientProfile profile = random_profile(gen, structure);
        const Arm arm = design.next_assignment(state, profile, unif(gen));
        state.apply(profile, arm);
    }
    return state;
}

}  // namespace cadrand::testutil
