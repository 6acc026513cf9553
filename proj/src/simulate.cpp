#include "cadrand/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace cadrand {

TrialResult run_trial(Design& design, const CovariateStructure& structure,
                      const CovariateDistribution& distribution, int n_patients, RngStream& rng,
                      bool record_trajectory) {
    if (n_patients < 0) {
        throw std::invalid_argument("n_patients must be nonnegative");
    }
    distribution.validate_for(structure);

    TrialResult result{ImbalanceState(structure), {}};
    if (record_trajectory) result.trajectory.reserve(n_patients);

    for (int patient = 1; patient <= n_patients; ++patient) {
        const PatientProfile profile = distribution.sample(structure, rng);
        const double coin = rng.next_double();
        const Arm arm = design.next_assignment(result.final_state, profile, coin);
        result.final_state.apply(profile, arm);
        if (record_trajectory) {
            result.trajectory.push_back({patient, arm, structure.stratum_index(profile)});
        }
    }
    return result;
}

double nearest_rank_quantile(std::vector<double> values, double q) {
    if (values.empty()) {
        throw std::invalid_argument("quantile of empty sample");
    }
    if (!(q > 0.0 && q <= 1.0)) {
        throw std::invalid_argument("quantile level must lie in (0, 1]");
    }
    std::sort(values.begin(), values.end());
    const auto n = static_cast<double>(values.size());
    auto rank = static_cast<std::size_t>(std::ceil(q * n));
    if (rank < 1) rank = 1;
    return values[rank - 1];
}

namespace {

struct Accumulator {
    double sum = 0.0;
    double sum_sq = 0.0;
    double sum_abs = 0.0;
    std::int64_t count = 0;

    void add(double x) {
        sum += x;
        sum_sq += x * x;
        sum_abs += std::abs(x);
        count += 1;
    }
    double mean() const { return count > 0 ? sum / count : 0.0; }
    double mean_abs() const { return count > 0 ? sum_abs / count : 0.0; }
    double std_dev() const {
        if (count < 2) return 0.0;
        const double m = mean();
        const double var = (sum_sq - count * m * m) / (count - 1);
        return var > 0.0 ? std::sqrt(var) : 0.0;
    }
};

OccupancyConditional finalize_conditional(const std::map<int, std::int64_t>& counts) {
    OccupancyConditional result;
    for (const auto& [value, count] : counts) result.cells += count;
    if (result.cells == 0) return result;
    double weighted = 0.0;
    for (const auto& [value, count] : counts) {
        result.distribution[value] = static_cast<double>(count) / result.cells;
        weighted += static_cast<double>(value) * count;
    }
    result.mean_abs = weighted / result.cells;
    return result;
}

}  // namespace

ReplicationReport replicate(const DesignSpec& spec, const CovariateStructure& structure,
                            const CovariateDistribution& distribution, int n_patients,
                            int n_replicates, std::uint64_t master_seed, int threads) {
    if (n_replicates < 1) {
        throw std::invalid_argument("n_replicates must be >= 1");
    }
    if (threads < 1) {
        throw std::invalid_argument("threads must be >= 1");
    }
    distribution.validate_for(structure);
    make_design(spec, structure);  // fail fast on an invalid spec

    const int m = structure.stratum_count();
    std::vector<std::vector<int>> final_d(n_replicates);
    std::vector<std::vector<int>> final_n(n_replicates);

    auto run_range = [&](int begin, int end) {
        for (int rep = begin; rep < end; ++rep) {
            RngStream rng(master_seed, static_cast<std::uint64_t>(rep));
            auto design = make_design(spec, structure);
            TrialResult trial = run_trial(*design, structure, distribution, n_patients, rng);
            final_d[rep] = trial.final_state.differences();
            final_n[rep] = trial.final_state.occupancy();
        }
    };

    const int worker_count = std::min(threads, n_replicates);
    if (worker_count <= 1) {
        run_range(0, n_replicates);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(worker_count);
        const int chunk = (n_replicates + worker_count - 1) / worker_count;
        for (int w = 0; w < worker_count; ++w) {
            const int begin = w * chunk;
            const int end = std::min(begin + chunk, n_replicates);
            if (begin >= end) break;
            workers.emplace_back(run_range, begin, end);
        }
        for (auto& worker : workers) worker.join();
    }

    // Aggregation walks replicates in index order; results do not depend on
    // the thread count.
    ReplicationReport report;
    report.design = spec.name();
    report.structure_levels = structure.levels();
    report.n_patients = n_patients;
    report.n_replicates = n_replicates;
    report.master_seed = master_seed;

    Accumulator overall;
    std::vector<double> overall_abs(n_replicates);
    std::vector<Accumulator> per_stratum(m);
    std::vector<std::vector<Accumulator>> per_margin(structure.covariate_count());
    for (int i = 0; i < structure.covariate_count(); ++i) {
        per_margin[i].resize(structure.level_count(i + 1));
    }
    std::array<std::int64_t, 5> occupancy_cells{};
    std::map<int, std::int64_t> occ2_counts;
    std::map<int, std::int64_t> occ3_counts;

    // Per-stratum level sums per margin, recomputed from the stored final
    // differences of each replicate.
    for (int rep = 0; rep < n_replicates; ++rep) {
        const std::vector<int>& d = final_d[rep];
        const std::vector<int>& n = final_n[rep];

        long long overall_sum = 0;
        std::vector<std::vector<long long>> margin_sum(structure.covariate_count());
        for (int i = 0; i < structure.covariate_count(); ++i) {
            margin_sum[i].assign(structure.level_count(i + 1), 0);
        }
        for (int r = 0; r < m; ++r) {
            overall_sum += d[r];
            const PatientProfile profile = structure.stratum_profile(r);
            for (int i = 0; i < structure.covariate_count(); ++i) {
                margin_sum[i][profile.levels[i] - 1] += d[r];
            }
            per_stratum[r].add(d[r]);

            const int occ = n[r];
            occupancy_cells[occ >= 4 ? 4 : occ] += 1;
            if (occ == 2) occ2_counts[std::abs(d[r])] += 1;
            if (occ == 3) occ3_counts[std::abs(d[r])] += 1;
        }
        overall.add(static_cast<double>(overall_sum));
        overall_abs[rep] = std::abs(static_cast<double>(overall_sum));
        for (int i = 0; i < structure.covariate_count(); ++i) {
            for (int k = 0; k < structure.level_count(i + 1); ++k) {
                per_margin[i][k].add(static_cast<double>(margin_sum[i][k]));
            }
        }
    }

    report.overall_std = overall.std_dev();
    report.overall_mean_signed = overall.mean();
    report.overall_mean_abs = overall.mean_abs();
    report.overall_median_abs = nearest_rank_quantile(overall_abs, 0.5);
    report.overall_q95_abs = nearest_rank_quantile(overall_abs, 0.95);

    double margin_mean_abs_total = 0.0;
    int margin_count = 0;
    for (int i = 0; i < structure.covariate_count(); ++i) {
        for (int k = 0; k < structure.level_count(i + 1); ++k) {
            const Accumulator& acc = per_margin[i][k];
            report.margins.push_back(
                {i + 1, k + 1, acc.std_dev(), acc.mean(), acc.mean_abs()});
            margin_mean_abs_total += acc.mean_abs();
            margin_count += 1;
        }
    }
    report.marginal_mean_abs = margin_count > 0 ? margin_mean_abs_total / margin_count : 0.0;

    report.strata.reserve(m);
    for (int r = 0; r < m; ++r) {
        const Accumulator& acc = per_stratum[r];
        report.strata.push_back({r, acc.std_dev(), acc.mean(), acc.mean_abs()});
    }

    const double total_cells = static_cast<double>(m) * n_replicates;
    for (std::size_t c = 0; c < occupancy_cells.size(); ++c) {
        report.occupancy_share[c] = occupancy_cells[c] / total_cells;
    }
    report.occupancy2 = finalize_conditional(occ2_counts);
    report.occupancy3 = finalize_conditional(occ3_counts);
    return report;
}

}  // namespace cadrand
