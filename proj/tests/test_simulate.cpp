#include <doctest.h>

#include <cmath>
#include <random>

#include "cadrand/report_io.hpp"
#include "cadrand/simulate.hpp"
#include "test_util.hpp"

using namespace cadrand;
using doctest::Approx;

TEST_CASE("joint sampling inverts the cumulative distribution") {
    CovariateStructure structure({2, 2});
    auto dist = CovariateDistribution::joint({0.1, 0.2, 0.3, 0.4});

    const double draws1[] = {0.05};
    CHECK(dist.sample(structure, draws1) == PatientProfile{{1, 1}});
    const double draws2[] = {0.10};
    CHECK(dist.sample(structure, draws2) == PatientProfile{{1, 2}});
    const double draws3[] = {0.999};
    CHECK(dist.sample(structure, draws3) == PatientProfile{{2, 2}});
}

TEST_CASE("independent uniform sampling maps each draw to a level") {
    CovariateStructure structure(std::vector<int>(10, 2));
    std::vector<double> low(10, 0.49);
    CHECK(CovariateDistribution::independent_uniform().sample(structure, low) ==
          PatientProfile{std::vector<int>(10, 1)});
    std::vector<double> high(10, 0.51);
    CHECK(CovariateDistribution::independent_uniform().sample(structure, high) ==
          PatientProfile{std::vector<int>(10, 2)});
}

TEST_CASE("product sampling combines the factor and the rest") {
    CovariateStructure structure({3, 2, 2});
    auto dist = CovariateDistribution::product(1, {0.2, 0.3, 0.5}, {0.4, 0.3, 0.2, 0.1});

    const double draws[] = {0.6, 0.95};  // factor level 3, rest cell (2,2)
    CHECK(dist.sample(structure, draws) == PatientProfile{{3, 2, 2}});

    const double draws2[] = {0.0, 0.0};
    CHECK(dist.sample(structure, draws2) == PatientProfile{{1, 1, 1}});

    // The factor may sit in the middle of the profile.
    auto mid = CovariateDistribution::product(2, {0.5, 0.5}, {0.25, 0.25, 0.25, 0.25});
    CovariateStructure structure2({2, 2, 2});
    const double draws3[] = {0.9, 0.3};  // factor level 2, rest (1,2)
    CHECK(mid.sample(structure2, draws3) == PatientProfile{{1, 2, 2}});
}

TEST_CASE("distribution validation") {
    CovariateStructure structure({2, 2});
    CHECK_THROWS_AS(CovariateDistribution::joint({0.5, 0.5, 0.2}).validate_for(structure),
                    std::invalid_argument);  // wrong length and bad sum
    CHECK_THROWS_AS(CovariateDistribution::joint({0.6, 0.2, 0.1, 0.2}), std::invalid_argument);
    CHECK_THROWS_AS(CovariateDistribution::product(3, {0.5, 0.5}, {0.5, 0.5})
                        .validate_for(structure),
                    std::invalid_argument);

    auto dist = CovariateDistribution::joint({0.1, 0.2, 0.3, 0.4});
    const double one_draw[] = {0.5, 0.5};
    CHECK_THROWS_AS(dist.sample(structure, one_draw), std::invalid_argument);
}

TEST_CASE("stratum probabilities reflect the declared distribution") {
    CovariateStructure structure({2, 2});
    const auto joint = CovariateDistribution::joint({0.1, 0.2, 0.3, 0.4});
    CHECK(joint.stratum_probabilities(structure) == std::vector<double>{0.1, 0.2, 0.3, 0.4});

    const auto uniform = CovariateDistribution::independent_uniform();
    for (double p : uniform.stratum_probabilities(structure)) CHECK(p == Approx(0.25));

    CovariateStructure structure3({2, 2, 2});
    const auto product = CovariateDistribution::product(2, {0.3, 0.7}, {0.1, 0.2, 0.3, 0.4});
    const auto probs = product.stratum_probabilities(structure3);
    double total = 0.0;
    for (double p : probs) total += p;
    CHECK(total == Approx(1.0).epsilon(1e-12));
    // Stratum (1,2,1): factor level 2 (0.7) x rest cell (1,1) (0.1).
    CHECK(probs[structure3.stratum_index(PatientProfile{{1, 2, 1}})] == Approx(0.07));
}

TEST_CASE("run_trial: zero patients leaves the zero state") {
    CovariateStructure structure({2, 2});
    auto design = make_design(DesignSpec::complete(), structure);
    RngStream rng(1, 0);
    const TrialResult result = run_trial(*design, structure,
                                         CovariateDistribution::independent_uniform(), 0, rng);
    CHECK(result.final_state.total_patients() == 0);
    CHECK(result.final_state.overall_imbalance() == 0);
}

TEST_CASE("run_trial: one patient creates one unit of imbalance") {
    CovariateStructure structure({2, 2});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto design = make_design(DesignSpec::complete(), structure);
        RngStream rng(seed, 0);
        const TrialResult result = run_trial(
            *design, structure, CovariateDistribution::independent_uniform(), 1, rng);
        CHECK(std::abs(result.final_state.overall_imbalance()) == 1);
    }
}

TEST_CASE("trajectory replay reproduces the final state") {
    CovariateStructure structure({2, 3});
    auto spec = DesignSpec::composite(WeightConfig(0.2, 0.4, {0.2, 0.2}), 0.85);
    auto design = make_design(spec, structure);
    RngStream rng(99, 7);
    const TrialResult result = run_trial(*design, structure,
                                         CovariateDistribution::independent_uniform(), 150, rng,
                                         /*record_trajectory=*/true);
    REQUIRE(result.trajectory.size() == 150);

    ImbalanceState replayed(structure);
    int expected_patient = 1;
    for (const TrajectoryStep& step : result.trajectory) {
        CHECK(step.patient == expected_patient++);
        replayed.apply(structure.stratum_profile(step.stratum), step.arm);
    }
    CHECK(replayed.differences() == result.final_state.differences());
    CHECK(replayed.occupancy() == result.final_state.occupancy());
}

TEST_CASE("nearest-rank quantiles") {
    std::vector<double> values{4.0, 1.0, 3.0, 2.0};
    CHECK(nearest_rank_quantile(values, 0.5) == 2.0);
    CHECK(nearest_rank_quantile(values, 0.95) == 4.0);
    CHECK(nearest_rank_quantile(values, 0.25) == 1.0);
    CHECK(nearest_rank_quantile(values, 1.0) == 4.0);
    CHECK(nearest_rank_quantile({7.0}, 0.5) == 7.0);
    CHECK_THROWS_AS(nearest_rank_quantile({}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(nearest_rank_quantile(values, 0.0), std::invalid_argument);
}

TEST_CASE("replicate validates its arguments") {
    CovariateStructure structure({2, 2});
    const auto dist = CovariateDistribution::independent_uniform();
    CHECK_THROWS_AS(replicate(DesignSpec::complete(), structure, dist, 10, 0, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(replicate(DesignSpec::complete(), structure, dist, 10, 5, 1, 0),
                    std::invalid_argument);
}

TEST_CASE("replicate is deterministic and thread-count independent") {
    CovariateStructure structure({2, 2});
    const auto dist = CovariateDistribution::joint({0.1, 0.2, 0.3, 0.4});
    const auto spec = DesignSpec::composite(WeightConfig(0.3, 0.5, {0.1, 0.1}), 0.85);

    const auto serial = replicate(spec, structure, dist, 100, 40, 12345, 1);
    const auto serial_again = replicate(spec, structure, dist, 100, 40, 12345, 1);
    const auto parallel = replicate(spec, structure, dist, 100, 40, 12345, 4);

    const std::string a = report_to_json(serial).dump();
    CHECK(a == report_to_json(serial_again).dump());
    CHECK(a == report_to_json(parallel).dump());

    const auto other_seed = replicate(spec, structure, dist, 100, 40, 54321, 1);
    CHECK(a != report_to_json(other_seed).dump());
}

TEST_CASE("replicate aggregates signed means near zero") {
    CovariateStructure structure({2, 2});
    const auto dist = CovariateDistribution::joint({0.1, 0.2, 0.3, 0.4});
    const auto spec = DesignSpec::composite(WeightConfig(0.3, 0.5, {0.1, 0.1}), 0.85);
    const int n_replicates = 300;
    const auto report = replicate(spec, structure, dist, 200, n_replicates, 2024, 2);

    const double scale = std::sqrt(static_cast<double>(n_replicates));
    CHECK(std::abs(report.overall_mean_signed) < 4.0 * report.overall_std / scale + 1e-12);
    for (const MarginStats& margin : report.margins) {
        CHECK(std::abs(margin.mean_signed) < 4.0 * margin.std_dev / scale + 1e-12);
    }
}

TEST_CASE("replicate reports occupancy and conditional statistics") {
    // Two patients per trial in a single known stratum: occupancy 2 cells
    // only, |D| is 0 or 2.
    CovariateStructure structure({2, 2});
    const auto dist = CovariateDistribution::joint({1.0, 0.0, 0.0, 0.0});
    const auto report = replicate(DesignSpec::complete(), structure, dist, 2, 200, 7, 1);

    CHECK(report.occupancy2.cells == 200);
    CHECK(report.occupancy3.cells == 0);
    CHECK(report.occupancy_share[2] == Approx(0.25));   // 1 of 4 strata
    CHECK(report.occupancy_share[0] == Approx(0.75));
    const double p0 = report.occupancy2.distribution.count(0)
                          ? report.occupancy2.distribution.at(0)
                          : 0.0;
    const double p2 = report.occupancy2.distribution.count(2)
                          ? report.occupancy2.distribution.at(2)
                          : 0.0;
    CHECK(p0 + p2 == Approx(1.0));
    CHECK(report.occupancy2.mean_abs == Approx(2.0 * p2));
}

TEST_CASE("permuted blocks bound within-stratum imbalance in replication") {
    CovariateStructure structure({2, 2});
    const auto dist = CovariateDistribution::joint({0.1, 0.2, 0.3, 0.4});
    for (int rep = 0; rep < 50; ++rep) {
        RngStream rng(555, rep);
        auto design = make_design(DesignSpec::stratified_block(4), structure);
        const TrialResult result =
            run_trial(*design, structure, dist, 200, rng, /*record_trajectory=*/true);
        ImbalanceState replay(structure);
        for (const TrajectoryStep& step : result.trajectory) {
            replay.apply(structure.stratum_profile(step.stratum), step.arm);
            for (int r = 0; r < structure.stratum_count(); ++r) {
                REQUIRE(std::abs(replay.stratum_imbalance(r)) <= 2);
            }
        }
    }
}
