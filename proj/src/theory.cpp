#include "cadrand/theory.hpp"

#include <cmath>

#include "cadrand/design.hpp"

namespace cadrand {

IllConditionedSystem::IllConditionedSystem(const std::string& message, double determinant)
    : NumericalError(message), determinant_(determinant) {}

namespace {

constexpr double kDeterminantThreshold = 1e-12;

bool is_two_by_two(const CovariateStructure& structure) {
    return structure.covariate_count() == 2 && structure.level_count(1) == 2 &&
           structure.level_count(2) == 2;
}

double det3(const std::array<std::array<double, 3>, 3>& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

int sign_with_band(double x) {
    if (std::abs(x) <= kTieBand) return 0;
    return x > 0.0 ? 1 : -1;
}

}  // namespace

ConditionB check_condition_b(const WeightConfig& weights) {
    if (weights.margin_count() != 2) {
        throw std::invalid_argument("condition (B) applies to 2x2 structures only");
    }
    const double u2 = weights.overall() + weights.margin(1);
    const double u3 = weights.overall() + weights.margin(2);
    const double u4 = weights.overall();
    const std::array<std::array<double, 3>, 3> a{{{1.0, u2, u3}, {u2, 1.0, u4}, {u3, u4, 1.0}}};
    const std::array<double, 3> b{u4, u3, u2};

    const double det = det3(a);
    if (std::abs(det) < kDeterminantThreshold) {
        throw IllConditionedSystem("condition (B) system is singular (determinant " +
                                       std::to_string(det) + ")",
                                   det);
    }

    // Cramer's rule; the system is fixed 3x3.
    ConditionB result;
    for (int col = 0; col < 3; ++col) {
        auto replaced = a;
        for (int row = 0; row < 3; ++row) replaced[row][col] = b[row];
        result.solution[col] = det3(replaced) / det;
    }
    result.l1_norm = std::abs(result.solution[0]) + std::abs(result.solution[1]) +
                     std::abs(result.solution[2]);
    result.satisfied = result.l1_norm < 1.0;
    return result;
}

double c_of_wo(double w_overall) {
    if (w_overall < 0.0 || w_overall > 1.0) {
        throw std::invalid_argument("w_overall must lie in [0, 1], got " +
                                    std::to_string(w_overall));
    }
    const double a = 1.0 - w_overall;
    const double b = 1.0 + w_overall;
    return (std::sqrt(a * a + 4.0 * b * b) - 1.0 - 3.0 * w_overall) / 4.0;
}

double u_star(const CovariateStructure& structure, const WeightConfig& weights) {
    weights.validate_for(structure);
    const int count = structure.covariate_count();
    if (count > 24) {
        throw std::invalid_argument("u* enumeration supports at most 24 covariates");
    }
    double total = 0.0;
    for (unsigned subset = 1; subset < (1u << count); ++subset) {
        double weight = weights.overall();
        double strata_in_category = 1.0;
        for (int i = 0; i < count; ++i) {
            if (subset & (1u << i)) {
                strata_in_category *= structure.level_count(i + 1) - 1;
            } else {
                weight += weights.margin(i + 1);
            }
        }
        total += weight * strata_in_category;
    }
    return total;
}

ConditionReport check_all(const CovariateStructure& structure, const WeightConfig& weights) {
    weights.validate_for(structure);
    ConditionReport report;
    report.condition_a = weights.stratum() > 0.0;
    report.u_star = u_star(structure, weights);
    report.condition_c = report.u_star < 0.5;

    if (is_two_by_two(structure)) {
        report.condition_b = check_condition_b(weights);
        if (weights.margin(1) == weights.margin(2)) {
            const double bound = c_of_wo(weights.overall());
            report.condition_b_prime = ConditionBPrime{bound, weights.margin(1) < bound};
        }
        report.recurrence_certified = report.condition_a && report.condition_b->satisfied;
    } else {
        report.recurrence_certified = report.condition_a && report.condition_c;
    }
    return report;
}

DriftDiagnostic drift_delta_v(const ImbalanceState& state, const WeightConfig& weights,
                              double p_bias, const std::array<double, 4>& stratum_probs) {
    const CovariateStructure& structure = state.structure();
    if (!is_two_by_two(structure)) {
        throw std::invalid_argument("drift diagnostic applies to 2x2 structures only");
    }
    weights.validate_for(structure);
    if (!(p_bias >= 0.5 && p_bias < 1.0)) {
        throw std::invalid_argument("p_bias must lie in [0.5, 1), got " + std::to_string(p_bias));
    }
    double prob_sum = 0.0;
    for (double p : stratum_probs) {
        if (!(p > 0.0)) {
            throw NumericalError("stratum probabilities must be strictly positive");
        }
        prob_sum += p;
    }
    if (std::abs(prob_sum - 1.0) > 1e-9) {
        throw std::invalid_argument("stratum probabilities must sum to 1, got " +
                                    std::to_string(prob_sum));
    }

    const double p = p_bias;
    const double q = 1.0 - p;

    double exact = 0.0;
    double sign_sum = 0.0;
    for (int r = 0; r < 4; ++r) {
        const PatientProfile profile = structure.stratum_profile(r);
        const double delta_r = delta(state, weights, profile);
        const int sgn = sign_with_band(delta_r);
        const double prob_t1 = sgn == 0 ? 0.5 : (sgn > 0 ? q : p);

        const double d = state.stratum_imbalance(r);
        // V(D) = sum_r D_r^2 / p_r changes only in the arrival stratum.
        const double up = ((d + 1) * (d + 1) - d * d) / stratum_probs[r];
        const double down = ((d - 1) * (d - 1) - d * d) / stratum_probs[r];
        exact += stratum_probs[r] * (prob_t1 * up + (1.0 - prob_t1) * down);

        sign_sum += sgn * d;
    }
    const double closed_form = 2.0 * (q - p) * sign_sum + 4.0;
    return {exact, closed_form};
}

}  // namespace cadrand
