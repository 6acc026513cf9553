#include "cadrand/imbalance.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace cadrand {

const char* to_string(Arm arm) { return arm == Arm::Treatment1 ? "treatment1" : "treatment2"; }

ImbalanceState::ImbalanceState(CovariateStructure structure) : structure_(std::move(structure)) {
    d_.assign(structure_.stratum_count(), 0);
    n_.assign(structure_.stratum_count(), 0);
    margin_d_.resize(structure_.covariate_count());
    for (int i = 1; i <= structure_.covariate_count(); ++i) {
        margin_d_[i - 1].assign(structure_.level_count(i), 0);
    }
}

ImbalanceState ImbalanceState::from_differences(CovariateStructure structure,
                                                std::vector<int> differences) {
    ImbalanceState state(std::move(structure));
    if (static_cast<int>(differences.size()) != state.structure_.stratum_count()) {
        throw std::invalid_argument("difference vector length " +
                                    std::to_string(differences.size()) + " does not match " +
                                    std::to_string(state.structure_.stratum_count()) + " strata");
    }
    state.d_ = std::move(differences);
    for (std::size_t r = 0; r < state.d_.size(); ++r) {
        state.n_[r] = std::abs(state.d_[r]);
    }
    state.rebuild_sums();
    return state;
}

void ImbalanceState::rebuild_sums() {
    overall_ = 0;
    n_total_ = 0;
    for (auto& per_level : margin_d_) {
        per_level.assign(per_level.size(), 0);
    }
    for (int r = 0; r < structure_.stratum_count(); ++r) {
        overall_ += d_[r];
        n_total_ += n_[r];
        const PatientProfile profile = structure_.stratum_profile(r);
        for (int i = 0; i < structure_.covariate_count(); ++i) {
            margin_d_[i][profile.levels[i] - 1] += d_[r];
        }
    }
}

int ImbalanceState::marginal_imbalance(int covariate, int level) const {
    if (covariate < 1 || covariate > structure_.covariate_count()) {
        throw std::out_of_range("covariate index " + std::to_string(covariate) +
                                " out of range 1.." +
                                std::to_string(structure_.covariate_count()));
    }
    if (level < 1 || level > structure_.level_count(covariate)) {
        throw std::out_of_range("level " + std::to_string(level) + " for covariate " +
                                std::to_string(covariate) + " outside 1.." +
                                std::to_string(structure_.level_count(covariate)));
    }
    return margin_d_[covariate - 1][level - 1];
}

void ImbalanceState::apply(const PatientProfile& profile, Arm arm) {
    const int r = structure_.stratum_index(profile);
    const int sign = arm_sign(arm);
    d_[r] += sign;
    n_[r] += 1;
    n_total_ += 1;
    overall_ += sign;
    for (int i = 0; i < structure_.covariate_count(); ++i) {
        margin_d_[i][profile.levels[i] - 1] += sign;
    }
}

double stratum_weight(const CovariateStructure& structure, const WeightConfig& weights,
                      const PatientProfile& target, const PatientProfile& other) {
    weights.validate_for(structure);
    structure.validate_profile(target);
    structure.validate_profile(other);
    double w = weights.overall();
    bool all_match = true;
    for (int i = 0; i < structure.covariate_count(); ++i) {
        if (target.levels[i] == other.levels[i]) {
            w += weights.margin()[i];
        } else {
            all_match = false;
        }
    }
    if (all_match) w += weights.stratum();
    return w;
}

double delta(const ImbalanceState& state, const WeightConfig& weights,
             const PatientProfile& profile) {
    const CovariateStructure& structure = state.structure();
    weights.validate_for(structure);
    const int r = structure.stratum_index(profile);
    double value = weights.overall() * state.overall_imbalance();
    for (int i = 1; i <= structure.covariate_count(); ++i) {
        value += weights.margin(i) * state.marginal_imbalance(i, profile.levels[i - 1]);
    }
    value += weights.stratum() * state.stratum_imbalance(r);
    return value;
}

std::pair<double, double> imbalance_pair(const ImbalanceState& state, const WeightConfig& weights,
                                         const PatientProfile& profile) {
    const CovariateStructure& structure = state.structure();
    weights.validate_for(structure);
    const int r = structure.stratum_index(profile);

    auto term = [](double d) { return std::pair{(d + 1) * (d + 1), (d - 1) * (d - 1)}; };

    auto [o1, o2] = term(state.overall_imbalance());
    double imb1 = weights.overall() * o1;
    double imb2 = weights.overall() * o2;
    for (int i = 1; i <= structure.covariate_count(); ++i) {
        auto [m1, m2] = term(state.marginal_imbalance(i, profile.levels[i - 1]));
        imb1 += weights.margin(i) * m1;
        imb2 += weights.margin(i) * m2;
    }
    auto [s1, s2] = term(state.stratum_imbalance(r));
    imb1 += weights.stratum() * s1;
    imb2 += weights.stratum() * s2;
    return {imb1, imb2};
}

}  // namespace cadrand
