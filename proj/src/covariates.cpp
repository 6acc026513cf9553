#include "cadrand/covariates.hpp"

#include <sstream>

namespace cadrand {

std::string to_string(const PatientProfile& profile) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < profile.levels.size(); ++i) {
        if (i > 0) out << ',';
        out << profile.levels[i];
    }
    out << ')';
    return out.str();
}

namespace {
constexpr long long kMaxStrata = 1 << 24;
}

CovariateStructure::CovariateStructure(std::vector<int> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) {
        throw std::invalid_argument("covariate structure needs at least one covariate");
    }
    long long count = 1;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        if (levels_[i] < 2) {
            throw std::invalid_argument("covariate " + std::to_string(i + 1) +
                                        " must have at least 2 levels, got " +
                                        std::to_string(levels_[i]));
        }
        count *= levels_[i];
        if (count > kMaxStrata) {
            throw std::invalid_argument("stratum count exceeds the supported maximum of " +
                                        std::to_string(kMaxStrata));
        }
    }
    stratum_count_ = static_cast<int>(count);

    strides_.assign(levels_.size(), 1);
    for (int i = static_cast<int>(levels_.size()) - 2; i >= 0; --i) {
        strides_[i] = strides_[i + 1] * levels_[i + 1];
    }
}

int CovariateStructure::level_count(int covariate) const {
    if (covariate < 1 || covariate > covariate_count()) {
        throw std::out_of_range("covariate index " + std::to_string(covariate) +
                                " out of range 1.." + std::to_string(covariate_count()));
    }
    return levels_[covariate - 1];
}

void CovariateStructure::validate_profile(const PatientProfile& profile) const {
    if (static_cast<int>(profile.levels.size()) != covariate_count()) {
        throw std::invalid_argument("profile has " + std::to_string(profile.levels.size()) +
                                    " levels, structure has " + std::to_string(covariate_count()) +
                                    " covariates");
    }
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        const int k = profile.levels[i];
        if (k < 1 || k > levels_[i]) {
            throw std::out_of_range("profile level " + std::to_string(k) + " for covariate " +
                                    std::to_string(i + 1) + " outside 1.." +
                                    std::to_string(levels_[i]));
        }
    }
}

int CovariateStructure::stratum_index(const PatientProfile& profile) const {
    validate_profile(profile);
    int index = 0;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        index += (profile.levels[i] - 1) * strides_[i];
    }
    return index;
}

PatientProfile CovariateStructure::stratum_profile(int index) const {
    if (index < 0 || index >= stratum_count_) {
        throw std::out_of_range("stratum index " + std::to_string(index) + " outside 0.." +
                                std::to_string(stratum_count_ - 1));
    }
    PatientProfile profile;
    profile.levels.resize(levels_.size());
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        profile.levels[i] = index / strides_[i] + 1;
        index %= strides_[i];
    }
    return profile;
}

}  // namespace cadrand
