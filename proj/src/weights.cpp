#include "cadrand/weights.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cadrand/covariates.hpp"

namespace cadrand {

WeightConfig::WeightConfig(double overall, double stratum, std::vector<double> margin)
    : overall_(overall), stratum_(stratum), margin_(std::move(margin)) {
    if (margin_.empty()) {
        throw std::invalid_argument("weight config needs at least one margin weight");
    }
    auto check_nonnegative = [](double w, const std::string& label) {
        if (!(w >= 0.0)) {
            throw std::invalid_argument(label + " weight must be nonnegative, got " +
                                        std::to_string(w));
        }
    };
    check_nonnegative(overall_, "overall");
    check_nonnegative(stratum_, "stratum");
    for (double w : margin_) check_nonnegative(w, "margin");

    const double sum =
        overall_ + stratum_ + std::accumulate(margin_.begin(), margin_.end(), 0.0);
    if (std::abs(sum - 1.0) > kSumTolerance) {
        throw std::invalid_argument("weights must sum to 1 (got " + std::to_string(sum) + ")");
    }
}

double WeightConfig::margin(int covariate) const {
    if (covariate < 1 || covariate > margin_count()) {
        throw std::out_of_range("margin weight index " + std::to_string(covariate) +
                                " out of range 1.." + std::to_string(margin_count()));
    }
    return margin_[covariate - 1];
}

void WeightConfig::validate_for(const CovariateStructure& structure) const {
    if (margin_count() != structure.covariate_count()) {
        throw std::invalid_argument("weight config has " + std::to_string(margin_count()) +
                                    " margin weights, structure has " +
                                    std::to_string(structure.covariate_count()) + " covariates");
    }
}

}  // namespace cadrand
