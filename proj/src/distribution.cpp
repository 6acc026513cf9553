#include "cadrand/distribution.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cadrand {

namespace {

void check_probability_vector(const std::vector<double>& probs, const std::string& label) {
    if (probs.empty()) {
        throw std::invalid_argument(label + " must not be empty");
    }
    for (double p : probs) {
        if (!(p >= 0.0)) {
            throw std::invalid_argument(label + " entries must be nonnegative");
        }
    }
    const double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
    if (std::abs(sum - 1.0) > CovariateDistribution::kSumTolerance) {
        throw std::invalid_argument(label + " must sum to 1 (got " + std::to_string(sum) + ")");
    }
}

// Index of the CDF cell containing u; never out of range even when the
// probabilities sum to slightly under 1.
int invert_cdf(const std::vector<double>& probs, double u) {
    double cumulative = 0.0;
    const int last = static_cast<int>(probs.size()) - 1;
    for (int i = 0; i < last; ++i) {
        cumulative += probs[i];
        if (u < cumulative) return i;
    }
    return last;
}

}  // namespace

CovariateDistribution CovariateDistribution::joint(std::vector<double> probabilities) {
    check_probability_vector(probabilities, "joint probabilities");
    CovariateDistribution dist;
    dist.kind_ = Kind::Joint;
    dist.probabilities_ = std::move(probabilities);
    return dist;
}

CovariateDistribution CovariateDistribution::independent_uniform() {
    CovariateDistribution dist;
    dist.kind_ = Kind::IndependentUniform;
    return dist;
}

CovariateDistribution CovariateDistribution::product(int factor,
                                                     std::vector<double> factor_marginal,
                                                     std::vector<double> rest_joint) {
    check_probability_vector(factor_marginal, "factor marginal");
    check_probability_vector(rest_joint, "rest joint");
    if (factor < 1) {
        throw std::invalid_argument("factor must be a 1-based covariate index");
    }
    CovariateDistribution dist;
    dist.kind_ = Kind::Product;
    dist.factor_ = factor;
    dist.factor_marginal_ = std::move(factor_marginal);
    dist.rest_joint_ = std::move(rest_joint);
    return dist;
}

void CovariateDistribution::validate_for(const CovariateStructure& structure) const {
    switch (kind_) {
        case Kind::Joint:
            if (static_cast<int>(probabilities_.size()) != structure.stratum_count()) {
                throw std::invalid_argument(
                    "joint probabilities have length " + std::to_string(probabilities_.size()) +
                    ", structure has " + std::to_string(structure.stratum_count()) + " strata");
            }
            break;
        case Kind::IndependentUniform:
            break;
        case Kind::Product: {
            if (factor_ > structure.covariate_count()) {
                throw std::invalid_argument("product factor index " + std::to_string(factor_) +
                                            " out of range 1.." +
                                            std::to_string(structure.covariate_count()));
            }
            if (structure.covariate_count() < 2) {
                throw std::invalid_argument("product distribution needs at least 2 covariates");
            }
            const int factor_levels = structure.level_count(factor_);
            if (static_cast<int>(factor_marginal_.size()) != factor_levels) {
                throw std::invalid_argument("factor marginal has length " +
                                            std::to_string(factor_marginal_.size()) +
                                            ", covariate has " + std::to_string(factor_levels) +
                                            " levels");
            }
            const int rest = structure.stratum_count() / factor_levels;
            if (static_cast<int>(rest_joint_.size()) != rest) {
                throw std::invalid_argument("rest joint has length " +
                                            std::to_string(rest_joint_.size()) + ", expected " +
                                            std::to_string(rest));
            }
            break;
        }
    }
}

int CovariateDistribution::draws_needed(const CovariateStructure& structure) const {
    switch (kind_) {
        case Kind::Joint: return 1;
        case Kind::IndependentUniform: return structure.covariate_count();
        case Kind::Product: return 2;
    }
    return 0;
}

PatientProfile CovariateDistribution::sample(const CovariateStructure& structure,
                                             std::span<const double> draws) const {
    validate_for(structure);
    if (static_cast<int>(draws.size()) != draws_needed(structure)) {
        throw std::invalid_argument("expected " + std::to_string(draws_needed(structure)) +
                                    " uniform draws, got " + std::to_string(draws.size()));
    }
    switch (kind_) {
        case Kind::Joint:
            return structure.stratum_profile(invert_cdf(probabilities_, draws[0]));
        case Kind::IndependentUniform: {
            PatientProfile profile;
            profile.levels.resize(structure.covariate_count());
            for (int i = 0; i < structure.covariate_count(); ++i) {
                const int m = structure.level_count(i + 1);
                int level = static_cast<int>(draws[i] * m) + 1;
                if (level > m) level = m;
                profile.levels[i] = level;
            }
            return profile;
        }
        case Kind::Product: {
            const int factor_level = invert_cdf(factor_marginal_, draws[0]) + 1;
            int rest_index = invert_cdf(rest_joint_, draws[1]);

            // Decode the rest index, row-major over the non-factor covariates.
            PatientProfile profile;
            profile.levels.assign(structure.covariate_count(), 0);
            for (int i = structure.covariate_count(); i >= 1; --i) {
                if (i == factor_) continue;
                const int m = structure.level_count(i);
                profile.levels[i - 1] = rest_index % m + 1;
                rest_index /= m;
            }
            profile.levels[factor_ - 1] = factor_level;
            return profile;
        }
    }
    throw std::logic_error("unreachable distribution kind");
}

PatientProfile CovariateDistribution::sample(const CovariateStructure& structure,
                                             RngStream& rng) const {
    std::vector<double> draws(draws_needed(structure));
    for (double& u : draws) u = rng.next_double();
    return sample(structure, draws);
}

std::vector<double> CovariateDistribution::stratum_probabilities(
    const CovariateStructure& structure) const {
    validate_for(structure);
    const int m = structure.stratum_count();
    std::vector<double> probs(m);
    switch (kind_) {
        case Kind::Joint:
            probs = probabilities_;
            break;
        case Kind::IndependentUniform: {
            const double p = 1.0 / m;
            probs.assign(m, p);
            break;
        }
        case Kind::Product: {
            for (int r = 0; r < m; ++r) {
                const PatientProfile profile = structure.stratum_profile(r);
                int rest_index = 0;
                for (int i = 1; i <= structure.covariate_count(); ++i) {
                    if (i == factor_) continue;
                    rest_index = rest_index * structure.level_count(i) + profile.levels[i - 1] - 1;
                }
                probs[r] =
                    factor_marginal_[profile.levels[factor_ - 1] - 1] * rest_joint_[rest_index];
            }
            break;
        }
    }
    return probs;
}

}  // namespace cadrand
