// Covariate profile distributions for simulated patient streams.
#pragma once

#include <span>
#include <vector>

#include "cadrand/covariates.hpp"
#include "cadrand/rng.hpp"

namespace cadrand {

/// i.i.d. profile generator. Three shapes:
///  - joint: one probability per stratum, in linear stratum order;
///  - independent_uniform: each covariate level uniform and independent;
///  - product: one factor's marginal distribution, independent of a joint
///    distribution over the remaining factors.
class CovariateDistribution {
  public:
    enum class Kind { Joint, IndependentUniform, Product };

    static CovariateDistribution joint(std::vector<double> probabilities);
    static CovariateDistribution independent_uniform();
    static CovariateDistribution product(int factor, std::vector<double> factor_marginal,
                                         std::vector<double> rest_joint);

    Kind kind() const { return kind_; }

    /// Validates lengths and probability sums against a structure.
    void validate_for(const CovariateStructure& structure) const;

    /// Uniform draws consumed per profile: 1 (joint), I (independent
    /// uniform) or 2 (product).
    int draws_needed(const CovariateStructure& structure) const;

    /// Inverse-CDF sampling, deterministic given the draws.
    PatientProfile sample(const CovariateStructure& structure, std::span<const double> draws) const;

    PatientProfile sample(const CovariateStructure& structure, RngStream& rng) const;

    /// Implied probability of each stratum, in linear order.
    std::vector<double> stratum_probabilities(const CovariateStructure& structure) const;

    static constexpr double kSumTolerance = 1e-9;

  private:
    CovariateDistribution() = default;

    Kind kind_ = Kind::IndependentUniform;
    std::vector<double> probabilities_;     // joint
    int factor_ = 0;                        // product: 1-based covariate
    std::vector<double> factor_marginal_;   // product
    std::vector<double> rest_joint_;        // product
};

}  // namespace cadrand
