// Weight configuration for the composite imbalance objective.
#pragma once

#include <vector>

namespace cadrand {

class CovariateStructure;

/// Nonnegative weights on the overall, per-margin and within-stratum
/// imbalance terms. They must sum to 1 (tolerance 1e-9, since configs
/// carry decimals like 1/12).
class WeightConfig {
  public:
    WeightConfig(double overall, double stratum, std::vector<double> margin);

    double overall() const { return overall_; }
    double stratum() const { return stratum_; }
    const std::vector<double>& margin() const { return margin_; }

    /// Weight on the margin of covariate i (1-based).
    double margin(int covariate) const;

    int margin_count() const { return static_cast<int>(margin_.size()); }

    /// Throws if the number of margin weights differs from the number of
    /// covariates in `structure`.
    void validate_for(const CovariateStructure& structure) const;

    static constexpr double kSumTolerance = 1e-9;

  private:
    double overall_;
    double stratum_;
    std::vector<double> margin_;
};

}  // namespace cadrand
