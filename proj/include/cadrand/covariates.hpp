// Trial factor layout: covariates, their levels, and the stratum index map.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cadrand {

/// Covariate profile of one patient. Levels are 1-based: levels[i-1] is the
/// level of covariate i, with 1 <= levels[i-1] <= m_i.
struct PatientProfile {
    std::vector<int> levels;

    bool operator==(const PatientProfile&) const = default;
};

std::string to_string(const PatientProfile& profile);

/// Factor layout of a trial: I covariates with m_1..m_I levels each.
/// Strata are the cross product of the levels; they are addressed either by
/// a 1-based multi-index (k_1..k_I) or by a 0-based linear index in
/// row-major order (k_1 slowest, k_I fastest).
class CovariateStructure {
  public:
    explicit CovariateStructure(std::vector<int> levels);

    int covariate_count() const { return static_cast<int>(levels_.size()); }
    const std::vector<int>& levels() const { return levels_; }

    /// Number of levels m_i of covariate i (1-based).
    int level_count(int covariate) const;

    /// Total number of strata, m = prod m_i.
    int stratum_count() const { return stratum_count_; }

    void validate_profile(const PatientProfile& profile) const;

    /// Linear stratum index in [0, m) for a profile.
    int stratum_index(const PatientProfile& profile) const;

    /// Inverse of stratum_index.
    PatientProfile stratum_profile(int index) const;

    bool operator==(const CovariateStructure&) const = default;

  private:
    std::vector<int> levels_;
    std::vector<int> strides_;
    int stratum_count_ = 0;
};

inline int stratum_index(const CovariateStructure& structure, const PatientProfile& profile) {
    return structure.stratum_index(profile);
}

inline PatientProfile stratum_profile(const CovariateStructure& structure, int index) {
    return structure.stratum_profile(index);
}

}  // namespace cadrand
