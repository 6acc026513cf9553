// Imbalance state of a two-arm trial and the weighted imbalance functionals.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cadrand/covariates.hpp"
#include "cadrand/weights.hpp"

namespace cadrand {

enum class Arm : int { Treatment1 = 1, Treatment2 = 2 };

/// +1 for treatment 1, -1 for treatment 2.
inline int arm_sign(Arm arm) { return arm == Arm::Treatment1 ? +1 : -1; }

const char* to_string(Arm arm);

/// Signed assignment differences (treatment-1 count minus treatment-2 count)
/// for every stratum, together with patient counts. Overall and marginal
/// sums are maintained incrementally so that lookups are O(1) even for
/// thousands of strata.
///
/// Value type: copyable and safe to move across threads; nothing is shared.
class ImbalanceState {
  public:
    explicit ImbalanceState(CovariateStructure structure);

    /// Builds a state with the given per-stratum differences, using the
    /// minimal consistent patient counts (n_r = |d_r|). Used by diagnostics
    /// and tests that need an arbitrary chain state.
    static ImbalanceState from_differences(CovariateStructure structure, std::vector<int> differences);

    const CovariateStructure& structure() const { return structure_; }

    const std::vector<int>& differences() const { return d_; }
    const std::vector<int>& occupancy() const { return n_; }

    /// Signed difference within stratum r (0-based linear index).
    int stratum_imbalance(int index) const { return d_.at(index); }

    /// Patients seen in stratum r.
    int patients_in_stratum(int index) const { return n_.at(index); }

    std::int64_t total_patients() const { return n_total_; }

    /// D_n: sum of all per-stratum differences.
    int overall_imbalance() const { return overall_; }

    /// D_n(i;k): sum of differences over strata whose covariate i is at
    /// level k. Both arguments are 1-based.
    int marginal_imbalance(int covariate, int level) const;

    /// Records one assignment: the stratum of `profile` gains a patient and
    /// its difference moves by +1 (treatment 1) or -1 (treatment 2).
    void apply(const PatientProfile& profile, Arm arm);

  private:
    CovariateStructure structure_;
    std::vector<int> d_;
    std::vector<int> n_;
    std::int64_t n_total_ = 0;
    int overall_ = 0;
    std::vector<std::vector<int>> margin_d_;  // [covariate-1][level-1]

    void rebuild_sums();
};

/// Weight placed on stratum `other`'s difference when the incoming patient
/// targets stratum `target`: w_o, plus w_m[j] for every coordinate j the two
/// strata share, plus w_s when they coincide. Entry u_rs of the matrix U.
double stratum_weight(const CovariateStructure& structure, const WeightConfig& weights,
                      const PatientProfile& target, const PatientProfile& other);

/// delta_{n-1}(k*): the weighted average of current imbalances seen by a
/// patient with profile `profile`,
///   w_o D + sum_i w_m[i] D(i;k_i*) + w_s D(k*).
/// Its sign decides the coin bias; 4*delta equals Imb(1) - Imb(2).
double delta(const ImbalanceState& state, const WeightConfig& weights, const PatientProfile& profile);

/// (Imb(1), Imb(2)): the weighted squared imbalances that would result from
/// assigning the incoming patient to treatment 1 or 2.
std::pair<double, double> imbalance_pair(const ImbalanceState& state, const WeightConfig& weights,
                                         const PatientProfile& profile);

}  // namespace cadrand
