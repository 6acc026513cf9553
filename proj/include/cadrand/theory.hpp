// Machine checks of the sufficient conditions under which the joint
// within-stratum imbalance process is a positive recurrent Markov chain,
// plus a drift diagnostic that cross-checks the closed-form one-step
// movement of the Lyapunov function against brute-force expectation.
#pragma once

#include <array>
#include <optional>
#include <stdexcept>

#include "cadrand/imbalance.hpp"

namespace cadrand {

class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The 3x3 linear system of condition (B) is numerically singular.
class IllConditionedSystem : public NumericalError {
  public:
    IllConditionedSystem(const std::string& message, double determinant);
    double determinant() const { return determinant_; }

  private:
    double determinant_;
};

/// Condition (B), 2x2 structures only: with u_1 = 1, u_2 = w_o + w_m1,
/// u_3 = w_o + w_m2, u_4 = w_o, the solution x of
///   [u1 u2 u3; u2 u1 u4; u3 u4 u1] x = (u4, u3, u2)
/// must satisfy |x1| + |x2| + |x3| < 1.
struct ConditionB {
    std::array<double, 3> solution;
    double l1_norm;
    bool satisfied;
};

/// Condition (B'), the closed-form equivalent of (B) when the two margin
/// weights are equal: w_m < C(w_o).
struct ConditionBPrime {
    double margin_bound;  // C(w_o)
    bool satisfied;
};

struct ConditionReport {
    bool condition_a = false;  // w_s > 0
    std::optional<ConditionB> condition_b;              // present iff 2x2
    std::optional<ConditionBPrime> condition_b_prime;   // 2x2 with equal margin weights
    double u_star = 0.0;
    bool condition_c = false;  // u* < 1/2

    /// Positive recurrence certified by the applicable sufficient
    /// conditions: (A) and (B) for 2x2 structures, (A) and (C) otherwise.
    bool recurrence_certified = false;
};

ConditionB check_condition_b(const WeightConfig& weights);

/// C(w_o) = (sqrt((1-w_o)^2 + 4(1+w_o)^2) - 1 - 3 w_o) / 4; decreasing on [0,1].
double c_of_wo(double w_overall);

/// u* = sum over nonempty covariate subsets {i_1..i_l} of
/// (w_o + sum_{j not in subset} w_m[j]) * prod_t (m_{i_t} - 1).
/// Equals the off-diagonal row sum of the stratum weight matrix U.
double u_star(const CovariateStructure& structure, const WeightConfig& weights);

ConditionReport check_all(const CovariateStructure& structure, const WeightConfig& weights);

struct DriftDiagnostic {
    double exact;        // expectation enumerated over all (stratum, arm) outcomes
    double closed_form;  // 2(q-p) sum_r sgn(delta_r) D_r + 4
};

/// One-step movement of V(D) = sum_r D_r^2 / p_r for a 2x2 structure under
/// the biased-coin rule with probability p_bias and stratum arrival
/// probabilities `stratum_probs` (strictly positive, summing to 1).
DriftDiagnostic drift_delta_v(const ImbalanceState& state, const WeightConfig& weights,
                              double p_bias, const std::array<double, 4>& stratum_probs);

}  // namespace cadrand
