// Sequential randomization designs sharing one interface: state + profile
// in, assignment probability out; randomness is supplied by the caller.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cadrand/imbalance.hpp"

namespace cadrand {

/// Ties |delta| <= kTieBand count as zero: weights like 1/3 are inexact and
/// analytically-zero states must not produce a spurious coin bias.
constexpr double kTieBand = 1e-9;

class Design {
  public:
    virtual ~Design() = default;

    /// Probability that the next patient with `profile` is assigned to
    /// treatment 1, given the current state.
    virtual double assignment_probability(const ImbalanceState& state,
                                          const PatientProfile& profile) const = 0;

    /// Realizes the assignment: treatment 1 iff uniform_draw < probability.
    /// Advances design-internal auxiliary state (block cursors); the caller
    /// applies the returned arm to the ImbalanceState.
    Arm next_assignment(const ImbalanceState& state, const PatientProfile& profile,
                        double uniform_draw);

    virtual std::string name() const = 0;

  protected:
    virtual void advance(const PatientProfile& profile, Arm arm);
};

/// Biased-coin minimization of the composite (overall + marginal + stratum)
/// weighted imbalance. The coin favors the arm that lowers the weighted
/// potential imbalance: probability q = 1-p if delta > 0, p if delta < 0,
/// and 1/2 on ties (which covers the first patient, where every D is zero).
class CompositeMinimizationDesign : public Design {
  public:
    /// p_bias in [1/2, 1). Values above 1/2 give the biased coin; exactly
    /// 1/2 degenerates to a fair coin and is accepted for diagnostics.
    CompositeMinimizationDesign(const CovariateStructure& structure, WeightConfig weights,
                                double p_bias);

    double assignment_probability(const ImbalanceState& state,
                                  const PatientProfile& profile) const override;
    std::string name() const override { return "composite"; }

    const WeightConfig& weights() const { return weights_; }
    double p_bias() const { return p_bias_; }

  private:
    WeightConfig weights_;
    double p_bias_;
};

/// Marginal-only minimization: the composite rule with w_o = w_s = 0.
class PocockSimonDesign : public Design {
  public:
    PocockSimonDesign(const CovariateStructure& structure, std::vector<double> margin_weights,
                      double p_bias);

    double assignment_probability(const ImbalanceState& state,
                                  const PatientProfile& profile) const override;
    std::string name() const override { return "pocock_simon"; }

  private:
    CompositeMinimizationDesign inner_;
};

/// Independent permuted blocks within each stratum. A block holds an equal
/// number of slots per arm in uniformly random order; the next assignment
/// consumes a slot, so the probability of treatment 1 is the fraction of
/// its remaining slots. Partially used blocks persist.
class StratifiedBlockDesign : public Design {
  public:
    StratifiedBlockDesign(const CovariateStructure& structure, int block_size);

    double assignment_probability(const ImbalanceState& state,
                                  const PatientProfile& profile) const override;
    std::string name() const override { return "stratified_block"; }

    int block_size() const { return block_size_; }

  protected:
    void advance(const PatientProfile& profile, Arm arm) override;

  private:
    struct Block {
        int remaining_t1 = 0;
        int remaining_total = 0;
    };

    CovariateStructure structure_;
    int block_size_;
    std::vector<Block> blocks_;

    const Block& block_for(const PatientProfile& profile) const;
};

/// Fair coin, ignoring all covariates.
class CompleteRandomizationDesign : public Design {
  public:
    double assignment_probability(const ImbalanceState&, const PatientProfile&) const override {
        return 0.5;
    }
    std::string name() const override { return "complete"; }
};

/// Plain-data description of a design; one fresh Design is instantiated per
/// trial from it.
struct DesignSpec {
    enum class Kind { Composite, PocockSimon, StratifiedBlock, Complete };

    Kind kind = Kind::Complete;
    std::optional<WeightConfig> weights;  // composite
    std::vector<double> margin_weights;   // pocock_simon
    double p_bias = 0.85;
    int block_size = 4;

    static DesignSpec composite(WeightConfig weights, double p_bias);
    static DesignSpec pocock_simon(std::vector<double> margin_weights, double p_bias);
    static DesignSpec stratified_block(int block_size);
    static DesignSpec complete();

    std::string name() const;
};

std::unique_ptr<Design> make_design(const DesignSpec& spec, const CovariateStructure& structure);

}  // namespace cadrand
