#include "cadrand/design.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cadrand {

Arm Design::next_assignment(const ImbalanceState& state, const PatientProfile& profile,
                            double uniform_draw) {
    const double p = assignment_probability(state, profile);
    const Arm arm = uniform_draw < p ? Arm::Treatment1 : Arm::Treatment2;
    advance(profile, arm);
    return arm;
}

void Design::advance(const PatientProfile&, Arm) {}

CompositeMinimizationDesign::CompositeMinimizationDesign(const CovariateStructure& structure,
                                                         WeightConfig weights, double p_bias)
    : weights_(std::move(weights)), p_bias_(p_bias) {
    weights_.validate_for(structure);
    if (!(p_bias >= 0.5 && p_bias < 1.0)) {
        throw std::invalid_argument("p_bias must lie in [0.5, 1), got " + std::to_string(p_bias));
    }
}

double CompositeMinimizationDesign::assignment_probability(const ImbalanceState& state,
                                                           const PatientProfile& profile) const {
    const double d = delta(state, weights_, profile);
    if (std::abs(d) <= kTieBand) return 0.5;
    return d > 0.0 ? 1.0 - p_bias_ : p_bias_;
}

namespace {
WeightConfig marginal_only_weights(const CovariateStructure& structure,
                                   std::vector<double> margin_weights) {
    if (static_cast<int>(margin_weights.size()) != structure.covariate_count()) {
        throw std::invalid_argument("expected " + std::to_string(structure.covariate_count()) +
                                    " margin weights, got " +
                                    std::to_string(margin_weights.size()));
    }
    return WeightConfig(0.0, 0.0, std::move(margin_weights));
}
}  // namespace

PocockSimonDesign::PocockSimonDesign(const CovariateStructure& structure,
                                     std::vector<double> margin_weights, double p_bias)
    : inner_(structure, marginal_only_weights(structure, std::move(margin_weights)), p_bias) {}

double PocockSimonDesign::assignment_probability(const ImbalanceState& state,
                                                 const PatientProfile& profile) const {
    return inner_.assignment_probability(state, profile);
}

StratifiedBlockDesign::StratifiedBlockDesign(const CovariateStructure& structure, int block_size)
    : structure_(structure), block_size_(block_size) {
    if (block_size < 2 || block_size % 2 != 0) {
        throw std::invalid_argument("block size must be an even integer >= 2, got " +
                                    std::to_string(block_size));
    }
    blocks_.resize(structure_.stratum_count());
}

const StratifiedBlockDesign::Block& StratifiedBlockDesign::block_for(
    const PatientProfile& profile) const {
    return blocks_[structure_.stratum_index(profile)];
}

double StratifiedBlockDesign::assignment_probability(const ImbalanceState&,
                                                     const PatientProfile& profile) const {
    const Block& block = block_for(profile);
    if (block.remaining_total == 0) {
        // A fresh block has an equal number of slots per arm.
        return 0.5;
    }
    return static_cast<double>(block.remaining_t1) / block.remaining_total;
}

void StratifiedBlockDesign::advance(const PatientProfile& profile, Arm arm) {
    Block& block = blocks_[structure_.stratum_index(profile)];
    if (block.remaining_total == 0) {
        block.remaining_t1 = block_size_ / 2;
        block.remaining_total = block_size_;
    }
    if (arm == Arm::Treatment1) block.remaining_t1 -= 1;
    block.remaining_total -= 1;
}

DesignSpec DesignSpec::composite(WeightConfig weights, double p_bias) {
    DesignSpec spec;
    spec.kind = Kind::Composite;
    spec.weights = std::move(weights);
    spec.p_bias = p_bias;
    return spec;
}

DesignSpec DesignSpec::pocock_simon(std::vector<double> margin_weights, double p_bias) {
    DesignSpec spec;
    spec.kind = Kind::PocockSimon;
    spec.margin_weights = std::move(margin_weights);
    spec.p_bias = p_bias;
    return spec;
}

DesignSpec DesignSpec::stratified_block(int block_size) {
    DesignSpec spec;
    spec.kind = Kind::StratifiedBlock;
    spec.block_size = block_size;
    return spec;
}

DesignSpec DesignSpec::complete() { return DesignSpec{}; }

std::string DesignSpec::name() const {
    switch (kind) {
        case Kind::Composite: return "composite";
        case Kind::PocockSimon: return "pocock_simon";
        case Kind::StratifiedBlock: return "stratified_block";
        case Kind::Complete: return "complete";
    }
    return "unknown";
}

std::unique_ptr<Design> make_design(const DesignSpec& spec, const CovariateStructure& structure) {
    switch (spec.kind) {
        case DesignSpec::Kind::Composite:
            if (!spec.weights) {
                throw std::invalid_argument("composite design spec is missing weights");
            }
            return std::make_unique<CompositeMinimizationDesign>(structure, *spec.weights,
                                                                 spec.p_bias);
        case DesignSpec::Kind::PocockSimon:
            return std::make_unique<PocockSimonDesign>(structure, spec.margin_weights,
                                                       spec.p_bias);
        case DesignSpec::Kind::StratifiedBlock:
            return std::make_unique<StratifiedBlockDesign>(structure, spec.block_size);
        case DesignSpec::Kind::Complete:
            return std::make_unique<CompleteRandomizationDesign>();
    }
    throw std::invalid_argument("unknown design kind");
}

}  // namespace cadrand
